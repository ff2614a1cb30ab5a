//! Brute-force PID used as a reference. Shares nothing with the library:
//! it works from a raw probability table, enumerates antichains by filtering
//! every family of source subsets, and inverts the redundancy by recursing
//! over all strictly lower nodes.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

pub type Node = BTreeSet<BTreeSet<usize>>;

/// All antichains of nonempty subsets of `0..r`.
pub fn antichains(r: usize) -> Vec<Node> {
    let subsets: Vec<BTreeSet<usize>> = (1u32..1 << r)
        .map(|m| (0..r).filter(|i| m >> i & 1 == 1).collect())
        .collect();
    let mut out = Vec::new();
    for family in 1u64..1 << subsets.len() {
        let node: Vec<&BTreeSet<usize>> = (0..subsets.len())
            .filter(|j| family >> j & 1 == 1)
            .map(|j| &subsets[j])
            .collect();
        let is_antichain = node
            .iter()
            .all(|a| node.iter().all(|b| a == b || !a.is_subset(b)));
        if is_antichain {
            out.push(node.into_iter().cloned().collect());
        }
    }
    out
}

/// `beta <= alpha`: every set of `alpha` contains some set of `beta`.
pub fn below_or_equal(beta: &Node, alpha: &Node) -> bool {
    alpha.iter().all(|a| beta.iter().any(|b| b.is_subset(a)))
}

/// Number of covering pairs among `nodes`.
pub fn cover_count(nodes: &[Node]) -> usize {
    let lt = |a: &Node, b: &Node| a != b && below_or_equal(a, b);
    let mut n = 0;
    for a in nodes {
        for b in nodes {
            if lt(a, b) && !nodes.iter().any(|c| lt(a, c) && lt(c, b)) {
                n += 1;
            }
        }
    }
    n
}

pub struct Pid {
    pub i_cap: BTreeMap<Node, f64>,
    pub i_partial: BTreeMap<Node, f64>,
    pub total: f64,
}

fn project(tuple: &[u64], vars: &[usize]) -> Vec<u64> {
    vars.iter().map(|&v| tuple[v]).collect()
}

fn marginal(table: &[(Vec<u64>, f64)], vars: &[usize]) -> BTreeMap<Vec<u64>, f64> {
    let mut m = BTreeMap::new();
    for (t, p) in table {
        *m.entry(project(t, vars)).or_insert(0.0) += p;
    }
    m
}

/// `I(X = x; A) = sum_a p(a|x) log2(p(x|a) / p(x))`.
pub fn specific_information(table: &[(Vec<u64>, f64)], target: usize, x: u64, a: &[usize]) -> f64 {
    let p_x = marginal(table, &[target])[&vec![x]];
    let p_a = marginal(table, a);
    let mut joint_vars = vec![target];
    joint_vars.extend_from_slice(a);
    let mut total = 0.0;
    for (xa, p_xa) in marginal(table, &joint_vars) {
        if xa[0] != x || p_xa == 0.0 {
            continue;
        }
        let p_a_given_x = p_xa / p_x;
        let p_x_given_a = p_xa / p_a[&xa[1..]];
        total += p_a_given_x * (p_x_given_a / p_x).log2();
    }
    total
}

/// `I(X; A)` computed directly from the table.
pub fn mutual_information(table: &[(Vec<u64>, f64)], target: usize, a: &[usize]) -> f64 {
    let p_x = marginal(table, &[target]);
    let p_a = marginal(table, a);
    let mut joint_vars = vec![target];
    joint_vars.extend_from_slice(a);
    marginal(table, &joint_vars)
        .into_iter()
        .filter(|(_, p)| *p > 0.0)
        .map(|(xa, p)| p * (p / (p_x[&xa[..1]] * p_a[&xa[1..]])).log2())
        .sum()
}

/// `I_min(X; alpha) = sum_x p(x) min_{A in alpha} I(X = x; A)` and its
/// Möbius inverse, with `sources[i]` the variables of source `i`.
pub fn pid(table: &[(Vec<u64>, f64)], target: usize, sources: &[Vec<usize>]) -> Pid {
    let vars_of = |set: &BTreeSet<usize>| -> Vec<usize> {
        set.iter()
            .flat_map(|&s| sources[s].iter().copied())
            .collect()
    };
    let p_x = marginal(table, &[target]);
    let nodes = antichains(sources.len());
    let mut i_cap = BTreeMap::new();
    for node in &nodes {
        let mut value = 0.0;
        for (x, &p) in &p_x {
            if p == 0.0 {
                continue;
            }
            let m = node
                .iter()
                .map(|set| specific_information(table, target, x[0], &vars_of(set)))
                .fold(f64::INFINITY, f64::min);
            value += p * m;
        }
        i_cap.insert(node.clone(), value);
    }
    let mut i_partial = BTreeMap::new();
    for node in &nodes {
        partial(node, &nodes, &i_cap, &mut i_partial);
    }
    let all: Vec<usize> = sources.iter().flatten().copied().collect();
    Pid {
        i_cap,
        i_partial,
        total: mutual_information(table, target, &all),
    }
}

fn partial(
    alpha: &Node,
    nodes: &[Node],
    i_cap: &BTreeMap<Node, f64>,
    memo: &mut BTreeMap<Node, f64>,
) -> f64 {
    if let Some(&v) = memo.get(alpha) {
        return v;
    }
    let mut v = i_cap[alpha];
    for beta in nodes {
        if beta != alpha && below_or_equal(beta, alpha) {
            v -= partial(beta, nodes, i_cap, memo);
        }
    }
    memo.insert(alpha.clone(), v);
    v
}
