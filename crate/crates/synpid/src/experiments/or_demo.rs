use serde::{Deserialize, Serialize};
use synpid_core::distributions::{JointDistribution, Role, VariableSpec};
use synpid_core::pid::{discontinuity_scan, Antichain, DiscontinuityReport, Imin, IminEstimator};

use crate::{Error, Result};

/// Rows in the order `(a1, a2) = (0,0), (0,1), (1,0), (1,1)`.
const INPUTS: [(u64, u64); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

fn sources() -> Vec<Vec<usize>> {
    vec![vec![1], vec![2]]
}

fn redundancy_node() -> Antichain {
    "{1}{2}".parse().expect("static node")
}

/// `X = A1 OR A2` with `p(a1, a2) = (1/4, 1/4 + delta, 1/4 - delta, 1/4)`,
/// over variables `x`, `a1`, `a2`. Probabilities are set exactly.
pub fn or_distribution(delta: f64) -> Result<JointDistribution> {
    if !delta.is_finite() || delta.abs() >= 0.25 {
        return Err(Error::Config(format!(
            "delta must satisfy |delta| < 0.25, got {delta}"
        )));
    }
    let vars = vec![
        VariableSpec::new("x", 2, Role::DestinationNext)?,
        VariableSpec::new("a1", 2, Role::Source)?,
        VariableSpec::new("a2", 2, Role::Source)?,
    ];
    let probs = [0.25, 0.25 + delta, 0.25 - delta, 0.25];
    let rows = INPUTS
        .iter()
        .zip(probs)
        .map(|(&(a1, a2), p)| ([a1 | a2, a1, a2], p));
    Ok(JointDistribution::from_probabilities(vars, rows)?)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrDemoRow {
    pub a1: u64,
    pub a2: u64,
    pub x: u64,
    pub probability: f64,
    /// `A1` or `A2`: the source with least specific information about `x`.
    pub argmin: String,
    /// Both sources give the same specific information about `x`.
    pub tie: bool,
    /// Local redundancy `i_min = i(x; a_j)` in bits.
    pub local: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrDemo {
    pub delta: f64,
    pub rows: Vec<OrDemoRow>,
    /// Average redundancy `I_min(X; {A1}{A2})`.
    pub i_min: f64,
    pub non_unique: bool,
}

/// Local `i_min` redundancy of the perturbed OR gate, one row per input.
pub fn run_or_demo(delta: f64) -> Result<OrDemo> {
    let dist = or_distribution(delta)?;
    let est = IminEstimator::new(&dist, 0, &sources())?;
    let node = redundancy_node();
    let rows = INPUTS
        .iter()
        .map(|&(a1, a2)| {
            let tuple = [a1 | a2, a1, a2];
            let local = est.local(&node, &tuple)?;
            Ok(OrDemoRow {
                a1,
                a2,
                x: a1 | a2,
                probability: dist.probability(&tuple)?,
                argmin: format!("A{}", local.source.members().next().unwrap_or(0) + 1),
                tie: local.tie,
                local: local.value,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrDemo {
        delta,
        non_unique: rows.iter().any(|r| r.tie),
        rows,
        i_min: est.i_min(&node)?,
    })
}

/// Scans the local `i_min` of the OR family over `deltas`.
pub fn or_discontinuity(deltas: &[f64]) -> Result<DiscontinuityReport> {
    for &d in deltas {
        or_distribution(d)?;
    }
    let family = |d: f64| {
        or_distribution(d).map_err(|e| synpid_core::Error::InvalidProbabilities(e.to_string()))
    };
    Ok(discontinuity_scan(
        &Imin,
        family,
        deltas,
        0,
        &sources(),
        &redundancy_node(),
    )?)
}

impl OrDemo {
    pub fn to_text(&self) -> String {
        let mut out = format!("OR gate, delta = {:e}\n", self.delta);
        out.push_str("a1,a2  x  p(a1,a2)   argmin  i(x;a_j)\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{}    {}  {:<9.6}  {:<6}  {:>7.3}{}\n",
                r.a1,
                r.a2,
                r.x,
                r.probability,
                r.argmin,
                r.local,
                if r.tie { "  (tie)" } else { "" }
            ));
        }
        out.push_str(&format!("I_min = {:.6} bits\n", self.i_min));
        out
    }
}
