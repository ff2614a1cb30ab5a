//! Frozen PID values for small logic gates. Expected numbers come from a
//! separate brute-force enumeration of specific information and inclusion-
//! exclusion over the two-source lattice.

use synpid_core::distributions::{avg_mi, JointDistribution, Role, VariableSpec};
use synpid_core::dynamics::DynamicsConfig;
use synpid_core::pid::{
    build_lattice, decompose, i_min, local_i_min, modified_information, specific_information,
    Antichain, IminEstimator, SourceSet,
};
use synpid_core::Error;

const OR_REDUNDANCY: f64 = 0.311_278_124_459_132_8;
const OR_SPECIFIC_X1: f64 = 0.081_704_165_945_510_39;

fn gate(f: impl Fn(u64, u64) -> u64, x_arity: u64) -> JointDistribution {
    let vars = vec![
        VariableSpec::new("x", x_arity, Role::DestinationNext).unwrap(),
        VariableSpec::new("a1", 2, Role::Source).unwrap(),
        VariableSpec::new("a2", 2, Role::Source).unwrap(),
    ];
    let rows: Vec<([u64; 3], f64)> = (0..4)
        .map(|i| {
            let (a, b) = (i >> 1, i & 1);
            ([f(a, b), a, b], 0.25)
        })
        .collect();
    JointDistribution::from_probabilities(vars, rows).unwrap()
}

fn two_sources() -> Vec<Vec<usize>> {
    vec![vec![1], vec![2]]
}

fn node(s: &str) -> Antichain {
    s.parse().unwrap()
}

fn terms(d: &JointDistribution) -> Vec<(String, f64)> {
    let p = decompose(d, 0, &two_sources(), vec!["a1".into(), "a2".into()]).unwrap();
    p.nodes
        .iter()
        .map(|n| (n.antichain.to_string(), n.i_partial))
        .collect()
}

fn assert_terms(d: &JointDistribution, expected: [(&str, f64); 4]) {
    let got = terms(d);
    for (name, value) in expected {
        let (_, v) = got.iter().find(|(n, _)| n == name).unwrap();
        assert!((v - value).abs() < 1e-12, "{name}: {v} vs {value}");
    }
}

#[test]
fn xor_is_pure_synergy() {
    let d = gate(|a, b| a ^ b, 2);
    assert_terms(
        &d,
        [("{1}{2}", 0.0), ("{1}", 0.0), ("{2}", 0.0), ("{1,2}", 1.0)],
    );
    assert_eq!(i_min(&d, 0, &two_sources(), &node("{1}{2}")).unwrap(), 0.0);
}

#[test]
fn or_and_and_split_redundancy_and_synergy() {
    let expected = [
        ("{1}{2}", OR_REDUNDANCY),
        ("{1}", 0.0),
        ("{2}", 0.0),
        ("{1,2}", 0.5),
    ];
    assert_terms(&gate(|a, b| a | b, 2), expected);
    assert_terms(&gate(|a, b| a & b, 2), expected);
}

#[test]
fn or_specific_information() {
    let d = gate(|a, b| a | b, 2);
    assert!((specific_information(&d, 0, 0, &[1]).unwrap() - 1.0).abs() < 1e-12);
    assert!((specific_information(&d, 0, 1, &[1]).unwrap() - OR_SPECIFIC_X1).abs() < 1e-12);
    assert_eq!(
        specific_information(&d, 0, 2, &[1]),
        Err(Error::ZeroProbability)
    );
}

#[test]
fn two_bit_copy_violates_identity() {
    // I_min reports 1 bit of redundancy although I(A1; A2) = 0: the known
    // failure of the identity property, reproduced on purpose.
    let d = gate(|a, b| 2 * a + b, 4);
    assert!((i_min(&d, 0, &two_sources(), &node("{1}{2}")).unwrap() - 1.0).abs() < 1e-12);
    assert_eq!(avg_mi(&d, &[1], &[2], &[]).unwrap(), 0.0);
    assert_terms(
        &d,
        [("{1}{2}", 1.0), ("{1}", 0.0), ("{2}", 0.0), ("{1,2}", 1.0)],
    );
}

#[test]
fn self_redundancy_single_set_node() {
    let d = gate(|a, b| a | b, 2);
    let v = i_min(&d, 0, &two_sources(), &node("{1}")).unwrap();
    assert!((v - avg_mi(&d, &[0], &[1], &[]).unwrap()).abs() < 1e-12);
    let local = local_i_min(&d, 0, &two_sources(), &node("{1}"), &[1, 0, 1]).unwrap();
    assert!((local.value - (-0.584_962_500_721_156_2)).abs() < 1e-12);
    assert!(!local.tie);
}

#[test]
fn equiprobable_or_localization_is_tied() {
    let d = gate(|a, b| a | b, 2);
    let est = IminEstimator::new(&d, 0, &two_sources()).unwrap();
    for row in [[0, 0, 0], [1, 0, 1], [1, 1, 0], [1, 1, 1]] {
        let l = est.local(&node("{1}{2}"), &row).unwrap();
        assert!(l.tie);
        assert_eq!(l.source, SourceSet::new(&[0]).unwrap());
    }
}

#[test]
fn xor_with_history_is_state_dependent_transfer() {
    // X' = X^(1) xor Y with independent uniform inputs
    let vars = vec![
        VariableSpec::new("x", 2, Role::DestinationNext).unwrap(),
        VariableSpec::history("h", 2, 1).unwrap(),
        VariableSpec::new("y", 2, Role::Source).unwrap(),
    ];
    let rows: Vec<([u64; 3], f64)> = (0..4)
        .map(|i| ([(i >> 1) ^ (i & 1), i >> 1, i & 1], 0.25))
        .collect();
    let d = JointDistribution::from_probabilities(vars, rows).unwrap();
    let p = modified_information(&d, &DynamicsConfig::new(1, "x", &["y"])).unwrap();
    assert!((p.modified - 1.0).abs() < 1e-12);
    assert!((p.node("{1,2}").unwrap().i_partial - 1.0).abs() < 1e-12);
    assert_eq!(p.sources, ["h", "y"]);
    assert_eq!(p.k, Some(1));
}

#[test]
fn node_outside_declared_sources_is_rejected() {
    let d = gate(|a, b| a | b, 2);
    assert!(matches!(
        i_min(&d, 0, &two_sources(), &node("{3}")),
        Err(Error::InvalidAntichain(_))
    ));
    assert_eq!(build_lattice(2).unwrap().len(), 4);
}
