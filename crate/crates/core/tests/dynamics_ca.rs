use proptest::prelude::*;
use synpid_core::distributions::{
    avg_mi, count_samples, entropy, Counter, JointDistribution, Role, VariableSpec,
};
use synpid_core::dynamics::*;
use synpid_core::eca::{ca_variables, decode_rule, run, CA_HISTORY, CA_LEFT, CA_NEXT, CA_RIGHT};

fn ca_dist(rule: u32, runs: u64, width: usize, steps: usize, k: usize) -> JointDistribution {
    let rule = decode_rule(rule).unwrap();
    let mut counter = Counter::new(ca_variables(k).unwrap()).unwrap();
    for seed in 0..runs {
        for s in run(&rule, width, steps, 100 + seed)
            .unwrap()
            .samples(k)
            .unwrap()
        {
            counter.add(&s.values).unwrap();
        }
    }
    counter.finish()
}

fn check_chain_rule(d: &JointDistribution, k: usize) {
    let cfg = DynamicsConfig::ca(k);
    let a = active_info_storage(d, &cfg).unwrap();
    let total = avg_mi(d, &[CA_NEXT], &[CA_HISTORY, CA_LEFT, CA_RIGHT], &[]).unwrap();
    let forward = a
        + transfer_entropy(d, &cfg, "left", &[]).unwrap()
        + transfer_entropy(d, &cfg, "right", &["left"]).unwrap();
    let reverse = a
        + transfer_entropy(d, &cfg, "right", &[]).unwrap()
        + complete_transfer_entropy(d, &cfg, "left").unwrap();
    assert!((forward - total).abs() < 1e-10, "{forward} vs {total}");
    assert!((reverse - total).abs() < 1e-10, "{reverse} vs {total}");
}

#[test]
fn identity_rule_stores_its_row_entropy() {
    let d = ca_dist(204, 1, 400, 5, 1);
    let grid = run(&decode_rule(204).unwrap(), 400, 5, 100).unwrap();
    let ones = grid.row(0).iter().filter(|&&c| c == 1).count() as f64 / 400.0;
    let brute = -(ones * ones.log2() + (1.0 - ones) * (1.0 - ones).log2());
    let ais = active_info_storage(&d, &DynamicsConfig::ca(1)).unwrap();
    assert!((ais - brute).abs() < 1e-12);
    assert!((ais - entropy(&d, &[CA_NEXT]).unwrap()).abs() < 1e-12);
    assert!((ais - 1.0).abs() < 0.01);
}

#[test]
fn chain_rule_on_ca_distributions() {
    for rule in [18, 30, 54, 110] {
        for k in [1, 3, 6] {
            check_chain_rule(&ca_dist(rule, 3, 80, 60, k), k);
        }
    }
}

#[test]
fn local_means_match_averages() {
    let k = 4;
    let d = ca_dist(110, 3, 80, 60, k);
    let cfg = DynamicsConfig::ca(k);
    let measures = [
        Measure::ActiveInfoStorage,
        Measure::TransferEntropy {
            source: "left".into(),
            conditionals: vec![],
        },
        Measure::TransferEntropy {
            source: "right".into(),
            conditionals: vec![],
        },
        Measure::TransferEntropy {
            source: "left".into(),
            conditionals: vec!["right".into()],
        },
        Measure::Separable,
    ];
    for m in measures {
        let e = MeasureEvaluator::new(&d, &cfg, &m).unwrap();
        let mean: f64 = d
            .iter()
            .map(|(t, w)| w / d.total() * e.local(&t).unwrap())
            .sum();
        assert!((mean - e.average()).abs() < 1e-10, "{m:?}");
    }
    let sep = separable_information(&d, &cfg).unwrap();
    let parts = active_info_storage(&d, &cfg).unwrap()
        + transfer_entropy(&d, &cfg, "left", &[]).unwrap()
        + transfer_entropy(&d, &cfg, "right", &[]).unwrap();
    assert!((sep - parts).abs() < 1e-12);
}

#[test]
fn storage_is_nondecreasing_in_k() {
    let rule = decode_rule(54).unwrap();
    let grids: Vec<_> = (0..4).map(|s| run(&rule, 100, 80, s).unwrap()).collect();
    let mut last = 0.0;
    // nested estimates: every k uses destinations from the same time window
    for k in 1..=8usize {
        let samples = grids.iter().flat_map(|g| {
            g.samples(k)
                .unwrap()
                .filter(|s| s.time >= 8)
                .map(|s| s.values)
        });
        let d = count_samples(ca_variables(k).unwrap(), samples).unwrap();
        let a = active_info_storage(&d, &DynamicsConfig::ca(k)).unwrap();
        assert!(a >= last - 1e-12, "k={k}: {a} < {last}");
        last = a;
    }
}

#[test]
fn rule_54_has_negative_storage_and_separable_sites() {
    let k = 16;
    let d = ca_dist(54, 30, 200, 200, k);
    let grid = run(&decode_rule(54).unwrap(), 200, 200, 100).unwrap();
    let ais = ca_local_profile(&d, "local_ais", &Measure::ActiveInfoStorage, &grid, k).unwrap();
    assert!(ais.values.iter().any(|&v| v < 0.0));
    assert!(ais.values.iter().filter(|&&v| v > 0.0).count() * 2 > ais.values.len());
    let sep = ca_local_profile(&d, "local_separable", &Measure::Separable, &grid, k).unwrap();
    let negative = sep.values.iter().filter(|&&v| v < 0.0).count();
    assert!(negative > 0);
    assert_eq!(ais.get(0, k - 1), None);
    assert!(ais.get(5, k).is_some());
}

fn two_source_dist(counts: &[u64]) -> JointDistribution {
    let vars = vec![
        VariableSpec::new("x", 2, Role::DestinationNext).unwrap(),
        VariableSpec::history("h", 2, 2).unwrap(),
        VariableSpec::new("y1", 2, Role::Source).unwrap(),
        VariableSpec::new("y2", 3, Role::Source).unwrap(),
    ];
    let rows = counts.iter().enumerate().map(|(i, &n)| {
        let i = i as u64;
        ([i % 2, (i / 2) % 4, (i / 8) % 2, (i / 16) % 3], n)
    });
    JointDistribution::from_counts(vars, rows).unwrap()
}

proptest! {
    #[test]
    fn chain_rule_and_signs_on_random_distributions(
        counts in proptest::collection::vec(0u64..9, 48)
            .prop_filter("nonempty", |c| c.iter().any(|&n| n > 0))
    ) {
        let d = two_source_dist(&counts);
        let cfg = DynamicsConfig::new(2, "x", &["y1", "y2"]);
        let a = active_info_storage(&d, &cfg).unwrap();
        let t1 = transfer_entropy(&d, &cfg, "y1", &[]).unwrap();
        let t2c = complete_transfer_entropy(&d, &cfg, "y2").unwrap();
        let total = avg_mi(&d, &[0], &[1, 2, 3], &[]).unwrap();
        prop_assert!((a + t1 + t2c - total).abs() < 1e-10);
        for v in [a, t1, t2c, total] {
            prop_assert!(v >= -1e-12);
        }
    }
}
