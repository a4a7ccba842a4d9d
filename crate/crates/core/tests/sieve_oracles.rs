mod common;

use fakemu::classify::classify;
use fakemu::empirics::export_figure_data;
use fakemu::euler::{apparent_bias, persistent_bias, AccelerationPlan};
use fakemu::sieve::{brute_summatory, checkpoint_positions, sieve_summatory, summatory_table, SieveConfig};
use fakemu::spec::Builtin;
use fakemu::{builtin, Verdict};

#[test]
fn powerful_counts_up_to_1e8() {
    let report = sieve_summatory(&builtin("fake_Max").unwrap(), &SieveConfig::new(100_000_000).with_workers(4)).unwrap();
    for c in &report.checkpoints {
        assert_eq!(c.f as u64, common::powerful_count(c.x), "x = {}", c.x);
    }
}

#[test]
fn checkpoint_count_for_lambda_at_1e4() {
    // distinct floor(e^{i/100}) for i <= 922, plus the decades and N
    let mut xs = std::collections::BTreeSet::new();
    for i in 0..=922 {
        xs.insert(((i as f64 / 100.0).exp().floor() as u64).min(10_000));
    }
    xs.extend([10, 100, 1000, 10_000]);
    let report = sieve_summatory(&builtin("lambda").unwrap(), &SieveConfig::new(10_000)).unwrap();
    assert_eq!(report.checkpoints.len(), xs.len());
    assert_eq!(report.checkpoints.len(), 562);
    assert_eq!(checkpoint_positions(10_000, 0.01f64.exp()), xs.into_iter().collect::<Vec<_>>());
}

#[test]
fn summatory_bounded_by_x() {
    for b in Builtin::ALL {
        let spec = b.spec();
        let report = sieve_summatory(&spec, &SieveConfig::new(200_000)).unwrap();
        for c in &report.checkpoints {
            assert!(c.f.unsigned_abs() <= c.x, "{} at {}", b.name(), c.x);
        }
        let last = report.final_checkpoint().unwrap();
        assert_eq!(last.f.unsigned_abs() == last.x, b == Builtin::One, "{}", b.name());
    }
}

#[test]
fn table_agrees_with_brute_force_for_every_segment_size() {
    let spec = builtin("bitstream_example").unwrap();
    let brute = brute_summatory(&spec, 20_000).unwrap();
    for seg in [2, 3, 97, 4096, 1 << 22] {
        assert_eq!(summatory_table(&spec, &SieveConfig::new(20_000).with_segment_size(seg)).unwrap(), brute);
    }
}

#[test]
fn fake_min_figure_ends_deep_negative() {
    let report = sieve_summatory(&builtin("fake_min").unwrap(), &SieveConfig::new(100_000_000).with_workers(4)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fake_min.csv");
    export_figure_data(&report, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    let last = text.lines().last().unwrap();
    let fields: Vec<&str> = last.split(',').collect();
    assert_eq!(fields[1], "100000000");
    let normalized: f64 = fields[3].parse().unwrap();
    assert!(normalized <= -5.0, "{last}");
}

#[test]
fn classifier_matches_euler_products() {
    let plan = AccelerationPlan::default();
    for b in Builtin::ALL {
        let spec = b.spec();
        let c = classify(&spec).unwrap();
        match c.verdict {
            Verdict::ApparentBias => assert!(c.b.overlaps(&apparent_bias(&spec, &plan).unwrap())),
            Verdict::PersistentBias => assert!(c.b.overlaps(&persistent_bias(&spec, &plan).unwrap())),
            Verdict::NoBias => assert_eq!(c.b.value, 0.0),
        }
    }
}

#[test]
fn report_json_round_trips() {
    let report = sieve_summatory(&builtin("mu").unwrap(), &SieveConfig::new(5000)).unwrap();
    let back = fakemu::SieveReport::from_json(&report.to_json()).unwrap();
    assert_eq!(back, report);
    let summary: serde_json::Value = serde_json::from_str(&report.summary_json()).unwrap();
    for key in ["spec", "N", "a", "b", "signChanges", "minDev", "maxDev", "nonPositiveUpTo"] {
        assert!(summary.get(key).is_some(), "{key}");
    }
}
