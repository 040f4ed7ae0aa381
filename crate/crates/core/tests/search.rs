use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rss_stl::falsify::{
    classify_batch, evaluate_scenario, hit_and_run_step, is_violation, read_results_csv, simulated_annealing,
    uniform_batch, useful_tests, write_results_csv, AnnealConfig, Objective, ObjectiveSpec, SearchRecord, SpecChoice,
};
use rss_stl::sim::{ScenarioParams, ScenarioRanges};
use rss_stl::stl::RobustValue;

/// Upper 1% point of chi-squared with 9 degrees of freedom.
const CHI2_9_99: f64 = 21.666;

#[test]
fn full_chord_hit_and_run_is_uniform_on_the_box() {
    let ranges = ScenarioRanges::default();
    let lo: Vec<f64> = ranges.0.iter().map(|r| r.lo).collect();
    let hi: Vec<f64> = ranges.0.iter().map(|r| r.hi).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut x: Vec<f64> = lo.iter().zip(&hi).map(|(l, h)| 0.5 * (l + h)).collect();

    let (steps, burn_in, thin) = (100_000, 1_000, 50);
    let mut bins = vec![[0usize; 10]; lo.len()];
    let mut kept = 0;
    for k in 0..steps {
        x = hit_and_run_step(&x, &lo, &hi, 1.0, &mut rng);
        for d in 0..x.len() {
            assert!(x[d] >= lo[d] && x[d] <= hi[d], "left the box in dimension {d} at step {k}");
        }
        if k >= burn_in && k % thin == 0 {
            kept += 1;
            for d in 0..x.len() {
                let u = (x[d] - lo[d]) / (hi[d] - lo[d]);
                bins[d][((u * 10.0) as usize).min(9)] += 1;
            }
        }
    }
    let expected = kept as f64 / 10.0;
    for (d, b) in bins.iter().enumerate() {
        let chi2: f64 = b.iter().map(|&o| (o as f64 - expected).powi(2) / expected).sum();
        assert!(chi2 < CHI2_9_99, "dimension {d}: chi2 {chi2:.2} with bins {b:?}");
    }
}

fn rss_objective() -> Objective {
    Objective::new(ObjectiveSpec::default()).unwrap()
}

#[test]
fn uniform_batches_do_not_depend_on_thread_count() {
    let obj = rss_objective();
    let serial = uniform_batch(24, 9, &obj, 1).unwrap();
    assert_eq!(serial, uniform_batch(24, 9, &obj, 4).unwrap());
    assert_eq!(serial, uniform_batch(24, 9, &obj, 0).unwrap());
    assert_ne!(serial, uniform_batch(24, 10, &obj, 1).unwrap());
    assert!(serial.iter().enumerate().all(|(i, r)| r.index == i));
}

#[test]
fn batch_prefixes_agree() {
    let obj = rss_objective();
    let short = uniform_batch(5, 4, &obj, 1).unwrap();
    let long = uniform_batch(12, 4, &obj, 1).unwrap();
    assert_eq!(short[..], long[..5]);
}

#[test]
fn annealing_runs_reproduce_and_track_the_best() {
    let obj = Objective::new(ObjectiveSpec { spec: SpecChoice::Cas, ..Default::default() }).unwrap();
    let cfg = AnnealConfig::default();
    let a = simulated_annealing(&obj, 40, 5, &cfg).unwrap();
    let b = simulated_annealing(&obj, 40, 5, &cfg).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.history.len(), 40);
    assert_eq!(a.warmup.len(), cfg.warmup);

    let mut best = a.warmup.iter().map(|e| e.cost).fold(f64::INFINITY, f64::min);
    let mut current = best;
    for e in &a.history {
        assert_eq!(e.cost, e.payload.robustness_cas.value());
        if e.cost < current {
            assert!(e.accepted, "improving move at {} rejected", e.iteration);
        }
        if e.accepted {
            current = e.cost;
        }
        best = best.min(e.cost);
    }
    assert_eq!(a.best.cost, best);
    for e in &a.history {
        assert!(e.scenario.validate(&obj.ranges).is_ok());
        assert_eq!(e.scenario.rng_seed, a.history[0].scenario.rng_seed);
    }
}

#[test]
fn useful_tests_are_exactly_the_negative_rss_records() {
    let obj = rss_objective();
    let records = uniform_batch(60, 17, &obj, 0).unwrap();
    let useful = useful_tests(&records);
    assert!(!useful.is_empty());
    let expected = records.iter().filter(|r| r.robustness_rss.value() < 0.0).count();
    assert_eq!(useful.len(), expected);
    for r in useful {
        // re-running the scenario reproduces the violation
        let again = evaluate_scenario(&r.scenario, &obj).unwrap();
        assert!(again.robustness_rss.value() < 0.0);
        assert!(again.blamed_atom.is_some());
    }
}

#[test]
fn results_files_round_trip_a_real_batch() {
    let obj = rss_objective();
    let records = uniform_batch(30, 21, &obj, 0).unwrap();
    let mut buf = Vec::new();
    write_results_csv(&records, &mut buf).unwrap();
    let back = read_results_csv(buf.as_slice()).unwrap();
    assert_eq!(back, records);
    let mut again = Vec::new();
    write_results_csv(&back, &mut again).unwrap();
    assert_eq!(buf, again);
}

#[test]
fn a_road_cleared_by_faster_agents_is_safe_under_both_formulas() {
    // both agents start well ahead, outrun a slow ego and drift outward
    let s = ScenarioParams {
        ego_x: 0.0,
        ego_y: 0.0,
        ego_theta: 0.0,
        ego_v: 10.0,
        a1_x: 40.0,
        a1_y: -3.5,
        a1_v: 15.0,
        a1_y_target: -5.0,
        a1_v_target: 30.0,
        a2_x: 25.0,
        a2_y: 4.0,
        a2_v: 30.0,
        a2_y_target: 5.0,
        a2_v_target: 20.0,
        rng_seed: 1,
    };
    let r = evaluate_scenario(&s, &rss_objective()).unwrap();
    assert!(r.robustness_rss.value() > 0.0, "{r:?}");
    assert!(r.robustness_cas.value() > 0.0, "{r:?}");
}

fn value() -> impl Strategy<Value = RobustValue> {
    prop_oneof![
        8 => (-5i32..=5).prop_map(|k| RobustValue::from(k as f64 * 0.5)),
        1 => Just(RobustValue::from(f64::INFINITY)),
        1 => Just(RobustValue::from(f64::NEG_INFINITY)),
    ]
}

fn record() -> impl Strategy<Value = SearchRecord> {
    (value(), value()).prop_map(|(rss, cas)| SearchRecord {
        index: 0,
        scenario: ScenarioParams::from_vec(&[0.0; 14], 0),
        robustness_rss: rss,
        robustness_cas: cas,
        blamed_atom: None,
        accepted: true,
    })
}

proptest! {
    #[test]
    fn joint_cells_sum_to_the_marginals(records in prop::collection::vec(record(), 0..80)) {
        let t = classify_batch(&records);
        let j = t.joint;
        prop_assert_eq!(j.pos_pos + j.neg_neg + j.neg_rss_pos_cas + j.pos_rss_neg_cas, records.len());
        prop_assert_eq!(j.neg_neg + j.neg_rss_pos_cas, t.rss.violations());
        prop_assert_eq!(j.neg_neg + j.pos_rss_neg_cas, t.cas.violations());
        prop_assert_eq!(t.rss.pos + t.rss.violations(), records.len());
        let rss_bad = records.iter().filter(|r| is_violation(r.robustness_rss)).count();
        prop_assert_eq!(rss_bad, t.rss.violations());
    }
}
