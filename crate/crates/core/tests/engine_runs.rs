mod common;

use choquet_sorting::{
    category_acceptability, export_capacity_samples, run_replications_with_seeds, run_simulation,
    scenario_acceptability, scenario_central_capacity, skewness, Accumulator, Execution,
    PreferenceStatements, Scenario, ShapleyRelation, Share, SimulationSettings, SortingProblem,
};
use common::SV;

fn quick_school(iterations: usize) -> SortingProblem<f64> {
    let mut p = common::school();
    p.settings.iterations = iterations;
    p
}

#[test]
fn counts_are_consistent() {
    let result = run_simulation(&quick_school(3000)).unwrap();
    let total: u64 = result.scenarios.values().map(|s| s.count()).sum();
    assert_eq!(total, 3000);
    let sai_sum: Share = scenario_acceptability(&result).iter().map(|s| s.sai).sum();
    assert_eq!(sai_sum, Share::from_integer(1));
    for (i, row) in category_acceptability(&result).iter().enumerate() {
        assert_eq!(row.iter().copied().sum::<Share>(), Share::from_integer(1));
        for h in 1..=result.k_categories() {
            let via_scenarios: u64 = result
                .scenarios
                .iter()
                .filter(|(s, _)| s.category_of(i) == h)
                .map(|(_, st)| st.count())
                .sum();
            assert_eq!(result.category_counts[i][h - 1], via_scenarios);
        }
    }
}

#[test]
fn serial_and_parallel_runs_repeat() {
    let mut p = quick_school(2000);
    let a = run_simulation(&p).unwrap();
    let b = run_simulation(&p).unwrap();
    assert_eq!(a.scenarios, b.scenarios);
    p.settings.execution = Execution::Parallel { chunks: 5 };
    let c = run_simulation(&p).unwrap();
    let d = run_simulation(&p).unwrap();
    assert_eq!(c.scenarios, d.scenarios);
    assert_eq!(c.category_counts, d.category_counts);
    assert_eq!(c.iterations, 2000);
}

#[test]
fn merge_is_associative_on_counts() {
    let scenarios = [
        Scenario::new(vec![1, 2]),
        Scenario::new(vec![2, 2]),
        Scenario::new(vec![1, 1]),
    ];
    let build = |offset: usize| {
        let mut acc = Accumulator::<f64>::new(2, 2, 3, None);
        for k in 0..20 {
            let s = scenarios[(k + offset) % 3].clone();
            acc.record(s, &[0.5, 0.5, -(k as f64) / 20.0]);
        }
        acc
    };
    let mut left = build(0);
    let mut bc = build(1);
    bc.merge(build(2));
    left.merge(bc);
    let mut right = build(0);
    right.merge(build(1));
    right.merge(build(2));
    assert_eq!(left.iterations(), right.iterations());
    assert_eq!(left.category_counts(), right.category_counts());
    for (s, stats) in left.scenarios() {
        let other = &right.scenarios()[s];
        assert_eq!(stats.count(), other.count());
        for (a, b) in stats.sum().iter().zip(other.sum()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}

#[test]
fn pinned_point_problem_has_one_scenario() {
    let prefs = PreferenceStatements::new()
        .with_relation(0, ShapleyRelation::Indifferent, 1)
        .with_relation(1, ShapleyRelation::Indifferent, 2);
    let point = |v: [f64; 3]| v.iter().map(|&x| SV::Point(x)).collect::<Vec<_>>();
    let p = SortingProblem::new(
        vec![
            point([9.0, 6.0, 4.5]),
            point([2.0, 5.0, 3.5]),
            point([1.0, 2.0, 0.0]),
        ],
        vec![
            point([10.0; 3]),
            point([6.0; 3]),
            point([3.0; 3]),
            point([0.0; 3]),
        ],
        prefs,
        SimulationSettings {
            iterations: 500,
            ..SimulationSettings::default()
        },
    );
    let result = run_simulation(&p).unwrap();
    let sai = scenario_acceptability(&result);
    assert_eq!(sai.len(), 1);
    assert_eq!(sai[0].scenario, Scenario::new(vec![1, 2, 3]));
    assert_eq!(sai[0].sai, Share::from_integer(1));
}

#[test]
fn exported_samples_match_the_central_capacity() {
    let mut p = quick_school(4000);
    p.settings.retain_samples = true;
    let result = run_simulation(&p).unwrap();
    let top = scenario_acceptability(&result)[0].clone();
    let samples = export_capacity_samples(&result, &top.scenario).unwrap();
    assert_eq!(samples.len() as u64, top.count);
    let stats = &result.scenarios[&top.scenario];
    let central = scenario_central_capacity(stats, &result.layout).unwrap();
    let i12: Vec<f64> = samples.iter().map(|iv| iv.interaction(0, 1)).collect();
    let mean = i12.iter().sum::<f64>() / i12.len() as f64;
    assert!((mean - central.mean[2]).abs() < 1e-12);
    assert!(skewness(&i12).abs() < 0.5);
    for iv in &samples {
        assert_eq!(iv.shapley(), central.capacity.shapley());
    }
    assert!(export_capacity_samples(&result, &Scenario::new(vec![1, 1, 1, 1, 1])).is_err());
}

#[test]
fn central_capacities_stay_in_the_closure() {
    let result = run_simulation(&quick_school(3000)).unwrap();
    for stats in result.scenarios.values() {
        let c = scenario_central_capacity(stats, &result.layout).unwrap();
        assert!((c.mean[0] - 0.5).abs() < 1e-9 && (c.mean[1] - 0.5).abs() < 1e-9);
        assert!(c.mean[2] < 0.0 && c.mean[2] >= -1.0);
        c.capacity.check(1e-9).unwrap();
    }
}

#[test]
fn identical_seeds_give_zero_spread() {
    let p = quick_school(1000);
    let summary = run_replications_with_seeds(&p, &[17, 17, 17]).unwrap();
    for s in &summary.scenarios {
        assert_eq!(s.occurrences, 3);
        assert!(s.sai_sd.abs() < 1e-15);
        assert!(s.capacity_sd.iter().all(|v| v.abs() < 1e-12));
    }
}

#[test]
fn single_precision_runs() {
    let p64 = quick_school(500);
    let convert = |rows: &Vec<Vec<SV>>| -> Vec<Vec<choquet_sorting::StochasticValue<f32>>> {
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|c| match *c {
                        SV::Point(v) => choquet_sorting::StochasticValue::Point(v as f32),
                        SV::Uniform { lo, hi } => choquet_sorting::StochasticValue::Uniform {
                            lo: lo as f32,
                            hi: hi as f32,
                        },
                        SV::Normal { mean, sd } => choquet_sorting::StochasticValue::Normal {
                            mean: mean as f32,
                            sd: sd as f32,
                        },
                    })
                    .collect()
            })
            .collect()
    };
    let p32 = SortingProblem::new(
        convert(&p64.evaluations),
        convert(&p64.profiles),
        p64.preferences.clone(),
        p64.settings.clone(),
    );
    let result = run_simulation(&p32).unwrap();
    assert_eq!(result.iterations, 500);
}
