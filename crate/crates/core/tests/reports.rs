mod common;

use choquet_sorting::{
    canonical_json, parse_problem, parse_report, run_replications, run_simulation, write_report,
    Report, ReportFormat,
};

#[test]
fn json_round_trip_preserves_counts() {
    let mut p = common::school();
    p.settings.iterations = 2000;
    let result = run_simulation(&p).unwrap();
    let report = Report::from_result(&p, &result);
    let text = canonical_json(&report);
    let back = parse_report(&text).unwrap();
    assert_eq!(back, report);
    assert_eq!(canonical_json(&back), text);
    let total: u64 = back.scenarios.iter().map(|r| r.count).sum();
    assert_eq!(total, 2000);
}

#[test]
fn json_keys_are_sorted() {
    let mut p = common::school();
    p.settings.iterations = 200;
    let report = Report::from_result(&p, &run_simulation(&p).unwrap());
    let text = canonical_json(&report);
    let top_keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    let mut sorted = top_keys.clone();
    sorted.sort();
    assert_eq!(top_keys, sorted);
    assert!(!text.contains("elapsed"));
}

#[test]
fn deterministic_problem_reports_one_full_row() {
    let text = r#"{
        "criteria": ["g1", "g2"],
        "categories": ["good", "bad"],
        "profiles": [[10, 10], [5, 5], [0, 0]],
        "alternatives": [
            {"name": "x", "evaluations": [8, 7]},
            {"name": "y", "evaluations": [2, 1]}
        ],
        "preferences": {"shapley": [{"left": 1, "rel": "=", "right": 2}]},
        "settings": {"iterations": 300}
    }"#;
    let p = parse_problem(text).unwrap();
    let report = Report::from_result(&p, &run_simulation(&p).unwrap());
    assert_eq!(report.scenarios.len(), 1);
    assert_eq!(report.scenarios[0].assignment, vec![1, 2]);
    assert_eq!(report.scenarios[0].sai, 1.0);
    assert_eq!(report.scenarios[0].sai_exact, "1/1");
}

#[test]
fn csv_header_order() {
    let mut p = common::school();
    p.settings.iterations = 300;
    let report = Report::from_result(&p, &run_simulation(&p).unwrap());
    let csv = String::from_utf8(write_report(&report, ReportFormat::Csv)).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "scenario_id,assignment,count,sai,I_1,I_2,I_12,sd_I_1,sd_I_2,sd_I_12"
    );
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1");
    assert_eq!(first[1].split(';').count(), 5);
}

#[test]
fn replication_report_round_trips() {
    let mut p = common::school();
    p.settings.iterations = 300;
    let summary = run_replications(&p, 3).unwrap();
    let report = Report::from_replications(&p, &summary);
    let rep = report.replication.as_ref().unwrap();
    assert_eq!(rep.replications, 3);
    assert_eq!(report.iterations, 900);
    assert_eq!(parse_report(&canonical_json(&report)).unwrap(), report);
    let text = String::from_utf8(write_report(&report, ReportFormat::Text)).unwrap();
    assert!(text.contains("3 replications x 300 iterations"));
}
