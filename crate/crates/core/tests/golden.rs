//! Pinned instance and trace files. Seeds alone are not a stable contract, so
//! the generated files themselves are the reference.

use std::fs;
use std::path::PathBuf;

use mobm::algorithms::{run_mobm_pd, run_obvc, RunTrace};
use mobm::instances::{random, random_coverage_table, upper_triangular, Instance};
use mobm::submodular::FnSpec;
use mobm::verify::{verify_trace, Tolerances};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn golden(name: &str) -> String {
    fs::read_to_string(data(name)).unwrap()
}

#[test]
fn generators_reproduce_pinned_files() {
    assert_eq!(
        upper_triangular(3).to_json(),
        golden("upper_triangular_3.json")
    );
    let part = FnSpec::PartitionBudget {
        blocks: vec![vec![0, 1], vec![2, 3, 4]],
        caps: vec![1.0, 1.5],
    };
    assert_eq!(
        random(5, 4, 0.5, part, 11).unwrap().to_json(),
        golden("random_partition.json")
    );
    let table = random(4, 4, 0.6, random_coverage_table(4, 5), 3).unwrap();
    assert_eq!(table.to_json(), golden("random_table.json"));
}

#[test]
fn traces_reproduce_pinned_files() {
    let tri = Instance::load(data("upper_triangular_3.json")).unwrap();
    assert_eq!(
        run_obvc(&tri).unwrap().to_json(),
        golden("upper_triangular_3.obvc.json")
    );
    let part = Instance::load(data("random_partition.json")).unwrap();
    assert_eq!(
        run_mobm_pd(&part).unwrap().to_json(),
        golden("random_partition.mobm-pd.json")
    );
}

#[test]
fn pinned_traces_verify() {
    for (inst, trace) in [
        ("upper_triangular_3.json", "upper_triangular_3.obvc.json"),
        ("random_partition.json", "random_partition.mobm-pd.json"),
    ] {
        let inst = Instance::load(data(inst)).unwrap();
        let trace = RunTrace::from_json(&golden(trace)).unwrap();
        let report = verify_trace(&trace, &inst, Tolerances::default()).unwrap();
        assert!(report.passed(), "{report:#?}");
    }
}

#[test]
fn malformed_files_report_locations() {
    let mut text = golden("upper_triangular_3.json");
    text = text.replacen("\"nbrs\": [\n        0,", "\"nbrs\": [\n        3,", 1);
    let err = Instance::from_json(&text).unwrap_err().to_string();
    assert!(err.contains("neighbor out of range"), "{err}");
    assert!(err.contains("arrivals[0].nbrs[0]"), "{err}");
    let err = Instance::from_json("{\"name\": 1}")
        .unwrap_err()
        .to_string();
    assert!(err.contains("line 1 column"), "{err}");
}
