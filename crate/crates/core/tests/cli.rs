use std::process::{Command, Output};

use nlqc::gates::{catalog_lookup, MatrixFile};

fn nlqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nlqc"))
        .args(args)
        .env_remove("NLQC_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn gate_cnot_both_techniques() {
    let o = nlqc(&["gate", "CNOT", "--technique", "both"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("cc  bound 0.500"), "{text}");
    assert!(text.contains("ce  bound 1.000"), "{text}");
}

#[test]
fn gate_ct_rounds_to_table_precision() {
    let text = stdout(&nlqc(&["gate", "CT", "--technique", "both"]));
    assert!(text.contains("cc  bound 0.117"), "{text}");
    assert!(text.contains("ce  bound 0.000"), "{text}");
}

#[test]
fn swap_reports_flag() {
    let text = stdout(&nlqc(&["gate", "SWAP", "--technique", "cc"]));
    assert!(text.contains("not controllably correlated"), "{text}");
    assert!(text.contains("bound 0.000"));
}

#[test]
fn exit_codes() {
    assert_eq!(nlqc(&["gate", "Frobnicate"]).status.code(), Some(2));
    assert_eq!(nlqc(&["campaign", "--samples", "0"]).status.code(), Some(2));
    assert_eq!(nlqc(&["repeat", "CS", "--technique", "ce", "-n", "2"]).status.code(), Some(4));
    assert_eq!(nlqc(&["bogus"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"dim":4,"re":[[1,1,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],"im":[[0,0,0,0],[0,0,0,0],[0,0,0,0],[0,0,0,0]]}"#).unwrap();
    assert_eq!(nlqc(&["gate", "--matrix", bad.to_str().unwrap()]).status.code(), Some(3));
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "[1, 2").unwrap();
    assert_eq!(nlqc(&["gate", "--matrix", garbage.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn matrix_file_matches_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cnot.json");
    let file = MatrixFile::from_matrix(catalog_lookup("CNOT").unwrap().matrix());
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let text = stdout(&nlqc(&["gate", "--matrix", path.to_str().unwrap(), "--technique", "cc"]));
    assert!(text.contains("cc  bound 0.500"), "{text}");
}

#[test]
fn repeat_scaling() {
    assert!(stdout(&nlqc(&["repeat", "CNOT", "--technique", "ce", "-n", "5"])).contains("bound 5.000"));
    assert!(stdout(&nlqc(&["repeat", "CNOT", "--technique", "cc", "-n", "2"])).contains("bound 1.000"));
}

#[test]
fn structured_output_round_trips() {
    let o = nlqc(&["gate", "B", "--format", "structured"]);
    let text = stdout(&o);
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string(&value).unwrap();
    assert_eq!(serde_json::from_str::<serde_json::Value>(&again).unwrap(), value);
    let reports: Vec<nlqc::bounds::BoundReport> = serde_json::from_value(value["reports"].clone()).unwrap();
    assert_eq!(reports.len(), 2);
    let bound = reports[1].bound;
    assert_eq!(format!("{bound:.16e}").parse::<f64>().unwrap(), bound);
}

#[test]
fn seed_from_environment() {
    let args = ["gate", "Sycamore", "--technique", "cc", "--format", "structured", "--restarts", "9"];
    let env = Command::new(env!("CARGO_BIN_EXE_nlqc")).args(args).env("NLQC_SEED", "5").output().unwrap();
    let mut flag_args = args.to_vec();
    flag_args.extend(["--seed", "5"]);
    assert_eq!(stdout(&env), stdout(&nlqc(&flag_args)));
}

#[test]
fn campaign_is_deterministic_and_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = nlqc(&["campaign", "--samples", "100", "--seed", "7", "--out", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    let full = std::fs::read_to_string(&a).unwrap();
    assert_eq!(full, std::fs::read_to_string(&b).unwrap());
    assert_eq!(full.lines().count(), 101);
    assert!(full.starts_with("sample_index,substream_seed,reference,lambda1,lambda2,bound\n"));

    let summary: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("a.csv.summary.json")).unwrap()).unwrap();
    assert_eq!(summary["samples"], 100);
    let bins = summary["bins"].as_array().unwrap();
    assert_eq!(bins.len(), 50);
    assert_eq!(bins.iter().map(|b| b["count"].as_u64().unwrap()).sum::<u64>(), 100);

    // Interrupted run: 40 complete records and half a line.
    let mut cut: String = full.lines().take(41).map(|l| format!("{l}\n")).collect();
    cut.push_str(&full.lines().nth(41).unwrap()[..10]);
    std::fs::write(&b, cut).unwrap();
    let o = nlqc(&["campaign", "--samples", "100", "--seed", "7", "--out", b.to_str().unwrap(), "--resume"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(std::fs::read_to_string(&b).unwrap(), full);
}
