use std::io::Write as _;
use std::process::{Command, Output, Stdio};

use mahonian_core::bijection::TupleSet;
use mahonian_core::enumeration::{DistributionReport, Histogram, JointHistogram};

fn mahonian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mahonian")).args(args).env_remove("MAHONIAN_MAX_SIZE").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn documented_examples() {
    let o = mahonian(&["phi", "--word", "3,5,4,4,1,1,4,2,5,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "3,5,4,1,1,4,2,4,5,3\n");
    assert_eq!(stdout(&mahonian(&["count", "--pattern", "2[31]", "--word", "3,4,1,5,6,2"])), "4\n");
    assert_eq!(stdout(&mahonian(&["stat", "--stat", "des", "--word", "1,2,3"])), "0\n");
    assert_eq!(stdout(&mahonian(&["stat", "--stat", "maj", "--word", "1,2,1"])), "2\n");
    assert_eq!(stdout(&mahonian(&["stat", "--stat", "def:Res", "--word", "3,6,1,7,8,4"])), "3\n");
    let restricted = mahonian(&["count", "--pattern", "[21]2", "--anchor", "1", "--value", "4", "--word", "4,3,2,1,4,4,1,4"]);
    assert_eq!(stdout(&restricted), "4\n");
}

#[test]
fn trace_shows_every_stage() {
    let o = mahonian(&["phi", "--word", "3,5,4,4,1,1,4,2,5,3", "--trace"]);
    let text = stdout(&o);
    assert!(text.contains("v=4: W3 -> W4  W4 -> W7  W7 -> W3"));
    assert!(text.contains("U7    W7    W3       4  1 outsider   3"));
    assert!(text.contains("5_1-insertion: 3_1 - 5_1 4_1 1_1 - 1_2 - 4_2 2_1 - 4_3 - 5_2 3_2"));
    assert_eq!(text.matches("-insertion:").count(), 10);
    assert!(text.ends_with("phi(w) = 3-541-1-42-4-53\n"));
}

#[test]
fn delta_file_round_trips_through_zeta() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.tuples");
    let p = path.to_str().unwrap();
    let o = mahonian(&["delta", "--word", "3,5,4,4,1,1,4,2,5,3", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert_eq!(stdout(&mahonian(&["zeta", "--input", p])), "3,5,4,4,1,1,4,2,5,3\n");

    let mut child = Command::new(env!("CARGO_BIN_EXE_mahonian")).args(["zeta"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "3,5,4,4,1,1,4,2,5,3\n");
}

#[test]
fn invalid_tuple_sets_are_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.tuples");
    std::fs::write(&path, "2 1 closer 0\n1 1 opener 0\n2 2 closer 0\n").unwrap();
    let o = mahonian(&["zeta", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("invalid: balance"));

    std::fs::write(&path, "2 1 sideways 0\n").unwrap();
    assert_eq!(mahonian(&["zeta", "--input", path.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn json_outputs_parse_back() {
    let o = mahonian(&["dist", "--stat", "maj", "--multiset", "1:2,2:1", "--json"]);
    let r: DistributionReport<Histogram> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.counts, Histogram::from([(0, 1), (1, 1), (2, 1)]));
    assert_eq!(r.total, 3);
    assert_eq!(r.stat, "maj");

    let o = mahonian(&["joint", "--stat", "maj", "--multiset", "1:2,2:1", "--json"]);
    let r: DistributionReport<JointHistogram> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.total, 3);
    assert_eq!(r.counts.counts.len(), 3);

    let o = mahonian(&["delta", "--word", "4,3,1,4,4,2", "--json"]);
    let set: TupleSet = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(set, mahonian_core::bijection::delta(&[4, 3, 1, 4, 4, 2]));
}

#[test]
fn histogram_text_format() {
    let o = mahonian(&["dist", "--stat", "maj", "--multiset", "1:1,2:1,3:1"]);
    assert_eq!(stdout(&o), "0\t1\n1\t2\n2\t2\n3\t1\n");
}

#[test]
fn thread_count_does_not_change_output() {
    for cmd in ["dist", "joint"] {
        let one = mahonian(&[cmd, "--stat", "mad3", "--multiset", "1:2,2:2,3:2", "--threads", "1"]);
        let four = mahonian(&[cmd, "--stat", "mad3", "--multiset", "1:2,2:2,3:2", "--threads", "4"]);
        assert_eq!(one.stdout, four.stdout);
    }
    let one = mahonian(&["mine", "--base", "madl", "--add", "2", "--max-size", "5", "--threads", "1"]);
    let four = mahonian(&["mine", "--base", "madl", "--add", "2", "--max-size", "5", "--threads", "4"]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn miner_report() {
    let o = mahonian(&["mine", "--base", "mad", "--add", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 10);
    assert_eq!(text.lines().filter(|l| l.ends_with("PASS")).count(), 4);
    assert!(text.contains("FAIL @ {1:1,2:2}"));
}

#[test]
fn mahonian_verdicts_and_exit_codes() {
    let o = mahonian(&["mahonian", "--stat", "mad4", "--max-size", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("PASS mad4"));

    let o = mahonian(&["mahonian", "--stat", "des"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "FAIL des @ {1:1,2:1,3:1}\n");

    // des and maj agree on every multiset of size <= 2
    let o = Command::new(env!("CARGO_BIN_EXE_mahonian")).args(["mahonian", "--stat", "des"]).env("MAHONIAN_MAX_SIZE", "2").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(mahonian(&["bogus"]).status.code(), Some(1));
    assert_eq!(mahonian(&["stat", "--stat", "nope", "--word", "1,2"]).status.code(), Some(1));
    assert_eq!(mahonian(&["stat", "--stat", "des", "--word", "1,0"]).status.code(), Some(1));
    assert_eq!(mahonian(&["count", "--pattern", "[231]", "--word", "1,2"]).status.code(), Some(1));
    assert_eq!(mahonian(&["count", "--pattern", "21", "--word", "2,1", "--anchor", "3", "--value", "1"]).status.code(), Some(1));
    assert_eq!(mahonian(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_suite_runs() {
    let o = mahonian(&["verify", "--suite", "bijection", "--max-size", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
    let o = mahonian(&["verify", "--suite", "table1", "--max-size", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["checks"].as_array().unwrap().len() > 10);
}
