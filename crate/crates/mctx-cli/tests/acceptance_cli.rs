//! End-to-end acceptance for the command-line surface: the golden corpus
//! runs and byte-level determinism, driving the real binary.

use std::path::PathBuf;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mctx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn criterion_9_golden_eval_runs() {
    let tcp = corpus("tcp.json");
    let tcp = tcp.to_str().unwrap();

    let start = Instant::now();
    let lossless = run(&["eval", tcp, "--noise", "0/1"]);
    let lossy = run(&["eval", tcp, "--noise", "1/10"]);
    let elapsed = start.elapsed();

    assert!(lossless.status.success(), "lossless eval failed: {lossless:?}");
    let text = stdout(&lossless);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 1, "lossless run must print a single outcome row: {text}");
    assert!(rows[0].contains("CLI:11"), "missing client label: {text}");
    assert!(rows[0].contains("SRV:21"), "missing server label: {text}");
    assert!(rows[0].trim_end().ends_with("1/1"), "missing certain probability: {text}");

    assert!(lossy.status.success());
    let text = stdout(&lossy);
    let success = text
        .lines()
        .find(|l| l.contains("CLI:11") && l.contains("SRV:21"))
        .expect("success row present");
    assert!(success.trim_end().ends_with("729/1000"), "wrong success probability: {text}");

    let ok = elapsed <= Duration::from_secs(5);
    println!(
        "{}  criterion 9: golden corpus evaluates to 1/1 and 729/1000 ({elapsed:?})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "golden runs exceeded the 5s budget: {elapsed:?}");
}

#[test]
fn criterion_10_byte_identical_reports() {
    let args = ["laws", "--seed", "42", "--cases", "40"];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    let ok = first.stdout == second.stdout && !first.stdout.is_empty();
    println!("{}  criterion 10: repeated law runs are byte-identical", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "reports differ between runs with the same seed");

    // and the evaluation output is deterministic too
    let tcp = corpus("tcp.json");
    let args = ["eval", tcp.to_str().unwrap(), "--json"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn eval_probabilities_sum_to_exactly_one() {
    let tcp = corpus("tcp.json");
    for noise in ["0/1", "1/10", "1/3", "1/1"] {
        let out = run(&["eval", tcp.to_str().unwrap(), "--noise", noise, "--json"]);
        assert!(out.status.success());
        let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        let total = v["outcomes"]
            .as_array()
            .unwrap()
            .iter()
            .map(|row| mctx::rational::parse_ratio(row["probability"].as_str().unwrap()).unwrap())
            .fold(mctx::rational::zero(), |acc, p| acc + p);
        assert_eq!(total, mctx::rational::one(), "probabilities at noise {noise} do not sum to 1");
    }
}

#[test]
fn check_reports_parties_and_rejects_corruption() {
    let tcp = corpus("tcp.json");
    let out = run(&["check", tcp.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("client"));
    assert!(text.contains("server"));

    // corrupting the server session string fails with a stage-1 diagnostic
    let original = std::fs::read_to_string(&tcp).unwrap();
    let corrupted = original.replace("?Msg < !Msg < ?Msg", "!Msg < ?Msg < !Msg");
    assert_ne!(original, corrupted);
    let dir = std::env::temp_dir().join("mctx-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("tcp_corrupt.json");
    std::fs::write(&bad, corrupted).unwrap();
    let out = run(&["check", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "type errors exit with 1");
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("server") && err.contains("stage 1"), "diagnostic names the stage: {err}");

    // parse errors exit with 3
    let garbled = dir.join("garbled.json");
    std::fs::write(&garbled, "{ not json").unwrap();
    let out = run(&["check", garbled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));

    // an empty party list is an explicit error
    let empty = dir.join("empty.json");
    std::fs::write(
        &empty,
        r#"{"schema": "mctx/1", "theory": "finfn", "objects": {}, "parties": []}"#,
    )
    .unwrap();
    let out = run(&["check", empty.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no parties"));
}

#[test]
fn compose_roundtrips_through_its_own_output() {
    let tcp = corpus("tcp.json");
    let dir = std::env::temp_dir().join("mctx-acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let out_path = dir.join("composite.json");
    let out = run(&["compose", tcp.to_str().unwrap(), "--out", out_path.to_str().unwrap()]);
    assert!(out.status.success());

    // the written composite re-ingests to exactly the in-memory composite
    let written: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    let sig = mctx::codec::Signature::from_json(&written).unwrap();
    let reloaded =
        mctx::codec::morphism_from_json(&sig, &Default::default(), &written["composite"]).unwrap();

    let channel = mctx::handshake::noise_channel(&mctx::rational::ratio(1, 10)).unwrap();
    let direct = mctx::handshake::compose_handshake(
        &mctx::handshake::client_party(mctx::theory::TheoryKind::FinStoch),
        &mctx::handshake::server_party(mctx::theory::TheoryKind::FinStoch),
        &channel,
    )
    .unwrap();
    assert!(reloaded.equal(&direct).unwrap());
    // a 9-by-9 stochastic matrix over the joint state
    assert_eq!(reloaded.dom().carrier(), 9);
    assert_eq!(reloaded.cod().carrier(), 9);
}

#[test]
fn deterministic_variant_composes_to_a_table() {
    let finfn = corpus("tcp_finfn.json");
    let out = run(&["compose", finfn.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["composite"]["kind"], "finfn");
    // the noiseless deterministic run reaches the success state from anywhere
    let table = v["composite"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 9);
    assert_eq!(table[0], 8);
}

#[test]
fn laws_failures_exit_with_two() {
    // zero cases pass vacuously with a warning; the exit code stays zero
    let out = run(&["laws", "--cases", "0"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("vacuously"));
}
