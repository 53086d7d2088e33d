//! Acceptance suite: every criterion runs at its stated budget and
//! tolerance and prints one pass/fail line. Run with `--nocapture` to see
//! the lines; each criterion is also its own test.

use mctx::laws::{self, FamilyReport, LawConfig};
use mctx::rational::{format_ratio, one, ratio, Rational};
use mctx::session::{dinaturality_refactor_check, outcome_distribution, Initial};
use mctx::theory::TheoryKind;
use mctx::handshake;
use std::time::{Duration, Instant};

fn cfg(cases: usize) -> LawConfig {
    LawConfig { seed: 17, cases, max_carrier: 2, ..Default::default() }
}

fn criterion(n: usize, what: &str, report: &FamilyReport, budget: Duration, elapsed: Duration) {
    let ok = report.passed() && elapsed <= budget;
    println!(
        "{}  criterion {n}: {what} ({} cases, {} checks, {:?})",
        if ok { "PASS" } else { "FAIL" },
        report.cases,
        report.checks,
        elapsed
    );
    assert!(
        report.passed(),
        "criterion {n} failed: {:?}",
        report.failures.iter().take(3).collect::<Vec<_>>()
    );
    assert!(elapsed <= budget, "criterion {n} exceeded its {budget:?} budget: {elapsed:?}");
}

#[test]
fn criterion_1_splice_coherence() {
    let start = Instant::now();
    let report = laws::splice_coherence_at(&cfg(500), 3);
    let elapsed = start.elapsed();
    assert!(report.cases >= 500);
    criterion(1, "pentagon and triangle for spliced arrows", &report, Duration::from_secs(10), elapsed);
}

#[test]
fn criterion_2_produoidal_coherence() {
    let start = Instant::now();
    // each case instantiates all twelve laxator diagrams once
    let report = laws::produoidal_coherence(&cfg(300));
    let elapsed = start.elapsed();
    assert!(report.cases >= 300);
    criterion(2, "laxator coherence diagrams", &report, Duration::from_secs(30), elapsed);
}

#[test]
fn criterion_3_context_operations() {
    let start = Instant::now();
    // thirty instances per operation, every hole filled exhaustively
    let report = laws::context_operations(&cfg(300));
    let elapsed = start.elapsed();
    criterion(3, "context action algebra, fully filled", &report, Duration::from_secs(30), elapsed);
}

#[test]
fn criterion_4_normalization() {
    let start = Instant::now();
    let report = laws::normalization(&cfg(300));
    let elapsed = start.elapsed();
    criterion(4, "normalization preserves fills and is idempotent", &report, Duration::from_secs(30), elapsed);
}

#[test]
fn criterion_5_dinaturality() {
    let start = Instant::now();
    let report = laws::dinaturality(&cfg(500));
    let elapsed = start.elapsed();
    assert!(report.cases >= 500);
    criterion(5, "dinaturality slides and the handshake refactoring", &report, Duration::from_secs(30), elapsed);

    // the refactoring verdict on the shipped encoding, stated directly
    for kind in [TheoryKind::FinFn, TheoryKind::FinStoch] {
        let verdict = dinaturality_refactor_check(
            &handshake::client_keeping_junk(kind),
            &handshake::client_projecting_early(kind),
        )
        .unwrap();
        assert!(verdict.equivalent, "refactoring rejected over {kind:?}");
    }
}

#[test]
fn criterion_6_cartesian_lens_quotient() {
    let start = Instant::now();
    let report = laws::cartesian_lens_quotient();
    let elapsed = start.elapsed();
    criterion(6, "exactly 64 lens classes at carrier two", &report, Duration::from_secs(60), elapsed);
}

#[test]
fn criterion_7_send_get_functoriality() {
    let start = Instant::now();
    let report = laws::send_get_functors(&cfg(300));
    let elapsed = start.elapsed();
    assert!(report.cases >= 300);
    criterion(7, "send and get are monoidal functors", &report, Duration::from_secs(30), elapsed);
}

#[test]
fn criterion_8_counit_soundness() {
    let start = Instant::now();
    let report = laws::counit_soundness(&cfg(300));
    let elapsed = start.elapsed();
    assert!(report.cases >= 300);
    criterion(8, "contour relations hold under interpretation", &report, Duration::from_secs(30), elapsed);
}

#[test]
fn criterion_9_handshake_golden_values() {
    let start = Instant::now();
    let kind = TheoryKind::FinStoch;
    let client = handshake::client_party(kind);
    let server = handshake::server_party(kind);

    let lossless = handshake::noise_channel(&Rational::from_integer(0.into())).unwrap();
    let closed = handshake::compose_handshake(&client, &server, &lossless).unwrap();
    let outcomes = outcome_distribution(&closed, &Initial::Point(0)).unwrap();
    assert_eq!(outcomes.len(), 1, "lossless run must have a single outcome");
    assert_eq!(outcomes[0].0, handshake::success_index());
    assert_eq!(format_ratio(&outcomes[0].1), "1/1");

    let lossy = handshake::noise_channel(&ratio(1, 10)).unwrap();
    let closed = handshake::compose_handshake(&client, &server, &lossy).unwrap();
    let outcomes = outcome_distribution(&closed, &Initial::Point(0)).unwrap();
    let success = outcomes.iter().find(|(i, _)| *i == handshake::success_index()).unwrap();
    assert_eq!(format_ratio(&success.1), "729/1000");
    let total: Rational = outcomes.iter().map(|(_, p)| p.clone()).sum();
    assert_eq!(total, one());

    let elapsed = start.elapsed();
    let ok = elapsed <= Duration::from_secs(5);
    println!(
        "{}  criterion 9: handshake evaluates to 1/1 lossless and 729/1000 at one-tenth noise ({elapsed:?})",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion 9 exceeded its 5s budget: {elapsed:?}");
}

#[test]
fn criterion_10_deterministic_reports() {
    let config = cfg(60);
    let first = laws::render(&laws::run_all(&config));
    let second = laws::render(&laws::run_all(&config));
    let ok = first == second && !first.is_empty();
    println!("{}  criterion 10: identical seeds render byte-identical reports", if ok { "PASS" } else { "FAIL" });
    assert!(ok);
}
