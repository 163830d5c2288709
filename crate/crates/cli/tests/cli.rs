use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn scenario(text: &str) -> NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".endsum").tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn endsum(args: &[&str], file: &NamedTempFile) -> Output {
    Command::new(env!("CARGO_BIN_EXE_endsum"))
        .args(args)
        .arg(file.path())
        .output()
        .unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn elaboration_error_suppresses_all_output() {
    let f = scenario(
        "space Y = ladder(L(2), S(3))\n\
         invariants Y primes 2\n\
         space Bad = ladder(L(2), Sigma(1))\n\
         invariants Bad primes 2\n",
    );
    let out = endsum(&["run"], &f);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err = stderr(&out);
    assert!(err.contains(":3:13: error: ladder stringers must have equal dimension"), "{err}");
    assert!(err.contains("dimension 3") && err.contains("dimension 2"), "{err}");
}

#[test]
fn parse_error_lists_expected_tokens() {
    let f = scenario("space Y = ladder(L(2) S(3))\n");
    let out = endsum(&["check"], &f);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains(":1:23: error: unexpected `S`; expected `,`"), "{}", stderr(&out));
}

#[test]
fn check_reports_counts() {
    let f = scenario("space Y = M(2, 3)\ncensus Y primes 2, 3\n");
    let out = endsum(&["check"], &f);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "ok: 1 space(s), 1 directive(s)\n");
}

#[test]
fn human_verdicts() {
    let f = scenario(
        "space A = ladder(Sigma(1), S(2)) cap H(1) cap D(3)\n\
         space B = ladder(Sigma(2), S(2)) cap H(2) cap D(3)\n\
         distinguish A B primes 2\n\
         space C = stringer(Sigma(1))\n\
         distinguish A C primes 2\n",
    );
    let out = endsum(&["run"], &f);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("  DISTINGUISHED by H^1 finite part\n"), "{text}");
    assert!(text.contains("H^1 uncountable summand"), "{text}");
    let f = scenario(
        "space A = ladder(Sigma(1), S(2))\n\
         space B = ladder(Sigma(1), S(2)) cap H(1)\n\
         distinguish A B primes 2, 3\n",
    );
    let text = stdout(&endsum(&["run"], &f));
    assert!(text.contains("  not distinguished by computed invariants\n"), "{text}");
}

#[test]
fn oracle_reports_first_stable_depth() {
    let f = scenario("oracle-check ladder(L(2), S(3)) prime 2 depth 8\n");
    let text = stdout(&endsum(&["run"], &f));
    assert!(text.contains("  closed-form and oracle agree; stabilized at depth 4\n"), "{text}");
    let f = scenario("oracle-check ladder(L(3), L(3)) prime 3\n");
    let json = stdout(&endsum(&["run", "--format", "structured"], &f));
    assert!(json.contains("\"requested_depth\":8,\"depth\":8,\"stabilized\":true,\"stabilized_at\":4"), "{json}");
    let json = stdout(&endsum(&["run", "--format", "structured", "--depth", "2"], &f));
    assert!(json.contains("\"requested_depth\":2,\"depth\":2,"), "{json}");
    let f = scenario("oracle-check ladder(L(3), L(3)) prime 3 depth 16\n");
    let json = stdout(&endsum(&["run", "--format", "structured", "--depth", "4"], &f));
    assert!(json.contains("\"requested_depth\":16,"), "{json}");
}

#[test]
fn timing_is_opt_in() {
    let f = scenario("space Y = stringer(L(3))\ninvariants Y primes 3\n");
    let plain = stdout(&endsum(&["run", "--format", "structured", "--seedless"], &f));
    assert!(plain.contains("\"timing\":null"));
    let timed = stdout(&endsum(&["run", "--format", "structured", "--timing"], &f));
    assert!(timed.contains("\"timing\":{\"elapsed_ms\":"));
}

#[test]
fn missing_file_and_bad_flags() {
    let out = Command::new(env!("CARGO_BIN_EXE_endsum"))
        .args(["run", "/nonexistent/scenario.endsum"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let f = scenario("");
    assert!(!endsum(&["run", "--depth", "0"], &f).status.success());
    assert!(!endsum(&["run", "--format", "xml"], &f).status.success());
}
