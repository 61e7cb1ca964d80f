//! End-to-end tests against the compiled binary: exit codes, output
//! formats, determinism, config file handling, and the sieve cache.

use std::process::{Command, Output};

fn polyprime() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_polyprime"));
    // Isolate from any ambient configuration.
    cmd.env_remove("POLYPRIME_CONFIG");
    cmd
}

fn run(args: &[&str]) -> Output {
    polyprime().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stdout).expect("utf8 stdout")
}

fn stderr_of(output: &Output) -> &str {
    std::str::from_utf8(&output.stderr).expect("utf8 stderr")
}

#[test]
fn classify_text_names_the_regime() {
    let out = run(&["classify", "--r", "3", "--s", "3", "--mu", "1", "--nu", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("overall regime: Sparse"), "{text}");
    assert!(text.contains("2x^2 + 2y^2 + x + y"), "{text}");
}

#[test]
fn classify_csv_is_pinned() {
    let out = run(&[
        "classify", "--r", "4", "--s", "4", "--mu", "1", "--nu", "1", "--format", "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let expected = "\
case,a,b,c,e,f,g,delta,D,content,regime
EE,4,0,4,0,0,0,-64,0,4,Negligible
EO,4,0,4,0,4,1,-64,0,1,Dense
OE,4,0,4,4,0,1,-64,0,1,Dense
OO,4,0,4,4,4,2,-64,0,2,Negligible
";
    assert_eq!(stdout_of(&out), expected);
}

#[test]
fn classify_json_parses_and_agrees() {
    let out = run(&[
        "classify", "--r", "4", "--s", "4", "--mu", "1", "--nu", "2", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    assert_eq!(doc["overall"], "Dense");
    assert_eq!(doc["spec"]["nu"], 2);
    assert_eq!(doc["cases"].as_array().unwrap().len(), 4);
}

#[test]
fn count_lists_the_frozen_members() {
    let out = run(&[
        "count", "--r", "3", "--s", "3", "--mu", "1", "--nu", "1", "--limit", "100", "--list",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains(": 14"), "{text}");
    assert!(
        text.contains("members: 2 7 11 13 29 31 37 43 61 67 73 79 83 97"),
        "{text}"
    );
}

#[test]
fn count_csv_reports_checkpoints_plus_limit() {
    let out = run(&[
        "count",
        "--r",
        "3",
        "--s",
        "3",
        "--mu",
        "1",
        "--nu",
        "1",
        "--limit",
        "200",
        "--checkpoints",
        "50,100",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_of(&out), "N,count\n50,8\n100,14\n200,25\n");
}

#[test]
fn fit_csv_has_the_plot_schema() {
    let out = run(&[
        "fit",
        "--r",
        "3",
        "--s",
        "3",
        "--mu",
        "1",
        "--nu",
        "1",
        "--checkpoints",
        "10000,100000,1000000",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("N,count,predicted_dense,predicted_sparse")
    );
    assert_eq!(text.lines().count(), 4);
    assert!(
        text.lines().nth(1).unwrap().starts_with("10000,473,"),
        "{text}"
    );
}

#[test]
fn ap_json_reports_residue_rows() {
    let out = run(&[
        "ap",
        "--r",
        "3",
        "--s",
        "3",
        "--mu",
        "1",
        "--nu",
        "1",
        "--modulus",
        "4",
        "--limit",
        "100",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(stdout_of(&out)).unwrap();
    let rows = doc["reports"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[1]["primes"], 11);
    assert_eq!(rows[1]["representable"], 6);
    assert_eq!(rows[1]["ratio"], 0.545455);
    assert_eq!(rows[0]["admissible"], false);
}

#[test]
fn oq_csv_counts_by_residue() {
    let out = run(&["oq", "--modulus", "8", "--limit", "100", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_of(&out),
        "residue,checkpoint,count\n1,100,2\n3,100,4\n5,100,4\n7,100,3\n"
    );
}

#[test]
fn identity_check_reports_both_laws() {
    let out = run(&["identity-check", "--limit", "2000", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(
        text.contains("triangular_identity,2000,2001,true"),
        "{text}"
    );
    assert!(text.contains("prime_square_law,2000,303,true"), "{text}");
}

#[test]
fn usage_problems_exit_2() {
    // clap-level: missing required flag, unknown subcommand.
    assert_eq!(run(&["classify", "--r", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // domain-level: weights not coprime, gonality too small.
    let out = run(&["classify", "--r", "3", "--s", "3", "--mu", "2", "--nu", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_of(&out).contains("coprime"), "{}", stderr_of(&out));
    let out = run(&["classify", "--r", "2", "--s", "3", "--mu", "1", "--nu", "1"]);
    assert_eq!(out.status.code(), Some(2));
    // oq with neither a limit nor checkpoints.
    assert_eq!(run(&["oq", "--modulus", "4"]).status.code(), Some(2));
}

#[test]
fn help_and_version_exit_0() {
    let help = run(&["--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout_of(&help).contains("classify"));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
    assert_eq!(run(&["count", "--help"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    let base = [
        "count",
        "--r",
        "3",
        "--s",
        "4",
        "--mu",
        "2",
        "--nu",
        "1",
        "--limit",
        "50000",
        "--checkpoints",
        "1000,10000",
        "--list",
        "--format",
        "json",
    ];
    let one = run(&[&base[..], &["--workers", "1"]].concat());
    let four = run(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(four.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let again = run(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(four.stdout, again.stdout);
}

#[test]
fn out_flag_writes_the_file_and_keeps_stdout_quiet() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = run(&[
        "classify",
        "--r",
        "3",
        "--s",
        "3",
        "--mu",
        "1",
        "--nu",
        "1",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("case,a,b,c,e,f,g,delta,D,content,regime\n"));
}

#[test]
fn cache_is_created_reused_and_grown() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let first = run(&["sieve", "--limit", "10000", "--cache", cache]);
    assert_eq!(first.status.code(), Some(0));
    let path = dir.path().join("primes.sieve");
    assert!(path.exists());
    let bytes_small = std::fs::read(&path).unwrap();

    // A smaller request reuses the cached sieve byte-for-byte.
    let second = run(&["sieve", "--limit", "5000", "--cache", cache]);
    assert_eq!(second.status.code(), Some(0));
    assert!(stdout_of(&second).contains("primes up to 5000: 669"));
    assert_eq!(std::fs::read(&path).unwrap(), bytes_small);

    // A larger request rebuilds and overwrites.
    let third = run(&["sieve", "--limit", "20000", "--cache", cache]);
    assert_eq!(third.status.code(), Some(0));
    assert!(stdout_of(&third).contains("primes up to 20000: 2262"));
    assert_ne!(std::fs::read(&path).unwrap(), bytes_small);

    // Counting against the cache gives the same answer as without it.
    let with_cache = run(&[
        "count", "--r", "3", "--s", "3", "--mu", "1", "--nu", "1", "--limit", "10000", "--cache",
        cache, "--format", "json",
    ]);
    let without = run(&[
        "count", "--r", "3", "--s", "3", "--mu", "1", "--nu", "1", "--limit", "10000", "--format",
        "json",
    ]);
    assert_eq!(with_cache.stdout, without.stdout);
}

#[test]
fn corrupt_cache_exits_3_and_stays_put() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("primes.sieve");
    std::fs::write(&path, b"not a sieve").unwrap();
    let out = run(&[
        "sieve",
        "--limit",
        "100",
        "--cache",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr_of(&out).contains("corrupt"), "{}", stderr_of(&out));
    assert_eq!(std::fs::read(&path).unwrap(), b"not a sieve");
}

#[test]
fn config_file_sets_defaults_and_flags_override() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("polyprime.conf");
    std::fs::write(&conf, "format = json\nworkers = 2\n").unwrap();
    let json = polyprime()
        .args(["sieve", "--limit", "1000"])
        .env("POLYPRIME_CONFIG", &conf)
        .output()
        .unwrap();
    assert_eq!(json.status.code(), Some(0));
    assert!(stdout_of(&json).starts_with('{'), "{}", stdout_of(&json));

    let csv = polyprime()
        .args(["sieve", "--limit", "1000", "--format", "csv"])
        .env("POLYPRIME_CONFIG", &conf)
        .output()
        .unwrap();
    assert_eq!(csv.status.code(), Some(0));
    assert_eq!(stdout_of(&csv), "limit,primes\n1000,168\n");
}

#[test]
fn config_file_problems_are_loud() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("polyprime.conf");
    std::fs::write(&conf, "segment_bytes = 9\n").unwrap();
    let out = polyprime()
        .args(["sieve", "--limit", "1000"])
        .env("POLYPRIME_CONFIG", &conf)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(
        stderr_of(&out).contains("unknown config key"),
        "{}",
        stderr_of(&out)
    );

    let missing = polyprime()
        .args(["sieve", "--limit", "1000"])
        .env("POLYPRIME_CONFIG", dir.path().join("absent.conf"))
        .output()
        .unwrap();
    assert_eq!(missing.status.code(), Some(3));
}

#[test]
fn limits_beyond_the_configured_maximum_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("polyprime.conf");
    std::fs::write(&conf, "max_limit = 100000\n").unwrap();
    let out = polyprime()
        .args(["sieve", "--limit", "200000"])
        .env("POLYPRIME_CONFIG", &conf)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(
        stderr_of(&out).contains("exceeds the configured maximum"),
        "{}",
        stderr_of(&out)
    );

    // At or under the maximum still works.
    let ok = polyprime()
        .args(["sieve", "--limit", "100000"])
        .env("POLYPRIME_CONFIG", &conf)
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn reports_end_with_exactly_one_newline() {
    for args in [
        &["classify", "--r", "3", "--s", "5", "--mu", "1", "--nu", "3"][..],
        &["sieve", "--limit", "100", "--format", "json"],
        &["oq", "--modulus", "4", "--limit", "100", "--format", "csv"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = stdout_of(&out);
        assert!(
            text.ends_with('\n') && !text.ends_with("\n\n"),
            "{args:?}: {text:?}"
        );
    }
}
