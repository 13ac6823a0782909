use std::path::Path;
use std::process::{Command, Output};

fn prdc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_prdc")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_owned()
}

#[test]
fn compute_hand_fixture() {
    let dir = tempfile::tempdir().unwrap();
    let real = write(dir.path(), "real.csv", "0\n1\n3\n");
    let fake = write(dir.path(), "fake.csv", "0.5\n10\n");
    let o = prdc(&["compute", &real, &fake, "--k-pr", "1", "--k-dc", "1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["precision"].as_f64(), Some(0.5));
    assert_eq!(v["recall"].as_f64(), Some(1.0));
    assert_eq!(v["density"].as_f64(), Some(1.0));
    assert_eq!(v["coverage"].as_f64(), Some(0.666667));
    assert_eq!(v["k_pr"], 1);
    assert_eq!(v["n_fake"], 2);
    assert!(stdout(&o).contains("\"coverage\":0.666667"));

    let csv = prdc(&["compute", &real, &fake, "-k", "1", "--output", "csv"]);
    assert_eq!(
        stdout(&csv),
        "precision,recall,density,coverage,k_pr,k_dc,n_real,n_fake\n0.500000,1.000000,1.000000,0.666667,1,1,3,2\n"
    );
}

#[test]
fn compute_identical_file() {
    let dir = tempfile::tempdir().unwrap();
    // Generic position: no two pairwise distances coincide.
    let rows: String =
        (1..31).map(|i| format!("{:?},{:?}\n", (i as f64).sqrt() * 1.7, (i as f64 * 0.9).sin())).collect();
    let path = write(dir.path(), "x.csv", &rows);
    let o = prdc(&["compute", &path, &path]);
    assert!(o.status.success());
    let text = stdout(&o);
    for key in ["precision", "recall", "density", "coverage"] {
        assert!(text.contains(&format!("\"{key}\":1.000000")), "{text}");
    }
}

#[test]
fn error_paths_exit_nonzero_with_empty_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "good.csv", "0\n1\n3\n");
    let nan = write(dir.path(), "nan.csv", "0\nnan\n3\n");
    let ragged = write(dir.path(), "ragged.csv", "0,1\n2\n");
    let two_d = write(dir.path(), "two.csv", "0,1\n2,3\n4,5\n");
    let missing = dir.path().join("missing.csv");
    let missing = missing.to_str().unwrap();

    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["compute", &good, missing], 2),
        (vec!["compute", &good, &nan], 2),
        (vec!["compute", &good, &ragged], 2),
        (vec!["compute", &good, &two_d], 2),
        (vec!["compute", &good, &good, "-k", "3"], 3),
        (vec!["compute", &good, &good, "--format", "xml"], 3),
        (vec!["expected-coverage", "5", "5", "5"], 3),
        (vec!["select-k", "3", "1000", "0.0000001"], 3),
        (vec!["select-k", "10", "10", "1.5"], 3),
        (vec!["split-outliers", &good, "-k", "5"], 3),
        (vec!["frobnicate"], 1),
        (vec!["compute", &good], 1),
        (vec!["select-k", "10", "10", "0.1", "--no-such-flag"], 1),
        (vec!["simulate", "mode-drop"], 1),
    ];
    for (args, code) in cases {
        let o = prdc(&args);
        assert_eq!(o.status.code(), Some(code), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(o.stdout.is_empty(), "{args:?} wrote to stdout");
        assert!(!o.stderr.is_empty());
        if code != 1 {
            let err = String::from_utf8(o.stderr).unwrap();
            assert_eq!(err.lines().count(), 1, "{err}");
            let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
            assert_eq!(v["code"], code);
        }
    }
    let o = prdc(&["compute", &good, missing]);
    assert!(String::from_utf8(o.stderr).unwrap().contains("missing.csv"));
}

#[test]
fn analytic_subcommands() {
    assert_eq!(stdout(&prdc(&["expected-coverage", "10000", "10000", "5"])), "0.969\n");
    assert_eq!(stdout(&prdc(&["expected-coverage", "2", "1", "1", "--decimals", "6"])), "0.500000\n");
    assert_eq!(stdout(&prdc(&["select-k", "10000", "10000", "0.05"])), "5\n");
}

#[test]
fn simulate_outputs_are_deterministic_and_shaped() {
    let args = [
        "--seed",
        "3",
        "--trials",
        "2",
        "simulate",
        "mode-drop",
        "--kind",
        "simultaneous",
        "--n",
        "150",
        "--dim",
        "10",
    ];
    let a = prdc(&args);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, prdc(&args).stdout);
    let text = stdout(&a);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 11);
    assert!(lines[0].starts_with("step,mode0_weight,precision,recall,density,coverage"));

    let t = prdc(&["simulate", "translate", "--mu", "-0.5,0,0.5", "--n-real", "100", "--n-fake", "100", "--dim", "8"]);
    assert!(t.status.success(), "{}", String::from_utf8_lossy(&t.stderr));
    assert_eq!(stdout(&t).lines().count(), 4);

    let i = prdc(&["simulate", "identical", "--n", "100", "-k", "1,5", "--dim", "4", "--output", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&i.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
    assert!(v["rows"][1]["expected_coverage"].as_f64().unwrap() > 0.9);
}

#[test]
fn threads_and_block_size_do_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let real: String = (0..200).map(|i| format!("{},{}\n", (i * 7 % 23) as f64 * 0.3, (i * 11 % 29) as f64)).collect();
    let fake: String = (0..150).map(|i| format!("{},{}\n", (i * 5 % 31) as f64 * 0.2, (i * 3 % 17) as f64)).collect();
    let (r, f) = (write(dir.path(), "r.csv", &real), write(dir.path(), "f.csv", &fake));
    let base = prdc(&["compute", &r, &f]).stdout;
    assert_eq!(base, prdc(&["--threads", "3", "--block-size", "7", "compute", &r, &f]).stdout);
}

#[test]
fn split_outliers_subcommand() {
    let dir = tempfile::tempdir().unwrap();
    let mut rows: Vec<String> = (0..20).map(|i| format!("{}", i as f64 * 0.01)).collect();
    rows.push("100".into());
    rows.push("-50".into());
    let path = write(dir.path(), "s.csv", &(rows.join("\n") + "\n"));
    let out_path = dir.path().join("outliers.csv");
    let o = prdc(&["split-outliers", &path, "-k", "1", "--outliers", out_path.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let flagged: Vec<String> = stdout(&o)
        .lines()
        .skip(1)
        .filter(|l| l.ends_with(",1"))
        .map(|l| l.split(',').next().unwrap().to_owned())
        .collect();
    assert_eq!(flagged, vec!["20", "21"]);
    assert_eq!(std::fs::read_to_string(out_path).unwrap(), "100.0\n-50.0\n");
}
