use std::fs;
use std::process::{Command, Output};

fn etalab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etalab"))
        .args(args)
        .env_remove("ETALAB_MAX_ORDER")
        .env_remove("ETALAB_PRIMES")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn eta_values() {
    let out = etalab(&["eta", "product(cyclic(4),cyclic(2))"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "eta = 4\n"));
    assert_eq!(stdout(&etalab(&["eta", "quaternion(8)"])), "eta = 3\n");
    assert_eq!(stdout(&etalab(&["eta", "cyclic(8)"])), "eta = 1 (cyclic; covering degenerate)\n");
}

#[test]
fn verbose_eta_lists_class_representatives() {
    let text = stdout(&etalab(&["eta", "heisenberg(3)", "--verbose"]));
    assert!(text.starts_with("eta = 5\n"));
    assert_eq!(text.lines().filter(|l| l.starts_with("class ")).count(), 5);
}

#[test]
fn structured_eta_is_json() {
    let out = etalab(&["eta", "dihedral(8)", "--format", "structured", "-v"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["eta"], 3);
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
}

#[test]
fn invariants_records() {
    let text = stdout(&etalab(&["invariants", "dihedral(16)"]));
    assert!(text.contains("order = 16\n"));
    assert!(text.contains("class = 3\n"));
    assert!(text.contains("series orders = 16,4,2,1\n"));

    let out = etalab(&["invariants", "heisenberg(3)", "--format", "structured"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!((v["order"].as_u64(), v["class"].as_u64()), (Some(27), Some(2)));
    assert_eq!((v["center_order"].as_u64(), v["exponent_last_term"].as_u64()), (Some(3), Some(3)));
    assert!(!stdout(&out).contains('.'), "exact integers only");

    let text = stdout(&etalab(&["invariants", "cyclic(9)"]));
    assert!(text.contains("order = 9\n") && text.contains("class = 1\n"));
}

#[test]
fn non_nilpotent_tables_report_it() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.gtbl");
    // S3 with rotations 0,1,2 and reflections 3,4,5
    let mut text = String::from("gtbl 1 6\n");
    for x in 0..6usize {
        let row: Vec<String> = (0..6usize)
            .map(|y| {
                let (i, j) = (x % 3, x / 3);
                let (k, l) = (y % 3, y / 3);
                let rot = if j == 0 { (i + k) % 3 } else { (i + 3 - k) % 3 };
                (((j + l) % 2) * 3 + rot).to_string()
            })
            .collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    fs::write(&path, text).unwrap();
    let out = etalab(&["invariants", &format!("table({})", path.display())]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("class = not nilpotent"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&etalab(&["eta", "cyclic(8"])), 2);
    assert_eq!(code(&etalab(&["eta", "heisenberg(2)"])), 2);
    assert_eq!(code(&etalab(&["eta", "cyclic(10000)"])), 3);
    assert_eq!(code(&etalab(&["eta", "table(/nonexistent/x.gtbl)"])), 2);

    let out = etalab(&["verify", "--suite", "bogus"]);
    assert_eq!(code(&out), 2);
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("main-theorem") && err.contains("oracle-cross"));
    assert_eq!(code(&etalab(&["verify", "--suite", "main-theorem", "--primes", "2,4"])), 2);
}

#[test]
fn environment_sets_defaults_and_flags_override() {
    let run = |env: &str, extra: &[&str]| {
        let mut args = vec!["eta", "cyclic(64)"];
        args.extend_from_slice(extra);
        Command::new(env!("CARGO_BIN_EXE_etalab"))
            .args(&args)
            .env("ETALAB_MAX_ORDER", env)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run("32", &[])), 3);
    assert_eq!(code(&run("32", &["--max-order", "64"])), 0);
}

#[test]
fn verify_suites_pass_on_small_catalogs() {
    let out = etalab(&["verify", "--suite", "main-theorem", "--max-order", "256", "--primes", "2,3"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = etalab(&["verify", "--suite", "oracle-cross", "--max-order", "128"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let out = etalab(&["verify", "--suite", "all", "--max-order", "64"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.contains(" pass, ")).count(), 13);
}

#[test]
fn verify_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let csv = dir.path().join("r.csv");
    let base = ["verify", "--suite", "abelian-bound", "--max-order", "64"];
    let mut args = base.to_vec();
    args.extend(["--format", "structured", "--out", json.to_str().unwrap()]);
    assert_eq!(code(&etalab(&args)), 0);
    let report = etalab::harness::Report::from_json(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report.suite, "abelian-bound");
    assert!(report.totals.pass > 0 && report.totals.fail == 0);

    let mut args = base.to_vec();
    args.extend(["--format", "csv", "--out", csv.to_str().unwrap()]);
    assert_eq!(code(&etalab(&args)), 0);
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("spec,p,n,l,eta,bound_num,bound_den,pass\n"));
    assert!(text.contains("\"product(cyclic(4),cyclic(2))\",2,3,,4,4,1,true"));

    // same run, same bytes
    let again = dir.path().join("r2.json");
    let mut args = base.to_vec();
    args.extend(["--format", "structured", "--out", again.to_str().unwrap()]);
    etalab(&args);
    assert_eq!(fs::read(&json).unwrap(), fs::read(&again).unwrap());
}

#[test]
fn tables() {
    let text = stdout(&etalab(&["table", "--family", "pxp", "--p", "2", "--amax", "4"]));
    assert!(text.starts_with("p,a,b,eta_bruteforce,g_p,match\n"));
    assert!(text.contains("\n2,2,1,4,4,true\n"));
    assert!(!text.contains("false"));

    let text = stdout(&etalab(&["table", "--family", "pxp", "--p", "3", "--amax", "3"]));
    assert!(text.contains("\n3,2,1,6,6,true\n"));

    let out = etalab(&["table", "--family", "pxp", "--p", "3", "--amax", "3", "--max-order", "100"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("3,3,3,skipped,36,skipped"));

    let text = stdout(&etalab(&["table", "--family", "bound-grid", "--p", "2", "--nmax", "6", "--lmax", "3"]));
    assert!(text.starts_with("p,n,l,bound_num,bound_den\n"));
    assert!(text.contains("\n2,4,3,7,3\n"));
    assert_eq!(code(&etalab(&["table", "--family", "pxp", "--p", "4"])), 2);
}

#[test]
fn cover_inspection() {
    let out = etalab(&["cover", "dihedral(8)"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("components = 5\ncover = true\nirredundant = true\n"));
}
