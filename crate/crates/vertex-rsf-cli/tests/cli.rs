use std::process::{Command, Output};

fn rsf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsf"))
        .args(args)
        .env_remove("IK_LATTICE_THREADS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn eval_single_row() {
    let o = rsf(&[
        "eval", "--model", "ik", "--form", "F", "--string", "2", "--x", "2", "--z", "1", "--q",
        "1/2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "17/35");
}

#[test]
fn eval_forms_agree() {
    let base = [
        "--model", "ik", "--string", "1,2,1", "--x", "2,-3", "--z", "1,1/3,5", "--q", "2/7",
    ];
    let value = |form: &str| {
        let mut args = vec!["eval", "--form", form];
        args.extend(base);
        let o = rsf(&args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{form}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        stdout(&o)
    };
    let f = value("F");
    assert_eq!(value("symmetrized"), f);
    assert_eq!(value("twisted"), f);
    assert_eq!(value("H"), f);
}

#[test]
fn eval_json_round_trips() {
    let o = rsf(&[
        "eval", "--model", "6v", "--form", "izergin", "--x", "2,3", "--z", "1,1/3", "--q", "1/2",
        "--json",
    ]);
    let env: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let lattice = rsf(&[
        "eval", "--model", "6v", "--form", "F", "--string", "1,1", "--x", "2,3", "--z", "1,1/3",
        "--q", "1/2",
    ]);
    assert_eq!(env["value"].as_str().unwrap(), stdout(&lattice).trim());
    assert_eq!(env["xs"][1], "3");
}

#[test]
fn eval_from_config_file() {
    let path = std::env::temp_dir().join(format!("rsf-config-{}.json", std::process::id()));
    std::fs::write(
        &path,
        r#"{ "model": "ik", "form": "F", "string": "2", "q": "1/2", "xs": ["2"], "zs": ["1"] }"#,
    )
    .unwrap();
    let o = rsf(&["eval", "--config", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(stdout(&o).trim(), "17/35");
}

#[test]
fn zlimit_value() {
    let o = rsf(&["eval", "--form", "zlimit", "--q", "1/2", "--N", "3"]);
    assert_eq!(stdout(&o).trim(), "-21");
}

#[test]
fn bad_input_exits_two() {
    for args in [
        vec![
            "eval", "--model", "ik", "--form", "F", "--string", "2", "--x", "2", "--z", "1", "--q",
            "1/0",
        ],
        vec![
            "eval", "--model", "ik", "--form", "F", "--string", "3", "--x", "2", "--z", "1", "--q",
            "1/2",
        ],
        vec![
            "eval", "--model", "ik", "--form", "F", "--x", "2", "--q", "1/2",
        ],
        vec!["verify", "no-such-suite"],
        vec!["frobnicate"],
    ] {
        let o = rsf(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn enumerate_twoperm_example() {
    let o = rsf(&[
        "enumerate",
        "twoperm",
        "--n",
        "2",
        "--N",
        "2",
        "--string",
        "1,0,2,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let blocks = stdout(&o).trim().split("\n\n").count();
    assert_eq!(blocks, 4);
}

#[test]
fn enumerate_strings_lexicographic() {
    let o = rsf(&[
        "enumerate",
        "strings",
        "--n",
        "2",
        "--weight",
        "2",
        "--width",
        "2",
    ]);
    assert_eq!(
        stdout(&o).lines().collect::<Vec<_>>(),
        ["(0,2)", "(1,1)", "(2)"]
    );
}

#[test]
fn verify_is_deterministic() {
    let args = ["verify", "closed-forms", "--seed", "3", "--points", "1"];
    let a = rsf(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&rsf(&args)));
    let reports: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(reports[0]["pass"], true);
}

#[test]
fn verify_failure_exits_one() {
    // a truncation this short cannot meet a tiny tolerance
    let o = rsf(&[
        "verify",
        "cauchy",
        "--max-width",
        "4",
        "--tolerance",
        "1/1000000000",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("FAIL cauchy"));
}

#[test]
fn csv_trace() {
    let o = rsf(&[
        "verify",
        "cauchy",
        "--max-width",
        "6",
        "--tolerance",
        "1/100",
        "--format",
        "csv",
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("series,width,partial,rhs,gap,gap_approx")
    );
    assert_eq!(lines.count(), 24);
}

#[test]
fn thread_variable_is_validated() {
    let o = Command::new(env!("CARGO_BIN_EXE_rsf"))
        .args(["verify", "closed-forms", "--points", "1"])
        .env("IK_LATTICE_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_rsf"))
        .args(["verify", "closed-forms", "--points", "1"])
        .env("IK_LATTICE_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
}
