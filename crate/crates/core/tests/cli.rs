use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trinomial"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in\n{text}"))
}

#[test]
fn exact_examples() {
    let o = run(&["exact", "--b", "1", "--c", "1", "--n-max", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n1\n3\n7\n19\n51\n141\n");
    assert_eq!(stdout(&run(&["exact", "--b", "2", "--c", "1", "--n", "3"])), "20\n");
    assert_eq!(stdout(&run(&["exact", "--b", "0", "--c", "1", "--n", "3"])), "0\n");
    assert_eq!(stdout(&run(&["exact", "--b", "1", "--c", "-1", "--n", "3"])), "-5\n");
    let o = run(&["exact", "--b", "1", "--c", "1", "--n-max", "3", "--format", "json"]);
    assert_eq!(stdout(&o).trim(), r#"["1","1","3","7"]"#);
}

#[test]
fn exact_method_all_agrees() {
    for (b, c) in [("1", "1"), ("-3/2", "0.25"), ("0", "-2"), ("2", "1"), ("-1", "0"), ("0", "0")] {
        let o = run(&["exact", "--b", b, "--c", c, "--n-max", "40", "--method", "all"]);
        assert_eq!(o.status.code(), Some(0), "({b},{c})");
        let single = run(&["exact", "--b", b, "--c", c, "--n-max", "40", "--method", "sum"]);
        assert_eq!(stdout(&o), stdout(&single));
    }
}

#[test]
fn parse_errors_exit_2() {
    for args in [
        vec!["exact", "--b", "x", "--c", "1", "--n", "2"],
        vec!["exact", "--b", "1e3", "--c", "1", "--n", "2"],
        vec!["exact", "--b", "1", "--c", "1"],
        vec!["exact", "--b", "1", "--c", "1", "--n", "2", "--method", "magic"],
        vec!["approx", "--b", "1", "--c", "1", "--n", "5", "--precision", "32"],
        vec!["approx", "--b", "1", "--c", "1", "--n", "0"],
        vec!["verify", "--b", "1", "--c", "1", "--n-min", "64", "--n-max", "32"],
        vec!["frobnicate"],
    ] {
        assert_eq!(run(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn expand_examples() {
    let o = run(&["expand", "--b", "4", "--c", "1", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("g = [1, 0, 1/8, 15/64, 21/32, 315/128]"), "{text}");
    assert_eq!(field(&text, "growth"), "6");
    assert_eq!(field(&text, "prefactor"), "(3/2)^(1/2)");

    let o = run(&["expand", "--b", "1", "--c", "16", "--order", "2"]);
    assert!(stdout(&o).contains("g = [1, -15/64, 169/8192]"));

    let o = run(&["expand", "--b", "3", "--c", "0", "--order", "3"]);
    let text = stdout(&o);
    assert_eq!(field(&text, "regime"), "C_ZERO");
    assert_eq!(field(&text, "form"), "T_n = (3)^n");
    assert!(text.contains("g = [1]"));

    assert_eq!(run(&["expand", "--b", "0", "--c", "0"]).status.code(), Some(4));
}

#[test]
fn expand_json_schema() {
    let o = run(&["expand", "--b", "4", "--c", "1", "--order", "5", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["b"], "4");
    assert_eq!(v["c"], "1");
    assert_eq!(v["regime"], "SINGLE_DOMINANT");
    assert_eq!(v["growth"], serde_json::json!({"p": "6", "q": "0", "c": "1"}));
    assert_eq!(v["prefactor"]["base"]["p"], "3/2");
    assert_eq!(v["prefactor"]["exponent"], "1/2");
    assert_eq!(v["pi_power"], "-1/2");
    let ps: Vec<&str> = v["corrections"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["p"].as_str().unwrap())
        .collect();
    assert_eq!(ps, ["1", "0", "1/8", "15/64", "21/32", "315/128"]);

    // irrational √c keeps a q part
    let o = run(&["expand", "--b", "5", "--c", "3", "--order", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["growth"], serde_json::json!({"p": "5", "q": "2", "c": "3"}));
    assert_ne!(v["corrections"][1]["q"], "0");
}

#[test]
fn approx_examples() {
    let o = run(&["approx", "--b", "4", "--c", "1", "--n", "1000", "--order", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let rel: f64 = field(&stdout(&o), "rel_err").parse().unwrap();
    assert!(rel.abs() < 1e-15, "{rel}");

    let o = run(&["approx", "--b", "1", "--c", "-1", "--n", "100", "--order", "0"]);
    let text = stdout(&o);
    let cos: f64 = field(&text, "cos_factor").parse().unwrap();
    assert!(cos.abs() > 0.3);
    let est: f64 = field(&text, "estimate").parse().unwrap();
    let exact: f64 = field(&text, "exact").parse().unwrap();
    assert_eq!(est.signum(), exact.signum());
    assert!((est / exact - 1.0).abs() < 0.25);

    let o = run(&["approx", "--b", "0", "--c", "0", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field(&stdout(&o), "estimate"), "0");

    let o = run(&["approx", "--b", "2", "--c", "1", "--n", "100", "--order", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let rel: f64 = v["rel_err"].as_str().unwrap().parse().unwrap();
    assert!(rel.abs() < 1e-7);
}

#[test]
fn verify_csv_and_json_agree_and_are_deterministic() {
    let base = ["verify", "--b", "1", "--c", "16", "--order", "2", "--n-max", "1024", "--digits", "25"];
    let csv1 = run(&[&base[..], &["--format", "csv"]].concat());
    let csv2 = run(&[&base[..], &["--format", "csv"]].concat());
    assert_eq!(csv1.status.code(), Some(0));
    assert_eq!(csv1.stdout, csv2.stdout);
    let json1 = run(&[&base[..], &["--format", "json"]].concat());
    let json2 = run(&[&base[..], &["--format", "json"]].concat());
    assert_eq!(json1.stdout, json2.stdout);

    let v: serde_json::Value = serde_json::from_str(&stdout(&json1)).unwrap();
    assert_eq!(v["tail_bounded"], true);
    let mut rdr = csv::Reader::from_reader(csv1.stdout.as_slice());
    assert_eq!(
        rdr.headers().unwrap().iter().collect::<Vec<_>>(),
        ["n", "exact", "estimate", "rel_err", "scaled_err"]
    );
    let rows = v["rows"].as_array().unwrap();
    let records: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), rows.len());
    for (rec, row) in records.iter().zip(rows) {
        assert_eq!(rec[0], row["n"].to_string());
        for (i, k) in ["exact", "estimate", "rel_err", "scaled_err"].iter().enumerate() {
            assert_eq!(&rec[i + 1], row[*k].as_str().unwrap());
        }
    }
    let grid: Vec<u64> = v["grid"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect();
    assert_eq!(grid, [16, 32, 64, 128, 256, 512, 1024]);
}

#[test]
fn verify_writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = run(&[
        "verify", "--b", "2", "--c", "1", "--order", "3", "--n-max", "256", "--format", "json", "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["regime"], "D_ZERO");
    assert_eq!(v["order"], 3);
}

#[test]
fn verify_linear_grid() {
    let o = run(&[
        "verify", "--b", "1", "--c", "1", "--order", "2", "--n-min", "40", "--n-max", "60", "--grid", "linear",
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["grid"].as_array().unwrap().len(), 21);
}

#[test]
fn verify_oscillatory_root_test() {
    let o = run(&["verify", "--b", "1", "--c", "-1", "--order", "0", "--n-max", "2000", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["root_test"]["window"], serde_json::json!([1900, 2000]));
    assert_eq!(v["root_test"]["passed"], true);
}

#[test]
fn verify_failures_exit_5() {
    // the root test cannot reach 1% this early
    let o = run(&["verify", "--b", "1", "--c", "-1", "--order", "0", "--n-max", "50"]);
    assert_eq!(o.status.code(), Some(5));
    assert!(!o.stdout.is_empty());
    // no singularities at all
    assert_eq!(run(&["verify", "--b", "0", "--c", "0"]).status.code(), Some(4));
}
