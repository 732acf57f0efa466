use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_rydberg-renyi");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("RYDBERG_RENYI_CONFIG")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", stderr(&out));
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&ok(&all)).unwrap()
}

/// Data rows of a CSV document: comment lines and the header dropped.
fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    lines.next().expect("header");
    lines.map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn column(text: &str, index: usize) -> Vec<f64> {
    csv_rows(text).iter().map(|r| r[index].parse().unwrap()).collect()
}

fn strictly(values: &[f64], increasing: bool) -> bool {
    values
        .windows(2)
        .all(|w| if increasing { w[1] > w[0] } else { w[1] < w[0] })
}

#[test]
fn ground_state_moment() {
    let v = json(&[
        "entropy",
        "--n",
        "0",
        "--l",
        "0",
        "--dim",
        "3",
        "--p",
        "2",
        "--quantity",
        "wp",
        "--method",
        "exact",
    ]);
    // N = Γ(3/2)·2^{-3/2}/Γ(3/2)², times the prefactor 2^{p-1} = 2
    let want = (2.0 / std::f64::consts::PI).sqrt();
    assert!((v["value"].as_f64().unwrap() / want - 1.0).abs() < 1e-10, "{v}");
    assert_eq!(v["derived"]["alpha"], 0.5);
    assert_eq!(v["derived"]["beta"], -0.5);
    assert_eq!(v["caveat"], Value::Null);
}

#[test]
fn four_dimensional_disequilibrium() {
    let v = json(&[
        "entropy",
        "--n",
        "50",
        "--l",
        "0",
        "--dim",
        "4",
        "--p",
        "2",
        "--quantity",
        "diseq",
        "--method",
        "asymptotic",
    ]);
    assert!((v["value"].as_f64().unwrap() - 0.4053).abs() < 5e-4);
    assert_eq!(v["derived"]["branch"], "bessel");
    assert_eq!(v["caveat"], "1+o(1)");
}

#[test]
fn unit_order_only_for_the_moment() {
    let out = run(&["entropy", "--n", "5", "--l", "0", "--dim", "3", "--p", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("p = 1"));
    let out = run(&["entropy", "--n", "5", "--dim", "3", "--p", "1", "--quantity", "power"]);
    assert_eq!(out.status.code(), Some(2));
    let v = json(&[
        "entropy",
        "--n",
        "5",
        "--l",
        "1",
        "--dim",
        "3",
        "--p",
        "1",
        "--quantity",
        "wp",
    ]);
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() < 1e-8);
}

#[test]
fn invalid_input_exits_two() {
    for args in [
        &["entropy", "--n", "3", "--dim", "3", "--p", "2", "--bogus"][..],
        &["entropy", "--dim", "3", "--p", "2"],
        &["entropy", "--n", "3", "--dim", "0", "--p", "2"],
        &["entropy", "--n", "3", "--dim", "3", "--p", "2", "--lambda", "-1"],
        &["entropy", "--n", "3", "--dim", "3", "--p", "2", "--method", "fast"],
        &["entropy", "--n", "3", "--dim", "3", "--p", "2", "--rel-tol", "0"],
        &["entropy", "--n", "3", "--dim", "3", "--quantity", "diseq", "--p", "3"],
        &["sweep", "--var", "n", "--range", "1:2", "--dim", "3", "--p", "2"],
        &["sweep", "--var", "n", "--range", "1:5:0.5", "--dim", "3", "--p", "2"],
        &[
            "sweep", "--var", "n", "--n", "4", "--range", "1:5:1", "--dim", "3", "--p", "2",
        ],
        &[
            "sweep",
            "--var",
            "p",
            "--range",
            "1:5:1",
            "--n",
            "4",
            "--dim",
            "3",
            "--quantity",
            "diseq",
        ],
        &["figures", "--which", "6"],
        &["figures", "--which", "one"],
        &["verify", "--only", "14"],
        &["constants"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(out.stdout.is_empty(), "{args:?} printed output");
    }
}

#[test]
fn unreachable_tolerance_exits_three() {
    let out = run(&[
        "entropy",
        "--n",
        "200",
        "--dim",
        "3",
        "--p",
        "2",
        "--method",
        "exact",
        "--rel-tol",
        "1e-30",
        "--abs-tol",
        "1e-300",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).starts_with("ToleranceError"), "{}", stderr(&out));
}

#[test]
fn csv_single_record() {
    let text = ok(&["entropy", "--n", "10", "--l", "2", "--dim", "3", "--p", "0.5"]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# schema=1");
    assert_eq!(
        lines[1],
        "n,l,dim,p,lambda,quantity,method,alpha,beta,branch,value,caveat"
    );
    assert!(
        lines[2].starts_with("10,2,3,0.5,1,renyi,exact,2.5,0.25,cosine,"),
        "{}",
        lines[2]
    );
    assert!(lines[2].ends_with(','));
    assert!(!text.contains('\r'));
    assert_eq!(lines.len(), 3);
}

#[test]
fn power_decreases_along_p() {
    let out = run(&[
        "sweep",
        "--var",
        "p",
        "--range",
        "0.5:5:0.5",
        "--n",
        "50",
        "--l",
        "0",
        "--dim",
        "2",
        "--quantity",
        "power",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().nth(2).unwrap() == "var,alpha,beta,branch,value,caveat");
    assert_eq!(column(&text, 0), vec![0.5, 1.5, 2.0, 2.5, 3.0, 3.5, 4.0, 4.5, 5.0]);
    assert!(strictly(&column(&text, 4), false));
    assert!(stderr(&out).contains("skipping p = 1"));
}

#[test]
fn disequilibrium_peaks_at_twelve_dimensions() {
    let text = ok(&[
        "sweep",
        "--var",
        "dim",
        "--range",
        "2:30:1",
        "--n",
        "50",
        "--l",
        "0",
        "--p",
        "2",
        "--quantity",
        "diseq",
        "--method",
        "asymptotic",
    ]);
    let values = column(&text, 4);
    let dims = column(&text, 0);
    let best = values.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert_eq!(dims[best], 12.0);
}

#[test]
fn constancy_in_n_at_four_dimensions() {
    let v = json(&[
        "sweep",
        "--var",
        "n",
        "--range",
        "10:100:10",
        "--l",
        "0",
        "--dim",
        "4",
        "--p",
        "2",
        "--method",
        "asymptotic",
    ]);
    let values: Vec<f64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["value"].as_f64().unwrap())
        .collect();
    assert_eq!(values.len(), 10);
    assert!(values.iter().all(|x| (x - values[0]).abs() <= 1e-12 * values[0].abs()));
}

#[test]
fn sweep_output_is_deterministic() {
    let args = [
        "sweep", "--var", "l", "--range", "0:6:1", "--n", "40", "--dim", "5", "--p", "1.7", "--method", "exact",
    ];
    let first = ok(&args);
    assert_eq!(first, ok(&args));
    let single = Command::new(BIN)
        .args(args)
        .env("RAYON_NUM_THREADS", "1")
        .env_remove("RYDBERG_RENYI_CONFIG")
        .output()
        .unwrap();
    assert_eq!(first, stdout(&single));
    assert_eq!(column(&first, 0), (0..=6).map(f64::from).collect::<Vec<_>>());
}

#[test]
fn json_round_trips() {
    let first = json(&[
        "entropy",
        "--n",
        "37",
        "--l",
        "1",
        "--dim",
        "5",
        "--p",
        "2.5",
        "--quantity",
        "renyi",
    ]);
    let i = &first["inputs"];
    let n = i["n"].to_string();
    let l = i["l"].to_string();
    let dim = i["dim"].to_string();
    let p = i["p"].to_string();
    let lambda = i["lambda"].to_string();
    let quantity = i["quantity"].as_str().unwrap();
    let method = i["method"].as_str().unwrap();
    let again = json(&[
        "entropy",
        "--n",
        &n,
        "--l",
        &l,
        "--dim",
        &dim,
        "--p",
        &p,
        "--lambda",
        &lambda,
        "--quantity",
        quantity,
        "--method",
        method,
    ]);
    assert_eq!(first, again);
    assert_eq!(first["derived"]["method"], "exact");
    for key in ["inputs", "derived", "value", "caveat"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }

    let sweep = json(&[
        "sweep",
        "--var",
        "p",
        "--range",
        "2.5:3.5:0.5",
        "--n",
        "300",
        "--dim",
        "3",
    ]);
    for row in sweep["rows"].as_array().unwrap() {
        let p = row["inputs"]["p"].to_string();
        let single = json(&[
            "entropy",
            "--n",
            "300",
            "--dim",
            "3",
            "--p",
            &p,
            "--method",
            "asymptotic",
        ]);
        assert_eq!(single["value"], row["value"]);
        assert_eq!(row["var"], row["inputs"]["p"]);
    }
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("one.csv");
    let out = run(&[
        "entropy",
        "--n",
        "3",
        "--dim",
        "3",
        "--p",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path).unwrap().starts_with("# schema=1\n"));
}

fn figure(dir: &Path, id: &str, extra: &[&str]) -> String {
    let mut args = vec!["figures", "--which", id, "--out", dir.to_str().unwrap()];
    args.extend(extra);
    ok(&args);
    std::fs::read_to_string(dir.join(format!("figure{id}.csv"))).unwrap()
}

#[test]
fn figure_data() {
    let dir = tempfile::tempdir().unwrap();
    let fig1 = figure(dir.path(), "1", &[]);
    assert!(fig1.contains("\np,power_d2,power_d4\n"));
    assert!(strictly(&column(&fig1, 1), false) && strictly(&column(&fig1, 2), false));

    let fig2 = figure(dir.path(), "2", &[]);
    assert!(fig2.contains("method=asymptotic"));
    assert!(strictly(&column(&fig2, 1), false));
    assert!(strictly(&column(&figure(dir.path(), "3", &[]), 1), true));
    assert!(strictly(&column(&figure(dir.path(), "4", &[]), 1), false));

    let fig5 = figure(dir.path(), "5", &[]);
    let values = column(&fig5, 1);
    let best = values.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert_eq!(column(&fig5, 0)[best], 12.0);

    let exact = figure(dir.path(), "2", &["--method", "exact"]);
    assert!(exact.contains("method=exact"));
    assert_eq!(column(&exact, 1).len(), column(&fig2, 1).len());
}

#[test]
fn constants_table() {
    let table = ok(&["constants", "--beta", "0", "--p", "1"]);
    let rows = csv_rows(&table);
    assert_eq!(rows[0][0], "C");
    assert!((rows[0][4].parse::<f64>().unwrap() - 1.0).abs() < 1e-12);

    let v = json(&["constants", "--alpha", "0.5", "--beta", "-0.5", "--p", "2"]);
    let bessel = &v["constants"][1];
    assert_eq!(bessel["name"], "C_B");
    assert!((bessel["value"].as_f64().unwrap() - 1.0 / std::f64::consts::PI).abs() < 1e-9);

    let v = json(&["constants", "--p", "2"]);
    let airy = &v["constants"][2];
    assert_eq!(airy["value"], Value::Null);
    let note = airy["note"].as_str().unwrap();
    assert!(
        note.starts_with("DivergenceError") && note.contains("requires p > 2"),
        "{note}"
    );
    assert!(v["constants"][0]["note"].as_str().unwrap().contains("--beta"));
}

#[test]
fn fast_verification() {
    let text = ok(&["verify", "--fast"]);
    assert!(!text.contains("FAIL"));
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("PASS") || l.starts_with("SKIP"))
            .count(),
        13
    );
}

#[test]
fn misconfigured_zones_are_detected() {
    let out = run(&["verify", "--only", "12", "--epsilon", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL [12]"));

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("zones.cfg");
    std::fs::write(&cfg, "# negative control\nepsilon = 0.5\n").unwrap();
    let from_file = Command::new(BIN)
        .args(["verify", "--only", "12"])
        .env("RYDBERG_RENYI_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(from_file.status.code(), Some(1));

    let good = ok(&["verify", "--only", "3,4"]);
    assert_eq!(good.lines().filter(|l| l.starts_with("PASS")).count(), 2);
}

#[test]
fn broken_config_file_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "unknown_key = 3\n").unwrap();
    let out = Command::new(BIN)
        .args(["entropy", "--n", "3", "--dim", "3", "--p", "2"])
        .env("RYDBERG_RENYI_CONFIG", &cfg)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown key"));
}
