use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn mkcurve(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mkcurve")).args(args).output().expect("runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mkcurve"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawns");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(s: &str) -> serde_json::Value {
    serde_json::from_str(s).expect("valid JSON")
}

fn temp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mkcurve-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn analyze_reports_the_inflection_census() {
    let v = json(&stdout(&mkcurve(&["analyze", "--model", "I2", "--s1", "-0.01", "--window", "-0.5", "0.5"])));
    assert_eq!(v["features"], "I V- I");
    let kinds: Vec<&str> = v["points"].as_array().unwrap().iter().map(|p| p["kind"].as_str().unwrap()).collect();
    assert_eq!(kinds, ["inflection", "vertex", "inflection"]);
    assert_eq!(v["points"][1]["direction"], "outward");
}

#[test]
fn analyze_accepts_expressions_and_spec_files() {
    let a = stdout(&mkcurve(&["analyze", "--x", "t^2", "--y", "-1/25*t + t^3", "--window", "-0.3", "0.3"]));
    let b = stdout(&with_stdin(
        &["analyze", "--spec", "-"],
        r#"{"x": "t^2", "y": "-1/25*t + t^3", "window": [-0.3, 0.3]}"#,
    ));
    assert_eq!(a, b);
    let v = json(&a);
    assert_eq!(v["self_intersections"].as_array().unwrap().len(), 1);
    assert!((v["self_intersections"][0]["t2"].as_f64().unwrap() - 0.2).abs() < 1e-6);
}

#[test]
fn parse_errors_are_json_with_offsets() {
    let o = mkcurve(&["analyze", "--x", "t", "--y", "t^^2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    let e = json(String::from_utf8_lossy(&o.stderr).trim());
    assert_eq!(e["error"]["kind"], "parse");
    assert_eq!(e["error"]["offset"], 2);
}

#[test]
fn other_errors_are_json_too() {
    for args in [&["analyze", "--model", "nope"][..], &["frobnicate"], &["verify", "--suite", "zzz"]] {
        let o = mkcurve(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        let e = json(String::from_utf8_lossy(&o.stderr).trim());
        assert!(e["error"]["message"].as_str().unwrap().len() > 3);
    }
    let cfg = temp("bad-config.json");
    std::fs::write(&cfg, r#"{"sweep": {"n": 3}, "colour": "blue"}"#).unwrap();
    let o = mkcurve(&["--seed-config", cfg.to_str().unwrap(), "sweep", "--model", "LI"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(json(String::from_utf8_lossy(&o.stderr).trim())["error"]["kind"], "json");
}

#[test]
fn caustic_csv_and_svg() {
    let svg_path = temp("cusp.svg");
    let o = mkcurve(&[
        "caustic",
        "--x",
        "t^2",
        "--y",
        "t^2 + t^3",
        "--window",
        "-0.3",
        "0.3",
        "--svg",
        svg_path.to_str().unwrap(),
    ]);
    let csv = stdout(&o);
    assert!(!csv.contains('\r'));
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("branch_id,t,x,y,kind"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 5));
    // the cusp contributes the line y = x
    let line: Vec<&Vec<&str>> = rows.iter().filter(|r| r[4] == "line").collect();
    assert_eq!(line.len(), 2);
    for r in line {
        let (x, y): (f64, f64) = (r[2].parse().unwrap(), r[3].parse().unwrap());
        assert!((x - y).abs() < 1e-12);
    }

    let text = std::fs::read_to_string(&svg_path).unwrap();
    let doc = roxmltree::Document::parse(&text).expect("valid XML");
    let root = doc.root_element();
    assert_eq!(root.tag_name().name(), "svg");
    let class_of = |n: &roxmltree::Node| n.attribute("class").unwrap_or("").to_string();
    let nodes: Vec<_> = root.descendants().filter(|n| n.is_element()).collect();
    assert_eq!(nodes.iter().filter(|n| class_of(n) == "curve").count(), 1);
    assert!(nodes.iter().any(|n| class_of(n) == "caustic"));
    let markers: Vec<_> = nodes.iter().filter(|n| class_of(n).starts_with("marker")).collect();

    let census = json(&stdout(&mkcurve(&["analyze", "--x", "t^2", "--y", "t^2 + t^3", "--window", "-0.3", "0.3"])));
    let points = census["points"].as_array().unwrap();
    assert!(!points.is_empty());
    assert_eq!(markers.len(), points.len());
    for (m, p) in markers.iter().zip(points) {
        let want = match p["kind"].as_str().unwrap() {
            "vertex" => "circle",
            "inflection" => "rect",
            _ => "polygon",
        };
        assert_eq!(m.tag_name().name(), want);
    }
}

#[test]
fn svg_view_box_has_a_five_percent_margin() {
    let svg_path = temp("line.svg");
    // a straight segment: no caustic, no special points
    stdout(&mkcurve(&["caustic", "--x", "t", "--y", "2*t", "--window", "0", "1", "--svg", svg_path.to_str().unwrap()]));
    let text = std::fs::read_to_string(&svg_path).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let vb: Vec<f64> = doc
        .root_element()
        .attribute("viewBox")
        .unwrap()
        .split_whitespace()
        .map(|v| v.parse().unwrap())
        .collect();
    assert!((vb[2] - 1.1).abs() < 1e-9 && (vb[3] - 2.2).abs() < 1e-9, "{vb:?}");
}

#[test]
fn strata_fit_for_the_tacnode_stratum() {
    let csv = stdout(&mkcurve(&["strata", "--model", "RC", "--stratum", "Tc"]));
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(!rows.is_empty());
    for r in &rows {
        assert_eq!(r[col("stratum")], "Tc");
        let e: f64 = r[col("exponent")].parse().unwrap();
        let c: f64 = r[col("coefficient")].parse().unwrap();
        let res: f64 = r[col("residual")].parse().unwrap();
        assert!((e - 2.0).abs() < 0.05 && (c - 0.25).abs() < 0.05 * 0.25 && res < 0.05);
    }
}

#[test]
fn strata_polylines_go_to_a_file() {
    let path = temp("li.csv");
    stdout(&mkcurve(&["strata", "--model", "LI", "--polylines", path.to_str().unwrap()]));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("family,stratum,branch,s1,s2\n"));
    // the lightlike inflection happens at u = 0
    assert!(text.lines().any(|l| l.starts_with("LI,LI,event,") && l.split(',').nth(3).unwrap().parse::<f64>().unwrap().abs() < 1e-9));
}

#[test]
fn sweep_grid_and_overrides() {
    let csv = stdout(&mkcurve(&["sweep", "--model", "LI", "--n", "5"]));
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "s1,s2,features");
    assert_eq!(rows.len(), 6);
    assert!(rows[1].ends_with("L I L"));
    assert!(rows[5].ends_with("V- I V-"));

    let cfg = temp("seed.json");
    std::fs::write(&cfg, r#"{"sweep": {"n": 3, "half": 0.02}}"#).unwrap();
    let out = temp("sweep.csv");
    let o = mkcurve(&["--seed-config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "sweep", "--model", "LC"]);
    assert!(stdout(&o).is_empty());
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert!(text.lines().nth(1).unwrap().starts_with("-0.02,-0.02,"));
}

#[test]
fn custom_family_from_json() {
    let csv = stdout(&with_stdin(
        &["sweep", "--family", "-", "--n", "3"],
        r#"{"name": "mine", "x": "t", "y": "t^4 + s1*t^2", "window": [-0.5, 0.5]}"#,
    ));
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(rows, ["-0.05,,I V- I", "0,,I2", "0.05,,V+"]);
}

#[test]
fn verify_exit_status() {
    let o = mkcurve(&["verify", "--suite", "li-subset-v", "--kmax", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.starts_with("[PASS]"));

    let o = mkcurve(&["verify", "--suite", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&String::from_utf8(o.stdout).unwrap());
    assert_eq!(v[0]["id"], 2);
    assert_eq!(v[0]["pass"], true);

    // the cusp-family check has a failing part, so the status is 1
    let o = mkcurve(&["verify", "--suite", "cusp"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8(o.stdout).unwrap().starts_with("[FAIL]"));
}
