use std::io::Write;
use std::process::{Command, Output, Stdio};

fn logcv(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_logcv"))
        .args(args)
        .env_remove("LOGCV_MAX_BITS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn check_reports_depth() {
    let out = logcv(&["check", "--seq", "1,4,6,4", "--depth", "10"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["depth"], 10);
    assert_eq!(v["saturated"], true);
    let out = logcv(&["check", "--seq", "1,1,1", "--depth", "5"], None);
    let v = json(&out);
    assert_eq!(v["depth"], 1);
    assert_eq!(v["witness"]["level"], 2);
}

#[test]
fn certify_finds_the_fixed_point() {
    let out = logcv(&["certify", "--seq", "1,2,2,1"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["kind"], "fixed-point");
    assert_eq!(v["m"], 1);
    assert_eq!(v["lambda"], "1");
    assert!(v["trace"].is_array());
}

#[test]
fn certify_without_verdict_exits_one() {
    let out = logcv(&["certify", "--seq", "1,2,2,1,1", "--max-iter", "0"], None);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["kind"], "unknown");
}

#[test]
fn fixpoint_output_feeds_certify() {
    let fp = logcv(&["fixpoint", "--m", "1", "--k", "1+cos2pi(1,8)", "--terms", "6"], None);
    assert_eq!(fp.status.code(), Some(0));
    let printed: Vec<String> = serde_json::from_slice(&fp.stdout).unwrap();
    assert_eq!(printed.len(), 6);
    // the same entries typed as CSV and piped as JSON certify identically
    let piped = logcv(&["certify", "--seq", "-"], Some(&fp.stdout));
    let typed = logcv(&["certify", "--seq", &printed.join(",")], None);
    assert_eq!(piped.status.code(), Some(0));
    assert_eq!(piped.stdout, typed.stdout);
    assert_eq!(json(&piped)["kind"], "fixed-point");
    // CSV output reads back too
    let csv = logcv(&["psr", "--s", "7", "--r", "1", "--format", "csv"], None);
    let text = String::from_utf8(csv.stdout).unwrap();
    let entries: Vec<&str> = text.lines().skip(1).map(|l| l.split_once(',').unwrap().1).collect();
    let from_csv = logcv(&["certify", "--seq", "-"], Some(entries.join("\n").as_bytes()));
    let from_json = logcv(&["certify", "--seq", "-"], Some(&logcv(&["psr", "--s", "7", "--r", "1"], None).stdout));
    assert_eq!(from_csv.stdout, from_json.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["power-table", "--polys", "-", "--m-max", "3", "--lambda-max", "12", "--max-iter", "20"];
    let polys = b"1,1,1\n# comment\n1,1,2\n";
    let a = logcv(&args, Some(polys));
    let b = logcv(&args, Some(polys));
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let seq = logcv(&[&args[..], &["--sequential"]].concat(), Some(polys));
    assert_eq!(a.stdout, seq.stdout);
    let csv = logcv(&[&args[..], &["--format", "csv"]].concat(), Some(polys));
    let text = String::from_utf8(csv.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "poly,m=1,m=2,m=3,inf");
    assert_eq!(lines[1], "\"1,1,1\",1,4,7,10");
}

#[test]
fn psr_excludes_s_equal_2r() {
    let out = logcv(&["psr", "--s", "8", "--r", "4"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("s = 2r excluded"));
    let ok = logcv(&["psr", "--s", "6", "--r", "1"], None);
    assert_eq!(json(&ok), serde_json::json!(["1", "2", "2", "1"]));
}

#[test]
fn usage_errors_name_the_flag() {
    let out = logcv(&["certify", "--seq", "1,zz"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--seq"));
    let out = logcv(&["fixpoint", "--m", "2", "--k", "3"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--k"));
    let out = logcv(&["certify"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--seq"));
    let out = logcv(&["guess", "--terms", "1,2,3", "--max-order", "2"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--terms"));
}

#[test]
fn guess_reports_found_and_none() {
    let out = logcv(&["guess", "--terms", "1,3,6,10,15,21,28,36,45,55,66,78", "--max-order", "4"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["order"], 3);
    assert_eq!(v["coefficients"], serde_json::json!([["1"], ["-3"], ["3"], ["-1"]]));
    let out = logcv(
        &["guess", "--terms", "1,2,5,9,96/5,324547/9450,1,7,3,8,2,6,4,9,5,1", "--max-order", "2"],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["found"], false);
}

#[test]
fn fixpoint_free_terms_exit_one() {
    let out = logcv(&["fixpoint", "--m", "2", "--prefix", "1,2,3", "--terms", "12"], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("a_9"));
    let out = logcv(&["fixpoint", "--m", "2", "--prefix", "1,2,3,5,9,16,28,49,86,151", "--terms", "12"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)[11], "465");
}

#[test]
fn config_supplies_defaults() {
    let dir = std::env::temp_dir().join(format!("logcv-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("defaults.toml");
    std::fs::write(&path, "format = \"csv\"\nmax_iter = 0\n").unwrap();
    let out = logcv(&["certify", "--seq", "1,2,2,1,1", "--config", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("kind,m,"));
    // flags win over the file
    let out = logcv(&["certify", "--seq", "1,2,2,1", "--config", path.to_str().unwrap(), "--max-iter", "5", "--format", "json"], None);
    assert_eq!(json(&out)["kind"], "fixed-point");
    std::fs::write(&path, "bogus = 1\n").unwrap();
    let out = logcv(&["certify", "--seq", "1", "--config", path.to_str().unwrap()], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--config"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn probe_lists_every_power() {
    let out = logcv(&["probe", "--seq", "1,1,1", "--n-max", "4", "--max-iter", "6"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v.as_array().unwrap().len(), 4);
    assert_eq!(v[0]["n"], 1);
}

#[test]
fn precision_cap_is_honoured() {
    // a convergent of 2cos(2π/7) minus that number: about 5.5e-29, so its
    // sign needs more than 64 bits
    let tiny = "1,44236337402433/35474788256806-cos2pi(1,7)";
    let args = ["check", "--seq", tiny, "--depth", "0"];
    assert_eq!(logcv(&args, None).status.code(), Some(0));
    let capped = Command::new(env!("CARGO_BIN_EXE_logcv")).args(args).env("LOGCV_MAX_BITS", "64").output().unwrap();
    assert_eq!(capped.status.code(), Some(3));
    assert!(stderr(&capped).contains("64 bits"));
    let flagged = logcv(&[&["--max-bits", "64"][..], &args].concat(), None);
    assert_eq!(flagged.status.code(), Some(3));
    assert!(stderr(&flagged).contains("LOGCV_MAX_BITS"));
}
