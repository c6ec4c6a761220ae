use std::process::{Command, Output};

use serde_json::Value;

fn bbgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bbgeo"))
        .args(args)
        .env_remove("BB_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn norms() {
    for (space, x, want) in [("lp:inf:2", "1,-2", 2.0), ("lp:2:2", "3,4", 5.0), ("product(lp:2:2,lp:2:2)", "3,4,1,0", 5.0)] {
        let o = bbgeo(&["norm", "--space", space, "--x", x]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim().parse::<f64>().unwrap(), want);
    }
}

#[test]
fn orthogonality_with_oracle() {
    for (space, x, y, want) in [("lp:2:2", "1,0", "0,5", "holds"), ("lp:inf:2", "1,1", "1,-1", "holds"), ("lp:inf:2", "1,0.5", "1,0", "fails")] {
        let o = bbgeo(&["orth", "--space", space, "--x", x, "--y", y, "--oracle"]);
        assert!(o.status.success());
        let v = &json_lines(&o)[0];
        assert_eq!(v["verdict"], want);
        assert_eq!(v["oracle"]["verdict"], want);
        assert_eq!(v["agree"], true);
    }
}

#[test]
fn worked_example_attainment() {
    let o = bbgeo(&["attain", "--operator", "paper-example"]);
    assert!(o.status.success());
    let v = &json_lines(&o)[0];
    assert_eq!(v["value"], 1.0);
    assert_eq!(v["exact"], true);
    assert_eq!(v["orbits"], serde_json::json!([[[1.0, 1.0], [1.0, 1.0]]]));
}

#[test]
fn operator_from_json_file() {
    let dir = std::env::temp_dir().join(format!("bbgeo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("op.json");
    let op = r#"{"X":{"kind":"lp","p":2.0,"dim":2},"Y":{"kind":"lp","p":2.0,"dim":2},"Z":{"kind":"lp","p":"inf","dim":2},
               "coeffs":[[[1.0,0.0],[0.0,0.0]],[[0.0,0.0],[0.0,0.0]]]}"#;
    std::fs::write(&path, op).unwrap();
    let o = bbgeo(&["opnorm", "--operator", &format!("@{}", path.display())]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = &json_lines(&o)[0];
    assert!((v["value"].as_f64().unwrap() - 1.0).abs() <= 1e-12);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn exit_codes() {
    let zero = bbgeo(&["attain", "--operator", "zero:2:2x2x2"]);
    assert_eq!(zero.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&zero.stderr).unwrap();
    assert!(err["error"].is_string());

    for bad in [
        vec!["norm", "--space", "lp:0.5:2", "--x", "1,2"],
        vec!["norm", "--space", "lp:2:2", "--x", "1,2,3"],
        vec!["norm", "--space", "lp:2:2", "--x", "1,abc"],
        vec!["attain", "--operator", "{not json"],
        vec!["verify", "no-such-suite"],
        vec!["--eps-eq", "-1", "norm", "--space", "lp:2:2", "--x", "1,2"],
        vec!["--starts", "0", "opnorm", "--operator", "paper-example"],
    ] {
        assert_eq!(bbgeo(&bad).status.code(), Some(2), "{bad:?}");
    }
}

#[test]
fn verify_example_suite() {
    let o = bbgeo(&["verify", "paper-example", "--no-timestamp"]);
    assert!(o.status.success());
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 6);
    assert!(lines[..5].iter().all(|c| c["verdict"] == "holds" && c.get("runtime_ms").is_none()));
    assert_eq!(lines[5]["passed"], true);
}

#[test]
fn reports_are_byte_identical_without_timestamps() {
    let args = ["verify", "operator-smooth", "--seed", "9", "--no-timestamp"];
    let a = bbgeo(&args);
    let b = bbgeo(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn seed_comes_from_the_environment() {
    let run = |env: Option<&str>, extra: &[&str]| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_bbgeo"));
        c.env_remove("BB_SEED");
        if let Some(s) = env {
            c.env("BB_SEED", s);
        }
        c.args(["opnorm", "--operator", "random:2:2x2x2"]).args(extra).output().unwrap().stdout
    };
    assert_eq!(run(Some("5"), &[]), run(None, &["--seed", "5"]));
    assert_ne!(run(Some("5"), &[]), run(None, &["--seed", "6"]));
}

#[test]
fn example_command_reports_all_checks() {
    let o = bbgeo(&["example"]);
    assert!(o.status.success());
    let v = &json_lines(&o)[0];
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["value"], 1.0);
    assert_eq!(v["checks"].as_array().unwrap().len(), 5);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("bbgeo-out-{}.jsonl", std::process::id()));
    let o = bbgeo(&["--output", path.to_str().unwrap(), "attain", "--operator", "paper-example"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"orbits\""));
    std::fs::remove_file(&path).ok();
}
