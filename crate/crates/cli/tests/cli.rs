use std::fs;
use std::process::{Command, Output};

fn abelmax(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abelmax"))
        .args(args)
        .env_remove("ABELMAX_FORMAT")
        .env_remove("ABELMAX_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn number_theory_commands() {
    assert_eq!(stdout(&abelmax(&["g", "6"])), "120\n");
    assert_eq!(stdout(&abelmax(&["numtheory", "h", "10"])), "7\n");
    assert_eq!(stdout(&abelmax(&["f", "6"])), "144\n");
    assert_eq!(stdout(&abelmax(&["exceptions", "1000000"])), "4 6 10\n");

    let ratio = stdout(&abelmax(&["ratio", "1000000"]));
    let value: f64 = ratio.trim().parse().unwrap();
    assert!((0.99..=1.01).contains(&value));
    let digits = ratio.trim().chars().filter(char::is_ascii_digit).count();
    assert_eq!(digits, 12);
}

#[test]
fn number_theory_errors() {
    let out = abelmax(&["g", "six"]);
    assert_eq!(out.status.code(), Some(2));
    let out = abelmax(&["f", "1000000"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("100000"));
    let out = abelmax(&["ratio", "8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn mgroup_values() {
    for (spec, m) in [("alt:5", 5), ("sym:6", 9), ("file:groups/m12.gens", 16)] {
        let out = abelmax(&["mgroup", spec]);
        assert!(out.status.success(), "{spec}: {}", stderr(&out));
        assert!(stdout(&out).contains(&format!("\nm: {m}\n")), "{spec}");
    }
    let out = abelmax(&["mgroup", "sym:5", "--brute", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["m"], 6);
    assert_eq!(v["brute_m"], 6);
}

#[test]
fn mgroup_output_is_repeatable() {
    let a = abelmax(&["mgroup", "alt:7"]);
    let b = abelmax(&["mgroup", "alt:7"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_specs_and_caps() {
    let out = abelmax(&["mgroup", "klein:4"]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(
        err.contains("psl2:P") && err.contains("agammal1:A"),
        "{err}"
    );

    let out = abelmax(&["mgroup", "psl2:9"]);
    assert_eq!(out.status.code(), Some(2));

    let out = abelmax(&["mgroup", "sym:7", "--enum-cap", "100"]);
    assert_eq!(out.status.code(), Some(3));
    let err = stderr(&out);
    assert!(err.contains("100") && err.contains("5040"), "{err}");

    let out = abelmax(&["mgroup", "sym:7", "--brute"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("2000"));

    let out = abelmax(&["mgroup", "sym:4", "--workers", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_suites_on_the_catalog() {
    let out = abelmax(&["verify", "a"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("0 failed"));

    let out = abelmax(&["verify", "twoprime", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let flagged: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["detail"]["flagged"] == "1")
        .map(|c| c["group_id"].as_str().unwrap())
        .collect();
    assert_eq!(flagged, ["sym:3", "alt:5", "psl2:13"]);

    let out = abelmax(&["verify", "equality", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("theorem,group_id,passed,m,order,detail_key,detail_value,status\n"));
    assert!(text.contains("equality,sym:4,true,4,24,g_m,24,pass"));
    assert!(text.contains("order_64_groups,false,10,64,g_m,,unverified"));
}

#[test]
fn verify_explicit_specs() {
    let out = abelmax(&["verify", "goh", "sym:3", "alt:5", "sym:4"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("goh sym:3 expected_exception"));
    assert!(text.contains("goh alt:5 expected_exception"));
    assert!(text.contains("goh sym:4 pass"));
}

#[test]
fn verify_all_is_byte_identical_across_workers() {
    let dir = tempfile::tempdir().unwrap();
    let one = dir.path().join("one.json");
    let four = dir.path().join("four.json");
    for (path, workers) in [(&one, "1"), (&four, "4")] {
        let out = abelmax(&[
            "verify",
            "all",
            "--format",
            "json",
            "--workers",
            workers,
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        assert!(stdout(&out).starts_with("all: "));
    }
    let a = fs::read(&one).unwrap();
    assert_eq!(a, fs::read(&four).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn manifest_with_relative_generator_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(
        dir.path().join("s4.gens"),
        "# S4\ndegree 4\ngen (1,2,3,4)\ngen (1,2)\nexpect_order 24\n",
    )
    .unwrap();
    let manifest = dir.path().join("small.manifest");
    fs::write(&manifest, "# two groups\nalt:4\nfile:s4.gens\n").unwrap();
    let out = abelmax(&[
        "verify",
        "equality",
        "--manifest",
        manifest.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("equality file:s4.gens pass") && text.contains("equal=1"));
    assert!(text.contains("equality alt:4 pass"));

    fs::write(&manifest, "alt:4\nnonsense\n").unwrap();
    let out = abelmax(&["verify", "a", "--manifest", manifest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains(":2:"));
}

#[test]
fn environment_overrides() {
    let out = Command::new(env!("CARGO_BIN_EXE_abelmax"))
        .args(["g", "4"])
        .env("ABELMAX_FORMAT", "csv")
        .output()
        .unwrap();
    assert_eq!(stdout(&out), "function,n,value\ng,4,24\n");
}

#[test]
fn ratio_series() {
    let out = abelmax(&["series", "1000", "10000", "100000"]);
    let text = stdout(&out);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "n,log_f,ratio");
    assert_eq!(rows.len(), 4);
    let ratios: Vec<f64> = rows[1..]
        .iter()
        .map(|r| r.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert!(ratios.windows(2).all(|w| w[0] > w[1] && w[1] > 1.0));

    assert_eq!(stdout(&abelmax(&["series", "500"])).lines().count(), 2);
    assert_eq!(stdout(&abelmax(&["series", "100..50"])), "n,log_f,ratio\n");
    assert_eq!(abelmax(&["series", "10..x"]).status.code(), Some(2));
}
