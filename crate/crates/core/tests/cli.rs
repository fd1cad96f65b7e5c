use std::process::Command;

use sktorus::cli::{run, Config};

fn run_args(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("sktorus").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn run_all_passes_and_is_deterministic() {
    let (code, first, _) = run_args(&["verify", "run-all"]);
    assert_eq!(code, 0, "{first}");
    assert!(!first.contains("FAIL"));
    // drop the "<runtime> ms" pair from every line
    let strip = |s: &str| -> Vec<String> {
        s.lines()
            .map(|l| {
                let w: Vec<&str> = l.split_whitespace().collect();
                let keep: Vec<&str> = (0..w.len())
                    .filter(|&i| w[i] != "ms" && w.get(i + 1) != Some(&"ms"))
                    .map(|i| w[i])
                    .collect();
                keep.join(" ")
            })
            .collect()
    };
    let (_, second, _) = run_args(&["verify", "run-all"]);
    assert_eq!(strip(&first), strip(&second));
}

#[test]
fn zero_budget_skips_enumeration() {
    let (code, out, _) = run_args(&["--budget", "0", "verify", "run-all"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l.starts_with("SKIPPED") && l.contains("statesum")));
    assert!(!out.contains("statesum grid"));
}

#[test]
fn json_reports() {
    let (code, out, _) = run_args(&["--json", "--root", "24", "verify", "gauss", "--n", "3"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v[0]["computed"], true);
    assert_eq!(v[0]["status"], "pass");
}

#[test]
fn frobenius_defaults_to_context_n() {
    let (code, out, _) = run_args(&["--root", "40", "verify", "frobenius-annulus"]);
    assert_eq!(code, 0);
    assert!(out.contains("N=5"));
    let (code, out, _) = run_args(&["--symbolic", "verify", "frobenius-annulus", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("witness"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(run_args(&["verify", "gauss", "--n", "0"]).0, 2);
    assert_eq!(run_args(&["surface", "vertex-matrix", "no-such-file"]).0, 2);
    assert_eq!(
        run_args(&["--root", "8", "--symbolic", "cheby", "expand", "--n", "2"]).0,
        2
    );
    assert_eq!(run_args(&["statesum", "transparency"]).0, 2);
    assert_eq!(run_args(&["frobnicate"]).0, 2);
}

#[test]
fn surface_commands_emit_json() {
    let (code, out, _) = run_args(&["surface", "vertex-matrix", "annulus"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["index"].as_array().unwrap().len(), 4);

    let (code, out, _) = run_args(&["surface", "flip", "square", "--edge", "x"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["theta"]["terms"].as_array().unwrap().len() == 2);

    let (code, out, _) = run_args(&["surface", "plug", "eye", "--component", "beta"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("kernel"));
}

#[test]
fn statesum_and_curves() {
    let (code, out, _) = run_args(&["statesum", "grid", "--n", "2", "--m", "2"]);
    assert_eq!(code, 0);
    assert!(out.trim_end().ends_with("closed form: match"));
    let (code, out, _) = run_args(&["--root", "16", "statesum", "transparency", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: Skew (expected Skew)"));
    let (code, out, _) = run_args(&["curves", "admissible", "--shape", "triangle", "--vector", "1,1,0"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"admissible\": true"));
    let (_, out, _) = run_args(&["curves", "admissible", "--shape", "triangle", "--vector", "1,0,0"]);
    assert!(out.contains("\"admissible\": false"));
}

#[test]
fn qtrace_annulus_core() {
    let (code, out, err) = run_args(&["qtrace", "--shape", "annulus", "--knot", "annulus-core"]);
    assert_eq!(code, 0, "{err}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn config_file_and_environment() {
    let dir = std::env::temp_dir().join(format!("sktorus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("sktorus.conf");
    std::fs::write(&cfg, "# defaults\nbudget = 0\nroot = 24\n").unwrap();
    assert_eq!(Config::load(&cfg).unwrap().root, Some(24));
    assert!(Config::parse("colour = red").is_err());

    let (code, out, _) = run_args(&["--config", cfg.to_str().unwrap(), "verify", "gauss", "--n", "3"]);
    assert_eq!(code, 0);
    assert!(out.contains("[m=24]") && out.contains("computed=true"));

    let bin = env!("CARGO_BIN_EXE_sktorus");
    let out = Command::new(bin)
        .args(["verify", "run-all"])
        .env("SKTORUS_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("SKIPPED"));

    let out = Command::new(bin)
        .args(["verify", "gauss", "--n", "2"])
        .env("SKTORUS_ROOT", "16")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("[m=16]"));
    std::fs::remove_dir_all(&dir).ok();
}
