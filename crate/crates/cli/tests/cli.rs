use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn maxbp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_maxbp")).args(args).output().expect("run maxbp")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn path_str(p: &std::path::Path) -> &str {
    p.to_str().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success() || out.status.code() == Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("report is JSON")
}

fn generated(name: &str, left: &str, right: &str, edges: &str, seed: &str) -> PathBuf {
    let p = scratch(name);
    let out = maxbp(&["generate", "--left", left, "--right", right, "--edges", edges, "--seed", seed, "--output", path_str(&p)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    p
}

#[test]
fn search_matches_oracle_on_a_small_graph() {
    let input = generated("small.txt", "7", "8", "38", "11");
    let common = ["--input", path_str(&input), "--topk", "3"];
    let oracle = json(&maxbp(&[&["oracle"], &common[..]].concat()));
    assert!(!oracle["results"].as_array().unwrap().is_empty());
    for kernel in ["basic", "fast"] {
        for framework in ["none", "pb", "ie", "pbie"] {
            let args = [&["search", "--kernel", kernel, "--framework", framework], &common[..]].concat();
            let report = json(&maxbp(&args));
            assert_eq!(report["status"], "ok");
            let edges = |v: &Value| -> Vec<Value> {
                v["results"].as_array().unwrap().iter().map(|h| h["edges"].clone()).collect()
            };
            assert_eq!(edges(&report), edges(&oracle), "{kernel}+{framework}");
        }
    }
}

#[test]
fn report_echoes_parameters_and_uses_labels() {
    let p = scratch("labels.txt");
    // K(3,3) on named vertices plus a pendant edge
    let mut text = String::from("# names\n");
    for a in ["ann", "bob", "cat"] {
        for x in ["x", "y", "z"] {
            text += &format!("{a} {x}\n");
        }
    }
    text += "dan w\n";
    fs::write(&p, text).unwrap();
    let report = json(&maxbp(&["search", "--input", path_str(&p)]));
    assert_eq!(report["params"]["k"], 1);
    assert_eq!(report["params"]["topk"], 1);
    assert_eq!(report["params"]["theta_l"], 3);
    assert_eq!(report["params"]["kernel"], "fast");
    assert_eq!(report["params"]["framework"], "pbie");
    assert_eq!(report["graph"]["edges"], 10);
    let top = &report["results"][0];
    assert_eq!(top["left"], serde_json::json!(["ann", "bob", "cat"]));
    assert_eq!(top["right"], serde_json::json!(["x", "y", "z"]));
    assert_eq!((top["vertices"].as_u64(), top["edges"].as_u64()), (Some(6), Some(9)));
    assert!(report["stats"]["branches"].as_u64().is_some());
    assert!(report["stats"].get("ms").is_none());
    let timed = json(&maxbp(&["search", "--input", path_str(&p), "--timing"]));
    assert!(timed["stats"]["ms"].as_u64().is_some());
}

#[test]
fn search_output_is_byte_stable() {
    let input = generated("stable.txt", "60", "60", "700", "5");
    let args = ["search", "--input", path_str(&input), "--topk", "5"];
    let a = maxbp(&args);
    let b = maxbp(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn generate_is_deterministic_and_honours_density() {
    let a = generated("gen_a.txt", "50", "30", "200", "9");
    let b = generated("gen_b.txt", "50", "30", "200", "9");
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let out = maxbp(&["generate", "--left", "100", "--right", "100", "--density", "8", "--seed", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('%')).count(), 800);
}

#[test]
fn malformed_input_exits_with_the_parse_code() {
    let p = scratch("bad.txt");
    fs::write(&p, "1 2\n3 4 5\n").unwrap();
    let out = maxbp(&["search", "--input", path_str(&p)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = maxbp(&["search", "--input", path_str(&p), "--k", "2", "--theta-l", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(maxbp(&["search", "--k"]).status.code(), Some(2));
}

#[test]
fn time_limit_gives_a_partial_report_and_its_own_code() {
    let input = generated("big.txt", "2000", "2000", "20000", "0");
    let out = maxbp(&["search", "--input", path_str(&input), "--framework", "none", "--time-limit", "0.5"]);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["status"], "timeout");
}

#[test]
fn gamma_prints_the_known_roots() {
    let rows = json(&maxbp(&["gamma"]));
    let got: Vec<f64> = rows.as_array().unwrap().iter().map(|r| r["gamma"].as_f64().unwrap()).collect();
    for (g, want) in got.iter().zip([1.754, 1.888, 1.947]) {
        assert!((g - want).abs() < 1e-3, "{g} vs {want}");
    }
    assert_eq!(maxbp(&["gamma", "0"]).status.code(), Some(2));
}

#[test]
fn bench_emits_one_line_per_grid_point() {
    let cfg = scratch("grid.txt");
    fs::write(&cfg, "# three k values\nleft = 40\ndensity = 6\nk = 1,2,3\nkernels = basic,fast\nframeworks = none,pbie\ntime_limit = 30\n").unwrap();
    let run = || {
        let out = maxbp(&["bench", "--config", path_str(&cfg)]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        String::from_utf8(out.stdout).unwrap()
    };
    let text = run();
    let rows: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 3 * 2 * 2);
    for row in &rows {
        assert_eq!(row["status"], "ok");
        assert_eq!(row["theta"].as_u64().unwrap(), 2 * row["k"].as_u64().unwrap() + 1);
        assert!(row["branches"].as_u64().is_some());
    }
    // same grid, same instances and results
    let strip = |t: &str| -> Vec<Value> {
        t.lines()
            .map(|l| {
                let mut v: Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("ms");
                v
            })
            .collect()
    };
    assert_eq!(strip(&text), strip(&run()));
}

#[test]
fn bench_rejects_a_bad_grid() {
    let cfg = scratch("bad_grid.txt");
    fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(maxbp(&["bench", "--config", path_str(&cfg)]).status.code(), Some(2));
}
