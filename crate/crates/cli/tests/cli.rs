use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn wplm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wplm"))
        .args(args)
        .output()
        .expect("binary runs")
}

/// Deterministic partially linear data: two predictors plus a smooth curve.
fn write_data(dir: &Path, n: usize, p: usize, collinear: bool) -> PathBuf {
    let mut text = String::from("Y");
    for i in 1..=p {
        text.push_str(&format!(",x{i}"));
    }
    text.push('\n');
    let mut state = 12345u64;
    let mut unit = || {
        // small LCG so the fixture does not depend on the library
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    };
    for i in 0..n {
        let t = (i + 1) as f64 / n as f64;
        let mut xs: Vec<f64> = (0..p).map(|_| 2.0 * unit()).collect();
        if collinear && p > 1 {
            xs[p - 1] = 2.0 * xs[0];
        }
        let lin: f64 = xs.iter().enumerate().map(|(k, x)| (k as f64 + 1.0) * x).sum();
        let y = lin + 3.0 * (6.0 * t).sin() + 0.5 * unit();
        text.push_str(&format!("{y}"));
        for x in xs {
            text.push_str(&format!(",{x}"));
        }
        text.push('\n');
    }
    let path = dir.join(format!("data_{n}_{p}_{collinear}.csv"));
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn fit_writes_documented_json() {
    let dir = TempDir::new().unwrap();
    let data = write_data(dir.path(), 128, 2, false);
    let out = dir.path().join("fit.json");
    let res = wplm(&["fit", "--input", s(&data), "--output", s(&out), "--iters", "600", "--burnin", "100", "--seed", "3"]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["n"], 128);
    assert_eq!(v["j0"], 3);
    assert_eq!(v["filter"], "sym8");
    assert_eq!(v["beta_hat"].as_array().unwrap().len(), 2);
    assert_eq!(v["inclusion_prob"].as_array().unwrap().len(), 2);
    assert_eq!(v["theta_hat"].as_array().unwrap().len(), 120);
    assert_eq!(v["y_hat"].as_array().unwrap().len(), 128);
    assert_eq!(v["f_hat"].as_array().unwrap().len(), 128);
    assert_eq!(v["chain"]["kept"], 500);
    assert_eq!(v["chain"]["seed"], 3);
    let b0 = v["beta_hat"][0].as_f64().unwrap();
    let b1 = v["beta_hat"][1].as_f64().unwrap();
    assert!((b0 - 1.0).abs() < 0.2 && (b1 - 2.0).abs() < 0.2, "{b0} {b1}");
}

#[test]
fn non_dyadic_input_exits_2_without_output() {
    let dir = TempDir::new().unwrap();
    let data = write_data(dir.path(), 100, 2, false);
    let out = dir.path().join("fit.json");
    let res = wplm(&["fit", "--input", s(&data), "--output", s(&out), "--iters", "50", "--burnin", "10"]);
    assert_eq!(res.status.code(), Some(2));
    let err = String::from_utf8(res.stderr).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    assert!(err.contains("power of two"));
    assert!(!out.exists());
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 1);
}

#[test]
fn missing_file_exits_1() {
    let dir = TempDir::new().unwrap();
    let res = wplm(&["fit", "--input", s(&dir.path().join("absent.csv"))]);
    assert_eq!(res.status.code(), Some(1));
    assert_eq!(String::from_utf8(res.stderr).unwrap().trim_end().lines().count(), 1);
}

#[test]
fn rank_deficient_design_exits_3() {
    let dir = TempDir::new().unwrap();
    let data = write_data(dir.path(), 64, 3, true);
    let out = dir.path().join("fit.json");
    let res = wplm(&["fit", "--input", s(&data), "--output", s(&out), "--iters", "50", "--burnin", "10"]);
    assert_eq!(res.status.code(), Some(3));
    assert!(!out.exists());
}

#[test]
fn select_top_k_and_determinism() {
    let dir = TempDir::new().unwrap();
    let data = write_data(dir.path(), 64, 3, false);
    let run = |name: &str, k: &str| {
        let out = dir.path().join(name);
        let res = wplm(&[
            "select", "--input", s(&data), "--output", s(&out), "--topk", k, "--iters", "400", "--burnin", "100",
            "--filter", "db6", "--seed", "9",
        ]);
        assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
        fs::read(&out).unwrap()
    };
    let one = String::from_utf8(run("one.csv", "1")).unwrap();
    let lines: Vec<&str> = one.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "rank,model,count,frequency");
    assert!(lines[1].starts_with("1,"));
    assert_eq!(run("a.csv", "5"), run("b.csv", "5"));

    let json: Value = serde_json::from_slice(&run("m.json", "3")).unwrap();
    let models = json["models"].as_array().unwrap();
    assert!(!models.is_empty() && models.len() <= 3);
    let total: f64 = models.iter().map(|m| m["frequency"].as_f64().unwrap()).sum();
    assert!(total <= 1.0 + 1e-12);
}

#[test]
fn zero_top_k_is_rejected() {
    let dir = TempDir::new().unwrap();
    let data = write_data(dir.path(), 64, 2, false);
    let res = wplm(&["select", "--input", s(&data), "--topk", "0"]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn simulate_reports_finite_scores() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sim.csv");
    let res = wplm(&[
        "simulate", "--scenario", "example1-heavisine-128", "--reps", "5", "--iters", "300", "--burnin", "100",
        "--output", s(&out),
    ]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let headers: Vec<String> = reader.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(
        headers,
        ["scenario", "signal", "n", "M", "AMSE", "AMSE_SE", "AMSE_beta", "AMSE_beta_SE", "seconds"]
    );
    let row = reader.records().next().unwrap().unwrap();
    assert_eq!(&row[1], "heavisine");
    assert_eq!(&row[3], "5");
    let amse: f64 = row[4].parse().unwrap();
    assert!(amse.is_finite() && amse > 0.0);
}

#[test]
fn simulate_is_reproducible_apart_from_timing() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let res = wplm(&[
            "simulate", "--scenario", "example2-bumps-128", "--reps", "2", "--iters", "200", "--burnin", "50",
            "--seed", "4", "--output", s(&out),
        ]);
        assert!(res.status.success());
        let mut v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("seconds");
        v
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn unknown_scenario_exits_2() {
    let res = wplm(&["simulate", "--scenario", "example9-sawtooth-128"]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8(res.stderr).unwrap().contains("unknown scenario"));
}

fn write_dataset(dir: &Path, name: &str, data: &wavelet_plm::simbench::Dataset) -> PathBuf {
    let mut w = csv::Writer::from_path(dir.join(name)).unwrap();
    let p = data.x.ncols();
    let mut header = vec!["Y".to_string()];
    header.extend((1..=p).map(|i| format!("x{i}")));
    w.write_record(&header).unwrap();
    for r in 0..data.y.len() {
        let mut row = vec![format!("{:e}", data.y[r])];
        row.extend((0..p).map(|c| format!("{:e}", data.x[(r, c)])));
        w.write_record(&row).unwrap();
    }
    w.flush().unwrap();
    dir.join(name)
}

#[test]
fn default_fit_recovers_heavisine() {
    use wavelet_plm::simbench::{replicate_data, ScenarioSpec};
    let dir = TempDir::new().unwrap();
    let spec = ScenarioSpec::parse("example1-heavisine-128").unwrap();
    let (data, _) = replicate_data(&spec, 0);
    let input = write_dataset(dir.path(), "heavisine.csv", &data);
    let out = dir.path().join("fit.json");
    let res = wplm(&["fit", "--input", s(&input), "--output", s(&out)]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    let f_hat: Vec<f64> = v["f_hat"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    let mse = f_hat.iter().zip(&data.f_true).map(|(a, b)| (a - b).powi(2)).sum::<f64>() / 128.0;
    // twice the reference average for this design
    assert!(mse < 2.0 * 0.2834, "{mse}");
}

#[test]
fn select_ranks_true_bumps_model_first() {
    use wavelet_plm::simbench::{replicate_data, ScenarioSpec};
    let dir = TempDir::new().unwrap();
    let spec = ScenarioSpec::parse("example2-bumps-128").unwrap();
    let (data, _) = replicate_data(&spec, 0);
    let input = write_dataset(dir.path(), "bumps.csv", &data);
    let out = dir.path().join("models.csv");
    let res = wplm(&["select", "--input", s(&input), "--output", s(&out), "--topk", "3"]);
    assert!(res.status.success(), "{}", String::from_utf8_lossy(&res.stderr));
    let text = fs::read_to_string(&out).unwrap();
    let first = text.lines().nth(1).unwrap();
    assert!(first.starts_with("1,\"x1,x2,x3,x4\","), "{text}");
}
