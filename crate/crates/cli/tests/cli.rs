use std::path::Path;
use std::process::{Command, Output};

fn polya(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polya"))
        .args(args)
        .env_remove("POLYA_SEED")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn error_record(o: &Output) -> serde_json::Value {
    assert!(!o.status.success());
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    assert_eq!(err.trim_end().lines().count(), 1, "{err}");
    serde_json::from_str(err.trim()).unwrap()
}

fn write_regression(path: &Path) {
    let mut text = String::new();
    for i in 0..80 {
        let x = i as f64 / 8.0;
        text.push_str(&format!("{} 1:{x} 2:{}\n", x.sin(), (i % 7) as f64));
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn kernel_eval_and_ft() {
    let o = polya(&["kernel", "eval", "--kernel", "gamma:s=2", "--r", "0,1"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "r,k");
    assert_eq!(lines[1], "0,1");
    let k1: f64 = lines[2].split(',').nth(1).unwrap().parse().unwrap();
    assert!((k1 - (-1f64).exp()).abs() < 1e-15);
    let o = polya(&["kernel", "ft", "--kernel", "gamma:s=1", "--t", "1"]);
    let v: f64 = stdout(&o)
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!((v - 2f64.ln()).abs() < 1e-12);
    let o = polya(&[
        "kernel",
        "table",
        "--kernel",
        "rayleigh:sigma=1",
        "--max",
        "1",
        "--steps",
        "4",
    ]);
    assert_eq!(stdout(&o).lines().count(), 6);
}

#[test]
fn errors_are_single_json_lines() {
    let e = error_record(&polya(&["kernel", "eval", "--kernel", "gamma:s=-1", "--r", "1"]));
    assert_eq!(e["error"], "invalid_parameter");
    let e = error_record(&polya(&["kernel", "eval", "--r", "1"]));
    assert_eq!(e["error"], "usage");
    let e = error_record(&polya(&[
        "predict",
        "--model",
        "/nonexistent/m.json",
        "--data",
        "/nonexistent/d",
    ]));
    assert_eq!(e["error"], "io");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 1:0.5\n2 3:x\n").unwrap();
    let e = error_record(&polya(&["fit", "--data", bad.to_str().unwrap(), "--out", "/dev/null"]));
    assert_eq!(e["error"], "parse");
    assert!(e["message"].as_str().unwrap().contains("line 2, column 3"));
    let empty = dir.path().join("empty.txt");
    std::fs::write(&empty, "").unwrap();
    let e = error_record(&polya(&["cv", "--data", empty.to_str().unwrap()]));
    assert_eq!(e["error"], "empty_input");
}

#[test]
fn fit_then_predict() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("train.txt");
    write_regression(&data);
    let model = dir.path().join("m.json");
    let preds = dir.path().join("p.txt");
    let d = data.to_str().unwrap();
    let o = polya(&[
        "fit",
        "--data",
        d,
        "--map",
        "rb",
        "--kernel",
        "gamma:s=2",
        "--tau",
        "0.3",
        "--copies",
        "32",
        "--lambda",
        "0.01",
        "--out",
        model.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let fit: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    let o = polya(&[
        "predict",
        "--model",
        model.to_str().unwrap(),
        "--data",
        d,
        "--out",
        preds.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let summary: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(summary["value"], fit["train_value"]);
    assert!(summary["value"].as_f64().unwrap() < 0.05);
    assert_eq!(std::fs::read_to_string(&preds).unwrap().lines().count(), 80);
}

#[test]
fn features_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.txt");
    write_regression(&data);
    let out = dir.path().join("z.txt");
    let o = polya(&[
        "--seed",
        "9",
        "features",
        "--data",
        data.to_str().unwrap(),
        "--map",
        "rf",
        "--copies",
        "5",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let z = polya_cli::data::read_libsvm(&out).unwrap();
    assert_eq!(z.len(), 80);
    assert_eq!(z.dim, 5);
    let meta: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("z.txt.json")).unwrap()).unwrap();
    assert_eq!(meta["seed"], 9);
    assert_eq!(meta["D"], 5);
    assert_eq!(meta["kind"], "rf");
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["approx-error", "--copies", "1,4", "--trials", "10", "--n", "20"];
    let a = stdout(&polya(&[&["--seed", "3"][..], &args].concat()));
    let b = Command::new(env!("CARGO_BIN_EXE_polya"))
        .args(args)
        .env("POLYA_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(a, stdout(&b));
    assert_eq!(a.lines().count(), 1 + 3 * 2);
    let c = stdout(&polya(&[&["--seed", "4"][..], &args].concat()));
    assert_ne!(a, c);
}

#[test]
fn cross_validation_reports_best_point() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.txt");
    write_regression(&data);
    let table = dir.path().join("cv.csv");
    let o = polya(&[
        "cv",
        "--data",
        data.to_str().unwrap(),
        "--family",
        "gamma",
        "--shapes",
        "2",
        "--tau",
        "0.5,1",
        "--copies",
        "16",
        "--out",
        table.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let best: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(best["shape"], 2.0);
    assert_eq!(std::fs::read_to_string(&table).unwrap().lines().count(), 1 + 2 * 3);
}

#[test]
fn bench_reports_metrics() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("d.txt");
    write_regression(&data);
    let o = polya(&[
        "bench",
        "--data",
        data.to_str().unwrap(),
        "--map",
        "rf,rb",
        "--copies",
        "8",
        "--trials",
        "2",
    ]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 3);
    assert!(out.lines().skip(1).all(|l| l.contains(",mse,")));
}
