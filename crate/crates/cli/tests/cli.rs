use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_orthotype"));
    c.env_remove("ORTHOTYPE_CACHE");
    c
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(dir: &Path, args: &[&str]) -> Output {
    let out = bin().current_dir(dir).args(args).output().unwrap();
    if !out.status.success() {
        eprintln!("{}", String::from_utf8_lossy(&out.stderr));
    }
    out
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn csv_rows(path: &Path) -> Vec<Vec<String>> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn irrep_dimensions_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["irrep", "--group", "su3", "--hw", "1,1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dim 8"));
    assert!(dir.path().join("cache/irrep_su3_1_1.json").exists());

    let o = run(dir.path(), &["irrep", "--group", "su2", "--two-j", "3", "--out", "spin.json"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("dim 4"));
    assert_eq!(read_json(&dir.path().join("spin.json"))["dim"], 4);
}

#[test]
fn cache_dir_from_flag_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    assert!(run(dir.path(), &["--cache-dir", "flagged", "irrep", "--hw", "1,0"]).status.success());
    assert!(dir.path().join("flagged/irrep_su3_1_0.json").exists());

    let o = bin()
        .current_dir(dir.path())
        .env("ORTHOTYPE_CACHE", dir.path().join("from_env"))
        .args(["irrep", "--hw", "0,1"])
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(dir.path().join("from_env/irrep_su3_0_1.json").exists());
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["irrep", "--group", "su3", "--hw", "-1,0"][..],
        &["irrep", "--group", "su3", "--hw", "1"],
        &["irrep", "--group", "so5", "--hw", "1,0"],
        &["sweep", "--emb1", "middle"],
        &["sweep", "--epsilon", "0"],
        &["normbound", "--phi", "missing.phi"],
        &["bogus"],
    ] {
        let o = run(dir.path(), args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unparsable_phi_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("bad.phi"), "group = su2\naxis = z range=0,1\n").unwrap();
    let o = run(dir.path(), &["normbound", "--phi", "bad.phi"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn insufficient_quadrature_reports_requirement() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["--quadrature-degree", "2", "compactness", "-N", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("4 required"));
}

#[test]
fn sweep_rows_and_values() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["sweep", "--max-degree", "8", "--epsilon", "0.25", "--out", "sweep.csv"]);
    assert!(o.status.success());
    let rows = csv_rows(&dir.path().join("sweep.csv"));
    assert_eq!(rows.len(), 45);
    let value = |p: &str, q: &str| -> f64 {
        rows.iter().find(|r| r[0] == p && r[1] == q).unwrap()[5].parse().unwrap()
    };
    assert_eq!(value("0", "0"), 1.0);
    assert!((value("1", "1") - 0.5).abs() < 1e-8);
    let verdict = read_json(&dir.path().join("sweep_verdict.json"));
    assert_eq!(verdict["count_above"], 4);
    assert_eq!(verdict["monotone_tail"], true);
}

#[test]
fn counterexample_rows() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["counterexample", "--max-two-j", "10", "--out", "c.csv"]);
    assert!(o.status.success());
    let rows = csv_rows(&dir.path().join("c.csv"));
    assert_eq!(rows.len(), 11);
    for r in &rows {
        let two_j: u32 = r[0].parse().unwrap();
        let v: f64 = r[5].parse().unwrap();
        if two_j % 2 == 0 {
            assert!((v - 1.0).abs() < 1e-10);
        } else {
            assert_eq!(v, 0.0);
        }
    }
    let verdict = read_json(&dir.path().join("c_verdict.json"));
    assert_eq!(verdict["count_above"], 6);
    assert_eq!(verdict["monotone_tail"], false);
}

#[test]
fn compactness_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(dir.path(), &["compactness", "-N", "6", "--out", "out/cmp"]);
    assert!(o.status.success());
    let shells = |name: &str| -> Vec<f64> {
        let j = read_json(&dir.path().join(format!("out/cmp_{name}.json")));
        assert_eq!(j["N"], 6);
        j["shell_max"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect()
    };
    let (f1, f2, pr) = (shells("factor1"), shells("factor2"), shells("product"));
    for n in 0..=6 {
        assert!((f1[n] - 1.0).abs() < 1e-10 && (f2[n] - 1.0).abs() < 1e-10);
        if n >= 1 {
            assert!(pr[n] < f1[n] && pr[n] < f2[n]);
        }
    }
    let header = fs::read_to_string(dir.path().join("out/cmp_product.csv")).unwrap();
    assert!(header.starts_with("p,q,dim_sigma,sigma_max\n0,0,1,"));

    let o = run(dir.path(), &["compactness", "-N", "0", "--out", "zero"]);
    assert!(o.status.success());
    let j = read_json(&dir.path().join("zero_product.json"));
    assert!((j["global_norm"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(csv_rows(&dir.path().join("zero_product.csv")).len(), 1);
}

#[test]
fn normbound_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let check = |name: &str| -> Value {
        let out = format!("{name}.json");
        let o = run(dir.path(), &["normbound", "--phi", fixture(&format!("{name}.phi")).to_str().unwrap(), "--out", &out]);
        assert!(o.status.success());
        read_json(&dir.path().join(out))
    };
    let euler = check("euler_chart");
    assert_eq!(euler["holds"], true);
    assert_eq!(euler["decaying"], true);
    let degenerate = check("degenerate_one_parameter");
    assert_eq!(degenerate["holds"], true);
    assert_eq!(degenerate["decaying"], false);
    let scaled = check("scaled_weight");
    assert_eq!(scaled["holds"], true);
    let ratio = scaled["observed"].as_f64().unwrap() / euler["observed"].as_f64().unwrap();
    assert!((ratio - 3.0).abs() < 1e-12);

    fs::write(
        dir.path().join("zero.phi"),
        fs::read_to_string(fixture("euler_chart.phi")).unwrap().replace("weight = constant 1", "weight = constant 0"),
    )
    .unwrap();
    assert!(run(dir.path(), &["normbound", "--phi", "zero.phi", "--out", "zero.json"]).status.success());
    let z = read_json(&dir.path().join("zero.json"));
    assert_eq!((z["bound"].as_f64(), z["observed"].as_f64(), z["holds"].as_bool()), (Some(0.0), Some(0.0), Some(true)));
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("run.cfg"), "# small sweep\nmax_degree = 2\nepsilon = 0.4\nout = small.csv\n").unwrap();
    assert!(run(dir.path(), &["--config", "run.cfg", "sweep"]).status.success());
    assert_eq!(csv_rows(&dir.path().join("small.csv")).len(), 6);
    assert!(run(dir.path(), &["--config", "run.cfg", "sweep", "--max-degree", "3"]).status.success());
    assert_eq!(csv_rows(&dir.path().join("small.csv")).len(), 10);
}

/// Runs a command twice in fresh directories (cold and warm cache in the
/// second case) and compares every output file byte for byte.
fn assert_deterministic(args: &[&str], outputs: &[&str]) {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert!(run(a.path(), args).status.success());
    assert!(run(b.path(), args).status.success());
    assert!(run(b.path(), args).status.success());
    for f in outputs {
        let x = fs::read(a.path().join(f)).unwrap();
        let y = fs::read(b.path().join(f)).unwrap();
        assert_eq!(x, y, "{args:?}: {f}");
    }
}

#[test]
fn every_command_is_deterministic() {
    assert_deterministic(&["irrep", "--hw", "2,1", "--out", "i.json"], &["i.json", "cache/irrep_su3_2_1.json"]);
    assert_deterministic(&["branch", "--hw", "2,2", "--out", "b.json"], &["b.json"]);
    assert_deterministic(&["sweep", "--max-degree", "5", "--out", "s.csv"], &["s.csv", "s_verdict.json"]);
    assert_deterministic(&["counterexample", "--max-two-j", "7", "--out", "c.csv"], &["c.csv", "c_verdict.json"]);
    assert_deterministic(
        &["compactness", "-N", "4", "--out", "k"],
        &["k_factor1.csv", "k_factor2.csv", "k_product.csv", "k_factor1.json", "k_product.json"],
    );
    let phi = fixture("degenerate_one_parameter.phi");
    assert_deterministic(&["normbound", "--phi", phi.to_str().unwrap(), "--out", "n.json"], &["n.json"]);
}
