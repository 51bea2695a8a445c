use std::f64::consts::PI;
use std::path::Path;
use std::process::{Command, Output};

fn daqc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_daqc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn rows(path: &Path) -> Vec<Vec<String>> {
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn ideal_digital_sweep_is_exact() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("ideal.csv");
    let o = daqc(&[
        "sweep-beta", "--ideal", "--protocols", "dqc,sdaqc", "--qubits", "3",
        "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with(
        "protocol,n_qubits,beta,shots,seed,mean_fidelity,std_fidelity,delta_t,error_scale\n"
    ));
    let rows = rows(&out);
    assert_eq!(rows.len(), 42);
    for r in &rows {
        assert_eq!(r[5], "1.000000000");
    }
    assert!(dir.path().join("ideal.manifest.json").exists());
}

#[test]
fn ideal_banged_rows_are_bounded() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("banged.csv");
    let o = daqc(&[
        "sweep-beta", "--ideal", "--protocols", "bdaqc", "--qubits", "3,5,6,7",
        "--beta-points", "5", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = rows(&out);
    assert_eq!(rows.len(), 20);
    for r in rows {
        let f: f64 = r[5].parse().unwrap();
        assert!(f > 0.90 && f < 1.0, "{r:?}");
    }
}

#[test]
fn four_qubits_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let o = daqc(&["sweep-beta", "--qubits", "4", "--protocols", "sdaqc", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("singular sign matrix for N=4"));
    assert!(!out.exists());
}

#[test]
fn invalid_flags_and_configs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("x.csv");
    let out = out.to_str().unwrap();
    assert_eq!(daqc(&["sweep-beta", "--qubits", "3", "--bogus", "--out", out]).status.code(), Some(2));
    assert_eq!(daqc(&["sweep-beta", "--protocols", "qaoa", "--out", out]).status.code(), Some(2));
    assert_eq!(
        daqc(&["sweep-beta", "--qubits", "3", "--noise-config", "/nonexistent.json", "--out", out]).status.code(),
        Some(2)
    );
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"tqgn": 0.1, "colour": "red"}"#).unwrap();
    let o = daqc(&["sweep-beta", "--qubits", "3", "--noise-config", cfg.to_str().unwrap(), "--out", out]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("noise.json");
    std::fs::write(&cfg, r#"{"seed": 99, "tqgn": 0.3}"#).unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = daqc(&[
            "sweep-beta", "--qubits", "3", "--shots", "50", "--beta-points", "3",
            "--noise-config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        std::fs::read(out).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    assert!(String::from_utf8(a).unwrap().contains(",99,"));
}

#[test]
fn error_scale_sweep_shape() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scale.csv");
    let o = daqc(&[
        "sweep-error-scale", "--protocols", "dqc,bdaqc", "--qubits", "3,5", "--scales", "0,1,2",
        "--shots", "40", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let rows = rows(&out);
    assert_eq!(rows.len(), 2 * 2 * 3);
    for r in &rows {
        assert_eq!(r[2], format!("{:.9}", PI / 4.0));
        if r[8] == "0.000000000" && r[0] == "DQC" {
            assert_eq!(r[5], "1.000000000");
        }
    }
}

#[test]
fn compile_qft_block() {
    let o = daqc(&["compile", "--qubits", "3", "--target", "qft-block:1"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let durations: Vec<f64> = text
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split_whitespace().nth(3).unwrap().parse().unwrap())
        .collect();
    let want = [-PI / 32.0, -PI / 16.0, -3.0 * PI / 32.0];
    for (d, w) in durations.iter().zip(want) {
        assert!((d - w).abs() < 1e-11);
    }
    let residual: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("# residual "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual < 1e-10);
}

#[test]
fn compile_coupling_files() {
    let dir = tempfile::tempdir().unwrap();
    let zero = dir.path().join("zero.txt");
    std::fs::write(&zero, "# nothing coupled\n").unwrap();
    let o = daqc(&["compile", "--qubits", "3", "--target", zero.to_str().unwrap()]);
    assert!(o.status.success());
    for l in stdout(&o).lines().filter(|l| !l.starts_with('#')) {
        assert_eq!(l.split_whitespace().nth(3).unwrap().parse::<f64>().unwrap(), 0.0);
    }
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1 2\n").unwrap();
    assert_eq!(daqc(&["compile", "--qubits", "3", "--target", bad.to_str().unwrap()]).status.code(), Some(2));
    let o = daqc(&["compile", "--qubits", "4", "--target", zero.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("singular sign matrix for N=4"));
}

#[test]
fn nn2ata_reports() {
    let o = daqc(&["nn2ata", "--size", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 2);
    assert!(text.contains("# cover PASS"));
    assert!(text.contains("dense verification PASS"));

    let o = daqc(&["nn2ata", "--size", "6", "--time", "-0.7"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 3);

    let o = daqc(&["nn2ata", "--size", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("cover FAIL"));
}

#[test]
fn plot_renders_svg() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let svg = dir.path().join("s.svg");
    let o = daqc(&[
        "sweep-beta", "--ideal", "--qubits", "3", "--beta-points", "4", "--out", csv.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let o = daqc(&["plot", "--in", csv.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<polyline").count(), 3);

    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "protocol,n_qubits,beta,shots,seed,mean_fidelity,std_fidelity,delta_t,error_scale\n").unwrap();
    let o = daqc(&["plot", "--in", empty.to_str().unwrap(), "--out", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
