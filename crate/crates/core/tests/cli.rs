use std::fs;
use std::process::{Command, Output};

fn twoslit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twoslit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn data_rows(stdout: &[u8]) -> (String, Vec<Vec<f64>>) {
    let text = String::from_utf8(stdout.to_vec()).unwrap();
    let mut lines = text.lines().filter(|l| !l.starts_with('#'));
    let header = lines.next().expect("header line").to_string();
    let rows = lines
        .map(|l| l.split(',').map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}

#[test]
fn pattern_has_all_columns_and_is_even() {
    let out = twoslit(&["pattern", "--y-steps", "41"]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = data_rows(&out.stdout);
    assert_eq!(header, "y,P_dist,P_boson,P_fermion");
    assert_eq!(rows.len(), 41);
    for (i, (row, mirror)) in rows.iter().zip(rows.iter().rev()).enumerate() {
        assert_eq!(row[0], -mirror[0]);
        for c in 1..4 {
            let (a, b) = (row[c], mirror[c]);
            assert!(
                (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-3),
                "column {c} row {i}"
            );
            assert!(a >= 0.0);
        }
    }
}

#[test]
fn figure_header_records_parameters() {
    let out = twoslit(&["figure", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("# command: figure 2"));
    assert!(text.contains("# sigma_bar = 4.0000000000000000e0 [um^-1]"));
    assert!(text.contains("# units: y [um], densities [um^-2]"));
}

#[test]
fn overlap_sweep_rows() {
    let out = twoslit(&[
        "overlap-sweep",
        "--sweep-min",
        "0.5",
        "--sweep-max",
        "2.5",
        "--sweep-steps",
        "9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let (header, rows) = data_rows(&out.stdout);
    assert_eq!(header, "sigma_bar,initial_overlap,final_overlap_sq");
    assert_eq!(rows.len(), 9);
    for r in &rows {
        assert!(r[2] > 0.95 && r[2] <= 1.0 + 1e-12, "{r:?}");
        if r[0] == 1.0 {
            assert!((r[2] - 1.0).abs() < 1e-10);
            assert_eq!(r[1], 1.0);
        }
    }
    assert!(rows.iter().any(|r| r[0] == 1.0));
}

#[test]
fn writes_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig1.csv");
    let out = twoslit(&["figure", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.lines().any(|l| l == "y,P_dist,P_boson,P_fermion"));
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("run.toml");
    fs::write(&path, "sigma_bar = 3.0\ny_steps = 5\nstats = \"boson\"\n").unwrap();
    let out = twoslit(&["pattern", "--config", path.to_str().unwrap(), "--y-steps", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    assert!(text.contains("# sigma_bar = 3.0000000000000000e0"));
    let (header, rows) = data_rows(&out.stdout);
    assert_eq!(header, "y,P_boson");
    assert_eq!(rows.len(), 7);
}

#[test]
fn degenerate_fermion_is_a_physics_error() {
    let out = twoslit(&["pattern", "--sigma-bar", "1"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("|<psi|phi>|^2"));

    let ok = twoslit(&["pattern", "--sigma-bar", "1", "--stats", "dist,boson", "--y-steps", "3"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["pattern", "--sigma", "-1"][..],
        &["pattern", "--b", "0"],
        &["pattern", "--stats", "anyon"],
        &["figure", "4"],
        &["pattern", "--y-steps", "1"],
        &["no-such-command"],
    ] {
        assert_eq!(twoslit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_config_and_unwritable_output_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    fs::write(&cfg, "sigmaa = 1.0\n").unwrap();
    assert_eq!(
        twoslit(&["pattern", "--config", cfg.to_str().unwrap()]).status.code(),
        Some(2)
    );

    let missing = dir.path().join("no/such/dir/out.csv");
    assert_eq!(
        twoslit(&["figure", "3", "--out", missing.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn validate_passes_at_defaults() {
    let out = twoslit(&["validate"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains(", 0 failed"));
    assert!(text.contains("DIFFERS"));
}
