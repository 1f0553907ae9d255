use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use biorth::mtx::{self, CsrMatrix};
use biorth::testmatrices::default_s_grid;

fn biorth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_biorth")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn write_mtx(dir: &Path, name: &str, a: &CsrMatrix) -> PathBuf {
    let path = dir.join(name);
    mtx::write_path(&path, a).unwrap();
    path
}

fn data_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

#[test]
fn rlanczos_on_diagonal_matrix_converges() {
    let dir = tempfile::tempdir().unwrap();
    let n = 100;
    let diag: Vec<(usize, usize, f64)> = (0..n).map(|i| (i, i, 0.8f64.powi(i as i32))).collect();
    let path = write_mtx(dir.path(), "diag.mtx", &CsrMatrix::from_triplets(n, n, &diag).unwrap());
    let out = biorth(&["rlanczos", "--input", path.to_str().unwrap(), "--m", "50", "--k", "5"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("# method=Lanczos+rCGS_O2 steps=50 status=complete"));
    let rows = data_rows(&text);
    assert_eq!(rows.len(), 5);
    let best = rows.iter().map(|r| r[3].parse::<f64>().unwrap()).fold(f64::INFINITY, f64::min);
    assert!(best <= 1e-8, "best residual {best:e}");
    let theta: f64 = rows[0][1].parse().unwrap();
    assert!((theta - 1.0).abs() <= 1e-10);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.mtx");
    let garbage = dir.path().join("garbage.mtx");
    std::fs::write(&garbage, "not a matrix\n").unwrap();
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "colour = blue\n").unwrap();

    assert_eq!(biorth(&["biortho", "--n", "30", "--m", "3", "--variant", "QR"]).status.code(), Some(2));
    assert_eq!(biorth(&["biortho", "--n", "30", "--m", "3", "--passes", "0"]).status.code(), Some(2));
    assert_eq!(biorth(&["nonsense"]).status.code(), Some(2));
    assert_eq!(biorth(&["biortho", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(biorth(&["lanczos", "--input", missing.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(biorth(&["lanczos", "--input", garbage.to_str().unwrap()]).status.code(), Some(5));
    assert_eq!(biorth(&["biortho", "--n", "30", "--m", "3"]).status.code(), Some(0));
}

#[test]
fn breakdown_writes_partial_result() {
    let dir = tempfile::tempdir().unwrap();
    let x = CsrMatrix::from_triplets(3, 2, &[(0, 0, 1.0), (1, 1, 1.0)]).unwrap();
    let y = CsrMatrix::from_triplets(3, 2, &[(1, 0, 1.0), (0, 1, 1.0)]).unwrap();
    let (px, py) = (write_mtx(dir.path(), "x.mtx", &x), write_mtx(dir.path(), "y.mtx", &y));
    let out = biorth(&["biortho", "--input", px.to_str().unwrap(), "--input-y", py.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&out).contains("breakdown@1"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let runs: Vec<Vec<u8>> = (0..2)
        .map(|i| {
            let path = dir.path().join(format!("t{i}.csv"));
            let args = ["table1", "--n", "400", "--m", "12", "--seed", "5", "--out", path.to_str().unwrap()];
            assert_eq!(biorth(&args).status.code(), Some(0));
            std::fs::read(&path).unwrap()
        })
        .collect();
    assert_eq!(runs[0], runs[1]);
    let text = String::from_utf8(runs[0].clone()).unwrap();
    assert_eq!(data_rows(&text).len(), 14);
    assert!(text.starts_with("method,time_s,cond_Q,cond_P,err_X,err_Y,biorth,status\n"));
}

#[test]
fn fig1_has_one_row_per_cell() {
    let out = biorth(&["fig1", "--n", "300", "--trials", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("# n=300 trials=4 seed=1 sparse_sign_scaling=standard\nkind,s,trial_mean,trial_min\n"));
    let cells = default_s_grid().into_iter().filter(|&s| s <= 300).count();
    assert_eq!(data_rows(&text).len(), 2 * cells);

    let single = stdout(&biorth(&["fig1", "--n", "300", "--trials", "4", "--s", "50", "--sketch-kind", "gaussian"]));
    let rows = data_rows(&single);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][..2], ["gaussian".to_owned(), "50".to_owned()]);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small benchmark\nn = 200\nm = 30\nk = 3\ncond_x = 10\n").unwrap();
    let text = stdout(&biorth(&["lanczos", "--config", cfg.to_str().unwrap(), "--m", "20"]));
    assert!(text.starts_with("# method=Lanczos+MGS2 steps=20 status=complete"), "{text}");
    assert_eq!(data_rows(&text).len(), 3);
}
