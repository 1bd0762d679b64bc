//! CLI behavior: flag surface, exit codes, output determinism and the
//! state-file formats, all through the same dispatch the binary uses.

use locclone::cli::dispatch;
use locclone::states::{bell, schmidt_state, SchmidtKind};

fn run(args: &[&str]) -> (i32, String, String) {
    let argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = dispatch(&argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn feasibility_boundary_at_maximal_states() {
    let (code, out, _) = run(&[
        "feasibility",
        "--case",
        "1",
        "--a",
        "0.7071067811865476",
        "--c",
        "0.7071067811865476",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict BOUNDARY"), "{out}");
}

#[test]
fn feasibility_ruled_out_with_numeric_crossfill() {
    let (code, out, _) = run(&[
        "feasibility",
        "--case",
        "1",
        "--a",
        "0.5",
        "--c",
        "0.70710678",
        "--numeric",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict RULED_OUT"), "{out}");
    assert!(out.contains("numeric_n_out 1.61602540e0"), "{out}");
}

#[test]
fn boundary_worked_example() {
    let (code, out, _) = run(&["boundary", "--case", "2", "--a", "0.547722558"]);
    assert_eq!(code, 0);
    assert!(out.contains("c_min_sq 4.2000"), "{out}");
    assert!(out.contains("e_blank_min 9.8145"), "{out}");
}

#[test]
fn entropy_of_worked_example_state() {
    let (code, out, _) = run(&["entropy", "--kind", "psi1", "--a", "0.547722558"]);
    assert_eq!(code, 0);
    assert!(out.contains("entanglement_entropy 8.8129"), "{out}");
}

#[test]
fn usage_errors_exit_one() {
    let (code, _, err) = run(&["feasibility", "--case", "3", "--a", "0.5", "--c", "0.5"]);
    assert_eq!(code, 1);
    assert!(!err.is_empty());

    let (code, _, _) = run(&["nonsense"]);
    assert_eq!(code, 1);

    let (code, _, _) = run(&["entropy", "--kind", "psi1", "--a", "not-a-number"]);
    assert_eq!(code, 1);

    // degenerate coefficient is a usage error too
    let (code, _, _) = run(&["entropy", "--kind", "psi1", "--a", "1.0"]);
    assert_eq!(code, 1);
}

#[test]
fn range_outputs() {
    let (code, out, _) = run(&["range", "--case", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("a_low 2.29"), "{out}");
    assert!(out.contains("a_high 9.73"), "{out}");
    assert!(out.contains("tangent 7.07106781e-1"), "{out}");

    let (code, out, _) = run(&["range", "--case", "2"]);
    assert_eq!(code, 0);
    assert!(out.contains("a_low NA"), "{out}");
    assert!(out.contains("a_high NA"), "{out}");
    assert!(out.contains("tangent 7.07106781e-1"), "{out}");
}

#[test]
fn bell3_report_output() {
    let (code, out, _) = run(&["bell3"]);
    assert_eq!(code, 0);
    assert!(out.contains("ASSUMED"), "{out}");
    assert!(out.contains("verdict INSUFFICIENT"), "{out}");
    assert!(out.contains("required_blank 1.58496250e0"), "{out}");

    let (code, out, _) = run(&["bell3", "--blank-ebits", "1.5849625007211562"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict NECESSARY_CONDITION_MET"), "{out}");
}

#[test]
fn sweep_writes_csv_with_na_rows() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sweep.csv");
    let (code, out, _) = run(&[
        "sweep",
        "--case",
        "1",
        "--a-min",
        "0.2",
        "--a-max",
        "0.9",
        "--steps",
        "12",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("wrote 12 rows"), "{out}");
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 13);
    assert!(text.starts_with("a,rhs,c_min_sq,e_blank_min,verdict_max_blank\n"));
    assert!(text.contains(",NA,NA,"), "case I grid spans rhs > 1/2");

    // re-reading and re-emitting is byte-identical
    let rows = locclone::analysis::read_csv(&mut text.as_bytes()).unwrap();
    let mut again = Vec::new();
    locclone::analysis::write_csv(&rows, &mut again).unwrap();
    assert_eq!(text.as_bytes(), again.as_slice());
}

#[test]
fn sweep_rejects_bad_ranges() {
    let (code, _, _) = run(&[
        "sweep", "--case", "1", "--a-min", "0.9", "--a-max", "0.2", "--steps", "10", "--out",
        "/tmp/x.csv",
    ]);
    assert_eq!(code, 1);
}

#[test]
fn negativity_from_state_files() {
    let dir = tempfile::tempdir().unwrap();

    let dmat = dir.path().join("bell.dmat");
    let mut buf = Vec::new();
    bell(0, 0).density().write_dmat(&mut buf).unwrap();
    std::fs::write(&dmat, &buf).unwrap();
    let (code, out, _) = run(&["negativity", "--state", dmat.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(out.contains("negativity 1.0000000"), "{out}");

    let pvec = dir.path().join("psi.pvec");
    let mut buf = Vec::new();
    schmidt_state(SchmidtKind::Psi3, 0.6)
        .unwrap()
        .write_pvec(&mut buf)
        .unwrap();
    std::fs::write(&pvec, &buf).unwrap();
    let (code, out, _) = run(&["negativity", "--state", pvec.to_str().unwrap()]);
    assert_eq!(code, 0);
    // 2 a b = 2 * 0.6 * 0.8
    assert!(out.contains("negativity 9.6000000"), "{out}");
}

#[test]
fn malformed_state_files_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.dmat");
    std::fs::write(&bad, "DMAT 2 2\n1,0 0,0\n").unwrap();
    let (code, _, err) = run(&["negativity", "--state", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(err.contains("malformed"), "{err}");

    let (code, _, _) = run(&["negativity", "--state", "/nonexistent/state.dmat"]);
    assert_eq!(code, 3);

    let junk = dir.path().join("junk.txt");
    std::fs::write(&junk, "hello\n").unwrap();
    let (code, _, _) = run(&["negativity", "--state", junk.to_str().unwrap()]);
    assert_eq!(code, 3);
}

#[test]
fn ree_runs_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    let pvec = dir.path().join("product.pvec");
    std::fs::write(&pvec, "PVEC 2 2\n1.0,0\n0,0\n0,0\n0,0\n").unwrap();

    let (code, out, _) = run(&[
        "ree",
        "--state",
        pvec.to_str().unwrap(),
        "--terms",
        "4",
        "--iters",
        "400",
        "--restarts",
        "1",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("ree_upper_bound "), "{out}");
    assert!(out.contains("converged true"), "{out}");
    assert!(out.contains("PVEC 2 1"), "{out}");

    // an iteration budget too small to trip the convergence window
    let (code, out, _) = run(&[
        "ree",
        "--state",
        pvec.to_str().unwrap(),
        "--terms",
        "4",
        "--iters",
        "5",
        "--restarts",
        "1",
        "--seed",
        "7",
    ]);
    assert_eq!(code, 2);
    assert!(out.contains("converged false"), "{out}");
}

#[test]
fn identical_argv_gives_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let pvec = dir.path().join("state.pvec");
    let mut buf = Vec::new();
    schmidt_state(SchmidtKind::Psi1, 0.6)
        .unwrap()
        .write_pvec(&mut buf)
        .unwrap();
    std::fs::write(&pvec, &buf).unwrap();
    let args = [
        "ree",
        "--state",
        pvec.to_str().unwrap(),
        "--terms",
        "6",
        "--iters",
        "60",
        "--restarts",
        "2",
        "--seed",
        "11",
    ];
    let (c1, o1, _) = run(&args);
    let (c2, o2, _) = run(&args);
    assert_eq!(c1, c2);
    assert_eq!(o1, o2);
}

#[test]
fn spawned_binary_matches_dispatch() {
    let exe = env!("CARGO_BIN_EXE_locclone");
    let output = std::process::Command::new(exe)
        .args(["boundary", "--case", "2", "--a", "0.547722558"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    let stdout = String::from_utf8(output.stdout).unwrap();
    let (_, expected, _) = run(&["boundary", "--case", "2", "--a", "0.547722558"]);
    assert_eq!(stdout, expected);

    let output = std::process::Command::new(exe)
        .args(["feasibility", "--case", "3", "--a", "0.5", "--c", "0.5"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(1));
}
