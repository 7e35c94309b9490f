//! End-to-end checks of the `bregman` binary: output shapes, exit codes,
//! determinism of the CSV contract.

use std::process::{Command, Output};

fn bregman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bregman"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn envelope_csv_row() {
    let out = bregman(&[
        "envelope", "--kernel", "energy", "--theta", "abs:0.5", "--gamma", "1", "--point", "0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "point0,gamma,side,value,prox0,grad0,branch,residual,iterations,reason"
    );
    let row = lines.next().unwrap();
    assert!(row.contains("0.125000000000"), "{row}");
    assert!(row.contains("closed_form"), "{row}");
}

#[test]
fn envelope_full_grid_curve() {
    let out = bregman(&[
        "envelope", "--kernel", "energy", "--theta", "abs:0.5", "--gamma", "1", "--grid",
        "-2:3:0.01",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 502); // header + 501 grid rows
    let row_at_zero = text
        .lines()
        .find(|l| l.starts_with("0,"))
        .expect("y = 0 row present");
    assert!(row_at_zero.contains(",0.125000000000,"), "{row_at_zero}");
}

#[test]
fn envelope_grid_right_side() {
    let out = bregman(&[
        "envelope", "--kernel", "bs", "--side", "right", "--theta", "abs:0.5", "--gamma", "1",
        "--point", "3",
    ]);
    assert!(out.status.success());
    // 3 ln 2 − ½ = 1.579441542...
    assert!(stdout(&out).contains("1.57944154168"), "{}", stdout(&out));
}

#[test]
fn prox_command_multi_gamma() {
    let out = bregman(&[
        "prox", "--kernel", "energy", "--theta", "abs:0.5", "--gammas", "0.1:10:logsteps=3",
        "--point", "2",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 4); // header + 3 gammas
    assert!(text.contains("1.90000000000"), "{text}");
    assert!(text.contains("0.500000000000"), "{text}");
}

#[test]
fn project_outputs_the_kl_example() {
    let out = bregman(&[
        "project", "--kernel", "bs", "--set", "hyp:1,1=1", "--point", "1,2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0.333333333333,0.666666666667\n");

    let out = bregman(&[
        "project", "--kernel", "energy", "--set", "hyp:1,1=1", "--point", "1,2",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0,1.00000000000\n");
}

#[test]
fn project_point_already_in_set() {
    let out = bregman(&[
        "project", "--kernel", "fd", "--set", "box:0.2,0.8", "--point", "0.5",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "0.500000000000\n");
}

#[test]
fn sweep_includes_limit_report() {
    let out = bregman(&[
        "sweep", "--kernel", "bs", "--theta", "abs:0.5", "--point", "0.1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("gamma,side,point0,prox0,theta_at_prox,bregman_term,scaled_term,envelope"));
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 26); // header + 25 records
    assert!(text.contains("# envelope_nonincreasing: pass"));
    assert!(text.contains("# prox_to_argmin_projection_large_gamma: pass"));
}

#[test]
fn solve_prints_trajectory() {
    let out = bregman(&[
        "solve", "--kernel", "energy", "--theta", "abs:0.5", "--point", "3", "--gamma", "1",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("# converged: true"));
    assert!(text.lines().next().unwrap().starts_with("iter,point0,step"));
    assert!(text.contains("0.500000000000"));
}

#[test]
fn json_output_is_valid() {
    let out = bregman(&[
        "envelope", "--kernel", "fd", "--theta", "abs:0.5", "--gamma", "1", "--point", "0.5",
        "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["side"], "left");
    assert!(v[0]["value"].as_f64().unwrap().abs() < 1e-12);

    // non-finite values are null plus a reason
    let out = bregman(&[
        "envelope", "--kernel", "bs", "--theta", "abs:0.5", "--gamma", "1", "--point", "-1",
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(v[0]["value"].is_null());
    assert_eq!(v[0]["reason"], "point outside int dom f");
}

#[test]
fn out_of_domain_rows_are_annotated_not_fatal() {
    let out = bregman(&[
        "envelope", "--kernel", "fd", "--theta", "abs:0.5", "--gamma", "1", "--grid",
        "-0.5:1.5:0.5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("inf"));
    assert!(text.contains("point outside int dom f"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(bregman(&[]).status.code(), Some(1));
    assert_eq!(bregman(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        bregman(&["envelope", "--kernel", "unknown", "--point", "1"]).status.code(),
        Some(1)
    );
    assert_eq!(
        bregman(&["envelope", "--gamma", "-2", "--point", "1"]).status.code(),
        Some(1)
    );
    // missing the point entirely
    assert_eq!(bregman(&["envelope"]).status.code(), Some(1));
}

#[test]
fn infeasible_set_exits_2() {
    let out = bregman(&[
        "project", "--kernel", "bs", "--set", "box:-3,-2", "--point", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = bregman(&[
        "project", "--kernel", "bs", "--set", "hyp:1,1=-1", "--point", "1,2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn non_convergence_exits_3_with_trajectory() {
    let out = bregman(&[
        "solve", "--kernel", "energy", "--theta", "abs:0.5", "--point", "50", "--gamma", "1",
        "--max-iter", "3", "--tol", "1e-12",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert!(text.contains("# converged: false"));
    assert!(text.lines().count() >= 5); // header + x0 + 3 iterates
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("bregman-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("row.csv");
    let out = bregman(&[
        "envelope", "--kernel", "energy", "--theta", "abs:0.5", "--gamma", "1", "--point", "0",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let content = std::fs::read_to_string(&path).unwrap();
    assert!(content.contains("0.125000000000"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn multi_coordinate_point_and_objective() {
    let out = bregman(&[
        "envelope", "--kernel", "bs", "--theta", "abs:0.5,quad:1,1", "--gamma", "1", "--point",
        "0.1,2",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.starts_with("point0,point1,gamma,side,value,prox0,prox1,grad0,grad1"));
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = [
        "envelope", "--kernel", "fd", "--theta", "abs:0.5", "--gammas", "0.1:2:logsteps=5",
        "--grid", "0.05:0.95:0.05",
    ];
    let a = bregman(&args);
    let b = bregman(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}
