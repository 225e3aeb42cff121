//! CLI contract: documented headers, exit codes, flags and env handling.

use std::path::PathBuf;
use std::process::Command;

use oscint::report::Report;

fn curve(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../curves")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn run(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_oscint"))
        .args(args)
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn planewave_scan_header_is_exact() {
    let (csv, _, code) = run(&[
        "planewave",
        "scan",
        "--curve",
        &curve("disk.json"),
        "--kind",
        "neumann",
        "--alpha",
        "10",
        "--t",
        "1",
        "--dirs",
        "3",
        "--allow-inadmissible",
    ]);
    assert_eq!(code, 0);
    assert!(csv.starts_with(
        "dir_rad,lambda,t,re_int,im_int,abs_int,abs_surrogate,abs_resid,resid_times_lambda,admissible\n"
    ));
    let report = Report::parse_csv(&csv);
    assert_eq!(report.rows.len(), 3);
}

#[test]
fn phase_header_and_paper_flags() {
    let base = [
        "phase",
        "--curve",
        &curve("disk.json"),
        "--direction",
        "0",
        "--t",
        "0",
        "--lambda-grid",
        "100:800:*2",
    ];
    let (csv, _, code) = run(&base);
    assert_eq!(code, 0);
    assert!(csv.starts_with("lambda,abs_integral,resid_L0,resid_L01\n"));
    let slope = |text: &str| -> f64 {
        Report::parse_csv(text)
            .comments
            .iter()
            .find_map(|c| c.strip_prefix("slope_L01 = "))
            .unwrap()
            .parse()
            .unwrap()
    };
    let good = slope(&csv);

    let mut with_flag = base.to_vec();
    with_flag.push("--paper-signs");
    let (csv_paper, _, code) = run(&with_flag);
    assert_eq!(code, 0);
    assert!(csv_paper.contains("reproduction mode"));
    let bad = slope(&csv_paper);
    // the uniform-sign variant loses roughly one whole order
    assert!(good < -2.0 && bad > good + 0.5, "slopes {good} vs {bad}");
}

#[test]
fn eigen_header_and_dev_tol() {
    let (csv, _, code) = run(&[
        "eigen",
        "--curve",
        &curve("disk.json"),
        "--kind",
        "dirichlet",
        "--alpha-window",
        "5:7",
        "--dev-tol",
        "1e-8",
    ]);
    assert_eq!(code, 0);
    assert!(csv.starts_with("alpha,multiplicity,deviation\n"));
    assert!(csv.contains("verdict = OVERDETERMINED-SOLVABLE"));
    assert!(csv.contains("seed = 42"));
}

#[test]
fn geometry_header() {
    let (csv, _, code) = run(&["geometry", "--curve", &curve("wobbly.json")]);
    assert_eq!(code, 0);
    assert!(csv.starts_with(
        "centrally_symmetric,constant_width,is_circle,center_x,center_y,w_min,w_max,breadth,perimeter\n"
    ));
}

#[test]
fn exit_codes() {
    // invalid input: missing file
    let (_, err, code) = run(&["geometry", "--curve", "/nonexistent.json"]);
    assert_eq!(code, 1);
    assert!(err.contains("cannot read"));

    // invalid input: nonconvex curve
    let dir = std::env::temp_dir().join("oscint-cli-surface");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"type":"support_fourier","a0":1.0,"cos":[0.0,0.6]}"#).unwrap();
    let (_, err, code) = run(&["geometry", "--curve", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("convex"));

    // invalid input: bad grid spec
    let (_, _, code) = run(&[
        "phase",
        "--curve",
        &curve("disk.json"),
        "--direction",
        "0",
        "--t",
        "0",
        "--lambda-grid",
        "100-800",
    ]);
    assert_eq!(code, 1);

    // admissibility refusal without the force flag
    let (_, err, code) = run(&[
        "phase",
        "--curve",
        &curve("disk.json"),
        "--direction",
        "0",
        "--t",
        "1",
        "--lambda-grid",
        "100:800:*2",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("allow-inadmissible"));

    // numerical failure: empty eigen window
    let (_, err, code) = run(&[
        "eigen",
        "--curve",
        &curve("disk.json"),
        "--kind",
        "dirichlet",
        "--alpha-window",
        "6.5:9",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("dip"));

    // unknown flag
    let (_, _, code) = run(&["geometry", "--what"]);
    assert_eq!(code, 1);
}

#[test]
fn planewave_rejects_inadmissible_without_flag() {
    let (_, err, code) = run(&[
        "planewave",
        "scan",
        "--curve",
        &curve("disk.json"),
        "--kind",
        "dirichlet",
        "--alpha",
        "10",
        "--t",
        "1",
        "--dirs",
        "4",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("admissib"));
}

#[test]
fn thread_env_does_not_change_output() {
    let args = [
        "phase",
        "--curve",
        &curve("ellipse_1_5.json"),
        "--direction",
        "0.6",
        "--t",
        "0.3",
        "--lambda-grid",
        "100:1600:*2",
    ];
    let run_with = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_oscint"))
            .args(args)
            .env("OSCINT_THREADS", threads)
            .output()
            .unwrap();
        String::from_utf8(out.stdout).unwrap()
    };
    assert_eq!(run_with("1"), run_with("5"));
}

#[test]
fn output_file_flag() {
    let dir = std::env::temp_dir().join("oscint-cli-surface");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.csv");
    let (stdout, _, code) = run(&[
        "leibniz",
        "--nmax",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("n,k,d\n"));
    // 2 + 3 + 4 + 5 rows... n=1..3 -> (n+1) rows each = 2+3+4
    assert_eq!(Report::parse_csv(&text).rows.len(), 2 + 3 + 4);
}
