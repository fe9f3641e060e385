//! End-to-end tests of the command-line binary: spec'd outputs, exit codes,
//! machine formats, pinned-point plumbing and determinism.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output};

fn metjet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_metjet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

fn assert_exit(output: &Output, code: i32) {
    assert_eq!(
        output.status.code(),
        Some(code),
        "stdout:\n{}\nstderr:\n{}",
        stdout(output),
        stderr(output)
    );
}

#[test]
fn dims_reports_dimensions_and_expected_rank() {
    let out = metjet(&["dims", "--n", "2", "--r", "2"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("dim_metric_jet = 20"), "{text}");
    assert!(text.contains("dim_vf_jet     = 20"), "{text}");
    assert!(text.contains("difference     = 0"), "{text}");
    assert!(text.contains("expected_rank  = 19"), "{text}");

    let out = metjet(&["dims", "--n", "3", "--r", "2", "--format", "csv"]);
    assert_exit(&out, 0);
    assert_eq!(
        stdout(&out),
        "n,r,dim_metric_jet,dim_vf_jet,difference,expected_rank\n3,2,63,60,3,60\n"
    );

    let out = metjet(&["dims", "--n", "1", "--r", "4", "--format", "csv"]);
    assert_exit(&out, 0);
    assert_eq!(
        stdout(&out),
        "n,r,dim_metric_jet,dim_vf_jet,difference,expected_rank\n1,4,6,6,0,6\n"
    );
}

#[test]
fn dims_difference_can_be_negative() {
    let out = metjet(&["dims", "--n", "2", "--r", "1", "--format", "csv"]);
    assert_exit(&out, 0);
    assert_eq!(
        stdout(&out),
        "n,r,dim_metric_jet,dim_vf_jet,difference,expected_rank\n2,1,11,12,-1,11\n"
    );
}

#[test]
fn count_prints_the_closed_form() {
    let out = metjet(&["count", "--n", "4", "--r", "2"]);
    assert_exit(&out, 0);
    assert_eq!(stdout(&out), "14\n");

    let out = metjet(&["count", "--n", "3", "--r", "4", "--format", "json"]);
    assert_exit(&out, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["i_closed"], 45);
    assert_eq!(doc["config"]["subcommand"], "count");
    assert_eq!(doc["config"]["n"], 3);
    assert_eq!(doc["config"]["r"], 4);
}

#[test]
fn usage_errors_exit_with_code_2() {
    assert_exit(&metjet(&["dims", "--n", "2"]), 2); // missing --r
    assert_exit(&metjet(&["bogus"]), 2); // unknown subcommand
    assert_exit(&metjet(&["count", "--n", "0", "--r", "2"]), 2); // n out of range
    assert_exit(&metjet(&["rank", "--n", "2", "--r", "99"]), 2); // r out of range
    assert_exit(&metjet(&["kernel", "--r", "2"]), 2); // missing --n for sampling
    assert_exit(&metjet(&["rank", "--n", "2", "--r", "2", "--signature", "3,1"]), 2); // bad signature sum
    assert_exit(&metjet(&["rank", "--point", "/nonexistent.json"]), 2); // missing file
    // --point conflicts with --flat at parse time.
    assert_exit(&metjet(&["rank", "--point", "/tmp/x.json", "--flat"]), 2);
}

#[test]
fn rank_certificate_passes_and_is_deterministic() {
    let args = ["rank", "--n", "2", "--r", "2", "--trials", "2", "--format", "json"];
    let first = metjet(&args);
    assert_exit(&first, 0);
    let second = metjet(&args);
    assert_eq!(first.stdout, second.stdout, "reruns must be byte-identical");

    let doc: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid JSON");
    let cert = &doc["certificate"];
    assert_eq!(cert["observed_rank"], 19);
    assert_eq!(cert["i_empirical"], 1);
    assert_eq!(cert["i_closed"], 1);
    assert_eq!(cert["pass"], true);
    assert_eq!(doc["config"]["trials"], 2);
    assert_eq!(doc["config"]["seed"], 0);
    assert_eq!(doc["config"]["signature"], serde_json::json!([2, 0]));
}

#[test]
fn rank_flat_control_shows_isometry_kernel() {
    let out = metjet(&["rank", "--n", "3", "--r", "2", "--flat", "--format", "csv"]);
    assert_exit(&out, 0);
    assert_eq!(
        stdout(&out),
        "n,r,p,m,rank,kernel_dim,exact_elimination_used\n3,2,3,0,57,3,true\n"
    );
}

#[test]
fn rank_paranoid_uses_three_primes() {
    let out = metjet(&[
        "rank", "--n", "2", "--r", "2", "--trials", "1", "--paranoid", "--format", "json",
    ]);
    assert_exit(&out, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert!(doc["certificate"]["primes"].as_array().expect("array").len() >= 3);
    assert_eq!(doc["certificate"]["exact_elimination_used"], true);
}

#[test]
fn kernel_flat_surface_matches_documented_generator() {
    let out = metjet(&["kernel", "--n", "2", "--r", "2", "--flat"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("kernel dimension 1"), "{text}");
    assert!(text.contains("free parameter: ∂u_2/∂x_1"), "{text}");
    assert!(text.contains("satisfied"), "{text}");
}

#[test]
fn kernel_json_reports_equations_at_normal_form_points() {
    let out = metjet(&["kernel", "--n", "2", "--r", "2", "--flat", "--format", "json"]);
    assert_exit(&out, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["rank"], 19);
    assert_eq!(doc["kernel_dim"], 1);
    assert_eq!(doc["normal_form"], true);
    let eq = &doc["equations"][0];
    assert_eq!(eq["holds"], true);
    assert_eq!(eq["orbit_consistent"], true);
    // The embedded point round-trips through the interchange schema.
    let point_text = serde_json::to_string(&doc["point"]).expect("serializes");
    let out2 = metjet_with_point_file(&point_text, &["kernel", "--format", "csv"]);
    assert_exit(&out2, 0);
}

#[test]
fn table_grid_passes_and_emits_csv() {
    let out = metjet(&[
        "table", "--nmax", "2", "--rmax", "2", "--trials", "2", "--seed", "7", "--format", "csv",
    ]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.trim_end().lines().collect();
    assert_eq!(lines.len(), 7, "header + 6 cells:\n{text}");
    assert_eq!(
        lines[0],
        "n,r,p,m,jet_dim,vf_jet_dim,expected_rank,observed_rank,i_closed,i_empirical,exact_elimination_used,pass"
    );
    for line in &lines[1..] {
        assert!(line.ends_with(",true"), "cell failed: {line}");
    }
    // The (2,2) cell certifies rank 19 and count 1.
    assert!(lines.iter().any(|l| l.starts_with("2,2,2,0,20,20,19,19,1,1,")), "{text}");
}

#[test]
fn table_human_grid_marks_all_cells_pass() {
    let out = metjet(&["table", "--nmax", "2", "--rmax", "3", "--trials", "2"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("8/8 cells PASS"), "{text}");
}

fn metjet_with_point_file(point_json: &str, prefix: &[&str]) -> Output {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("point.json");
    let mut f = std::fs::File::create(&path).expect("create temp file");
    f.write_all(point_json.as_bytes()).expect("write temp file");
    drop(f);
    let mut args: Vec<&str> = prefix.to_vec();
    args.push("--point");
    let path_str = path.to_str().expect("UTF-8 path");
    args.push(path_str);
    metjet(&args)
}

#[test]
fn point_file_roundtrip_and_flag_mismatch() {
    let point = r#"{
        "n": 2, "r": 2, "signature": [1, 1],
        "coords": [
            {"j": 1, "k": 1, "alpha": [0, 0], "value": "1"},
            {"j": 2, "k": 2, "alpha": [0, 0], "value": "-1"},
            {"j": 1, "k": 2, "alpha": [1, 1], "value": "2/3"}
        ]
    }"#;
    let out = metjet_with_point_file(point, &["geom"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("signature (1,1)"), "{text}");

    // Contradicting flags are usage errors.
    let out = metjet_with_point_file(point, &["geom", "--n", "3"]);
    assert_exit(&out, 2);
    assert!(stderr(&out).contains("does not match"), "{}", stderr(&out));
    let out = metjet_with_point_file(point, &["rank", "--r", "1"]);
    assert_exit(&out, 2);
    let out = metjet_with_point_file(point, &["kernel", "--signature", "2,0"]);
    assert_exit(&out, 2);

    // Malformed JSON is rejected with exit 2.
    let out = metjet_with_point_file("{ not json", &["geom"]);
    assert_exit(&out, 2);
}

#[test]
fn curvature_seed_produces_constant_curvature_geometry() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("curv.json");
    std::fs::write(
        &path,
        r#"{"n": 2, "components": [{"i": 1, "j": 2, "k": 1, "l": 2, "value": "3"}]}"#,
    )
    .expect("write curvature file");
    let path_str = path.to_str().expect("UTF-8 path");

    let out = metjet(&["geom", "--curvature", path_str, "--format", "csv"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    assert!(text.contains("scalar_curvature,6"), "{text}");
    assert!(text.contains("kretschmann,36"), "{text}");
    assert!(text.contains("R_1212,3"), "{text}");

    // The kernel at this constant-curvature jet is still one-dimensional.
    let out = metjet(&["kernel", "--curvature", path_str, "--format", "json"]);
    assert_exit(&out, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["kernel_dim"], 1);
    assert_eq!(doc["equations"][0]["holds"], true);
}

#[test]
fn geom_sampled_point_reports_exact_rationals() {
    let out = metjet(&["geom", "--n", "2", "--r", "3", "--seed", "5", "--format", "json"]);
    assert_exit(&out, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let scalar = doc["scalar_curvature"].as_str().expect("rational string");
    assert!(
        scalar.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '/'),
        "not a p/q rational: {scalar}"
    );
    assert_eq!(doc["nabla_r_nonzero"], true);
    // n = 2 identity: the Kretschmann scalar is the square of the scalar
    // curvature; check it on the exact strings.
    let kr = doc["kretschmann"].as_str().expect("rational string");
    let parse = |s: &str| -> (i128, i128) {
        match s.split_once('/') {
            Some((p, q)) => (p.parse().unwrap(), q.parse().unwrap()),
            None => (s.parse().unwrap(), 1),
        }
    };
    let (sp, sq) = parse(scalar);
    let (kp, kq) = parse(kr);
    assert_eq!(sp * sp * kq, kp * sq * sq, "Kretschmann must equal Scal² at n = 2");
}

#[test]
fn out_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("report.csv");
    let path_str = path.to_str().expect("UTF-8 path");
    let out = metjet(&["dims", "--n", "2", "--r", "2", "--format", "csv", "--out", path_str]);
    assert_exit(&out, 0);
    assert!(stdout(&out).is_empty(), "report must go to the file");
    let text = std::fs::read_to_string(&path).expect("file written");
    assert!(text.contains("2,2,20,20,0,19"), "{text}");
}

#[test]
fn verify_runs_every_criterion_and_exits_zero() {
    let out = metjet(&["verify"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    for id in 1..=13 {
        assert!(
            text.lines().any(|l| l.starts_with("ok") && l.split_whitespace().nth(1) == Some(&id.to_string())),
            "criterion {id} line missing:\n{text}"
        );
    }
    assert!(text.contains("PASS: 13/13 criteria passed"), "{text}");

    let out = metjet(&["verify", "--format", "json"]);
    assert_exit(&out, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["all_pass"], true);
    assert_eq!(doc["criteria"].as_array().expect("array").len(), 13);
    assert!(doc["criteria"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true && c["within_budget"] == true));
}

#[test]
fn help_lists_all_subcommands() {
    let out = metjet(&["--help"]);
    assert_exit(&out, 0);
    let text = stdout(&out);
    for sub in ["dims", "count", "rank", "kernel", "table", "verify", "geom"] {
        assert!(text.contains(sub), "missing subcommand {sub} in help:\n{text}");
    }
    assert!(Path::new(env!("CARGO_BIN_EXE_metjet")).exists());
}
