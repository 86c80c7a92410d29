use std::process::Command;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polydecomp")).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

#[test]
fn formulas_json_has_exact_values() {
    let (code, out, _) = run(&["formulas", "--n", "2", "--d", "6", "--q", "2", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["alpha"], "1920");
    assert_eq!(v["beta"], "1/2");
    assert_eq!(v["two_prime"], "2240");
}

#[test]
fn census_methods_agree() {
    let (code, out, err) = run(&["census", "--n", "2", "--d", "4", "--q", "2", "--method", "all"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("136"), "{out}");
}

#[test]
fn verify_passes_and_budget_exits_three() {
    let (code, out, _) = run(&["verify", "--n", "2", "--d", "6", "--q", "2"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
    let (code, _, _) = run(&["census", "--n", "2", "--d", "25", "--q", "2", "--method", "enum"]);
    assert_eq!(code, 3);
}

#[test]
fn sweep_csv_rows() {
    let (code, out, err) = run(&["sweep", "--n", "2", "--d", "2..8", "--q", "2", "--format", "csv"]);
    assert_eq!(code, 0, "{err}");
    let mut rd = csv::Reader::from_reader(out.as_bytes());
    let header: Vec<String> = rd.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, polydecomp::cli::CSV_HEADER.to_vec());
    let rows: Vec<csv::StringRecord> = rd.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| &r[16] == "pass"));
    let d4 = rows.iter().find(|r| &r[1] == "4").unwrap();
    assert_eq!(&d4[13], "136");
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["sweep", "--n", "2", "--d", "5..3", "--q", "2"]).0, 2);
    assert_eq!(run(&["formulas", "--n", "2", "--d", "4", "--q", "6"]).0, 2);
    assert_eq!(run(&["nonsense"]).0, 2);
}
