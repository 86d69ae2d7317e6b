use std::process::{Command, Output};

fn spectra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .env_remove("SPECTRA_MAX_N")
        .output()
        .unwrap()
}

fn code(args: &[&str]) -> i32 {
    spectra(args).status.code().unwrap()
}

#[test]
fn energy_prints_ten_digits() {
    let out = spectra(&["energy", "K4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "6.000000000\n");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["energy", "K4)"]), 2);
    assert_eq!(code(&["energy", "union(C3, C4)"]), 3);
    assert_eq!(code(&["spectrum", "C4", "--method", "closed"]), 4);
    assert_eq!(
        code(&["verify", "djoin(msub(K4; h1=empty; h2=comp), C3, C3)", "--theorem", "T33"]),
        4
    );
    assert_eq!(code(&["verify", "djoin(msub(C4; h1=line; h2=same), C3, C3)"]), 4);
    assert_eq!(
        code(&["families", "--case", "i", "--g", "C4", "--vary", "g1", "--fixed", "K4", "--n", "2"]),
        3
    );
    assert_eq!(code(&["bogus"]), 2);
}

#[test]
fn size_cap_comes_from_the_environment() {
    let args = ["families", "--case", "i", "--g", "C4", "--vary", "g1", "--fixed", "K4", "--n", "9"];
    let capped = Command::new(env!("CARGO_BIN_EXE_spectra"))
        .args(args)
        .env("SPECTRA_MAX_N", "8")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    assert_eq!(code(&args), 0);
}

#[test]
fn graph_export_writes_files() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("g.json");
    let csv = dir.path().join("d.csv");
    let out = spectra(&[
        "graph",
        "C4",
        "--out",
        json.to_str().unwrap(),
        "--distances",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let g: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(g["n"], 4);
    assert_eq!(g["edges"], serde_json::json!([[0, 1], [0, 3], [1, 2], [2, 3]]));
    assert_eq!(std::fs::read_to_string(&csv).unwrap(), "0,1,2,1\n1,0,1,2\n2,1,0,1\n1,2,1,0\n");
}

#[test]
fn families_csv_and_report() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("f.csv");
    let report = dir.path().join("f.json");
    let out = spectra(&[
        "families", "--case", "iii", "--h", "same", "--g", "C5", "--vary", "g2", "--fixed", "C3", "--n", "7",
        "--csv", csv.to_str().unwrap(), "--out", report.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("partition,energy,deviation\n"));
    assert_eq!(text.lines().count(), 3);
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    assert_eq!(r["theorem"], "T34");
    assert_eq!(r["h2"], "same_as_g");
}

#[test]
fn spectrum_methods_agree() {
    let e = "djoin(msub(C5; h1=line; h2=comp), K4, C3)";
    let out = spectra(&["spectrum", e, "--method", "both", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["comparison"]["equal"], true);
    assert_eq!(v["closed_form"]["provenance"], "closed_form");
    let n = v["numeric"]["values"].as_array().unwrap().len();
    assert_eq!(n, 5 + 5 + 4 + 3);
}
