use std::path::Path;
use std::process::{Command, Output};

fn code_ent(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_code-ent"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn info_repetition() {
    let o = code_ent(&["info", "--family", "repetition", "--n", "3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("n = 3"));
    assert!(s.contains("k = 1"));
    assert!(s.contains("  111"));
}

#[test]
fn info_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "ew.txt", "# even weight\n1100\n0110\n0011\n");
    let o = code_ent(&["info", "--file", &f, "--json"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("\"k\": 3"));
    assert!(s.contains("\"1001\""));
}

#[test]
fn malformed_file_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let ragged = write(dir.path(), "ragged.txt", "110\n01\n");
    let o = code_ent(&["info", "--file", &ragged]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let bad = write(dir.path(), "bad.txt", "1x0\n");
    let o = code_ent(&["analyze", "--file", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("column 2"), "{}", stderr(&o));

    let o = code_ent(&["info", "--file", "/nonexistent/code.txt"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn unknown_family_and_missing_parameters() {
    assert_eq!(
        code_ent(&["info", "--family", "golay"]).status.code(),
        Some(2)
    );
    assert_eq!(
        code_ent(&["info", "--family", "repetition"]).status.code(),
        Some(2)
    );
    assert_eq!(
        code_ent(&["info", "--family", "random", "--n", "4", "--k", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn analyze_toric_with_oracle() {
    let o = code_ent(&["analyze", "--family", "toric", "--L", "2", "--oracle"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("j = 0"));
    assert!(s.contains("geometric entanglement = 3"));
    assert!(s.contains("injective norm = 0.353553390593"));
    assert!(s.contains("j_brute_force = 0, delta_brute_force = 0"));
}

#[test]
fn analyze_full_code_is_product() {
    let o = code_ent(&["analyze", "--family", "full", "--n", "4"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("j = 4"));
    assert!(s.contains("injective norm = 1.000000000000"));
    assert!(s.contains("geometric entanglement = 0"));
}

#[test]
fn analyze_ghz_numeric() {
    let o = code_ent(&[
        "analyze",
        "--family",
        "repetition",
        "--n",
        "3",
        "--numeric",
        "--json",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("\"injective_norm\": 0.707106781187"));
    assert!(s.contains("\"value\": 0.707106781187"));
}

#[test]
fn numeric_size_guard() {
    let o = code_ent(&[
        "analyze",
        "--family",
        "repetition",
        "--n",
        "21",
        "--numeric",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).is_empty());
}

#[test]
fn json_is_byte_stable() {
    let args = [
        "analyze",
        "--family",
        "random",
        "--n",
        "10",
        "--k",
        "5",
        "--seed",
        "7",
        "--numeric",
        "--restarts",
        "20",
        "--json",
    ];
    let a = code_ent(&args);
    let b = code_ent(&args);
    assert!(a.status.success(), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn css_basis_states() {
    let dir = tempfile::tempdir().unwrap();
    let full = write(dir.path(), "full.txt", "100\n010\n001\n");
    let rep = write(dir.path(), "rep.txt", "111\n");
    let o = code_ent(&[
        "css",
        "--c1",
        &full,
        "--c2",
        &rep,
        "--enumerate-cosets",
        "--restarts",
        "20",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let s = stdout(&o);
    assert!(s.contains("basis states = 4"));
    assert!(s.contains("injective norm = 0.707106781187"));
    assert_eq!(s.matches("coset ").count(), 4);

    // C2 = C1: a single basis state, the uniform superposition over C1.
    let o = code_ent(&["css", "--c1", &rep, "--c2", &rep]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("basis states = 1"));
}

#[test]
fn css_rejects_non_subcode() {
    let dir = tempfile::tempdir().unwrap();
    let rep = write(dir.path(), "rep.txt", "111\n");
    let ew = write(dir.path(), "ew.txt", "110\n011\n");
    let o = code_ent(&["css", "--c1", &rep, "--c2", &ew]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not a subcode"), "{}", stderr(&o));
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--max-n",
        "4",
        "--random-codes",
        "10",
        "--seed",
        "1",
    ];
    let a = code_ent(&args);
    let b = code_ent(&args);
    assert!(a.status.success(), "{}", stdout(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("0 failed"));
}

#[test]
fn verify_catches_injected_fault() {
    let o = code_ent(&[
        "verify",
        "--max-n",
        "4",
        "--random-codes",
        "5",
        "--inject-fault",
        "flip-j",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAILED"));
    let o = code_ent(&["verify", "--max-n", "4", "--inject-fault", "nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn gen_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hamming.txt");
    let p = path.to_str().unwrap();
    let o = code_ent(&["gen", "--family", "hamming", "--out", p]);
    assert!(o.status.success());
    let direct = code_ent(&["info", "--family", "hamming", "--json"]);
    let via_file = code_ent(&["info", "--file", p, "--json"]);
    assert!(via_file.status.success(), "{}", stderr(&via_file));
    assert_eq!(direct.stdout, via_file.stdout);

    let zero = code_ent(&["gen", "--family", "zero", "--n", "3"]);
    let text = stdout(&zero);
    let zpath = write(dir.path(), "zero.txt", &text);
    let o = code_ent(&["info", "--file", &zpath]);
    assert!(stdout(&o).contains("k = 0"));
}
