use std::path::PathBuf;
use std::process::{Command, Output};

fn leech26(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leech26")).args(args).output().expect("spawn leech26")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("leech26-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(leech26(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(leech26(&["codes", "dump", "--code", "c7"]).status.code(), Some(2));
}

#[test]
fn missing_directory_is_an_io_error() {
    let o = leech26(&["reduce", "check", "/nonexistent/leech26/certs"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn code_dumps_have_the_right_sizes() {
    for (code, n, len) in [("c4", 9, 4), ("c12", 729, 12), ("c24", 4096, 24)] {
        let o = leech26(&["codes", "dump", "--code", code]);
        assert!(o.status.success());
        let text = stdout(&o);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), n, "{code}");
        assert!(lines.iter().all(|l| l.split(' ').count() == len));
    }
}

#[test]
fn diagram_check_passes() {
    let o = leech26(&["diagram", "check"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).trim_end().ends_with("RESULT: PASS"));
}

#[test]
fn isom_verify_writes_c() {
    let dir = scratch("isom");
    let out = dir.join("C.txt");
    let o = leech26(&["isom", "verify", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(std::fs::read_to_string(&out).unwrap().lines().count(), 15);
}

#[test]
fn corrupted_certificate_fails_verification() {
    let dir = scratch("certs");
    let d = dir.to_str().unwrap();
    let o = leech26(&["--threads", "4", "reduce", "run", "--all", "--out", d]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(std::fs::read_dir(&dir).unwrap().count(), 50);
    assert_eq!(leech26(&["reduce", "check", d]).status.code(), Some(0));

    // one wrong reflection in an otherwise valid certificate
    let p = dir.join("g06.cert");
    let text = std::fs::read_to_string(&p).unwrap();
    std::fs::write(&p, text.replacen("{node: 1, eps: w}", "{node: 2, eps: w}", 1)).unwrap();
    let o = leech26(&["reduce", "check", d]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("RESULT: FAIL"));

    // unparseable content is a verification failure too
    std::fs::write(dir.join("g07.cert"), "steps: nonsense\n").unwrap();
    assert_eq!(leech26(&["reduce", "check", d]).status.code(), Some(1));
}
