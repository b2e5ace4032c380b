use std::path::PathBuf;
use std::process::{Command, Output};

fn chowcheck(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chowcheck")).args(args).output().expect("binary runs")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("chowcheck-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn shioda_exits_zero() {
    let out = chowcheck(&["verify", "shioda"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS (16/16 steps passed)"));
}

#[test]
fn quartic_family_exits_one() {
    let out = chowcheck(&["verify", "quartic-family"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("FAIL hyperelliptic condition"));
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(chowcheck(&["verify", "no-such-scenario"]).status.code(), Some(2));
    let bad = scratch("bad.scn");
    std::fs::write(&bad, "[scenario]\nname = x\n[ring]\nvariables = x0\nform = x0^2 +\n").unwrap();
    let out = chowcheck(&["verify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("line 5"));
    assert_eq!(chowcheck(&["verify", "shioda", "--prime", "12"]).status.code(), Some(2));
    assert_eq!(chowcheck(&["ring", "dim", "--file", "shioda"]).status.code(), Some(2));
    assert_eq!(chowcheck(&["bogus"]).status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical() {
    for name in ["shioda", "quartic-family"] {
        let a = scratch(&format!("{name}-a.txt"));
        let b = scratch(&format!("{name}-b.txt"));
        chowcheck(&["verify", name, "--report", a.to_str().unwrap()]);
        chowcheck(&["verify", name, "--report", b.to_str().unwrap()]);
        let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
        assert!(!a.is_empty());
        assert_eq!(a, b, "{name}");
    }
}

#[test]
fn exact_and_modular_reports_share_verdicts() {
    let e = scratch("exact.txt");
    let m = scratch("modular.txt");
    assert_eq!(chowcheck(&["verify", "shioda", "--exact", "--report", e.to_str().unwrap()]).status.code(), Some(0));
    assert_eq!(chowcheck(&["verify", "shioda", "--report", m.to_str().unwrap()]).status.code(), Some(0));
    let verdicts = |p: &PathBuf| -> Vec<String> {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .filter(|l| l.contains(".status ="))
            .map(str::to_string)
            .collect()
    };
    assert_eq!(verdicts(&e), verdicts(&m));
}

#[test]
fn ring_queries() {
    let out = chowcheck(&["ring", "dim", "--file", "shioda", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("dim R_4 = 31"));

    let out = chowcheck(&["ring", "map", "--file", "shioda", "--a", "6", "--b", "3", "--exact"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().contains("surjective, rank 20"));

    let sing = scratch("sing.scn");
    std::fs::write(&sing, "[scenario]\nname = s\n[ring]\nvariables = x0, x1, x2, x3\nform = x0^4\n").unwrap();
    let out = chowcheck(&["ring", "smooth", "--file", sing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn builtin_listing() {
    let out = chowcheck(&["builtin"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("shioda") && text.contains("quartic-family"));
    let out = chowcheck(&["builtin", "shioda"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("[ring]"));
}
