use std::path::PathBuf;
use std::process::{Command, Output};

use wound_core::session::Session;

fn data(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests/data");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn wound(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wound"))
        .args(args)
        .output()
        .expect("run wound")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn classify_exit_codes() {
    let groups = data("groups.wnd");
    let o = wound(&["classify", &groups, "W_a"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("wound: certified\n"));
    let o = wound(&["classify", &groups, "L"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("wound: refuted, witness=(1,0)\n"));
    let o = wound(&["classify", &groups, "M"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("wound: certified (relaxation)\n"));
}

#[test]
fn reduce_divisor_by_itself() {
    let o = wound(&["reduce", &data("groups.wnd"), "V_a", "X^(p^2) - X + a*Y^(p^2)"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("remainder: 0\n"));
    let o = wound(&["reduce", &data("groups.wnd"), "V_a", "X^(p^3)"]);
    assert!(stdout(&o).contains("remainder: 1*X^(p^1) + 2*a^3*Y^(p^3)\n"));
}

#[test]
fn homs_and_isomorphisms() {
    let o = wound(&["verify-iso", &data("split.wnd"), "f", "g"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("isomorphism: true\n"));
    assert_eq!(code(&wound(&["verify-hom", &data("gabber.wnd"), "phi_b"])), 0);
    assert_eq!(code(&wound(&["verify-hom", &data("gabber.wnd"), "bad"])), 1);
}

#[test]
fn gabber_extension() {
    let o = wound(&["check-extension", &data("gabber.wnd"), "U_a"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("associativity: holds\n"));
    assert!(out.contains("commutative: false\n"));
}

#[test]
fn twist_is_split() {
    let o = wound(&["twist", &data("groups.wnd"), "W_a", "1"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("wound: refuted, witness=(2*a,1)\n"));
}

#[test]
fn solve_counts_and_guard() {
    let o = wound(&["solve", &data("gabber.wnd"), "Ga", "Ga", "--cap", "T:T=1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("solutions: 9\n"));
    let o = wound(&["solve", &data("gabber.wnd"), "V_a", "U", "--degree", "1"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn input_errors_exit_3() {
    assert_eq!(code(&wound(&["classify", &data("groups.wnd"), "Nope"])), 3);
    assert_eq!(code(&wound(&["classify", &data("missing.wnd"), "W_a"])), 3);
    assert_eq!(code(&wound(&["classify"])), 3);
    assert_eq!(code(&wound(&["selftest-paper", "7"])), 3);
    let dir = std::env::temp_dir().join(format!("wound-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.wnd");
    std::fs::write(&bad, "field p=3\ngroup G vars=X pivot=X : X*X\n").unwrap();
    let o = wound(&["classify", bad.to_str().unwrap(), "G"]);
    assert_eq!(code(&o), 3);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn reports_are_byte_stable() {
    let args = ["derive", &data("gabber.wnd"), "V_a", "U"];
    let first = wound(&args);
    assert_eq!(first.stdout, wound(&args).stdout);
    let mut seq = args.to_vec();
    seq.push("--sequential");
    assert_eq!(first.stdout, wound(&seq).stdout);
    let check = ["check-extension", &data("gabber.wnd"), "U_a"];
    assert_eq!(wound(&check).stdout, wound(&check).stdout);
}

#[test]
fn echoed_input_round_trips() {
    let o = wound(&["verify-hom", &data("gabber.wnd"), "phi_b"]);
    let echoed: String = stdout(&o)
        .lines()
        .filter_map(|l| l.strip_prefix("input: "))
        .map(|l| format!("{l}\n"))
        .collect();
    let original = Session::parse(&std::fs::read_to_string(data("gabber.wnd")).unwrap()).unwrap();
    assert_eq!(Session::parse(&echoed).unwrap(), original);
}

#[test]
fn selftest_passes() {
    for p in ["2", "3", "5"] {
        let o = wound(&["selftest-paper", p]);
        assert_eq!(code(&o), 0, "{}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}
