use std::path::PathBuf;
use std::process::{Command, Output};

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name)
}

fn taumut(cfg: &str, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_taumut")).arg("--config").arg(config(cfg)).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn mutate_prints_the_figure_edge() {
    let o = taumut("a3_t2.cfg", &["mutate", "--seq", "(P3,P2,P1)", "--i", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(M,P3,P1)\n");
    let back = taumut("a3_t2.cfg", &["mutate", "--seq", "(M,P3,P1)", "--i", "1", "--right"]);
    assert_eq!(stdout(&back), "(P3,P2,P1)\n");
}

#[test]
fn listings() {
    assert_eq!(stdout(&taumut("a2_t1.cfg", &["sequences"])).lines().count(), 3);
    let rigid = stdout(&taumut("a3_t2.cfg", &["taurigid"]));
    assert_eq!(rigid.lines().count(), 6);
    assert!(rigid.lines().any(|l| l == "M"));
    let cat = stdout(&taumut("d4_t1.cfg", &["catalog"]));
    assert_eq!(cat.lines().count(), 12);
}

#[test]
fn usage_errors() {
    let empty = taumut("a3_t2.cfg", &["verify", "--checks", ""]);
    assert_eq!(empty.status.code(), Some(2));
    let unknown = taumut("a3_t2.cfg", &["module", "--dump", "Q7"]);
    assert_eq!(unknown.status.code(), Some(2));
    let bad_index = taumut("a3_t2.cfg", &["mutate", "--seq", "(P3,P2,P1)", "--i", "3"]);
    assert_eq!(bad_index.status.code(), Some(2));
    let missing = Command::new(env!("CARGO_BIN_EXE_taumut")).args(["--config", "/nonexistent.cfg", "catalog"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let ok = taumut("a3_t2.cfg", &["verify", "--checks", "all"]);
    assert!(ok.status.success());
    assert!(stdout(&ok).lines().all(|l| l.starts_with("CHECK ") && l.split(' ').nth(2) == Some("PASS")));
    let fig = taumut("a3_t3.cfg", &["verify", "--checks", "braid,figure1"]);
    assert_eq!(fig.status.code(), Some(1));
    assert!(stdout(&fig).contains("CHECK figure1 FAIL"));
}

#[test]
fn dot_output_is_stable() {
    let dir = std::env::temp_dir();
    let a = dir.join(format!("taumut-{}-a.dot", std::process::id()));
    let b = dir.join(format!("taumut-{}-b.dot", std::process::id()));
    for p in [&a, &b] {
        assert!(taumut("a3_t2.cfg", &["graph", "--dot", p.to_str().unwrap()]).status.success());
    }
    let (x, y) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let _ = (std::fs::remove_file(&a), std::fs::remove_file(&b));
    assert_eq!(x, y);
    let text = String::from_utf8(x).unwrap();
    assert_eq!(text.matches("->").count(), 32);
    assert_eq!(text.matches("style=solid").count(), 16);
}

#[test]
fn module_dump() {
    let o = taumut("a3_t2.cfg", &["--prime", "101", "module", "--dump", "M"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("module M over "));
    assert!(text.contains("dims = [0,2,0]"));
}
