use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn storop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_storop"))
        .args(args)
        .env_remove("STOROP_FUEL")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn derivations() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/derivations")
}

fn deriv(name: &str) -> String {
    derivations().join(name).to_str().unwrap().to_string()
}

#[test]
fn reduce_t1_on_two() {
    let o = storop(&["reduce", "(@T1 @church:2) f", "--strategy", "head"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("(f) (@succ) (@succ) @church:0\n"));
}

#[test]
fn reduce_trace_and_normal() {
    let o = storop(&["reduce", r"(\x x) (\y y) z", "--trace", "--strategy", "normal"]);
    assert_eq!(stdout(&o), "1: (\\y y) z\n2: z\nz\nsteps: 2\nstatus: normal-form-reached\n");
}

#[test]
fn reduce_exit_codes() {
    assert_eq!(storop(&["reduce", "@omega", "--fuel", "50"]).status.code(), Some(3));
    assert_eq!(storop(&["reduce", r"\x ("]).status.code(), Some(2));
    assert_eq!(storop(&["reduce"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_storop"))
        .args(["reduce", "@omega"])
        .env("STOROP_FUEL", "20")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("steps: 20"));
}

#[test]
fn certify_commands() {
    assert_eq!(storop(&["certify", "@T2", "--max-n", "10", "--corpus", "4"]).status.code(), Some(0));
    let o = storop(&["certify", r"\v \f (f) @church:0", "--max-n", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("n=1 failed: tau-wrong-value"));
    assert_eq!(storop(&["certify", "@T", "--max-n", "5"]).status.code(), Some(0));
    assert_eq!(storop(&["certify", r"\v \f @omega", "--max-n", "1", "--fuel", "300"]).status.code(), Some(3));
    assert_eq!(storop(&["certify", "x", "--max-n", "1"]).status.code(), Some(2));
}

#[test]
fn certify_writes_certificates() {
    let out = Path::new(env!("CARGO_TARGET_TMPDIR")).join("t1.cert");
    let o = storop(&["certify", "@T1", "--max-n", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.matches("certificate\n").count(), 3);
    assert!(text.contains("operator @T1\nn 2\n"));
}

#[test]
fn check_commands() {
    assert_eq!(storop(&["check", &deriv("T1-bot.deriv")]).status.code(), Some(0));
    let eqs = deriv("subtraction.eqs");
    assert_eq!(storop(&["check", &deriv("T2-star.deriv"), "--equations", &eqs]).status.code(), Some(0));
    assert_eq!(storop(&["check", &deriv("T2-star.deriv")]).status.code(), Some(1));
    let o = storop(&["check", &deriv("succ.deriv"), "--fragment", "fperp"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("failed at ["));
}

#[test]
fn check_mutated_golden_file() {
    let text = std::fs::read_to_string(deriv("church-2.deriv")).unwrap();
    let mutated = text.replacen("(witness (fo \"0\"))", "(witness (fo \"s0\"))", 1);
    assert_ne!(text, mutated);
    let path = Path::new(env!("CARGO_TARGET_TMPDIR")).join("church-2-mutated.deriv");
    std::fs::write(&path, mutated).unwrap();
    let o = storop(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("failed at [0, 0, 0"), "{}", stdout(&o));

    let broken = Path::new(env!("CARGO_TARGET_TMPDIR")).join("broken.deriv");
    std::fs::write(&broken, "(rule ax (ctx)").unwrap();
    assert_eq!(storop(&["check", broken.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn translate_commands() {
    let run = |f: &str, op: &str| stdout(&storop(&["translate", f, "--op", op]));
    assert_eq!(run("N[x]", "bot"), "∀X⊥{X⊥(0), ∀y(X⊥(y) → X⊥(sy)) → X⊥(x)}\n");
    assert_eq!(run("N[x]", "forget"), "∀X{X, (X → X) → X}\n");
    assert_eq!(run("N[x]", "star"), "∀X{¬X(0), ∀y(¬X(y) → ¬X(sy)) → ¬X(x)}\n");
    assert_eq!(run("N[x]", "polarity"), "positive\n");
    assert_eq!(storop(&["translate", "X_|(0)", "--op", "star"]).status.code(), Some(2));
    assert_eq!(storop(&["translate", "N[x]"]).status.code(), Some(2));
}

#[test]
fn commands_are_deterministic() {
    let a = stdout(&storop(&["certify", "@Tp", "--max-n", "3"]));
    let b = stdout(&storop(&["certify", "@Tp", "--max-n", "3"]));
    assert_eq!(a, b);
}
