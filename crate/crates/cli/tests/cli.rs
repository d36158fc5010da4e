use std::process::{Command, Output};

fn jtrace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jtrace")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

const SYM_COMMUTATOR: &str = "2*[J x1 + x1 J, J x2 + x2 J] - str(J x1 + x1 J) str(J x2 + x2 J)";

#[test]
fn mindeg_mixed() {
    let o = jtrace(&["mindeg", "-n", "1", "--mixed"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2");
    assert_eq!(stdout(&jtrace(&["mindeg", "-n", "1"])), "3");
}

#[test]
fn dp_and_staircase() {
    assert_eq!(stdout(&jtrace(&["dp", "-d", "4"])), "[[4],[3,1]]");
    assert_eq!(stdout(&jtrace(&["dp", "-d", "6", "--json"])), "[[6],[5,1],[4,2],[3,2,1]]");
    assert_eq!(stdout(&jtrace(&["staircase", "-n", "2", "--json"])), "[3,2,1]");
}

#[test]
fn qmul_pieri() {
    assert_eq!(stdout(&jtrace(&["qmul", "2,1", "1"])), "2·Q(3,1)");
    assert_eq!(jtrace(&["qmul", "1,1", "1"]).status.code(), Some(2));
}

#[test]
fn check_exit_codes() {
    assert_eq!(jtrace(&["check", "-f", SYM_COMMUTATOR, "-n", "1"]).status.code(), Some(0));
    let o = jtrace(&["check", "-f", "str(x1 x2)", "-n", "1", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["identity"], false);
    assert_eq!(jtrace(&["check", "-f", "str(x1", "-n", "1"]).status.code(), Some(2));
}

#[test]
fn queer_check() {
    let ok = jtrace(&["queer-check", "-f", "[x1, x2] - 2*qtr(x1) qtr(x2)", "-n", "1"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = jtrace(&["queer-check", "-f", "qtr(x1 x2)", "-n", "1"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn kernel_json() {
    let o = jtrace(&["kernel", "-d", "3", "-n", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let k = jtrace::json::kernel_from_json::<jtrace::Rational>(&v).unwrap();
    assert_eq!((k.d, k.n, k.dim), (3, 1, 16));
}

#[test]
fn closure_verdict() {
    let o = jtrace(&["closure", "-d", "2", "-e", "3", "-n", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // no degree-2 identities, so nothing generates the 16 of degree 3
    assert_eq!(v["closure_dim"], 0);
    assert_eq!(v["kernel_e_dim"], 16);
    assert_eq!(v["equal"], false);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn resource_cap_and_usage() {
    let o = jtrace(&["kernel", "-d", "6", "-n", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    assert_eq!(jtrace(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(jtrace(&["kernel", "-d", "3"]).status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let args = ["eval", "-f", "str(J x1 x2) - str(x1) str(J x2)", "--seed", "11", "--json"];
    let a = jtrace(&args);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, jtrace(&args).stdout);
    let l = ["verify-lemmas", "--seed", "5", "--trials", "6"];
    let (x, y) = (jtrace(&l), jtrace(&l));
    assert_eq!(x.stdout, y.stdout);
    assert_eq!(x.status.code(), Some(0));
    assert!(stdout(&x).contains("conj-clifford-stated"));
}
