use std::process::{Command, Output};

fn charp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charp"))
        .args(args)
        .env_remove("CHARP_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

fn line<'a>(out: &'a str, key: &str) -> &'a str {
    let prefix = format!("{key} = ");
    out.lines()
        .find_map(|l| l.strip_prefix(&prefix))
        .unwrap_or_else(|| panic!("no `{key}` line in\n{out}"))
}

#[test]
fn gen_prints_the_generic_symbol() {
    let o = charp(&["gen", "--n", "1", "--l", "2", "--p", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "x1*dlog(y11) + x2*dlog(y21)\n");

    let o = charp(&["gen", "--n", "2", "--l", "1"]);
    assert_eq!(stdout(&o), "x1*dlog(y11)^dlog(y12)\n");
}

#[test]
fn residues_of_a_generic_symbol() {
    let o = charp(&["residue", "--pi", "y21", "gen(1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(line(&out, "d1"), "x1*dlog(y11)");
    assert_eq!(line(&out, "d2"), "x2");

    let o = charp(&["residue", "--pi", "y12", "gen(2,1)"]);
    let out = stdout(&o);
    assert_eq!(line(&out, "d1"), "0");
    assert_eq!(line(&out, "d2"), "x1*dlog(y11)");
}

#[test]
fn artin_schreier_reduction() {
    let o = charp(&["as-reduce", "--p", "2", "t^2 + t"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(line(&out, "trivial"), "true");
    assert_eq!(line(&out, "representative"), "0");

    let o = charp(&["as-reduce", "--p", "2", "t"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(line(&out, "trivial"), "false");
    assert_eq!(line(&out, "poles"), "inf:1");
}

#[test]
fn canonical_forms() {
    let o = charp(&["canonical", "x^2/pi^2*dlog(y)"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(line(&out, "h0_omega"), "0");
    assert_eq!(line(&out, "pole 1 alpha"), "[1/y]^p * x^(1,1) * dy");
    assert_eq!(line(&out, "canonical"), "pi^-1*(x*dlog(y))");
    assert_eq!(line(&out, "level"), "1");
    assert_eq!(line(&out, "  wp[0]"), "x/pi*dlog(y)");
    assert_eq!(line(&out, "verdict"), "pass");

    let o = charp(&["canonical", "x*dlog(y) + x^2/pi^2*dlog(y) - x/pi*dlog(y)"]);
    let out = stdout(&o);
    assert_eq!(line(&out, "h0_omega"), "x*dlog(y)");
    assert_eq!(line(&out, "h0_nu"), "0");
    assert_eq!(line(&out, "level"), "0");
    assert!(!out.contains("pole "));

    let o = charp(&["canonical", "x*dlog(y) + z*dlog(pi)"]);
    let out = stdout(&o);
    assert_eq!(line(&out, "h0_omega"), "x*dlog(y)");
    assert_eq!(line(&out, "h0_nu"), "z");
    assert!(!out.contains("certificate:"));
}

#[test]
fn filtration_levels() {
    for (expr, level) in [("x/pi*dlog(y)", "1"), ("x*dlog(y)", "0"), ("x^2/pi^2*dlog(y)", "1"), ("0*dlog(y)", "-1")] {
        let o = charp(&["canonical", "--vars", "x,y", expr]);
        assert_eq!(line(&stdout(&o), "level"), level, "{expr}");
    }
}

#[test]
fn extension_of_scalars() {
    let o = charp(&["extend", "--pi", "tau", "--target-pi", "pi", "--e", "1", "--u", "y", "x/tau*dlog(z)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(line(&stdout(&o), "image"), "pi^-1*(x/y*dlog(z))");

    let o = charp(&["--p", "3", "extend", "--pi", "tau", "--target-pi", "pi", "--e", "2", "--u", "x", "y*dlog(tau)"]);
    assert_eq!(line(&stdout(&o), "image"), "y*dlog(x) + 2*y*dlog(pi)");

    let o = charp(&["extend", "--e", "1", "--u", "1", "x/pi^3*dlog(y) + z*dlog(pi)"]);
    assert_eq!(line(&stdout(&o), "image"), "rho^-3*(x*dlog(y)) + z*dlog(rho)");
}

#[test]
fn tame_symbols() {
    let o = charp(&["tame", "--at", "y", "{y, x}"]);
    assert_eq!(line(&stdout(&o), "tame"), "{x}");
    let o = charp(&["--p", "3", "tame", "--at", "y", "{x1, y11, y}"]);
    assert_eq!(line(&stdout(&o), "tame"), "{x1, y11}");
    let o = charp(&["tame", "--at", "t", "{x1, y11}"]);
    assert_eq!(line(&stdout(&o), "tame"), "0");
}

#[test]
fn residue_chain_certificate() {
    let o = charp(&["chain", "--n", "2", "--l", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(line(&out, "terminal"), "x1");
    assert_eq!(line(&out, "trivial"), "false");
    assert_eq!(line(&out, "  step[1] d2 at y12"), "x1*dlog(y11)");
    assert_eq!(line(&out, "  step[2] d2 at y11"), "x1");
}

#[test]
fn exit_codes() {
    let o = charp(&["residue", "x/pi*dlog(y)"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("U_1"));

    let o = charp(&["residue", "x*dlog("]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("1:8"), "{}", stderr(&o));

    let o = charp(&["verify", "no-such-suite"]);
    assert_eq!(o.status.code(), Some(2));

    let o = charp(&["--p", "4", "gen", "--n", "1", "--l", "1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = charp(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));

    let o = charp(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn reports_are_deterministic() {
    let args = ["--seed", "7", "--trials", "20", "--format", "json", "verify", "kp-roundtrip"];
    let a = charp(&args);
    let b = charp(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).expect("json");
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["seed"], 7);
    assert_eq!(v["verdict"], true);

    let env = Command::new(env!("CARGO_BIN_EXE_charp"))
        .args(["--trials", "20", "--format", "json", "verify", "kp-roundtrip"])
        .env("CHARP_SEED", "7")
        .output()
        .expect("binary runs");
    let w: serde_json::Value = serde_json::from_slice(&env.stdout).expect("json");
    assert_eq!(w["outputs"], v["outputs"]);
    assert_eq!(w["seed"], 7);
}

#[test]
fn json_forms_are_term_arrays() {
    let o = charp(&["--format", "json", "residue", "--pi", "y21", "gen(1,2)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json");
    let d1 = &v["outputs"][0];
    assert_eq!(d1["key"], "d1");
    assert_eq!(d1["value"], serde_json::json!([{ "coeff": "x1", "dlog": ["y11"] }]));
    assert_eq!(v["seed"], 0);
}

#[test]
fn every_suite_runs_small() {
    for s in charp_cli::suites::SUITES {
        let o = charp(&["--trials", "6", "verify", s]);
        assert_eq!(o.status.code(), Some(0), "{s}: {}", stdout(&o));
        assert!(stdout(&o).contains("verdict = pass"));
    }
}
