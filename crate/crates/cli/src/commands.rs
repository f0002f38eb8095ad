use std::fmt;

use serde_json::{json, Value};

use charp::field::FieldConfig;
use charp::forms::{as_reduce, Place};
use charp::laurent::{canonicalize, extend_scalars, filtration_level, residues, HigherTable, LaurentClass, LaurentField, ValuedExtension};
use charp::symbols::{make_generic_symbol, residue_chain_certificate, tame_symbol, GenericSymbolSpec, ValuationSpec};

use crate::parse::{collect_variables, parse_form, parse_scalar, parse_symbol, ParseError};
use crate::report::{class_json, form_json, log_sum_json, symbol_json, table_json, table_text, Report};
use crate::suites;
use crate::{Cli, Command, GlobalOpts};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Parse(ParseError),
    Math(charp::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse(_) => 2,
            CliError::Math(e) => match e {
                charp::Error::Config(_) | charp::Error::UnknownVariable(_) | charp::Error::Unsupported(_) => 2,
                _ => 3,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "{s}"),
            CliError::Parse(e) => write!(f, "parse error at {e}"),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

impl From<charp::Error> for CliError {
    fn from(e: charp::Error) -> Self {
        CliError::Math(e)
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e)
    }
}

type CliResult<T> = Result<T, CliError>;

/// The configuration for `exprs`: `--vars` if given, else the variables in
/// order of appearance; a uniformizer, if any, goes last.
fn build_cfg(g: &GlobalOpts, exprs: &[&str], pi: Option<&str>) -> CliResult<FieldConfig> {
    let mut vars: Vec<String> = match &g.vars {
        Some(v) => v.iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect(),
        None => {
            let mut vars = Vec::new();
            for e in exprs {
                for v in collect_variables(e)? {
                    if !vars.contains(&v) {
                        vars.push(v);
                    }
                }
            }
            vars
        }
    };
    if let Some(pi) = pi {
        vars.retain(|v| v != pi);
        vars.push(pi.to_string());
    }
    Ok(FieldConfig::new(g.p, g.field_ext, &vars)?)
}

fn laurent_field(g: &GlobalOpts, exprs: &[&str], pi: &str) -> CliResult<LaurentField> {
    let cfg = build_cfg(g, exprs, Some(pi))?;
    Ok(LaurentField::new(&cfg.without(pi)?, pi)?)
}

fn parse_class(field: &LaurentField, expr: &str) -> CliResult<LaurentClass> {
    let w = parse_form(expr, field.ext())?;
    Ok(LaurentClass::from_form(field, &w)?)
}

pub fn execute(cli: &Cli, argv: &[String]) -> CliResult<Report> {
    let g = &cli.global;
    let seed = session_seed(g)?;
    let mut report = match &cli.command {
        Command::Residue { expr } => residue(g, argv, expr),
        Command::Canonical { expr } => canonical(g, argv, expr),
        Command::Extend { expr, e, u, target_pi } => extend(g, argv, expr, *e, u, target_pi),
        Command::Gen { n, l } => gen(g, argv, *n, *l),
        Command::Chain { n, l } => chain(g, argv, *n, *l),
        Command::Tame { expr, at } => tame(g, argv, expr, at),
        Command::AsReduce { expr } => as_reduce_cmd(g, argv, expr),
        Command::Verify { suite } => verify(g, argv, suite),
    }?;
    report.seed = Some(seed);
    Ok(report)
}

fn residue(g: &GlobalOpts, argv: &[String], expr: &str) -> CliResult<Report> {
    let field = laurent_field(g, &[expr], &g.pi)?;
    let class = parse_class(&field, expr)?;
    let (d1, d2) = residues(&class)?;
    let mut r = Report::new("residue", argv);
    r.input("class", class.to_string(), class_json(&class));
    r.output("d1", d1.to_string(), form_json(&d1));
    r.output("d2", d2.to_string(), form_json(&d2));
    Ok(r)
}

fn canonical(g: &GlobalOpts, argv: &[String], expr: &str) -> CliResult<Report> {
    let field = laurent_field(g, &[expr], &g.pi)?;
    let class = parse_class(&field, expr)?;
    let (dec, cert) = canonicalize(&class);
    let out = dec.reassemble();
    let mut r = Report::new("canonical", argv);
    r.input("class", class.to_string(), class_json(&class));
    r.output("h0_omega", dec.h0_omega.to_string(), form_json(&dec.h0_omega));
    r.output("h0_nu", dec.h0_nu.to_string(), form_json(&dec.h0_nu));
    for (k, t) in dec.higher.iter().rev() {
        match t {
            HigherTable::Alpha(a) => r.output(&format!("pole {k} alpha"), table_text(a), table_json(a)),
            HigherTable::BetaGamma { beta, gamma } => {
                r.output(&format!("pole {k} beta"), table_text(beta), table_json(beta));
                r.output(&format!("pole {k} gamma"), table_text(gamma), table_json(gamma));
            }
        }
    }
    r.output("canonical", out.to_string(), class_json(&out));
    let level = filtration_level(&class);
    r.output("level", level.to_string(), json!(level));
    for (i, e) in cert.exact.iter().enumerate() {
        r.certificate(&format!("exact[{i}]"), e.to_string(), form_json(e));
    }
    for (i, s) in cert.wp.iter().enumerate() {
        r.certificate(&format!("wp[{i}]"), s.to_string(), log_sum_json(s));
    }
    r.verdict = Some(cert.verify(&class, &out));
    Ok(r)
}

fn extend(g: &GlobalOpts, argv: &[String], expr: &str, e: u32, u: &str, target_pi: &str) -> CliResult<Report> {
    if target_pi == g.pi {
        return Err(CliError::Usage("--target-pi must differ from --pi".into()));
    }
    let source = laurent_field(g, &[expr, u], &g.pi)?;
    let target = LaurentField::new(source.base(), target_pi)?;
    let class = parse_class(&source, expr)?;
    let unit = parse_scalar(u, source.base())?;
    let ext = ValuedExtension::new(&source, &target, e, unit.clone())?;
    let out = extend_scalars(&class, &ext)?;
    let mut r = Report::new("extend", argv);
    r.input("class", class.to_string(), class_json(&class));
    r.input("relation", format!("{} = ({unit})*{target_pi}^{e}", g.pi), json!({ "e": e, "u": unit.to_string() }));
    r.output("image", out.to_string(), class_json(&out));
    Ok(r)
}

fn gen(g: &GlobalOpts, argv: &[String], n: usize, l: usize) -> CliResult<Report> {
    let spec = GenericSymbolSpec::new(n, l, g.p, g.field_ext)?;
    let s = make_generic_symbol(&spec);
    let mut r = Report::new("gen", argv);
    r.output("symbol", s.to_string(), log_sum_json(&s));
    r.bare = true;
    Ok(r)
}

fn chain(g: &GlobalOpts, argv: &[String], n: usize, l: usize) -> CliResult<Report> {
    let spec = GenericSymbolSpec::new(n, l, g.p, g.field_ext)?;
    let cert = residue_chain_certificate(&spec)?;
    let mut r = Report::new("chain", argv);
    r.input("symbol", make_generic_symbol(&spec).to_string(), log_sum_json(&make_generic_symbol(&spec)));
    for (i, s) in cert.steps.iter().enumerate() {
        r.certificate(
            &format!("step[{}] {} at {}", i + 1, s.map, s.variable),
            s.result.to_string(),
            json!({ "variable": s.variable, "map": s.map.to_string(), "result": form_json(&s.result) }),
        );
    }
    r.output("terminal", cert.terminal_input.to_string(), json!(cert.terminal_input.to_string()));
    r.output(
        "representative",
        cert.terminal.representative.to_string(),
        json!(cert.terminal.representative.to_string()),
    );
    r.output("trivial", cert.terminal.trivial.to_string(), json!(cert.terminal.trivial));
    r.verdict = Some(cert.is_nontrivial());
    Ok(r)
}

fn tame(g: &GlobalOpts, argv: &[String], expr: &str, at: &str) -> CliResult<Report> {
    let mut cfg = build_cfg(g, &[expr], None)?;
    if !cfg.has_var(at) {
        cfg = cfg.extended(at)?;
    }
    let s = parse_symbol(expr, &cfg)?;
    let t = tame_symbol(&s, &ValuationSpec::new(&cfg, at)?)?;
    let mut r = Report::new("tame", argv);
    r.input("symbol", s.to_string(), symbol_json(&s));
    r.output("tame", t.to_string(), symbol_json(&t));
    Ok(r)
}

fn as_reduce_cmd(g: &GlobalOpts, argv: &[String], expr: &str) -> CliResult<Report> {
    let mut cfg = build_cfg(g, &[expr], None)?;
    if cfg.nvars() == 0 {
        cfg = cfg.extended("t")?;
    }
    let f = parse_scalar(expr, &cfg)?;
    let red = as_reduce(&f)?;
    let mut r = Report::new("as-reduce", argv);
    r.input("f", f.to_string(), json!(f.to_string()));
    r.output("representative", red.representative.to_string(), json!(red.representative.to_string()));
    r.output("trivial", red.trivial.to_string(), json!(red.trivial));
    let poles: Vec<String> = red
        .pole_data
        .iter()
        .map(|(pl, k)| match pl {
            Place::Infinity => format!("inf:{k}"),
            Place::Finite(q) => format!("({q}):{k}"),
        })
        .collect();
    r.output(
        "poles",
        if poles.is_empty() { "none".into() } else { poles.join(", ") },
        json!(red.pole_data.iter().map(|(pl, k)| json!({ "place": pl.to_string(), "order": k })).collect::<Vec<_>>()),
    );
    r.certificate("witness", red.witness.to_string(), json!(red.witness.to_string()));
    r.verdict = Some(red.verify(&f));
    Ok(r)
}

pub fn session_seed(g: &GlobalOpts) -> CliResult<u64> {
    if let Some(s) = g.seed {
        return Ok(s);
    }
    match std::env::var("CHARP_SEED") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("CHARP_SEED must be an unsigned integer, got `{v}`"))),
        Err(_) => Ok(0),
    }
}

fn verify(g: &GlobalOpts, argv: &[String], suite: &str) -> CliResult<Report> {
    let seed = session_seed(g)?;
    let opts = suites::SuiteOptions { seed, trials: g.trials };
    let names: Vec<&str> = if suite == "all" {
        suites::SUITES.to_vec()
    } else if suites::SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(CliError::Usage(format!(
            "unknown suite `{suite}`; available: all, {}",
            suites::SUITES.join(", ")
        )));
    };
    let mut r = Report::new("verify", argv);
    let mut all = true;
    for name in names {
        let out = suites::run_suite(name, &opts).expect("listed suite");
        all &= out.passed();
        let failures: Vec<Value> = out
            .failures()
            .map(|c| json!({ "case": c.index, "label": c.label, "detail": c.detail }))
            .collect();
        let text = format!(
            "{} ({} cases, {} failures)",
            if out.passed() { "pass" } else { "fail" },
            out.cases.len(),
            failures.len()
        );
        r.output(
            name,
            text,
            json!({ "passed": out.passed(), "cases": out.cases.len(), "failures": failures, "notes": out.notes }),
        );
        for (i, note) in out.notes.iter().enumerate() {
            r.certificate(&format!("{name} note[{i}]"), note.clone(), json!(note));
        }
        for c in out.failures().take(5) {
            r.certificate(&format!("{name} case {}", c.index), format!("{}: {}", c.label, c.detail), Value::Null);
        }
    }
    r.verdict = Some(all);
    Ok(r)
}
