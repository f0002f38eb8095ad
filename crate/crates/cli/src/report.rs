use serde::Serialize;
use serde_json::{json, Value};

use charp::forms::{DifferentialForm, LogTermSum, MonomialTermDecomposition};
use charp::laurent::LaurentClass;
use charp::symbols::MilnorSymbol;

pub const SCHEMA_VERSION: u32 = 1;

/// One printed line of text output together with its JSON value.
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub key: String,
    pub text: String,
    pub value: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub argv: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub inputs: Vec<Entry>,
    pub outputs: Vec<Entry>,
    pub certificates: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    /// Text output lists output values only, without keys.
    #[serde(skip)]
    pub bare: bool,
}

impl Report {
    pub fn new(command: &str, argv: &[String]) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            argv: argv.to_vec(),
            seed: None,
            inputs: Vec::new(),
            outputs: Vec::new(),
            certificates: Vec::new(),
            verdict: None,
            timing_ms: None,
            bare: false,
        }
    }

    pub fn input(&mut self, key: &str, text: impl Into<String>, value: Value) {
        self.inputs.push(Entry {
            key: key.to_string(),
            text: text.into(),
            value,
        });
    }

    pub fn output(&mut self, key: &str, text: impl Into<String>, value: Value) {
        self.outputs.push(Entry {
            key: key.to_string(),
            text: text.into(),
            value,
        });
    }

    pub fn certificate(&mut self, key: &str, text: impl Into<String>, value: Value) {
        self.certificates.push(Entry {
            key: key.to_string(),
            text: text.into(),
            value,
        });
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.bare {
            for e in &self.outputs {
                out.push_str(&e.text);
                out.push('\n');
            }
            return out;
        }
        for e in &self.outputs {
            out.push_str(&format!("{} = {}\n", e.key, e.text));
        }
        if !self.certificates.is_empty() {
            out.push_str("certificate:\n");
            for e in &self.certificates {
                out.push_str(&format!("  {} = {}\n", e.key, e.text));
            }
        }
        if let Some(v) = self.verdict {
            out.push_str(&format!("verdict = {}\n", if v { "pass" } else { "fail" }));
        }
        if let Some(seed) = self.seed {
            out.push_str(&format!("seed = {seed}\n"));
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("time_ms = {t}\n"));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// A form as an array of `{coeff, dlog}` terms in wedge order.
pub fn form_json(w: &DifferentialForm) -> Value {
    Value::Array(
        w.dlog_terms()
            .into_iter()
            .map(|(c, names)| json!({ "coeff": c.to_string(), "dlog": names }))
            .collect(),
    )
}

pub fn class_json(c: &LaurentClass) -> Value {
    Value::Array(
        c.components()
            .iter()
            .rev()
            .map(|(k, comp)| json!({ "pole": k, "omega": form_json(&comp.omega), "nu": form_json(&comp.nu) }))
            .collect(),
    )
}

pub fn log_sum_json(s: &LogTermSum) -> Value {
    let s = s.normalized();
    Value::Array(
        s.terms()
            .iter()
            .map(|t| {
                json!({
                    "coeff": t.coeff.to_string(),
                    "dlog": t.args.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn table_json(t: &MonomialTermDecomposition) -> Value {
    let cfg = t.cfg();
    Value::Array(
        t.terms()
            .iter()
            .map(|m| {
                json!({
                    "coeff": m.coeff.to_string(),
                    "exps": m.exps.entries(),
                    "dx": m.wedge.indices().map(|i| cfg.var_name(i).to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

pub fn table_text(t: &MonomialTermDecomposition) -> String {
    if t.is_empty() {
        return "0".into();
    }
    let cfg = t.cfg();
    let parts: Vec<String> = t
        .terms()
        .iter()
        .map(|m| {
            let dx: Vec<String> = m.wedge.indices().map(|i| format!("d{}", cfg.var_name(i))).collect();
            let dx = if dx.is_empty() { "1".to_string() } else { dx.join("^") };
            format!("[{}]^p * x^{} * {}", m.coeff, m.exps, dx)
        })
        .collect();
    parts.join(" + ")
}

pub fn symbol_json(s: &MilnorSymbol) -> Value {
    let mut terms: Vec<(Vec<String>, i64)> = s
        .terms()
        .iter()
        .map(|(c, e)| (e.iter().map(|a| a.to_string()).collect(), *c))
        .collect();
    terms.sort();
    Value::Array(
        terms
            .into_iter()
            .map(|(e, c)| json!({ "coeff": c, "entries": e }))
            .collect(),
    )
}
