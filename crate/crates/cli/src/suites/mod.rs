//! Named verification campaigns. Every case draws from its own ChaCha8
//! stream, indexed by the case number, so results do not depend on thread
//! scheduling.

mod field;
mod laurent;
pub mod random;
mod symbols;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub const SUITES: [&str; 11] = [
    "kp-roundtrip",
    "cartier",
    "as-h1",
    "eq-rewrite",
    "canonical-h0",
    "psi-diagrams",
    "generic-residues",
    "residue-chain",
    "zero-restriction",
    "omega-injectivity",
    "tame-chain",
];

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Overrides the default number of random cases.
    pub trials: Option<usize>,
}

impl SuiteOptions {
    pub fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseOutcome {
    pub index: usize,
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

impl CaseOutcome {
    pub fn new(index: usize, label: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            index,
            label: label.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub cases: Vec<CaseOutcome>,
    /// Observations that do not affect the verdict.
    pub notes: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        !self.cases.is_empty() && self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseOutcome> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

pub fn case_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Runs `n` cases in parallel and returns them in index order.
pub(crate) fn run_cases<F>(n: usize, seed: u64, f: F) -> Vec<CaseOutcome>
where
    F: Fn(usize, &mut ChaCha8Rng) -> CaseOutcome + Sync,
{
    (0..n).into_par_iter().map(|i| f(i, &mut case_rng(seed, i))).collect()
}

pub fn run_suite(name: &str, opts: &SuiteOptions) -> Option<SuiteOutcome> {
    let out = match name {
        "kp-roundtrip" => field::kp_roundtrip(opts),
        "cartier" => field::cartier(opts),
        "as-h1" => field::as_h1(opts),
        "eq-rewrite" => laurent::eq_rewrite(opts),
        "canonical-h0" => laurent::canonical_h0(opts),
        "psi-diagrams" => laurent::psi_diagrams(opts),
        "generic-residues" => symbols::generic_residues_suite(opts),
        "residue-chain" => symbols::residue_chain(opts),
        "zero-restriction" => symbols::zero_restriction(opts),
        "omega-injectivity" => symbols::omega_injectivity_suite(opts),
        "tame-chain" => symbols::tame_chain(opts),
        _ => return None,
    };
    Some(out)
}
