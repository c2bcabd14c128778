//! Brute-force verification suites for the semantic laws relating the
//! logics, their filtered products, and their state-parameterized
//! satisfaction: translation-invariance sweeps, connective dualities and
//! definitional clauses, isomorphism invariance, and the preservation
//! (Łoś-style) suite over filtered products.

pub mod iso;
pub mod laws;
pub mod los;
pub mod preservation;
pub mod satcond;

pub use iso::run_iso_suite;
pub use laws::{check_connective_laws, run_laws_suite};
pub use los::{check_product_invariants, run_los_suite};
pub use preservation::{preserved_by_factors, preserved_by_products};
pub use satcond::run_satcond_suite;

use crate::error::{Error, Result};
use crate::logic::LogicId;
use serde::{Deserialize, Serialize};

/// Shared knobs for the verification suites.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub logic: LogicId,
    /// Largest world set (and inner world set) of generated models.
    pub max_worlds: usize,
    /// Largest carrier of generated first-order models.
    pub max_carrier: usize,
    /// Connective-depth bound for generated sentences.
    pub depth: usize,
    /// Largest index set for filters.
    pub max_index: usize,
    pub seed: u64,
    /// Case budget; suites stop generating new cases past it.
    pub budget: u64,
    /// When set, only the case with this index runs (for reproducing a
    /// reported violation).
    pub only_case: Option<u64>,
}

impl SuiteConfig {
    pub fn new(logic: LogicId, seed: u64, budget: u64) -> Self {
        SuiteConfig {
            logic,
            max_worlds: 2,
            max_carrier: 2,
            depth: 2,
            max_index: 3,
            seed,
            budget: budget.max(1),
            only_case: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_worlds == 0 || self.max_carrier == 0 || self.max_index == 0 {
            return Err(Error::Bounds("suite bounds must be at least 1".into()));
        }
        Ok(())
    }

    pub(crate) fn runs(&self, case: u64) -> bool {
        self.only_case.map_or(true, |c| c == case)
    }
}

/// A single law failure, with enough detail to replay it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Violation {
    /// Which case and which law failed.
    pub case: String,
    /// The two sides that disagreed (or the broken invariant).
    pub detail: String,
    /// Single-line command that replays exactly this case.
    pub repro: String,
}

/// Outcome of one suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub logic: LogicId,
    pub seed: u64,
    pub cases: u64,
    /// Individual law checks performed across all cases.
    pub checks: u64,
    pub violations: Vec<Violation>,
    pub elapsed_ms: u128,
    /// Context the reader needs to interpret the result (e.g. which
    /// theorem premise a clean run certifies).
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str, config: &SuiteConfig) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            logic: config.logic,
            seed: config.seed,
            cases: 0,
            checks: 0,
            violations: Vec::new(),
            elapsed_ms: 0,
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Human-readable rendering; the JSON form is the struct itself.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "suite {} logic {} seed {}: {} cases, {} checks, {} violations, {} ms\n",
            self.suite,
            self.logic,
            self.seed,
            self.cases,
            self.checks,
            self.violations.len(),
            self.elapsed_ms
        ));
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        for v in &self.violations {
            out.push_str(&format!(
                "VIOLATION [{}]\n  {}\n  repro: {}\n",
                v.case, v.detail, v.repro
            ));
        }
        out
    }

    pub(crate) fn violate(&mut self, case: String, detail: String, repro: String) {
        self.violations.push(Violation { case, detail, repro });
    }
}

pub(crate) fn repro_cmd(suite: &str, config: &SuiteConfig, case: u64) -> String {
    format!(
        "strata verify --suite {suite} --logic {} --seed {} --budget {} --case {case}",
        config.logic, config.seed, config.budget
    )
}
