//! Python bindings: signatures, models, satisfaction checking, bounded
//! entailment, filtered products, and the law-verification suites.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyModule;
use std::str::FromStr;
use strata::entail::{check_entailment, EntailMode, EntailOutcome};
use strata::enumerate::SizeBounds;
use strata::eval;
use strata::filter::parse_filter_literal;
use strata::logic::{capabilities, LogicId, ALL_LOGICS};
use strata::model::{stratification, validate_model, Model as RsModel, State};
use strata::parse::{parse_sentence, render_sentence};
use strata::product::filtered_product;
use strata::signature::{validate_signature, SignatureDesc};
use strata::verify::{
    run_iso_suite, run_laws_suite, run_los_suite, run_satcond_suite, SuiteConfig,
};

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_logic(name: &str) -> PyResult<LogicId> {
    LogicId::from_str(name).map_err(err)
}

/// A logic instance plus a validated signature.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Signature {
    logic: LogicId,
    desc: SignatureDesc,
}

#[pymethods]
impl Signature {
    /// Signature(logic, json): the JSON uses the signature file format.
    #[new]
    fn new(logic: &str, json: &str) -> PyResult<Self> {
        let logic = parse_logic(logic)?;
        let desc: SignatureDesc = serde_json::from_str(json).map_err(err)?;
        validate_signature(logic, &desc).map_err(err)?;
        Ok(Signature { logic, desc })
    }

    #[getter]
    fn logic(&self) -> String {
        self.logic.to_string()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.desc).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Signature(logic={})", self.logic)
    }
}

/// A validated model over a signature.
#[pyclass(from_py_object)]
#[derive(Clone)]
struct Model {
    sig: Signature,
    inner: RsModel,
}

#[pymethods]
impl Model {
    /// Model(signature, json): the JSON uses the model file format.
    #[new]
    fn new(sig: Signature, json: &str) -> PyResult<Self> {
        let inner: RsModel = serde_json::from_str(json).map_err(err)?;
        let violations = validate_model(sig.logic, &sig.desc, &inner, None);
        if !violations.is_empty() {
            return Err(PyValueError::new_err(violations.join("; ")));
        }
        Ok(Model { sig, inner })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner).map_err(err)
    }

    /// The model's states (worlds or valuations), as strings.
    fn states(&self) -> PyResult<Vec<String>> {
        Ok(stratification(self.sig.logic, &self.sig.desc, &self.inner)
            .map_err(err)?
            .iter()
            .map(State::to_string)
            .collect())
    }

    /// Satisfaction of a sentence at one state.
    fn check(&self, sentence: &str, state: &str) -> PyResult<bool> {
        let rho = parse_sentence(self.sig.logic, &self.sig.desc, sentence).map_err(err)?;
        let w = State::parse(self.sig.logic, state).map_err(err)?;
        eval::satisfies(self.sig.logic, &self.sig.desc, &self.inner, &w, &rho).map_err(err)
    }

    /// Satisfaction of a sentence at every state.
    fn check_global(&self, sentence: &str) -> PyResult<bool> {
        let rho = parse_sentence(self.sig.logic, &self.sig.desc, sentence).map_err(err)?;
        eval::satisfies_global(self.sig.logic, &self.sig.desc, &self.inner, &rho).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Model(logic={})", self.sig.logic)
    }
}

/// All supported logic names.
#[pyfunction]
fn logics() -> Vec<String> {
    ALL_LOGICS.iter().map(|l| l.to_string()).collect()
}

/// The connective/quantifier/modality capability row of a logic, as a dict
/// serialized to JSON-compatible values.
#[pyfunction]
fn logic_capabilities(py: Python<'_>, logic: &str) -> PyResult<Py<PyAny>> {
    let caps = capabilities(parse_logic(logic)?);
    let json = serde_json::to_string(&caps).map_err(err)?;
    json_to_py(py, &json)
}

/// Parses a sentence and returns its canonical rendering.
#[pyfunction]
fn parse(sig: &Signature, sentence: &str) -> PyResult<String> {
    let ast = parse_sentence(sig.logic, &sig.desc, sentence).map_err(err)?;
    Ok(render_sentence(&ast))
}

/// Bounded entailment. Returns None when entailed within bounds, otherwise
/// a (model_json, state_or_None) counterexample tuple.
#[pyfunction]
#[pyo3(signature = (sig, mode, hypotheses, goal, max_worlds=2, max_carrier=2, budget=1_000_000))]
fn entail(
    sig: &Signature,
    mode: &str,
    hypotheses: Vec<String>,
    goal: &str,
    max_worlds: usize,
    max_carrier: usize,
    budget: u64,
) -> PyResult<Option<(String, Option<String>)>> {
    let mode = match mode {
        "local" => EntailMode::Local,
        "global" => EntailMode::Global,
        other => return Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
    };
    let hyps: Vec<_> = hypotheses
        .iter()
        .map(|h| parse_sentence(sig.logic, &sig.desc, h))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    let rho = parse_sentence(sig.logic, &sig.desc, goal).map_err(err)?;
    let bounds = SizeBounds::new(max_worlds, max_carrier).map_err(err)?;
    match check_entailment(sig.logic, &sig.desc, mode, &hyps, &rho, bounds, budget).map_err(err)? {
        EntailOutcome::Holds { .. } => Ok(None),
        EntailOutcome::Refuted(c) => {
            let json = serde_json::to_string_pretty(&c.model).map_err(err)?;
            Ok(Some((json, c.state.map(|s| s.to_string()))))
        }
    }
}

/// Filtered product of a family of models. The filter literal lists member
/// sets, e.g. "{1,2};{1,2,3}". Returns the product model.
#[pyfunction]
fn product(sig: &Signature, filter_literal: &str, family: Vec<Model>) -> PyResult<Model> {
    let f = parse_filter_literal(filter_literal).map_err(err)?;
    let models: Vec<RsModel> = family.iter().map(|m| m.inner.clone()).collect();
    let pr = filtered_product(sig.logic, &sig.desc, &f, &models).map_err(err)?;
    Ok(Model {
        sig: sig.clone(),
        inner: pr.model,
    })
}

/// Runs a verification suite ("los", "satcond", "laws", "iso") and returns
/// the report as a dict.
#[pyfunction]
#[pyo3(signature = (suite, logic, seed=0, budget=100))]
fn run_suite(py: Python<'_>, suite: &str, logic: &str, seed: u64, budget: u64) -> PyResult<Py<PyAny>> {
    let config = SuiteConfig::new(parse_logic(logic)?, seed, budget);
    let report = match suite {
        "los" => run_los_suite(&config),
        "satcond" => run_satcond_suite(&config),
        "laws" => run_laws_suite(&config),
        "iso" => run_iso_suite(&config),
        other => return Err(PyValueError::new_err(format!("unknown suite `{other}`"))),
    }
    .map_err(err)?;
    let json = serde_json::to_string(&report).map_err(err)?;
    json_to_py(py, &json)
}

fn json_to_py(py: Python<'_>, json: &str) -> PyResult<Py<PyAny>> {
    let module = PyModule::import(py, "json")?;
    let obj = module.getattr("loads")?.call1((json,))?;
    Ok(obj.unbind())
}

#[pymodule]
fn strata_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Signature>()?;
    m.add_class::<Model>()?;
    m.add_function(wrap_pyfunction!(logics, m)?)?;
    m.add_function(wrap_pyfunction!(logic_capabilities, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(entail, m)?)?;
    m.add_function(wrap_pyfunction!(product, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
