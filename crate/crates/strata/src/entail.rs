//! Bounded semantic entailment: exhaustive search over all models within
//! size bounds for a counterexample.

use crate::enumerate::{for_each_model, SizeBounds};
use crate::error::Result;
use crate::eval::{satisfies, satisfies_global};
use crate::logic::LogicId;
use crate::model::{stratification, Model, State};
use crate::sentence::{check_sentence, Sentence};
use crate::signature::SignatureDesc;

/// Whether entailment is judged at each state or on globally satisfying
/// models.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntailMode {
    /// Premises and conclusion held at the same state.
    Local,
    /// Premises and conclusion held at every state of a model.
    Global,
}

/// A refuting instance: a model (and, for local mode, a state) where all
/// premises hold but the conclusion fails.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub model: Model,
    pub state: Option<State>,
}

/// Outcome of a bounded entailment check.
#[derive(Debug, Clone)]
pub enum EntailOutcome {
    /// No counterexample exists within the bounds; `models_checked` models
    /// were examined.
    Holds { models_checked: u64 },
    Refuted(Box<Counterexample>),
}

/// Searches every model within bounds for a counterexample to
/// `hyps |= goal`.
pub fn check_entailment(
    logic: LogicId,
    sig: &SignatureDesc,
    mode: EntailMode,
    hyps: &[Sentence],
    goal: &Sentence,
    bounds: SizeBounds,
    budget: u64,
) -> Result<EntailOutcome> {
    for h in hyps {
        check_sentence(logic, sig, h)?;
    }
    check_sentence(logic, sig, goal)?;
    let mut found: Option<Counterexample> = None;
    let mut err: Option<crate::error::Error> = None;
    let checked = for_each_model(logic, sig, bounds, budget, &mut |m| {
        let r = match mode {
            EntailMode::Global => {
                let all_hyps = hyps
                    .iter()
                    .try_fold(true, |acc, h| Ok::<_, crate::error::Error>(acc && satisfies_global(logic, sig, m, h)?));
                match all_hyps {
                    Ok(true) => match satisfies_global(logic, sig, m, goal) {
                        Ok(true) => None,
                        Ok(false) => Some(Counterexample { model: m.clone(), state: None }),
                        Err(e) => {
                            err = Some(e);
                            None
                        }
                    },
                    Ok(false) => None,
                    Err(e) => {
                        err = Some(e);
                        None
                    }
                }
            }
            EntailMode::Local => {
                let states = match stratification(logic, sig, m) {
                    Ok(s) => s,
                    Err(e) => {
                        err = Some(e);
                        return false;
                    }
                };
                let mut hit = None;
                for w in states {
                    let check = || -> Result<bool> {
                        for h in hyps {
                            if !satisfies(logic, sig, m, &w, h)? {
                                return Ok(false);
                            }
                        }
                        Ok(!satisfies(logic, sig, m, &w, goal)?)
                    };
                    match check() {
                        Ok(true) => {
                            hit = Some(Counterexample { model: m.clone(), state: Some(w) });
                            break;
                        }
                        Ok(false) => {}
                        Err(e) => {
                            err = Some(e);
                            break;
                        }
                    }
                }
                hit
            }
        };
        if let Some(c) = r {
            found = Some(c);
            return false;
        }
        err.is_none()
    })?;
    if let Some(e) = err {
        return Err(e);
    }
    Ok(match found {
        Some(c) => EntailOutcome::Refuted(Box::new(c)),
        None => EntailOutcome::Holds { models_checked: checked },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_sentence;
    use crate::signature::SignatureDesc;

    fn sig_pq() -> SignatureDesc {
        SignatureDesc {
            props: ["p".into(), "q".into()].into(),
            ..Default::default()
        }
    }

    #[test]
    fn modus_ponens_holds_locally() {
        let sig = sig_pq();
        let hyps = vec![
            parse_sentence(LogicId::Mpl, &sig, "p").unwrap(),
            parse_sentence(LogicId::Mpl, &sig, "p -> q").unwrap(),
        ];
        let goal = parse_sentence(LogicId::Mpl, &sig, "q").unwrap();
        let out = check_entailment(
            LogicId::Mpl,
            &sig,
            EntailMode::Local,
            &hyps,
            &goal,
            SizeBounds::new(2, 1).unwrap(),
            100_000,
        )
        .unwrap();
        assert!(matches!(out, EntailOutcome::Holds { .. }));
    }

    #[test]
    fn necessitation_gap_between_modes() {
        // p |= [] p holds globally but fails locally.
        let sig = sig_pq();
        let hyps = vec![parse_sentence(LogicId::Mpl, &sig, "p").unwrap()];
        let goal = parse_sentence(LogicId::Mpl, &sig, "[] p").unwrap();
        let global = check_entailment(
            LogicId::Mpl,
            &sig,
            EntailMode::Global,
            &hyps,
            &goal,
            SizeBounds::new(2, 1).unwrap(),
            100_000,
        )
        .unwrap();
        assert!(matches!(global, EntailOutcome::Holds { .. }));
        let local = check_entailment(
            LogicId::Mpl,
            &sig,
            EntailMode::Local,
            &hyps,
            &goal,
            SizeBounds::new(2, 1).unwrap(),
            100_000,
        )
        .unwrap();
        match local {
            EntailOutcome::Refuted(c) => assert!(c.state.is_some()),
            _ => panic!("expected a counterexample"),
        }
    }

    #[test]
    fn zero_bounds_are_rejected() {
        assert!(SizeBounds::new(0, 1).is_err());
    }
}
