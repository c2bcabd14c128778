//! Connective-law suite: derived connectives against their defining
//! combinations, modality and nominal clauses against the frame/nominal
//! extractions, quantifiers against explicit expansion enumeration, and the
//! every-state conjunction law of global satisfaction.

use super::{repro_cmd, SuiteConfig, SuiteReport};
use crate::enumerate::{
    enumerate_open_sentences, enumerate_sentences, model_space, SizeBounds,
};
use crate::error::Result;
use crate::eval::{satisfies_global, satisfies_unchecked};
use crate::expand::{enumerate_expansions, ExpansionKind, ExpansionSpec};
use crate::extract::{extract_frame, extract_nominals};
use crate::gen::minimal_signature;
use crate::logic::{capabilities, LogicId};
use crate::model::{ensure_valid, stratification, validate_model, Model, State};
use crate::parse::render_sentence;
use crate::sentence::{Layer, Sentence};
use crate::signature::SignatureDesc;
use std::time::Instant;

/// Picks up to `n` elements spread evenly across a slice.
fn spread<T: Clone>(items: &[T], n: usize) -> Vec<T> {
    if items.len() <= n || n == 0 {
        return items.to_vec();
    }
    (0..n)
        .map(|i| items[i * items.len() / n].clone())
        .collect()
}

struct LawRunner<'a> {
    logic: LogicId,
    sig: &'a SignatureDesc,
    config: &'a SuiteConfig,
    case: u64,
    report: &'a mut SuiteReport,
}

impl<'a> LawRunner<'a> {
    fn equiv(
        &mut self,
        model: &Model,
        states: &[State],
        lhs: &Sentence,
        rhs: &Sentence,
        law: &str,
    ) -> Result<()> {
        for w in states {
            let a = satisfies_unchecked(self.logic, self.sig, model, w, lhs)?;
            let b = satisfies_unchecked(self.logic, self.sig, model, w, rhs)?;
            self.report.checks += 1;
            if a != b {
                self.report.violate(
                    format!("case {} ({law})", self.case),
                    format!(
                        "{} is {a} but {} is {b} at state `{w}`",
                        render_sentence(lhs),
                        render_sentence(rhs)
                    ),
                    repro_cmd("laws", self.config, self.case),
                );
            }
        }
        Ok(())
    }

    fn expect(
        &mut self,
        model: &Model,
        w: &State,
        s: &Sentence,
        expected: bool,
        law: &str,
    ) -> Result<()> {
        let got = satisfies_unchecked(self.logic, self.sig, model, w, s)?;
        self.report.checks += 1;
        if got != expected {
            self.report.violate(
                format!("case {} ({law})", self.case),
                format!(
                    "{} evaluates to {got} at `{w}` but the defining clause gives {expected}",
                    render_sentence(s)
                ),
                repro_cmd("laws", self.config, self.case),
            );
        }
        Ok(())
    }
}

fn not(s: &Sentence) -> Sentence {
    Sentence::not(s.clone())
}

fn term_var_to_const(t: &crate::sentence::Term, x: &str) -> crate::sentence::Term {
    use crate::sentence::Term;
    match t {
        Term::Var(v) if v == x => Term::App(x.to_string(), Vec::new()),
        Term::Var(_) => t.clone(),
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter().map(|a| term_var_to_const(a, x)).collect(),
        ),
    }
}

/// Rewrites occurrences of the bound variable as a nullary function
/// application, for evaluating quantifier bodies in expansions where the
/// fresh symbol is a world-shared constant rather than a variable.
fn var_to_const(s: &Sentence, x: &str) -> Sentence {
    match s {
        Sentence::FolAtom(p, args) => Sentence::FolAtom(
            p.clone(),
            args.iter().map(|a| term_var_to_const(a, x)).collect(),
        ),
        Sentence::Not(a) => Sentence::Not(Box::new(var_to_const(a, x))),
        Sentence::And(a, b) => Sentence::And(
            Box::new(var_to_const(a, x)),
            Box::new(var_to_const(b, x)),
        ),
        Sentence::Or(a, b) => Sentence::Or(
            Box::new(var_to_const(a, x)),
            Box::new(var_to_const(b, x)),
        ),
        Sentence::Implies(a, b) => Sentence::Implies(
            Box::new(var_to_const(a, x)),
            Box::new(var_to_const(b, x)),
        ),
        Sentence::Dia(l, a) => Sentence::Dia(*l, Box::new(var_to_const(a, x))),
        Sentence::BoxM(l, a) => Sentence::BoxM(*l, Box::new(var_to_const(a, x))),
        Sentence::PolyDia(l, args) => {
            Sentence::PolyDia(l.clone(), args.iter().map(|a| var_to_const(a, x)).collect())
        }
        Sentence::PolyBox(l, args) => {
            Sentence::PolyBox(l.clone(), args.iter().map(|a| var_to_const(a, x)).collect())
        }
        Sentence::At(l, i, a) => Sentence::At(*l, i.clone(), Box::new(var_to_const(a, x))),
        Sentence::ExistsVar(v, a) => {
            Sentence::ExistsVar(v.clone(), Box::new(var_to_const(a, x)))
        }
        Sentence::ForallVar(v, a) => {
            Sentence::ForallVar(v.clone(), Box::new(var_to_const(a, x)))
        }
        Sentence::ExistsNom(l, i, a) => {
            Sentence::ExistsNom(*l, i.clone(), Box::new(var_to_const(a, x)))
        }
        Sentence::ForallNom(l, i, a) => {
            Sentence::ForallNom(*l, i.clone(), Box::new(var_to_const(a, x)))
        }
        Sentence::Prop(_) | Sentence::Nom(_, _) => s.clone(),
    }
}

/// Checks every law on the given models: duality of `∨`, `→`, `∀` and the
/// necessity modalities; the modality/nominal/`@` clauses against the
/// extractions; existential quantifiers against expansion enumeration; and
/// distribution of global satisfaction over conjunction.
pub fn check_connective_laws(
    logic: LogicId,
    sig: &SignatureDesc,
    models: &[Model],
    config: &SuiteConfig,
    first_case: u64,
) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut report = SuiteReport::new("laws", config);
    let caps = capabilities(logic);
    let depth = config.depth.min(2);
    let all = enumerate_sentences(logic, sig, depth);
    let lhs_pool = spread(&all, 18);
    let rhs_pool = spread(&all, 5);
    let var_bodies: Vec<Sentence> = if caps.exists_var {
        spread(
            &enumerate_open_sentences(logic, sig, 1, &["q0".into()], &[]),
            8,
        )
    } else {
        Vec::new()
    };
    let nom_layers: Vec<Layer> = if caps.exists_nom {
        if logic.is_double_layered() {
            vec![0, 1]
        } else {
            vec![1]
        }
    } else {
        Vec::new()
    };
    let nom_bodies: Vec<(Layer, Vec<Sentence>)> = nom_layers
        .iter()
        .map(|layer| {
            (
                *layer,
                spread(
                    &enumerate_open_sentences(logic, sig, 1, &[], &[(*layer, "q0".into())]),
                    6,
                ),
            )
        })
        .collect();

    for (mi, model) in models.iter().enumerate() {
        ensure_valid(logic, sig, model)?;
        let case = first_case + mi as u64;
        if !config.runs(case) {
            continue;
        }
        let states = stratification(logic, sig, model)?;
        let mut r = LawRunner { logic, sig, config, case, report: &mut report };
        r.report.cases += 1;

        // Derived connectives against their defining combinations, and the
        // definitional clause of conjunction and negation.
        for rho1 in &lhs_pool {
            for rho2 in &rhs_pool {
                r.equiv(
                    model,
                    &states,
                    &Sentence::or(rho1.clone(), rho2.clone()),
                    &not(&Sentence::and(not(rho1), not(rho2))),
                    "disjunction duality",
                )?;
                r.equiv(
                    model,
                    &states,
                    &Sentence::implies(rho1.clone(), rho2.clone()),
                    &Sentence::or(not(rho1), rho2.clone()),
                    "implication as disjunction",
                )?;
            }
            for w in &states {
                let a = satisfies_unchecked(logic, sig, model, w, rho1)?;
                r.expect(model, w, &not(rho1), !a, "negation clause")?;
                let b = satisfies_unchecked(logic, sig, model, w, &rhs_pool[0])?;
                r.expect(
                    model,
                    w,
                    &Sentence::and(rho1.clone(), rhs_pool[0].clone()),
                    a && b,
                    "conjunction clause",
                )?;
            }
        }

        // Necessity as negated possibility. The double-layered logic is
        // checked at its outer layer; inner-layer modalities evaluated from
        // outer position quantify over inner worlds and are not dual.
        if logic.has_unary_modality() {
            for rho in &lhs_pool {
                r.equiv(
                    model,
                    &states,
                    &Sentence::BoxM(1, Box::new(rho.clone())),
                    &not(&Sentence::Dia(1, Box::new(not(rho)))),
                    "necessity duality",
                )?;
            }
        }
        let poly_fams: Vec<(String, usize)> = if logic.has_signature_modalities() {
            sig.modalities.iter().map(|(l, n)| (l.clone(), *n)).collect()
        } else if logic.has_predicate_modalities() {
            sig.preds
                .iter()
                .filter(|(_, n)| **n >= 2)
                .map(|(p, n)| (p.clone(), n - 1))
                .collect()
        } else {
            Vec::new()
        };
        for (lam, n) in &poly_fams {
            for rho in spread(&lhs_pool, 8) {
                let mut args = vec![rho.clone()];
                args.extend(std::iter::repeat(rhs_pool[0].clone()).take(n - 1));
                let neg_args: Vec<Sentence> = args.iter().map(not).collect();
                r.equiv(
                    model,
                    &states,
                    &Sentence::PolyBox(lam.clone(), args.clone()),
                    &not(&Sentence::PolyDia(lam.clone(), neg_args)),
                    "polyadic necessity duality",
                )?;
            }
        }

        // Possibility clause against the frame extraction.
        let frame_ok = logic.has_unary_modality()
            || logic.has_signature_modalities()
            || logic.has_predicate_modalities();
        if frame_ok {
            let fr = extract_frame(logic, sig, model)?;
            let arity_of = |lam: &str| -> usize {
                poly_fams
                    .iter()
                    .find(|(l, _)| l == lam)
                    .map(|(_, n)| *n)
                    .unwrap_or(1)
            };
            for (lam, rel) in &fr.relations {
                let n = arity_of(lam);
                for rho in spread(&lhs_pool, 6) {
                    let mut args = vec![rho.clone()];
                    args.extend(std::iter::repeat(rhs_pool[0].clone()).take(n - 1));
                    let dia = if logic.has_unary_modality() {
                        Sentence::Dia(1, Box::new(args[0].clone()))
                    } else {
                        Sentence::PolyDia(lam.clone(), args.clone())
                    };
                    for w in &states {
                        let mut expected = false;
                        for tuple in rel {
                            if tuple[0] != w.to_string() {
                                continue;
                            }
                            let mut all = true;
                            for (i, arg) in args.iter().enumerate() {
                                let v = State::parse(logic, &tuple[i + 1])?;
                                if !satisfies_unchecked(logic, sig, model, &v, arg)? {
                                    all = false;
                                    break;
                                }
                            }
                            if all {
                                expected = true;
                                break;
                            }
                        }
                        r.expect(model, w, &dia, expected, "possibility clause")?;
                    }
                }
            }
        }

        // Nominal and @ clauses against the nominals extraction. The
        // double-layered logic's extraction names outer worlds only.
        if logic.has_frame_nominals() || logic.has_constant_nominals() {
            let nm = extract_nominals(logic, sig, model)?;
            for (i, target) in &nm.constants {
                let layer = 1;
                let named = State::parse(logic, target)?;
                for w in &states {
                    r.expect(
                        model,
                        w,
                        &Sentence::Nom(layer, i.clone()),
                        w.to_string() == *target,
                        "nominal clause",
                    )?;
                }
                if caps.at {
                    for rho in spread(&lhs_pool, 4) {
                        let at = Sentence::At(layer, i.clone(), Box::new(rho.clone()));
                        let expected = satisfies_unchecked(logic, sig, model, &named, &rho)?;
                        for w in &states {
                            r.expect(model, w, &at, expected, "at clause")?;
                        }
                    }
                }
            }
        }

        // Universal quantifiers as negated existentials, and existentials
        // against explicit expansion enumeration.
        for body in &var_bodies {
            r.equiv(
                model,
                &states,
                &Sentence::ForallVar("q0".into(), Box::new(body.clone())),
                &not(&Sentence::ExistsVar("q0".into(), Box::new(not(body)))),
                "universal quantifier duality",
            )?;
        }
        for (layer, bodies) in &nom_bodies {
            for body in bodies {
                r.equiv(
                    model,
                    &states,
                    &Sentence::ForallNom(*layer, "q0".into(), Box::new(body.clone())),
                    &not(&Sentence::ExistsNom(*layer, "q0".into(), Box::new(not(body)))),
                    "nominal quantifier duality",
                )?;
            }
        }
        let mut expansion_cases: Vec<(ExpansionKind, Sentence)> = Vec::new();
        for body in spread(&var_bodies, 3) {
            expansion_cases.push((
                ExpansionKind::Var("q0".into()),
                Sentence::ExistsVar("q0".into(), Box::new(body.clone())),
            ));
        }
        for (layer, bodies) in &nom_bodies {
            for body in spread(bodies, 3) {
                expansion_cases.push((
                    ExpansionKind::Nom(*layer, "q0".into()),
                    Sentence::ExistsNom(*layer, "q0".into(), Box::new(body.clone())),
                ));
            }
        }
        for (kind, ex_sentence) in &expansion_cases {
            let raw_body = match ex_sentence {
                Sentence::ExistsVar(_, b) | Sentence::ExistsNom(_, _, b) => b.as_ref(),
                _ => unreachable!(),
            };
            // A variable expansion of a world-sharing first-order model
            // interprets the fresh symbol as a constant.
            let body = if matches!(kind, ExpansionKind::Var(_)) && !logic.is_valuation_stratified()
            {
                var_to_const(raw_body, "q0")
            } else {
                raw_body.clone()
            };
            let body = &body;
            let (sig2, expansions) = enumerate_expansions(
                logic,
                &ExpansionSpec {
                    sig: sig.clone(),
                    base: model.clone(),
                    kind: kind.clone(),
                },
            )?;
            for w in &states {
                let mut expected = false;
                'outer: for m2 in &expansions {
                    for w2 in stratification(logic, &sig2, m2)? {
                        let matches = match (&w2, w) {
                            (State::World(a), State::World(b)) => a == b,
                            (State::Valuation(v2), State::Valuation(v)) => v
                                .iter()
                                .all(|(x, a)| v2.get(x) == Some(a)),
                            _ => false,
                        };
                        if matches && satisfies_unchecked(logic, &sig2, m2, &w2, body)? {
                            expected = true;
                            break 'outer;
                        }
                    }
                }
                r.expect(model, w, ex_sentence, expected, "existential expansion clause")?;
            }
        }

        // Global satisfaction distributes over conjunction.
        for rho1 in spread(&lhs_pool, 5) {
            let conj = Sentence::and(rho1.clone(), rhs_pool[0].clone());
            let both = satisfies_global(logic, sig, model, &rho1)?
                && satisfies_global(logic, sig, model, &rhs_pool[0])?;
            let got = satisfies_global(logic, sig, model, &conj)?;
            r.report.checks += 1;
            if got != both {
                r.report.violate(
                    format!("case {case} (global conjunction law)"),
                    format!(
                        "global satisfaction of {} is {got}, conjunction of globals is {both}",
                        render_sentence(&conj)
                    ),
                    repro_cmd("laws", config, case),
                );
            }
        }
    }
    report.elapsed_ms = started.elapsed().as_millis();
    Ok(report)
}

/// Samples models evenly across the enumerable model space and runs
/// `check_connective_laws` over them.
pub fn run_laws_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let started = Instant::now();
    let logic = config.logic;
    let sig = minimal_signature(logic);
    let bounds = SizeBounds::new(config.max_worlds, config.max_carrier)?;
    let space = model_space(logic, &sig, bounds)?;
    let total = space.total();
    let target = config.budget.min(40).max(1) as u128;
    let stride = (total / target).max(1);
    let mut models = Vec::new();
    let mut k: u128 = 0;
    while k < total && (models.len() as u128) < target {
        let m = space.decode(k)?;
        k += stride;
        if validate_model(logic, &sig, &m, None).is_empty() {
            models.push(m);
        }
    }
    // Frame-class logics may reject many strided indices; scan forward from
    // the start to fill the quota.
    let mut k2: u128 = 1;
    while (models.len() as u128) < target && k2 < total {
        if k2 % stride != 0 {
            let m = space.decode(k2)?;
            if validate_model(logic, &sig, &m, None).is_empty() && !models.contains(&m) {
                models.push(m);
            }
        }
        k2 += 1;
    }
    let mut report = check_connective_laws(logic, &sig, &models, config, 0)?;
    report.elapsed_ms = started.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_hold_for_a_kripke_and_a_valuation_logic() {
        for logic in [LogicId::Mpl, LogicId::Hofol] {
            let mut config = SuiteConfig::new(logic, 3, 6);
            config.depth = 1;
            let report = run_laws_suite(&config).unwrap();
            assert!(report.passed(), "{}", report.render_text());
            assert!(report.checks > 0);
        }
    }
}
