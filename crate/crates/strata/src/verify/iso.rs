//! Isomorphism-invariance sweep: renaming a model's worlds, carrier, and
//! inner worlds must not change satisfaction at the corresponding state.

use super::{repro_cmd, SuiteConfig, SuiteReport};
use crate::enumerate::SizeBounds;
use crate::error::Result;
use crate::eval::satisfies;
use crate::gen::{case_rng, random_model, random_renaming, random_sentence, random_signature};
use crate::model::{apply_iso, stratification};
use crate::parse::render_sentence;
use rand::seq::SliceRandom;
use std::time::Instant;

/// Runs `budget` random (model, isomorphism, sentence, state) cases.
pub fn run_iso_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let started = Instant::now();
    let mut report = SuiteReport::new("iso", config);
    let logic = config.logic;
    let bounds = SizeBounds::new(config.max_worlds, config.max_carrier)?;
    for case in 0..config.budget {
        if !config.runs(case) {
            continue;
        }
        let mut rng = case_rng(config.seed, case);
        let sig = random_signature(logic, &mut rng);
        let model = random_model(logic, &sig, bounds, &mut rng)?;
        let renaming = random_renaming(&model, &mut rng);
        let rho = random_sentence(logic, &sig, config.depth.min(3), &mut rng);
        let states = stratification(logic, &sig, &model)?;
        let state = states
            .choose(&mut rng)
            .expect("models have at least one state")
            .clone();
        report.cases += 1;
        let image = apply_iso(logic, &sig, &model, &renaming)?;
        let mapped = renaming.apply_state(&state);
        let before = satisfies(logic, &sig, &model, &state, &rho)?;
        let after = satisfies(logic, &sig, &image, &mapped, &rho)?;
        report.checks += 1;
        if before != after {
            report.violate(
                format!("case {case}"),
                format!(
                    "sentence {} : {} at `{state}` before the renaming, {} at `{mapped}` after",
                    render_sentence(&rho),
                    before,
                    after
                ),
                repro_cmd("iso", config, case),
            );
        }
    }
    report.elapsed_ms = started.elapsed().as_millis();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::LogicId;

    #[test]
    fn small_sweeps_are_clean() {
        for logic in [LogicId::MplS5, LogicId::Hhpl, LogicId::Hmofol] {
            let config = SuiteConfig::new(logic, 9, 30);
            let report = run_iso_suite(&config).unwrap();
            assert!(report.passed(), "{}", report.render_text());
            assert_eq!(report.cases, 30);
        }
    }
}
