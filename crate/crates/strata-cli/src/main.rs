//! Command-line front end: model checking, bounded entailment, filtered
//! product construction, law-verification suites, and sentence parsing.
//!
//! Exit codes: 0 on success, 1 when a check finds a counterexample or a
//! suite reports violations, 2 on usage or input errors.

use clap::{Args, Parser, Subcommand};
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use strata::entail::{check_entailment, EntailMode, EntailOutcome};
use strata::enumerate::SizeBounds;
use strata::eval::{satisfies, satisfies_global};
use strata::files;
use strata::filter::parse_filter_literal;
use strata::logic::{LogicId, ALL_LOGICS};
use strata::model::State;
use strata::parse::{parse_sentence, render_sentence};
use strata::product::filtered_product;
use strata::signature::SignatureDesc;
use strata::verify::{
    run_iso_suite, run_laws_suite, run_los_suite, run_satcond_suite, SuiteConfig, SuiteReport,
};

#[derive(Parser)]
#[command(
    name = "strata",
    about = "State-parameterized satisfaction, filtered products, and law verification \
             for a family of modal, hybrid, and first-order logics",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SigArgs {
    /// Logic instance (mpl, mplt, mpls4, mpls5, mmpl, hpl, mhpl, mfol,
    /// hhpl, ofol, mofol, hofol, hmofol)
    #[arg(long)]
    logic: LogicId,
    /// Signature file (JSON)
    #[arg(long)]
    sig: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a sentence in a model at one state
    Check {
        #[command(flatten)]
        sig: SigArgs,
        /// Model file (JSON)
        #[arg(long)]
        model: PathBuf,
        /// State: a world id, or `x=0,y=1` for valuation-stratified logics
        #[arg(long)]
        world: String,
        sentence: String,
    },
    /// Evaluate a sentence in a model at every state
    Global {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        model: PathBuf,
        sentence: String,
    },
    /// Exhaustive bounded entailment check
    Entail {
        #[command(flatten)]
        sig: SigArgs,
        /// local: premises and conclusion at the same state; global:
        /// premises and conclusion at every state
        #[arg(long, value_parser = ["local", "global"])]
        mode: String,
        /// Premise file: a JSON array of sentence strings
        #[arg(long)]
        hyp: PathBuf,
        /// Conclusion sentence
        #[arg(long)]
        goal: String,
        #[arg(long, default_value_t = 2)]
        max_worlds: usize,
        #[arg(long, default_value_t = 2)]
        max_carrier: usize,
        /// Maximum number of models to examine
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Write the counterexample model here on failure
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Construct a filtered product of models
    Product {
        #[command(flatten)]
        sig: SigArgs,
        /// Filter literal: semicolon-separated member sets, e.g.
        /// "{1,2};{1,2,3}" (closed upward automatically)
        #[arg(long)]
        filter: String,
        /// Model files, one per index element in ascending order
        #[arg(long, num_args = 1..)]
        models: Vec<PathBuf>,
        /// Output file for the product model
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Run a law-verification suite
    Verify {
        /// Suite: los, satcond, laws, or iso
        #[arg(long, value_parser = ["los", "satcond", "laws", "iso"])]
        suite: String,
        /// Logic to verify; omitted = all logics
        #[arg(long)]
        logic: Option<LogicId>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        budget: u64,
        /// Replay a single case by index
        #[arg(long)]
        case: Option<u64>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        max_worlds: usize,
        #[arg(long, default_value_t = 2)]
        max_carrier: usize,
        #[arg(long, default_value_t = 3)]
        max_index: usize,
        /// Also write the reports as JSON to this file
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Parse a sentence and print its canonical rendering
    Parse {
        /// Logic instance
        #[arg(long)]
        logic: LogicId,
        /// Signature file; without it, a signature is inferred from the
        /// sentence (propositional-family logics only)
        #[arg(long)]
        sig: Option<PathBuf>,
        sentence: String,
    },
}

fn load_sig(args: &SigArgs) -> strata::Result<SignatureDesc> {
    files::load_signature(args.logic, &args.sig)
}

/// Best-effort signature inference for `parse` without `--sig`: bare
/// identifiers become propositions, `@`/`nom` operands become nominals, and
/// polyadic modality tokens declare modalities with their observed arity.
fn infer_signature(logic: LogicId, text: &str) -> strata::Result<SignatureDesc> {
    if logic.has_fol() {
        return Err(strata::Error::Parse {
            pos: 0,
            msg: format!(
                "signature inference is not supported for first-order logic {logic}; pass --sig"
            ),
        });
    }
    let mut sig = SignatureDesc::default();
    let chars: Vec<char> = text.chars().collect();
    let mut bound: BTreeSet<String> = BTreeSet::new();
    let mut props: BTreeSet<String> = BTreeSet::new();
    let mut i = 0usize;
    let read_id = |chars: &[char], mut j: usize| -> Option<(String, u8, usize)> {
        if j >= chars.len() || !chars[j].is_ascii_alphabetic() {
            return None;
        }
        let start = j;
        while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
            j += 1;
        }
        let name: String = chars[start..j].iter().collect();
        let mut layer = 1u8;
        if j + 1 < chars.len() && chars[j] == '^' && (chars[j + 1] == '0' || chars[j + 1] == '1') {
            layer = if chars[j + 1] == '0' { 0 } else { 1 };
            j += 2;
        }
        Some((name, layer, j))
    };
    let count_args = |chars: &[char], mut j: usize| -> usize {
        // j points at '('; count top-level commas.
        let mut depth = 0usize;
        let mut commas = 0usize;
        while j < chars.len() {
            match chars[j] {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        break;
                    }
                }
                ',' if depth == 1 => commas += 1,
                _ => {}
            }
            j += 1;
        }
        commas + 1
    };
    let skip_ws = |chars: &[char], mut j: usize| -> usize {
        while j < chars.len() && chars[j].is_whitespace() {
            j += 1;
        }
        j
    };
    let note_nominal = |sig: &mut SignatureDesc, name: String, layer: u8| {
        if logic.is_double_layered() && layer == 1 {
            sig.outer_nominals.insert(name);
        } else {
            sig.nominals.insert(name);
        }
    };
    while i < chars.len() {
        let c = chars[i];
        if (c == '<' || c == '[') && i + 1 < chars.len() && chars[i + 1].is_ascii_alphabetic() {
            if let Some((name, _, j)) = read_id(&chars, i + 1) {
                let close = if c == '<' { '>' } else { ']' };
                if j < chars.len() && chars[j] == close {
                    let k = skip_ws(&chars, j + 1);
                    if k < chars.len() && chars[k] == '(' {
                        let arity = count_args(&chars, k);
                        sig.modalities.insert(name, arity);
                        i = k + 1;
                        continue;
                    }
                }
            }
            i += 1;
            continue;
        }
        if c == '@' {
            let j = skip_ws(&chars, i + 1);
            if let Some((name, layer, k)) = read_id(&chars, j) {
                if !bound.contains(&name) {
                    note_nominal(&mut sig, name, layer);
                }
                i = k;
                continue;
            }
        }
        if let Some((name, _layer, j)) = read_id(&chars, i) {
            match name.as_str() {
                "nom" => {
                    let k = skip_ws(&chars, j);
                    if let Some((n2, l2, k2)) = read_id(&chars, k) {
                        if !bound.contains(&n2) {
                            note_nominal(&mut sig, n2, l2);
                        }
                        i = k2;
                        continue;
                    }
                }
                "exists" | "forall" => {
                    let k = skip_ws(&chars, j);
                    if let Some((n2, _, k2)) = read_id(&chars, k) {
                        bound.insert(n2);
                        i = k2;
                        continue;
                    }
                }
                _ => {
                    props.insert(name);
                }
            }
            i = j;
            continue;
        }
        i += 1;
    }
    for p in props {
        if !bound.contains(&p) && !sig.nominals.contains(&p) && !sig.outer_nominals.contains(&p) {
            sig.props.insert(p);
        }
    }
    Ok(sig)
}

fn run() -> Result<u8, strata::Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { sig, model, world, sentence } => {
            let s = load_sig(&sig)?;
            let m = files::load_model(sig.logic, &s, &model)?;
            let state = State::parse(sig.logic, &world)?;
            let rho = parse_sentence(sig.logic, &s, &sentence)?;
            let v = satisfies(sig.logic, &s, &m, &state, &rho)?;
            println!("{v}");
            Ok(0)
        }
        Command::Global { sig, model, sentence } => {
            let s = load_sig(&sig)?;
            let m = files::load_model(sig.logic, &s, &model)?;
            let rho = parse_sentence(sig.logic, &s, &sentence)?;
            let v = satisfies_global(sig.logic, &s, &m, &rho)?;
            println!("{v}");
            Ok(0)
        }
        Command::Entail {
            sig,
            mode,
            hyp,
            goal,
            max_worlds,
            max_carrier,
            budget,
            out,
        } => {
            let s = load_sig(&sig)?;
            let hyps = files::load_sentences(sig.logic, &s, &hyp)?;
            let rho = parse_sentence(sig.logic, &s, &goal)?;
            let bounds = SizeBounds::new(max_worlds, max_carrier)?;
            let m = if mode == "local" { EntailMode::Local } else { EntailMode::Global };
            match check_entailment(sig.logic, &s, m, &hyps, &rho, bounds, budget)? {
                EntailOutcome::Holds { models_checked } => {
                    println!("entailed ({models_checked} models checked)");
                    Ok(0)
                }
                EntailOutcome::Refuted(c) => {
                    match &c.state {
                        Some(w) => println!("not entailed: counterexample at state `{w}`"),
                        None => println!("not entailed: counterexample model"),
                    }
                    match &out {
                        Some(p) => {
                            files::save_model(&c.model, p)?;
                            println!("counterexample model written to {}", p.display());
                        }
                        None => {
                            println!("{}", serde_json::to_string_pretty(&c.model)?);
                        }
                    }
                    Ok(1)
                }
            }
        }
        Command::Product { sig, filter, models, out } => {
            let s = load_sig(&sig)?;
            let f = parse_filter_literal(&filter)?;
            let family: Vec<_> = models
                .iter()
                .map(|p| files::load_model(sig.logic, &s, p))
                .collect::<Result<_, _>>()?;
            let pr = filtered_product(sig.logic, &s, &f, &family)?;
            files::save_model(&pr.model, &out)?;
            println!(
                "filtered product over minimal member {:?} written to {}",
                pr.j_min,
                out.display()
            );
            println!("state map (member -> product state -> factor states):");
            for (jvec, decode) in &pr.state_decodes {
                let cmap = &pr.colimit_maps[jvec];
                for (k, parts) in decode {
                    let w = &cmap[k];
                    let parts: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                    println!("  J={jvec:?}  {k} -> {w}  [{}]", parts.join(" | "));
                }
            }
            Ok(0)
        }
        Command::Verify {
            suite,
            logic,
            seed,
            budget,
            case,
            depth,
            max_worlds,
            max_carrier,
            max_index,
            json,
        } => {
            let logics: Vec<LogicId> = match logic {
                Some(l) => vec![l],
                None => ALL_LOGICS.to_vec(),
            };
            let mut reports: Vec<SuiteReport> = Vec::new();
            for l in logics {
                let mut config = SuiteConfig::new(l, seed, budget);
                config.depth = depth;
                config.max_worlds = max_worlds;
                config.max_carrier = max_carrier;
                config.max_index = max_index;
                config.only_case = case;
                let report = match suite.as_str() {
                    "los" => run_los_suite(&config)?,
                    "satcond" => run_satcond_suite(&config)?,
                    "laws" => run_laws_suite(&config)?,
                    "iso" => run_iso_suite(&config)?,
                    _ => unreachable!("clap enforces the suite list"),
                };
                print!("{}", report.render_text());
                reports.push(report);
            }
            if let Some(p) = &json {
                files::save_json(&reports, p)?;
            }
            Ok(if reports.iter().all(SuiteReport::passed) { 0 } else { 1 })
        }
        Command::Parse { logic, sig, sentence } => {
            let s = match &sig {
                Some(p) => files::load_signature(logic, p)?,
                None => infer_signature(logic, &sentence)?,
            };
            let ast = parse_sentence(logic, &s, &sentence)?;
            println!("{}", render_sentence(&ast));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
