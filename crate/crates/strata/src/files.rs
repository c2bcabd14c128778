//! JSON file I/O for signatures, models, sentence lists, and reports.
//!
//! # Format reference
//!
//! **Signature file** — a JSON object with optional fields (all collections
//! default to empty):
//!
//! ```json
//! {
//!   "props": ["p", "q"],
//!   "nominals": ["i"],
//!   "outer_nominals": ["j"],
//!   "modalities": {"l": 2},
//!   "funcs": {"c": 0, "f": 1},
//!   "preds": {"r": 1},
//!   "vars": ["x"]
//! }
//! ```
//!
//! **Model file** — either a Kripke model:
//!
//! ```json
//! {
//!   "Kripke": {
//!     "frame": {
//!       "worlds": ["0", "1"],
//!       "relations": {"lambda": [["0", "1"]]},
//!       "nominal_interp": {"i": "1"}
//!     },
//!     "assignment": {
//!       "0": {"Props": []},
//!       "1": {"Props": ["p"]}
//!     }
//!   }
//! }
//! ```
//!
//! where each world's base is `{"Props": [...]}`, `{"Fol": {...}}`, or
//! `{"Inner": {...Kripke model...}}` for the double-layered logic; or a
//! first-order model:
//!
//! ```json
//! {
//!   "Fol": {
//!     "carrier": ["0", "1"],
//!     "funcs": {"c": [{"args": [], "value": "0"}]},
//!     "preds": {"r": [["1"]]}
//!   }
//! }
//! ```
//!
//! **Sentence list file** — a JSON array of sentence strings in the surface
//! grammar, e.g. `["p", "p -> q"]`.
//!
//! Loads are validated: a file that parses as JSON but violates the logic's
//! model conditions is rejected with the violations listed.

use crate::error::{Error, Result};
use crate::logic::LogicId;
use crate::model::{validate_model, Model};
use crate::parse::parse_sentence;
use crate::sentence::Sentence;
use crate::signature::{validate_signature, SignatureDesc};
use serde::de::DeserializeOwned;
use serde::Serialize;
use std::path::Path;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    let mut de = serde_json::Deserializer::from_str(&text);
    serde_path_to_error::deserialize(&mut de).map_err(|e| Error::Schema {
        path: path.display().to_string(),
        msg: format!("at {}: {}", e.path(), e.inner()),
    })
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    std::fs::write(path, text)?;
    Ok(())
}

/// Loads and validates a signature file.
pub fn load_signature(logic: LogicId, path: &Path) -> Result<SignatureDesc> {
    let sig: SignatureDesc = read_json(path)?;
    validate_signature(logic, &sig).map_err(|e| Error::Schema {
        path: path.display().to_string(),
        msg: e.to_string(),
    })?;
    Ok(sig)
}

/// Writes a signature file.
pub fn save_signature(sig: &SignatureDesc, path: &Path) -> Result<()> {
    write_json(sig, path)
}

/// Loads a model file and validates it against the logic and signature.
pub fn load_model(logic: LogicId, sig: &SignatureDesc, path: &Path) -> Result<Model> {
    let model: Model = read_json(path)?;
    let violations = validate_model(logic, sig, &model, None);
    if !violations.is_empty() {
        return Err(Error::Schema {
            path: path.display().to_string(),
            msg: violations.join("; "),
        });
    }
    Ok(model)
}

/// Writes a model file.
pub fn save_model(model: &Model, path: &Path) -> Result<()> {
    write_json(model, path)
}

/// Loads a sentence-list file (a JSON array of sentence strings), parsing
/// and checking each sentence.
pub fn load_sentences(logic: LogicId, sig: &SignatureDesc, path: &Path) -> Result<Vec<Sentence>> {
    let texts: Vec<String> = read_json(path)?;
    texts
        .iter()
        .map(|t| {
            parse_sentence(logic, sig, t).map_err(|e| Error::Schema {
                path: path.display().to_string(),
                msg: format!("sentence `{t}`: {e}"),
            })
        })
        .collect()
}

/// Writes any serializable report as pretty JSON.
pub fn save_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    write_json(value, path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::{k1, mpl_sig_pq};
    use crate::model::{FolModel, Frame, KripkeModel, WorldBase};
    use std::collections::BTreeSet;

    #[test]
    fn kripke_model_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("k1.json");
        let m = k1();
        save_model(&m, &p).unwrap();
        let back = load_model(LogicId::Mpl, &mpl_sig_pq(), &p).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn fol_model_round_trips_with_function_tables() {
        let sig = SignatureDesc {
            funcs: [("c".into(), 0usize), ("f".into(), 1usize)].into(),
            preds: [("r".into(), 1usize)].into(),
            vars: ["x".into()].into(),
            ..Default::default()
        };
        let m = Model::Fol(FolModel {
            carrier: ["0".into(), "1".into()].into(),
            funcs: [
                ("c".into(), [(vec![], "0".to_string())].into()),
                (
                    "f".into(),
                    [
                        (vec!["0".to_string()], "1".to_string()),
                        (vec!["1".to_string()], "1".to_string()),
                    ]
                    .into(),
                ),
            ]
            .into(),
            preds: [("r".into(), BTreeSet::from([vec!["1".to_string()]]))].into(),
        });
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.json");
        save_model(&m, &p).unwrap();
        let back = load_model(LogicId::Ofol, &sig, &p).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn double_layered_model_round_trips() {
        let sig = SignatureDesc {
            props: ["p".into()].into(),
            nominals: ["i".into()].into(),
            outer_nominals: ["j".into()].into(),
            ..Default::default()
        };
        let inner = |p_at_a: bool| KripkeModel {
            frame: Frame {
                worlds: ["a".into()].into(),
                relations: [(crate::signature::DIST_MOD.to_string(), BTreeSet::new())].into(),
                nominal_interp: [("i".to_string(), "a".to_string())].into(),
            },
            assignment: [(
                "a".to_string(),
                WorldBase::Props(if p_at_a { ["p".to_string()].into() } else { [].into() }),
            )]
            .into(),
        };
        let m = Model::Kripke(KripkeModel {
            frame: Frame {
                worlds: ["u".into(), "v".into()].into(),
                relations: [(
                    crate::signature::DIST_MOD.to_string(),
                    [vec!["u".to_string(), "v".to_string()]].into(),
                )]
                .into(),
                nominal_interp: [("j".to_string(), "u".to_string())].into(),
            },
            assignment: [
                ("u".to_string(), WorldBase::Inner(inner(true))),
                ("v".to_string(), WorldBase::Inner(inner(false))),
            ]
            .into(),
        });
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("h.json");
        save_model(&m, &p).unwrap();
        let back = load_model(LogicId::Hhpl, &sig, &p).unwrap();
        assert_eq!(m, back);
    }

    #[test]
    fn unknown_world_in_tuple_is_a_schema_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.json");
        let mut m = match k1() {
            Model::Kripke(k) => k,
            _ => unreachable!(),
        };
        m.frame
            .relations
            .get_mut(crate::signature::DIST_MOD)
            .unwrap()
            .insert(vec!["0".to_string(), "ghost".to_string()]);
        save_model(&Model::Kripke(m), &p).unwrap();
        let err = load_model(LogicId::Mpl, &mpl_sig_pq(), &p).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("ghost"), "error should name the tuple: {msg}");
    }

    #[test]
    fn malformed_json_reports_a_path() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.json");
        std::fs::write(&p, r#"{"Kripke": {"frame": {"worlds": 3}}}"#).unwrap();
        let err = load_model(LogicId::Mpl, &mpl_sig_pq(), &p).unwrap_err();
        assert!(err.to_string().contains("Kripke.frame.worlds"), "{err}");
    }

    #[test]
    fn sentence_list_loads() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("hyp.json");
        std::fs::write(&p, r#"["p", "p -> q"]"#).unwrap();
        let hyps = load_sentences(LogicId::Mpl, &mpl_sig_pq(), &p).unwrap();
        assert_eq!(hyps.len(), 2);
    }
}
