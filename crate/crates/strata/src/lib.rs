//! A workbench for state-parameterized satisfaction across a family of
//! modal, hybrid and first-order logics, with filtered products over finite
//! index sets and exhaustive small-instance verifiers for the semantic laws
//! relating them.

pub mod entail;
pub mod enumerate;
pub mod error;
pub mod eval;
pub mod expand;
pub mod extract;
pub mod files;
pub mod filter;
pub mod gen;
pub mod hom;
pub mod logic;
pub mod morphism;
pub mod parse;
pub mod power;
pub mod product;
pub mod model;
pub mod sentence;
pub mod signature;
pub mod verify;

pub use error::{Error, Result};
pub use logic::{capabilities, Capabilities, FrameClass, LogicId, ALL_LOGICS};
pub use model::{
    apply_iso, stratification, validate_model, FolModel, Frame, KripkeModel, Model, PointedModel,
    Renaming, State, WorldBase,
};
pub use sentence::{check_sentence, Sentence, Term};
pub use signature::{validate_morphism, validate_signature, SignatureDesc, SignatureMorphism, DIST_MOD};
