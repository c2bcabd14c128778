//! The roster of logic instances and their connective/quantifier capabilities.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Identifies one of the supported logic instances. Every operation in this
/// crate is parameterized by a `LogicId` and rejects signatures, models and
/// sentences belonging to a different instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LogicId {
    /// Modal propositional logic.
    Mpl,
    /// MPL over reflexive frames.
    MplT,
    /// MPL over preorder frames.
    MplS4,
    /// MPL over equivalence frames.
    MplS5,
    /// Multi-modal (polyadic) propositional logic.
    Mmpl,
    /// Hybrid propositional logic (nominals, `@`, nominal quantifiers).
    Hpl,
    /// Multi-modal hybrid propositional logic.
    Mhpl,
    /// First-order modal logic.
    Mfol,
    /// Double-layered hybrid propositional logic.
    Hhpl,
    /// Open first-order logic (states are valuations of a variable block).
    Ofol,
    /// OFOL with predicate-indexed polyadic modalities.
    Mofol,
    /// OFOL with constants acting as nominals.
    Hofol,
    /// The blend of HOFOL and MOFOL.
    Hmofol,
}

/// All thirteen instances, in roster order.
pub const ALL_LOGICS: [LogicId; 13] = [
    LogicId::Mpl,
    LogicId::MplT,
    LogicId::MplS4,
    LogicId::MplS5,
    LogicId::Mmpl,
    LogicId::Hpl,
    LogicId::Mhpl,
    LogicId::Mfol,
    LogicId::Hhpl,
    LogicId::Ofol,
    LogicId::Mofol,
    LogicId::Hofol,
    LogicId::Hmofol,
];

/// Frame classes distinguishing the MPL sub-instances. They share MPL's
/// syntax and semantics and differ only in model validation and enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FrameClass {
    /// Reflexive accessibility.
    Reflexive,
    /// Reflexive and transitive.
    Preorder,
    /// Reflexive, transitive and symmetric.
    Equivalence,
}

impl LogicId {
    pub fn name(self) -> &'static str {
        match self {
            LogicId::Mpl => "mpl",
            LogicId::MplT => "mplt",
            LogicId::MplS4 => "mpls4",
            LogicId::MplS5 => "mpls5",
            LogicId::Mmpl => "mmpl",
            LogicId::Hpl => "hpl",
            LogicId::Mhpl => "mhpl",
            LogicId::Mfol => "mfol",
            LogicId::Hhpl => "hhpl",
            LogicId::Ofol => "ofol",
            LogicId::Mofol => "mofol",
            LogicId::Hofol => "hofol",
            LogicId::Hmofol => "hmofol",
        }
    }

    /// Models are Kripke structures; states are (outer) worlds.
    pub fn is_kripke(self) -> bool {
        !self.is_valuation_stratified()
    }

    /// Models are plain first-order models; states are valuations of the
    /// signature's variable block.
    pub fn is_valuation_stratified(self) -> bool {
        matches!(self, LogicId::Ofol | LogicId::Mofol | LogicId::Hofol | LogicId::Hmofol)
    }

    /// Frame restriction applied during model validation, if any.
    pub fn frame_class(self) -> Option<FrameClass> {
        match self {
            LogicId::MplT => Some(FrameClass::Reflexive),
            LogicId::MplS4 => Some(FrameClass::Preorder),
            LogicId::MplS5 => Some(FrameClass::Equivalence),
            _ => None,
        }
    }

    /// Signature carries a propositional symbol set.
    pub fn has_props(self) -> bool {
        matches!(
            self,
            LogicId::Mpl
                | LogicId::MplT
                | LogicId::MplS4
                | LogicId::MplS5
                | LogicId::Mmpl
                | LogicId::Hpl
                | LogicId::Mhpl
                | LogicId::Hhpl
        )
    }

    /// Signature carries function/predicate families.
    pub fn has_fol(self) -> bool {
        matches!(self, LogicId::Mfol) || self.is_valuation_stratified()
    }

    /// Sentences may use the distinguished unary `<>` / `[]`.
    pub fn has_unary_modality(self) -> bool {
        matches!(
            self,
            LogicId::Mpl
                | LogicId::MplT
                | LogicId::MplS4
                | LogicId::MplS5
                | LogicId::Hpl
                | LogicId::Mfol
                | LogicId::Hhpl
        )
    }

    /// Signature carries an arity-indexed modality family.
    pub fn has_signature_modalities(self) -> bool {
        matches!(self, LogicId::Mmpl | LogicId::Mhpl)
    }

    /// Polyadic modalities are the signature's predicates of arity >= 2,
    /// interpreted over the power model.
    pub fn has_predicate_modalities(self) -> bool {
        matches!(self, LogicId::Mofol | LogicId::Hmofol)
    }

    /// Signature carries nominal symbols interpreted in the frame.
    pub fn has_frame_nominals(self) -> bool {
        matches!(self, LogicId::Hpl | LogicId::Mhpl | LogicId::Hhpl)
    }

    /// Constants of the signature act as nominals.
    pub fn has_constant_nominals(self) -> bool {
        matches!(self, LogicId::Hofol | LogicId::Hmofol)
    }

    /// Two hybridization layers (HHPL only).
    pub fn is_double_layered(self) -> bool {
        matches!(self, LogicId::Hhpl)
    }

    /// First-order variable quantification.
    pub fn has_var_quantifiers(self) -> bool {
        matches!(self, LogicId::Mfol) || self.is_valuation_stratified()
    }

    /// Nominal variable quantification.
    pub fn has_nom_quantifiers(self) -> bool {
        self.has_frame_nominals() || self.has_constant_nominals()
    }
}

impl fmt::Display for LogicId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LogicId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_LOGICS
            .iter()
            .copied()
            .find(|l| l.name() == s.to_ascii_lowercase())
            .ok_or_else(|| format!("unknown logic `{s}`"))
    }
}

/// Which connectives, quantifiers, modalities and hybrid features a logic
/// instance supports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Capabilities {
    pub and: bool,
    pub or: bool,
    pub not: bool,
    pub implies: bool,
    pub forall_var: bool,
    pub exists_var: bool,
    pub forall_nom: bool,
    pub exists_nom: bool,
    pub diamond: bool,
    pub boxm: bool,
    pub nominal: bool,
    pub at: bool,
}

/// The capability row of a logic instance.
pub fn capabilities(logic: LogicId) -> Capabilities {
    Capabilities {
        and: true,
        or: true,
        not: true,
        implies: true,
        forall_var: logic.has_var_quantifiers(),
        exists_var: logic.has_var_quantifiers(),
        forall_nom: logic.has_nom_quantifiers(),
        exists_nom: logic.has_nom_quantifiers(),
        diamond: logic.has_unary_modality()
            || logic.has_signature_modalities()
            || logic.has_predicate_modalities(),
        boxm: logic.has_unary_modality()
            || logic.has_signature_modalities()
            || logic.has_predicate_modalities(),
        nominal: logic.has_frame_nominals() || logic.has_constant_nominals(),
        at: logic.has_frame_nominals() || logic.has_constant_nominals(),
    }
}
