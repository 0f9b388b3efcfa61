use thiserror::Error;

use crate::parser::Diagnostic;

/// Everything that can go wrong across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0}")]
    Parse(Diagnostic),

    #[error("duplicate atom `{0}` in alphabet")]
    DuplicateAtom(String),

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("atom index {index} is outside an alphabet of {len} atoms")]
    AtomOutOfRange { index: usize, len: usize },

    #[error("world mentions atoms outside the alphabet")]
    WorldOutsideAlphabet,

    #[error("integrity constraint must have a non-empty body")]
    EmptyConstraintBody,

    #[error("abducible `{0}` heads a clause; abducibles may only occur in bodies")]
    AbducibleHead(String),

    #[error("alphabet has {atoms} atoms; exhaustive enumeration is capped at {limit}")]
    TooManyAtoms { atoms: usize, limit: usize },

    #[error("cannot intervene on abducible `{0}`: it has no equation to replace; add or remove the fact `{0}.` instead")]
    AbducibleIntervention(String),

    #[error("cannot intervene on external variable `{0}`: it has no equation to replace")]
    ExternalIntervention(String),

    #[error("program has integrity constraints: intervening under observations is counterfactual reasoning, which is not supported")]
    CounterfactualUnsupported,

    #[error("assignment binds `{0}` twice")]
    ConflictingAssignment(String),

    #[error("external premises are not in default-negation form: {0}")]
    NotDefaultNegation(String),

    #[error("causal theory is not atomic: rule concludes the negative literal `not {0}`")]
    NotAtomic(String),

    #[error("{0}")]
    Contract(String),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
