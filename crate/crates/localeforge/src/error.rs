//! Error types shared across the crate.

/// Errors raised by constructions and checks.
///
/// Input problems (malformed structures, violated preconditions, exceeded
/// caps) are distinguished from internal consistency failures such as
/// [`Error::SubfitFormsDisagree`] or [`Error::CharacterizationMismatch`],
/// which can only fire if a table has been corrupted or the implementation
/// is wrong.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("size overflow in {what}: {count} exceeds cap {cap}")]
    SizeOverflow {
        what: &'static str,
        count: usize,
        cap: usize,
    },

    #[error("not a distributive lattice: {0}")]
    NotDistributive(String),

    #[error("not a lattice homomorphism: {0}")]
    NotLatticeHom(String),

    #[error("not a frame homomorphism: {0}")]
    NotFrameHom(String),

    #[error("brute-force cap exceeded: {0}")]
    CapExceeded(String),

    #[error("subfitness checks disagree (nucleus form vs classical form): {0}")]
    SubfitFormsDisagree(String),

    #[error("injection/surjection characterizations disagree: {0}")]
    CharacterizationMismatch(String),

    #[error("no mediating homomorphism exists: {0}")]
    NoMediator(String),

    #[error("mediating homomorphism is not unique: {0}")]
    MultipleMediators(String),

    #[error("not an equivalence relation: {0}")]
    NotEquivalenceRelation(String),

    #[error("invalid poset: {0}")]
    InvalidPoset(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("invalid map: {0}")]
    InvalidMap(String),

    #[error("invalid adjoint: {0}")]
    InvalidAdjoint(String),

    #[error("invalid nucleus: {0}")]
    InvalidNucleus(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Outcome of a boolean mathematical check, carrying the first
/// counterexample (in index order) when the property fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<String>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            holds: true,
            witness: None,
        }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Verdict {
            holds: false,
            witness: Some(witness.into()),
        }
    }

    pub fn from_bool(holds: bool, witness: impl Into<String>) -> Self {
        if holds {
            Verdict::pass()
        } else {
            Verdict::fail(witness)
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.holds {
            write!(f, "holds")
        } else {
            match &self.witness {
                Some(w) => write!(f, "fails ({w})"),
                None => write!(f, "fails"),
            }
        }
    }
}
