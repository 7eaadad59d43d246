use thiserror::Error;

use crate::factors::FactorIndex;
use crate::word::Word;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid word spec: {0}")]
    InvalidSpec(String),

    #[error("group closure exceeded {limit} elements")]
    GroupTooLarge { limit: usize },

    #[error("{0} is not a factor of the indexed prefix")]
    NotAFactor(Word),

    #[error("length {requested} is outside the trusted range (trusted up to {trusted})")]
    UntrustedRange { requested: usize, trusted: usize },

    #[error("{word} occurs {occurrences} time(s); at least 2 are needed")]
    InsufficientOccurrences { word: Word, occurrences: usize },

    /// The factor sets did not settle before the prefix cap was reached.
    /// `partial` holds the last index built, with a trust range covering
    /// only the lengths that did settle.
    #[error("factor sets up to length {n_max} did not stabilize within {max_prefix} letters")]
    StabilizationFailure {
        n_max: usize,
        max_prefix: usize,
        partial: Box<FactorIndex>,
    },

    #[error("language is not closed under {symmetry}: {factor} maps outside the language")]
    NotClosed { symmetry: String, factor: Word },

    #[error("{0} is not an involutive antimorphism")]
    NotInvolutive(String),

    #[error("{0} and {1} do not commute")]
    NotCommuting(String, String),

    #[error("symmetries must be distinct, got {0} twice")]
    NotDistinct(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("edge walk at length {n} left the trusted prefix")]
    TrustExhausted { n: usize },

    #[error("internal contradiction: {0}")]
    Contradiction(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn spec(msg: impl Into<String>) -> Self {
        Error::InvalidSpec(msg.into())
    }

    /// True for the errors that mean an assumption about the word's
    /// language failed, as opposed to malformed input.
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(
            self,
            Error::NotClosed { .. }
                | Error::NotInvolutive(_)
                | Error::NotCommuting(..)
                | Error::NotDistinct(_)
                | Error::Hypothesis(_)
        )
    }
}
