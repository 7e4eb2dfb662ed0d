use alloc::string::String;
use core::fmt;

/// Error conditions across the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Attempted to invert a residue with no inverse mod d.
    NonInvertible { value: u64, modulus: u64 },
    /// Operands of incompatible dimensions.
    DimensionMismatch { left: usize, right: usize },
    /// Input is not a valid quantum state (Hermiticity or trace violated).
    InvalidState(String),
    /// Argument outside the documented domain.
    Domain(String),
    /// State does not commute with A₀,₀, so it has no `(a,b,b)`-sphere
    /// coordinates.
    OutsideSubspace { commutator_norm: f64 },
    /// The trivial-syndrome projector did not come out rank d^k; the
    /// generator rows fix a different sector than their phases suggest.
    PhaseConvention { rank: f64 },
    /// The logical pair does not act as a Weyl pair on the codespace.
    LogicalAlgebra(&'static str),
    /// Postselection probability is numerically zero; conditioning is
    /// undefined.
    PostselectionImpossible { p_succ: f64 },
    /// Both bisection endpoints classify the same way, or no magic
    /// reference state exists for the requested target.
    NoThresholdInBracket {
        distills_lo: bool,
        distills_hi: bool,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonInvertible { value, modulus } => {
                write!(f, "{value} has no inverse mod {modulus}")
            }
            Error::DimensionMismatch { left, right } => {
                write!(f, "dimension mismatch: {left} vs {right}")
            }
            Error::InvalidState(why) => write!(f, "invalid state: {why}"),
            Error::Domain(why) => write!(f, "domain error: {why}"),
            Error::OutsideSubspace { commutator_norm } => write!(
                f,
                "state does not commute with A00 (commutator norm {commutator_norm:.2e})"
            ),
            Error::PhaseConvention { rank } => write!(
                f,
                "trivial-syndrome projector has rank {rank:.6} instead of d^k"
            ),
            Error::LogicalAlgebra(why) => write!(f, "logical algebra failure: {why}"),
            Error::PostselectionImpossible { p_succ } => write!(
                f,
                "success probability {p_succ:.2e} too small to postselect on"
            ),
            Error::NoThresholdInBracket {
                distills_lo,
                distills_hi,
            } => write!(
                f,
                "no threshold in bracket (distills at lo: {distills_lo}, at hi: {distills_hi})"
            ),
        }
    }
}

impl core::error::Error for Error {}
