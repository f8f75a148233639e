use thiserror::Error;

use crate::lattice::Vec2;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("zero input rejected: {0}")]
    ZeroInput(&'static str),
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("{0} is not prime")]
    NotPrime(i64),
    #[error("point {0} is not in the support / cluster")]
    NotInSupport(Vec2),
    #[error("empty cluster")]
    EmptyCluster,
    #[error("empty polynomial family")]
    EmptyFamily,
    #[error("direction {0} lies in the direction set of the cluster")]
    DirectionInSet(crate::lattice::Direction),
    #[error("invalid quadratic irrational: {0}")]
    InvalidIrrational(String),
    #[error("window {width}x{height} too small for max_norm {max_norm}")]
    WindowTooSmall { width: i64, height: i64, max_norm: i64 },
    #[error("cluster of size {size} does not tile a {mod_x}x{mod_y} torus: {reason}")]
    TorusMismatch { size: usize, mod_x: i64, mod_y: i64, reason: String },
    #[error("dilation by {alpha} is not injective modulo the torus: {a} and {b} collide")]
    NonInjectiveDilation { alpha: i64, a: Vec2, b: Vec2 },
    #[error("cluster has {0} points, which is not the square of a prime")]
    NotPrimeSquare(usize),
    #[error("configuration is not binary on the window: value {value} at {at}")]
    NotBinary { at: Vec2, value: String },
    #[error("(U^(n e2)-1)(U^(n e1)-1) does not annihilate the configuration: {value} at {at}")]
    NotAnnihilated { at: Vec2, value: String },
    #[error("coset {0} is neither e1- nor e2-invariant on the window")]
    UnclassifiableCoset(Vec2),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
