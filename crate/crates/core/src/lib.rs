//! Zero-divisor graphs of finite commutative rings and the machinery to
//! compute their L(2,1)-labelling numbers.
//!
//! The crate is organised around a small pipeline:
//!
//! * [`ring`] models finite commutative rings as products of local rings
//!   `Z_{p^k}` and finite fields, and decides the zero-product relation.
//! * [`zdg`] builds the zero-divisor graph `Γ(R)`, Beck's variant `Γ'(R)`,
//!   and the zero-pattern partite structure.
//! * [`graph`] is the immutable simple-graph core with the exact
//!   small-instance subroutines (clique, chromatic, path cover).
//! * [`truncate`] contracts each partite class to a vertex and lifts
//!   labellings back from the truncation.
//! * [`l21`] validates labellings, analyses holes/gaps/multiplicities and
//!   solves for the exact lambda number by branch and bound.
//! * [`formulas`] evaluates the closed-form lambda numbers for the supported
//!   ring families and produces the constructive witness labellings.

pub mod formulas;
pub mod graph;
pub mod l21;
pub mod ring;
pub mod truncate;
pub mod zdg;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed ring-spec string or invalid parameters.
    #[error("parse error: {0}")]
    Parse(String),
    /// An exact routine refused to run because the instance exceeds its cap.
    #[error("{what} refused: size {actual} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        actual: usize,
        cap: usize,
    },
    /// A partition handed to the truncation machinery is not valid.
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    /// The requested operation does not apply to the given input.
    #[error("not applicable: {0}")]
    Unsupported(String),
    /// A labelling failed validation where a valid one was required.
    #[error("invalid labelling: {0} violation(s)")]
    InvalidLabelling(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use graph::{Diameter, Graph};
pub use l21::{HoleReport, Labelling, LambdaReport, Method};
pub use ring::{ElementClass, Factor, RingElement, RingSpec, ZeroPattern};
pub use truncate::{RepresentativeSet, TruncationResult};
pub use zdg::PartiteStructure;
