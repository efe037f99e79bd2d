//! Exact H-stratum dimensions, H-prime heights and Dixmier-Moeglin degrees
//! for uniparameter quantum tori, quantum affine spaces and quantum Schubert
//! cells.
//!
//! All arithmetic is exact: rationals and integers are arbitrary precision,
//! Weyl group elements are integer matrices. The enumeration-heavy loops
//! (all diagrams of an affine space, all pairs of a Bruhat interval) run on
//! rayon when the `parallel` feature is enabled and sequentially otherwise;
//! see [`Execution`].

pub mod diagram;
pub mod error;
pub mod exact_linalg;
mod par;
pub mod quantum_affine;
pub mod quantum_torus;
pub mod root_system;
pub mod schubert;
pub mod weyl;

pub use diagram::{Diagram, SubexpressionDiagram};
pub use error::{Error, Result};
pub use exact_linalg::{QMatrix, Rational, ZMatrix};
pub use par::Execution;
pub use root_system::{CartanType, Family, RootSystem, RootVector};
pub use weyl::{WeylElement, Word};

/// The degree triple attached to a prime ideal.
///
/// For every algebra handled by this crate the three degrees coincide; they
/// are still carried separately so reports keep the distinction visible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Degrees {
    pub locdeg: usize,
    pub primdeg: usize,
    pub ratdeg: usize,
}

impl Degrees {
    pub fn uniform(d: usize) -> Self {
        Degrees { locdeg: d, primdeg: d, ratdeg: d }
    }

    pub fn all_equal(&self) -> bool {
        self.locdeg == self.primdeg && self.primdeg == self.ratdeg
    }
}
