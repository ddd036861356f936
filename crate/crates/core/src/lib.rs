//! Exact state-sum evaluation of quantum link invariants over Morse
//! diagrams, with Yang-Baxter operator checks and entanglement
//! classification.

pub mod error;
pub mod jones3;
pub mod braid;
pub mod diagram;
pub mod linalg;
pub mod models;
pub mod scalar;
pub mod skein;
pub mod statesum;
pub mod yangbaxter;

pub use error::{Error, Result};
pub use linalg::Tensor;
pub use scalar::{Complex64, GaussInt, LaurentPoly, Scalar};
pub use braid::{parse_braid, BraidWord, Letter, LetterKind};
pub use diagram::{EventKind, MorseDiagram, MorseEvent, MorseMove, MoveKind};
pub use models::TangleModel;
pub use statesum::{evaluate, normalized};
