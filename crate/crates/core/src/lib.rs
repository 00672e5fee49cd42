//! Exact differential characters on finite simplicial sets.
//!
//! Everything is computed with arbitrary precision integers and rationals.
//! Differential forms are modelled by rational cochains, circle values by
//! rationals modulo one.

pub mod characters;
pub mod complex;
pub mod cone;
pub mod error;
pub mod fiber;
pub mod fixtures;
pub mod kunneth;
pub mod linalg;
pub mod sample;
pub mod sequences;
pub mod simplicial;

pub use characters::Character;
pub use complex::ChainData;
pub use cone::{Cone, Quotient, Space};
pub use error::{RelError, Result};
pub use fiber::TrivialBundle;
pub use kunneth::{ConeProduct, KunnethSplit};
pub use linalg::{FgAbPresentation, Int, IntMatrix, Rat, Snf};
pub use simplicial::{Cell, Simp, SimplicialMap, SimplicialSet};
