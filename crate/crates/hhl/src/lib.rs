//! Construction and exact verification of Hanlon-Hicks-Lazarev complexes.
//!
//! Starting from a lattice map `psi: L -> Lambda` with finite cokernel, this
//! crate enumerates the Bondal stratification of the real torus dual to
//! `Lambda`, builds the associated complex of free modules over a polynomial
//! ring with signed-monomial differentials, and verifies degree by degree
//! that the complex resolves the semigroup algebra attached to the map.
//! A thin layer handles subfans of the first orthant, character-group
//! bookkeeping for quotient stacks, and conversion from fan-plus-lattice
//! (Geraschenko-Satriano style) input data.

pub mod cli;
pub mod complex;
pub mod equivalence;
pub mod error;
pub mod exactmath;
pub mod io;
pub mod stacks;
pub mod stratification;
pub mod verify;

pub use error::{HhlError, Result};
