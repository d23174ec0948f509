//! Exact agreement between Boolean functions and low-degree polynomials
//! over Z/2^k.
//!
//! Inputs are encoded as integers with x_1 in the least significant bit.
//! Ring elements are `u16` values kept reduced mod 2^k. Agreements are exact
//! fractions; floats only appear in reports.

pub mod agreement;
pub mod algebra;
pub mod boolfn;
pub mod constructions;
pub mod error;
pub mod lift;
pub mod nonclassical;
pub mod poly;
pub mod ring;
pub mod rng;
pub mod search;
pub mod symmetric;
pub mod verify;

pub use agreement::{agreement, Agreement};
pub use algebra::{is_forcing, is_interpolating, vanishing_basis, PointSet};
pub use boolfn::BoolFn;
pub use error::{Error, Result};
pub use lift::{k_lift, LiftedFn};
pub use nonclassical::{nc_boolean_agreement, nc_from_ring, nc_to_ring, Dyadic, NCPoly};
pub use poly::{mobius_interpolate, RingPoly};
pub use ring::{Elem, Ring};
pub use search::{gamma_exact, gamma_heuristic, GammaResult, SearchMode};
