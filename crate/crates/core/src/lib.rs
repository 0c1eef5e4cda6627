//! Group algebras of direct products of cyclic, dihedral and generalised
//! quaternion groups over finite fields: Wedderburn–Artin decompositions,
//! explicit isomorphisms, group codes, and CSS quantum codes built from them.

pub mod codes;
pub mod error;
pub mod expr;
pub mod galg;
pub mod gf;
pub mod linalg;
pub mod poly;
pub mod polyfact;
pub mod quantum;
pub mod repro;
pub mod util;
pub mod wa;

pub use error::{Error, Result};
