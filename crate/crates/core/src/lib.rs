//! Boolean inverse monoids, boolean groupoids and the duality between them.
//!
//! The finite side works on explicit tables. A boolean inverse monoid S has
//! an ultrafilter groupoid G(S) and a finite groupoid G has a monoid of
//! bisections A(G); both round trips are certified as isomorphisms.
//!
//! The symbolic side handles the polycyclic monoids and their completions
//! C_n, along with the Cuntz groupoids on eventually periodic words.

pub mod corpus;
pub mod duality;
pub mod error;
pub mod filter;
pub mod groupoid;
pub mod laws;
pub mod monoid;
pub mod morphism;
pub mod polycyclic;

pub use error::{Error, Result};
