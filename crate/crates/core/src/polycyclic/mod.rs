//! Symbolic arithmetic for the polycyclic monoid P_n and its completion
//! C_n, plus the Cuntz groupoid on eventually periodic words.

mod cn;
mod cuntz;
pub mod oracle;
mod periodic;
mod poly;
mod word;

pub use cn::{CnElement, Incompatible};
pub use cuntz::{arrow_to_ultrafilter, ultrafilter_to_arrow, CuntzArrow};
pub use oracle::{finite_depth_oracle, Oracle};
pub use periodic::{equal_by_prefix, EvPeriodicWord};
pub use poly::PolyElement;
pub use word::{check_alphabet, Word, ALPHABET};
