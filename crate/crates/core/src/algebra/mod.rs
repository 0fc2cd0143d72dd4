//! Exact arithmetic substrate: real cyclotomic number fields, Laurent
//! polynomials over them, and small matrices.

mod field;
mod laurent;
mod matrix;

pub use field::{cos_embed, number_field, AlgInt, Coeff, NFElem, NfElem, NumberField};
pub use laurent::{LaurentPoly, LaurentRepr, LaurentTerm};
pub use matrix::{Mat3, Ring};
