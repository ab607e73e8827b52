//! Obstructions and cogrowth of finitely presented associative algebras and
//! of infinite words.
//!
//! The crate is split into:
//!
//! - [`freealg`]: words under the degree-lexicographic order, exact-coefficient
//!   polynomials of the free algebra and reduction to normal form.
//! - [`groebner`]: overlaps, degree-bounded completion, algebra obstructions,
//!   cogrowth, finite-basis certificates and a linear-algebra oracle.
//! - [`langword`]: infinite-word sources, minimal forbidden words, colength of
//!   a period and the classical bound checks.
//! - [`rauzy`]: Rauzy graphs, line graphs, the entropy regulator and the
//!   edge-deletion check.
//! - [`counting`]: growth of monomial algebras through an avoidance automaton.
//! - [`text`]: the polynomial grammar, relation files and certificate documents.

pub mod coeff;
pub mod counting;
mod error;
pub mod freealg;
pub mod groebner;
pub mod langword;
pub mod rauzy;
mod suffix_automaton;
pub mod text;

pub use coeff::{Coefficient, Fp, Rational};
pub use error::{Error, Result};
pub use freealg::{normal_form, reduce_once, Alphabet, Poly, Word};
