//! Schur transforms on `(ℂ^d)^{⊗n}` built as explicit unitaries.
//!
//! Two constructions are provided and checked against each other:
//! a symmetric-group route (coset states, Fourier transform over `S_n`, and a
//! recoupling isometry from tableau labels to Gelfand–Tsetlin labels), and a
//! cascade of Pieri Clebsch–Gordan transforms, in both a plain and an
//! alphabet-compressed form.

pub mod bch;
pub mod combinat;
pub mod error;
pub mod glrep;
pub mod krovi;
pub mod linalg;
pub mod prep_circuit;
pub mod recoupling;
pub mod schur_basis;
pub mod symrep;
pub mod verify;

pub use error::{SchurError, SchurResult};
