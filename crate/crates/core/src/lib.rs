//! Exact lattice computations around Fourier–Mukai partners of K3 surfaces:
//! discriminant forms, partner counts, Mukai vectors and their moduli
//! shadows, and families of rank-2 Néron–Severi lattices sharing a genus.
//!
//! Every quantity is computed over the integers or the rationals; nothing
//! is approximated.

pub mod arith;
pub mod cli;
pub mod error;
pub mod finite_form;
pub mod fm_count;
pub mod json;
pub mod lattice;
pub mod matrix;
pub mod mukai;
pub mod oracle;
pub mod rank2;
pub mod selftest;

pub use error::{Error, Result};
pub use lattice::{Lattice, Signature, SublatticeEmbedding};
