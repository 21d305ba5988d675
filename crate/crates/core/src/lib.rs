//! Exact matrix model of Cerf diagrams for positive braid words.
//!
//! A positive braid word `σ_{i_1} ⋯ σ_{i_l}` on `n` strands yields, in the
//! polynomial ring `ℤ[z_1..z_l]`:
//!
//! * Morse differentials `∂_k`, their unipotent Bruhat (rook) factorizations
//!   and Bruhat numbers ([`matgen`], [`bruhat`]);
//! * braid matrices `B_{i_1}(z_1) ⋯ B_{i_k}(z_k)` and the cluster variables
//!   `A_k` given by their leading principal minors ([`compare`]).
//!
//! [`compare::verify_crossing`] checks that `A_k` equals the signed product of
//! the first `n - i_k` Bruhat numbers of `∂_k`, exactly.

pub mod braid;
pub mod bruhat;
pub mod cli;
pub mod compare;
pub mod matgen;
pub mod matrix;
pub mod ring;
pub mod selftest;

pub use braid::{parse_braid, BraidWord, Permutation};
pub use matrix::SquareMatrix;
pub use ring::{Polynomial, RationalFunction, Ring};
