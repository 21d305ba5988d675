//! Cluster variables as generalized minors and the comparison with signed
//! products of Bruhat numbers, checked as identities in `ℤ[z_1..z_l]`.
//!
//! For crossing `k` with letter `i = i_k` and complement `i* = n - i`:
//!
//! ```text
//! A_k = Δ^nw_i(B_{i_1}(z_1) ⋯ B_{i_k}(z_k))
//!     = sgn_k · (-1)^{i*(i*-1)/2} · Δ^sw_{i*}(∂_k),   sgn_k = (-1)^{⌊i*/2⌋ + i*(n-1)}
//! ```

use rayon::prelude::*;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::bruhat::{self, BruhatError, BruhatNumbers, RookFactorization};
use crate::matgen::{self, MatrixError};
use crate::matrix::SquareMatrix;
use crate::ring::{sign_pow, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompareError {
    #[error("crossing {k} outside 1..={len}")]
    CrossingOutOfRange { k: usize, len: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Bruhat(#[from] BruhatError),
}

fn check_crossing(word: &BraidWord, k: usize) -> Result<(), CompareError> {
    if k == 0 || k > word.len() {
        return Err(CompareError::CrossingOutOfRange { k, len: word.len() });
    }
    Ok(())
}

/// `B_{i_1}(z_1) ⋯ B_{i_k}(z_k)` in the ring of the whole word.
pub fn truncated_braid_matrix(
    word: &BraidWord,
    k: usize,
) -> Result<SquareMatrix<Polynomial>, CompareError> {
    if k > word.len() {
        return Err(CompareError::CrossingOutOfRange { k, len: word.len() });
    }
    let vars = matgen::word_variables(word);
    Ok(matgen::braid_matrix_b_at(
        &word.prefix(k),
        &vars[..k],
        &Polynomial::one(word.len()),
    )?)
}

/// `A_k = Δ^nw_{i_k}(B_{i_1}(z_1) ⋯ B_{i_k}(z_k))`.
pub fn cluster_variable(word: &BraidWord, k: usize) -> Result<Polynomial, CompareError> {
    check_crossing(word, k)?;
    let b = truncated_braid_matrix(word, k)?;
    Ok(bruhat::minor_nw(&b, word.letter(k))?)
}

/// `sgn_k = (-1)^{⌊i*/2⌋ + i*(n-1)}` with `i* = n - i_k`.
///
/// Panics unless `1 <= letter < strands`.
pub fn comparison_sign(strands: usize, letter: usize) -> i64 {
    assert!(
        (1..strands).contains(&letter),
        "letter {letter} outside 1..{strands}"
    );
    let c = strands - letter;
    sign_pow(c / 2 + c * (strands - 1))
}

/// Both sides of the comparison at one crossing.
#[derive(Debug, Clone)]
pub struct CrossingReport {
    pub k: usize,
    pub letter: usize,
    pub complement: usize,
    pub sign: i64,
    /// `A_k`.
    pub cluster_variable: Polynomial,
    /// `Δ^sw_{i*}(∂_k)`.
    pub sw_minor: Polynomial,
    /// `sgn_k · bruhat_product(∂_k, i*)`.
    pub morse_side: Polynomial,
    pub holds: bool,
    pub differential: SquareMatrix<Polynomial>,
    pub braid_matrix: SquareMatrix<Polynomial>,
    /// Rook factorization of `∂_k`, when requested.
    pub factorization: Option<RookFactorization>,
    /// Bruhat numbers of `∂_k`; present when requested and `∂_k` is in the
    /// top cell.
    pub bruhat_numbers: Option<BruhatNumbers>,
    /// Orders of the identically vanishing SW minors when `∂_k` is not in the
    /// top cell.
    pub not_top_cell: Option<Vec<usize>>,
}

/// Computes both sides at crossing `k`. With `detail`, also factorizes `∂_k`
/// and reads its Bruhat numbers; a non-top cell only leaves those fields
/// empty and never affects `holds`.
pub fn verify_crossing(
    word: &BraidWord,
    k: usize,
    detail: bool,
) -> Result<CrossingReport, CompareError> {
    check_crossing(word, k)?;
    verify_crossing_with_sign(word, k, detail, comparison_sign(word.strands(), word.letter(k)))
}

/// [`verify_crossing`] with the sign supplied by the caller; used to check
/// that a wrong sign is actually detected.
pub fn verify_crossing_with_sign(
    word: &BraidWord,
    k: usize,
    detail: bool,
    sign: i64,
) -> Result<CrossingReport, CompareError> {
    check_crossing(word, k)?;
    let letter = word.letter(k);
    let complement = word.complement(k);

    let braid_matrix = truncated_braid_matrix(word, k)?;
    let cluster_variable = bruhat::minor_nw(&braid_matrix, letter)?;

    let differential = matgen::differential(word, k)?;
    let sw_minor = bruhat::minor_sw(&differential, complement)?;
    let product = bruhat::bruhat_product(&differential, complement)?;
    let morse_side = if sign < 0 { -product } else { product };
    let holds = cluster_variable == morse_side;

    let (factorization, bruhat_numbers, not_top_cell) = if detail {
        let f = bruhat::bruhat_factorize_poly(&differential)?;
        match f.bruhat_numbers() {
            Ok(b) => (Some(f), Some(b), None),
            Err(BruhatError::NotTopCell { vanishing, .. }) => (Some(f), None, Some(vanishing)),
            Err(e) => return Err(e.into()),
        }
    } else {
        (None, None, None)
    };

    Ok(CrossingReport {
        k,
        letter,
        complement,
        sign,
        cluster_variable,
        sw_minor,
        morse_side,
        holds,
        differential,
        braid_matrix,
        factorization,
        bruhat_numbers,
        not_top_cell,
    })
}

/// One report per crossing `k = 1..=l`, in order.
pub fn verify_word(word: &BraidWord, detail: bool) -> Result<Vec<CrossingReport>, CompareError> {
    (1..=word.len())
        .into_par_iter()
        .map(|k| verify_crossing(word, k, detail))
        .collect()
}
