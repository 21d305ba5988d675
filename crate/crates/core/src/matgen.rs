//! Pinning matrices `x_i(z)`, `B_i(z)`, `P_i(z)` of `SL_n`, braid matrices
//! `B_β`, `P_β`, the half-twist lift `P_{w0}(0)` and the Morse differentials
//! `∂_k = P_{i_k}(z_k) ⋯ P_{i_1}(z_1) ∂_0`.
//!
//! Letter `k` of a word always carries the variable `z_k`.

use thiserror::Error;

use crate::braid::{longest_element_word, BraidWord};
pub use crate::matrix::SquareMatrix;
use crate::ring::{Polynomial, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix size must be at least 2, got {0}")]
    SizeTooSmall(usize),
    #[error("generator index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("crossing {k} outside 0..={len}")]
    CrossingOutOfRange { k: usize, len: usize },
    #[error("expected {expected} variable values, got {got}")]
    VariableCount { expected: usize, got: usize },
}

fn check_index(n: usize, i: usize) -> Result<(), MatrixError> {
    if n < 2 {
        return Err(MatrixError::SizeTooSmall(n));
    }
    if i == 0 || i >= n {
        return Err(MatrixError::IndexOutOfRange { index: i, max: n - 1 });
    }
    Ok(())
}

/// Identity with the 2×2 block `[[a, b], [c, d]]` at rows/columns `i, i+1`.
fn block<R: Ring>(n: usize, i: usize, [a, b, c, d]: [R; 4]) -> Result<SquareMatrix<R>, MatrixError> {
    check_index(n, i)?;
    let mut m = SquareMatrix::identity(n, &a);
    m.set(i - 1, i - 1, a);
    m.set(i - 1, i, b);
    m.set(i, i - 1, c);
    m.set(i, i, d);
    Ok(m)
}

/// `x_i(z)`: identity with `z` at `(i, i+1)`.
pub fn gen_x<R: Ring>(n: usize, i: usize, z: &R) -> Result<SquareMatrix<R>, MatrixError> {
    let (zero, one) = (z.zero_like(), z.one_like());
    block(n, i, [one.clone(), z.clone(), zero, one])
}

/// `B_i(z)`: block `[[z, -1], [1, 0]]`.
pub fn gen_b<R: Ring>(n: usize, i: usize, z: &R) -> Result<SquareMatrix<R>, MatrixError> {
    let (zero, one) = (z.zero_like(), z.one_like());
    block(n, i, [z.clone(), one.neg_ref(), one, zero])
}

/// `P_i(z) = B_i(z)^{-1}`: block `[[0, 1], [-1, z]]`.
pub fn gen_p<R: Ring>(n: usize, i: usize, z: &R) -> Result<SquareMatrix<R>, MatrixError> {
    let (zero, one) = (z.zero_like(), z.one_like());
    block(n, i, [zero, one.clone(), one.neg_ref(), z.clone()])
}

/// The symbolic variables `z_1..z_l` of a word, living in `ℤ[z_1..z_l]`.
pub fn word_variables(word: &BraidWord) -> Vec<Polynomial> {
    Polynomial::variables(word.len())
}

fn check_values<R>(word: &BraidWord, values: &[R]) -> Result<(), MatrixError> {
    if values.len() != word.len() {
        return Err(MatrixError::VariableCount {
            expected: word.len(),
            got: values.len(),
        });
    }
    Ok(())
}

/// `B_β = B_{i_1}(v_1) ⋯ B_{i_l}(v_l)` for arbitrary ring values `v`.
pub fn braid_matrix_b_at<R: Ring>(
    word: &BraidWord,
    values: &[R],
    unit: &R,
) -> Result<SquareMatrix<R>, MatrixError> {
    check_values(word, values)?;
    let n = word.strands();
    let mut m = SquareMatrix::identity(n, unit);
    for (&i, z) in word.letters().iter().zip(values) {
        m = m.mul(&gen_b(n, i, z)?);
    }
    Ok(m)
}

/// `P_β = P_{i_l}(v_l) ⋯ P_{i_1}(v_1)`.
pub fn braid_matrix_p_at<R: Ring>(
    word: &BraidWord,
    values: &[R],
    unit: &R,
) -> Result<SquareMatrix<R>, MatrixError> {
    check_values(word, values)?;
    let n = word.strands();
    let mut m = SquareMatrix::identity(n, unit);
    for (&i, z) in word.letters().iter().zip(values) {
        m = gen_p(n, i, z)?.mul(&m);
    }
    Ok(m)
}

/// Symbolic `B_β(z_1, …, z_l)` over `ℤ[z_1..z_l]`.
pub fn braid_matrix_b(word: &BraidWord) -> SquareMatrix<Polynomial> {
    let vars = word_variables(word);
    braid_matrix_b_at(word, &vars, &Polynomial::one(word.len())).expect("one variable per letter")
}

/// Symbolic `P_β(z_1, …, z_l)` over `ℤ[z_1..z_l]`.
pub fn braid_matrix_p(word: &BraidWord) -> SquareMatrix<Polynomial> {
    let vars = word_variables(word);
    braid_matrix_p_at(word, &vars, &Polynomial::one(word.len())).expect("one variable per letter")
}

/// `P_{w0}(0)` for the staircase reduced word: a signed permutation matrix
/// of determinant 1 supported on the antidiagonal.
pub fn w0_lift<R: Ring>(n: usize, unit: &R) -> Result<SquareMatrix<R>, MatrixError> {
    let word = longest_element_word(n).map_err(|_| MatrixError::SizeTooSmall(n))?;
    let zeros = vec![unit.zero_like(); word.len()];
    braid_matrix_p_at(&word, &zeros, unit)
}

/// `∂_k = P_{i_k}(v_k) ⋯ P_{i_1}(v_1) · P_{w0}(0)`; `k = 0` gives the
/// half-twist lift. `values` has one entry per letter of the whole word.
pub fn differential_at<R: Ring>(
    word: &BraidWord,
    k: usize,
    values: &[R],
    unit: &R,
) -> Result<SquareMatrix<R>, MatrixError> {
    check_values(word, values)?;
    if k > word.len() {
        return Err(MatrixError::CrossingOutOfRange { k, len: word.len() });
    }
    let p = braid_matrix_p_at(&word.prefix(k), &values[..k], unit)?;
    Ok(p.mul(&w0_lift(word.strands(), unit)?))
}

/// Symbolic `∂_k` over `ℤ[z_1..z_l]` with `l` the full word length.
pub fn differential(word: &BraidWord, k: usize) -> Result<SquareMatrix<Polynomial>, MatrixError> {
    let vars = word_variables(word);
    differential_at(word, k, &vars, &Polynomial::one(word.len()))
}

/// Handleslide of `q_{i+1}` along `q_i` marked `z`: `x_i(-z) · M`.
pub fn apply_handleslide<R: Ring>(
    m: &SquareMatrix<R>,
    i: usize,
    z: &R,
) -> Result<SquareMatrix<R>, MatrixError> {
    check_index(m.size(), i)?;
    let mut out = m.clone();
    out.add_row_multiple(i - 1, i, &z.neg_ref());
    Ok(out)
}

/// Value exchange at a `σ_i` crossing: `s_i · M` with `s_i = P_i(0)`.
pub fn apply_crossing<R: Ring>(m: &SquareMatrix<R>, i: usize) -> Result<SquareMatrix<R>, MatrixError> {
    check_index(m.size(), i)?;
    let n = m.size();
    Ok(SquareMatrix::from_fn(n, |r, c| {
        if r == i - 1 {
            m.get(i, c).clone()
        } else if r == i {
            m.get(i - 1, c).neg_ref()
        } else {
            m.get(r, c).clone()
        }
    }))
}

/// Handleslide `z` immediately followed by the `σ_i` crossing:
/// `P_i(z) · M`, computed as row operations.
pub fn apply_marked_crossing<R: Ring>(
    m: &SquareMatrix<R>,
    i: usize,
    z: &R,
) -> Result<SquareMatrix<R>, MatrixError> {
    check_index(m.size(), i)?;
    let n = m.size();
    Ok(SquareMatrix::from_fn(n, |r, c| {
        if r == i - 1 {
            m.get(i, c).clone()
        } else if r == i {
            m.get(i - 1, c).neg_ref().add_ref(&z.mul_ref(m.get(i, c)))
        } else {
            m.get(r, c).clone()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn z(nvars: usize, k: usize) -> Polynomial {
        Polynomial::var(nvars, k)
    }

    fn pm(rows: &[&[&str]], nvars: usize) -> SquareMatrix<Polynomial> {
        SquareMatrix::parse_rows(rows, nvars).unwrap()
    }

    #[test]
    fn generator_shapes() {
        assert_eq!(gen_x(2, 1, &z(1, 1)).unwrap(), pm(&[&["1", "z1"], &["0", "1"]], 1));
        assert!(gen_x(3, 2, &Polynomial::zero(1)).unwrap().is_identity());
        let prod = gen_x(3, 1, &z(1, 1)).unwrap().mul(&gen_x(3, 1, &-z(1, 1)).unwrap());
        assert!(prod.is_identity());

        assert_eq!(gen_b(2, 1, &z(1, 1)).unwrap(), pm(&[&["z1", "-1"], &["1", "0"]], 1));
        assert_eq!(
            gen_p(2, 1, &Polynomial::zero(1)).unwrap(),
            pm(&[&["0", "1"], &["-1", "0"]], 1)
        );
    }

    #[test]
    fn generator_index_errors() {
        let x = z(1, 1);
        assert_eq!(
            gen_x(3, 3, &x).unwrap_err(),
            MatrixError::IndexOutOfRange { index: 3, max: 2 }
        );
        assert!(gen_b(3, 0, &x).is_err());
        assert_eq!(gen_p(1, 1, &x).unwrap_err(), MatrixError::SizeTooSmall(1));
        assert!(apply_crossing(&SquareMatrix::identity(2, &x), 2).is_err());
    }

    #[test]
    fn two_by_two_b_product_is_a_continuant() {
        let prod = gen_b(2, 1, &z(2, 1)).unwrap().mul(&gen_b(2, 1, &z(2, 2)).unwrap());
        assert_eq!(prod, pm(&[&["z1*z2 - 1", "-z1"], &["z2", "-1"]], 2));
    }

    #[test]
    fn p_inverts_b() {
        let p = gen_p(3, 1, &z(1, 1)).unwrap();
        let b = gen_b(3, 1, &z(1, 1)).unwrap();
        assert!(p.mul(&b).is_identity());
        let p0 = gen_p(2, 1, &Polynomial::zero(1)).unwrap();
        let xm = gen_x(2, 1, &-z(1, 1)).unwrap();
        assert_eq!(gen_p(2, 1, &z(1, 1)).unwrap(), p0.mul(&xm));
    }

    #[test]
    fn braid_products() {
        let empty = parse_braid("", 3).unwrap();
        assert!(braid_matrix_b(&empty).is_identity());
        assert!(braid_matrix_p(&empty).is_identity());
        let s1 = parse_braid("1", 2).unwrap();
        assert_eq!(braid_matrix_p(&s1), pm(&[&["0", "1"], &["-1", "z1"]], 1));
        let w = parse_braid("1 2 1", 3).unwrap();
        assert!(braid_matrix_p(&w).mul(&braid_matrix_b(&w)).is_identity());
        assert_eq!(
            braid_matrix_b_at(&w, &[Polynomial::one(0)], &Polynomial::one(0)).unwrap_err(),
            MatrixError::VariableCount { expected: 3, got: 1 }
        );
    }

    #[test]
    fn half_twist_lifts() {
        let u = Polynomial::one(0);
        assert_eq!(w0_lift(2, &u).unwrap(), pm(&[&["0", "1"], &["-1", "0"]], 0));
        let w3 = w0_lift(3, &u).unwrap();
        // P_1(0) P_2(0) P_1(0), multiplied out by hand
        assert_eq!(w3, pm(&[&["0", "0", "1"], &["0", "-1", "0"], &["1", "0", "0"]], 0));
        let w2 = w0_lift(2, &u).unwrap();
        assert!(w2.mul(&w2).mul(&w2).mul(&w2).is_identity());
        assert!(!w2.mul(&w2).is_identity());
    }

    #[test]
    fn differential_range() {
        let w = parse_braid("1 2 1 2 1^2 2^2 1", 3).unwrap();
        assert_eq!(differential(&w, 0).unwrap(), w0_lift(3, &Polynomial::one(9)).unwrap());
        assert_eq!(
            differential(&w, 10).unwrap_err(),
            MatrixError::CrossingOutOfRange { k: 10, len: 9 }
        );
    }

    #[test]
    fn handleslide_on_identity() {
        let id = SquareMatrix::identity(2, &Polynomial::one(1));
        assert_eq!(
            apply_handleslide(&id, 1, &z(1, 1)).unwrap(),
            pm(&[&["1", "-z1"], &["0", "1"]], 1)
        );
    }
}
