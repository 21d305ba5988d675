//! Corner principal minors, the unipotent Bruhat ("rook") factorization
//! `M = U1 · R · U2` over ℚ(z), and Bruhat numbers read off `R`.

use std::collections::HashMap;

use thiserror::Error;

use crate::braid::Permutation;
use crate::matrix::SquareMatrix;
use crate::ring::{sign_pow, Polynomial, RationalFunction, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BruhatError {
    #[error("minor order {m} outside 0..={n}")]
    MinorOutOfRange { m: usize, n: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("rook permutation {perm} is not the longest element; SW minors vanish identically at {vanishing:?}")]
    NotTopCell {
        perm: Permutation,
        vanishing: Vec<usize>,
    },
}

/// Determinant of a square block (given as rows) by Laplace expansion along
/// the last row, memoized over column subsets: `O(2^n · n)` ring products.
fn det_rows<R: Ring>(rows: &[Vec<R>], unit: &R) -> R {
    let n = rows.len();
    if n == 0 {
        return unit.one_like();
    }
    assert!(n < 32, "determinant size");
    // minors[mask] = det of the first popcount(mask) rows on the columns in mask
    let mut minors: HashMap<u32, R> = HashMap::new();
    minors.insert(0, unit.one_like());
    let mut layer: Vec<u32> = vec![0];
    for (r, row) in rows.iter().enumerate() {
        let mut next: HashMap<u32, R> = HashMap::new();
        for &mask in &layer {
            let sub = &minors[&mask];
            if sub.is_zero() {
                continue;
            }
            for (c, entry) in row.iter().enumerate() {
                if mask & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let grown = mask | (1 << c);
                // c sits at position `pos` among the columns of `grown`
                let pos = (grown & ((1u32 << c) - 1)).count_ones() as usize;
                let mut term = entry.mul_ref(sub);
                if (r + pos) % 2 == 1 {
                    term = term.neg_ref();
                }
                next.entry(grown)
                    .and_modify(|acc| *acc = acc.add_ref(&term))
                    .or_insert(term);
            }
        }
        layer = next.keys().copied().collect();
        minors = next;
    }
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    minors.remove(&full).unwrap_or_else(|| unit.zero_like())
}

/// Exact determinant.
pub fn det<R: Ring>(m: &SquareMatrix<R>) -> R {
    let rows: Vec<Vec<R>> = m.rows().map(|r| r.to_vec()).collect();
    det_rows(&rows, m.get(0, 0))
}

fn corner_minor<R: Ring>(
    m: &SquareMatrix<R>,
    order: usize,
    bottom: bool,
    right: bool,
) -> Result<R, BruhatError> {
    let n = m.size();
    if order > n {
        return Err(BruhatError::MinorOutOfRange { m: order, n });
    }
    let unit = m.get(0, 0);
    if order == 0 {
        return Ok(unit.one_like());
    }
    let span = |far: bool| -> Vec<usize> {
        if far {
            (n - order..n).collect()
        } else {
            (0..order).collect()
        }
    };
    Ok(det_rows(&m.submatrix(&span(bottom), &span(right)), unit))
}

/// `Δ^nw_m`: leading principal minor (rows and columns `1..m`).
pub fn minor_nw<R: Ring>(m: &SquareMatrix<R>, order: usize) -> Result<R, BruhatError> {
    corner_minor(m, order, false, false)
}

/// `Δ^sw_m`: rows `n-m+1..n`, columns `1..m`.
pub fn minor_sw<R: Ring>(m: &SquareMatrix<R>, order: usize) -> Result<R, BruhatError> {
    corner_minor(m, order, true, false)
}

/// `Δ^se_m`: trailing principal minor (rows and columns `n-m+1..n`).
pub fn minor_se<R: Ring>(m: &SquareMatrix<R>, order: usize) -> Result<R, BruhatError> {
    corner_minor(m, order, true, true)
}

/// `M = u_left · rook · u_right` with unipotent upper-triangular outer
/// factors and a monomial middle factor.
#[derive(Debug, Clone)]
pub struct RookFactorization {
    pub u_left: SquareMatrix<RationalFunction>,
    pub rook: SquareMatrix<RationalFunction>,
    pub u_right: SquareMatrix<RationalFunction>,
    /// `perm(j)` is the row of the nonzero entry of column `j`.
    pub perm: Permutation,
}

impl RookFactorization {
    pub fn reconstruct(&self) -> SquareMatrix<RationalFunction> {
        self.u_left.mul(&self.rook).mul(&self.u_right)
    }

    /// Orders `m` for which `Δ^sw_m` vanishes. For a monomial matrix that is
    /// exactly when the first `m` columns miss one of the last `m` rows, and
    /// these minors agree with those of the factored matrix.
    pub fn vanishing_sw_minors(&self) -> Vec<usize> {
        let n = self.perm.size();
        (1..=n)
            .filter(|&m| (1..=m).any(|j| self.perm.apply(j) <= n - m))
            .collect()
    }

    /// Bruhat numbers `β_j = rook(n+1-j, j)`, defined only in the top cell.
    pub fn bruhat_numbers(&self) -> Result<BruhatNumbers, BruhatError> {
        if !self.perm.is_reversal() {
            return Err(BruhatError::NotTopCell {
                perm: self.perm.clone(),
                vanishing: self.vanishing_sw_minors(),
            });
        }
        let n = self.perm.size();
        Ok(BruhatNumbers {
            values: (1..=n).map(|j| self.rook.get(n - j, j - 1).clone()).collect(),
            cell: self.perm.clone(),
        })
    }
}

/// Bruhat numbers `β_1..β_n` of a matrix in the top cell `U w0 T U`.
#[derive(Debug, Clone)]
pub struct BruhatNumbers {
    pub values: Vec<RationalFunction>,
    pub cell: Permutation,
}

impl BruhatNumbers {
    /// `β_1 ⋯ β_m`.
    pub fn product(&self, m: usize) -> RationalFunction {
        let unit = &self.values[0];
        self.values[..m]
            .iter()
            .fold(unit.one_like(), |acc, b| acc.mul_ref(b))
    }
}

/// Unipotent Bruhat factorization by a left-to-right column sweep.
///
/// In column `j` the pivot is the lowest not-yet-pivoted row with a nonzero
/// entry. Entries above it are cleared with multiples of the pivot row, then
/// entries to its right with multiples of column `j`. Row operations only
/// add lower rows to higher ones and column operations only add left columns
/// to right ones, so both accumulated factors stay unipotent
/// upper-triangular.
pub fn bruhat_factorize(
    m: &SquareMatrix<RationalFunction>,
) -> Result<RookFactorization, BruhatError> {
    let n = m.size();
    let unit = m.get(0, 0).one_like();
    let mut work = m.clone();
    let mut u_left = SquareMatrix::identity(n, &unit);
    let mut u_right = SquareMatrix::identity(n, &unit);
    let mut pivoted = vec![false; n];
    let mut perm = Vec::with_capacity(n);
    // numerators and denominators of pivots seen so far; later entries are
    // tried against them to undo the Bareiss-style growth of denominators
    let mut known_factors: Vec<Polynomial> = Vec::new();

    for j in 0..n {
        let p = (0..n)
            .rev()
            .find(|&i| !pivoted[i] && !work.get(i, j).is_zero())
            .ok_or(BruhatError::SingularMatrix)?;
        pivoted[p] = true;
        perm.push(p + 1);
        let pivot = work.get(p, j).clone();
        for f in [pivot.numerator(), pivot.denominator()] {
            if f.as_constant().is_none() && !known_factors.contains(f) {
                known_factors.push(f.clone());
            }
        }
        let inv = pivot.recip().expect("pivot is nonzero");

        for i in 0..p {
            if work.get(i, j).is_zero() {
                continue;
            }
            let c = work.get(i, j).mul_ref(&inv).neg_ref();
            // row_i += c·row_p, so U1 absorbs the inverse as col_p -= c·col_i
            work.add_row_multiple(i, p, &c);
            work.set(i, j, unit.zero_like());
            u_left.add_col_multiple(p, i, &c.neg_ref());
        }
        for q in j + 1..n {
            if work.get(p, q).is_zero() {
                continue;
            }
            let c = work.get(p, q).mul_ref(&inv).neg_ref();
            // col_q += c·col_j, so U2 absorbs the inverse as row_j -= c·row_q
            work.add_col_multiple(q, j, &c);
            work.set(p, q, unit.zero_like());
            u_right.add_row_multiple(j, q, &c.neg_ref());
        }
        simplify(&mut work, &known_factors);
        simplify(&mut u_left, &known_factors);
        simplify(&mut u_right, &known_factors);
    }

    Ok(RookFactorization {
        u_left,
        rook: work,
        u_right,
        perm: Permutation::from_images(perm).expect("one pivot per row"),
    })
}

fn simplify(m: &mut SquareMatrix<RationalFunction>, factors: &[Polynomial]) {
    let n = m.size();
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j).denominator().is_one() {
                continue;
            }
            let mut x = m.get(i, j).clone();
            for f in factors {
                x.cancel_factor(f);
            }
            m.set(i, j, x);
        }
    }
}

/// Factorizes a polynomial matrix over its fraction field.
pub fn bruhat_factorize_poly(
    m: &SquareMatrix<Polynomial>,
) -> Result<RookFactorization, BruhatError> {
    bruhat_factorize(&m.to_rational())
}

/// Bruhat numbers of `M`, failing with [`BruhatError::NotTopCell`] when the
/// rook permutation is not the reversal.
pub fn bruhat_numbers(m: &SquareMatrix<Polynomial>) -> Result<BruhatNumbers, BruhatError> {
    bruhat_factorize_poly(m)?.bruhat_numbers()
}

/// `(-1)^{m(m-1)/2} · Δ^sw_m(M)`, the telescoped product `β_1 ⋯ β_m`
/// computed directly in `ℤ[z]`.
pub fn bruhat_product(m: &SquareMatrix<Polynomial>, order: usize) -> Result<Polynomial, BruhatError> {
    let minor = minor_sw(m, order)?;
    Ok(if sign_pow(order * order.saturating_sub(1) / 2) < 0 {
        -minor
    } else {
        minor
    })
}
