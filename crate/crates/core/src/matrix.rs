use std::fmt;

use crate::ring::{Polynomial, RationalFunction, Ring};

/// Dense `n × n` matrix over a [`Ring`], row-major. Indices are 0-based in
/// code; docs use the 1-based row/column names of the math.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<R> {
    size: usize,
    entries: Vec<R>,
}

impl<R: Ring> SquareMatrix<R> {
    /// Panics unless `rows` is square and nonempty.
    pub fn from_rows(rows: Vec<Vec<R>>) -> Self {
        let size = rows.len();
        assert!(size > 0, "empty matrix");
        assert!(rows.iter().all(|r| r.len() == size), "matrix is not square");
        SquareMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { size, entries }
    }

    /// Identity matrix; `unit` fixes the ring (any element of it will do).
    pub fn identity(size: usize, unit: &R) -> Self {
        let (zero, one) = (unit.zero_like(), unit.one_like());
        Self::from_fn(size, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.entries[i * self.size + j] = value;
    }

    pub fn row(&self, i: usize) -> &[R] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.entries.chunks(self.size)
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.size, other.size, "matrix size mismatch");
        let n = self.size;
        Self::from_fn(n, |i, j| {
            let mut acc = self.get(i, 0).mul_ref(other.get(0, j));
            for k in 1..n {
                let a = self.get(i, k);
                let b = other.get(k, j);
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add_ref(&a.mul_ref(b));
                }
            }
            acc
        })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> SquareMatrix<S> {
        SquareMatrix {
            size: self.size,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(idx, x)| {
            if idx / self.size == idx % self.size {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    /// Whether the diagonal is all ones and everything below it zero.
    pub fn is_unipotent_upper(&self) -> bool {
        (0..self.size).all(|i| {
            (0..self.size).all(|j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => self.get(i, j).is_one(),
                std::cmp::Ordering::Greater => self.get(i, j).is_zero(),
                std::cmp::Ordering::Less => true,
            })
        })
    }

    /// Row `target` += `factor` · row `source`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &R) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.size {
            let s = self.get(source, j);
            if !s.is_zero() {
                let v = self.get(target, j).add_ref(&factor.mul_ref(s));
                self.set(target, j, v);
            }
        }
    }

    /// Column `target` += `factor` · column `source`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &R) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.size {
            let s = self.get(i, source);
            if !s.is_zero() {
                let v = self.get(i, target).add_ref(&factor.mul_ref(s));
                self.set(i, target, v);
            }
        }
    }

    /// The submatrix on the given rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<R>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect()
    }
}

impl SquareMatrix<Polynomial> {
    /// Lifts polynomial entries into the fraction field.
    pub fn to_rational(&self) -> SquareMatrix<RationalFunction> {
        self.map(|p| RationalFunction::from(p.clone()))
    }

    /// Entrywise integer evaluation.
    pub fn eval(&self, point: &[num_bigint::BigInt]) -> SquareMatrix<num_bigint::BigInt> {
        self.map(|p| p.eval(point))
    }

    /// Parses rows of polynomial strings in `z1..z_nvars`.
    pub fn parse_rows(rows: &[&[&str]], nvars: usize) -> Result<Self, crate::ring::RingError> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| Polynomial::parse(s, nvars)).collect())
            .collect::<Result<Vec<Vec<_>>, _>>()?;
        Ok(Self::from_rows(parsed))
    }
}

/// One bracketed row per line: `[a, b, c]`.
impl<R: Ring> fmt::Display for SquareMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, row) in self.rows().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn int_matrix(rows: &[&[i64]]) -> SquareMatrix<BigInt> {
        SquareMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn multiplication_and_identity() {
        let a = int_matrix(&[&[1, 2], &[3, 4]]);
        let b = int_matrix(&[&[0, 1], &[-1, 0]]);
        assert_eq!(a.mul(&b), int_matrix(&[&[-2, 1], &[-4, 3]]));
        let id = SquareMatrix::identity(2, &BigInt::from(0));
        assert!(id.is_identity());
        assert_eq!(a.mul(&id), a);
    }

    #[test]
    fn row_and_column_operations() {
        let mut a = int_matrix(&[&[1, 2], &[3, 4]]);
        a.add_row_multiple(0, 1, &BigInt::from(-1));
        assert_eq!(a, int_matrix(&[&[-2, -2], &[3, 4]]));
        a.add_col_multiple(1, 0, &BigInt::from(-1));
        assert_eq!(a, int_matrix(&[&[-2, 0], &[3, 1]]));
    }

    #[test]
    fn display_is_row_per_line() {
        let m = SquareMatrix::parse_rows(&[&["z1", "-1"], &["1", "0"]], 1).unwrap();
        assert_eq!(m.to_string(), "[z1, -1]\n[1, 0]");
    }
}
