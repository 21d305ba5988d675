use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::RingError;

/// Exponent vector `z1^e1 ⋯ zl^el`, ordered graded-lexicographically with
/// `z1 < z2 < … < zl`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exponents: Box<[u32]>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            degree: 0,
            exponents: vec![0; nvars].into_boxed_slice(),
        }
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial {
            degree: exponents.iter().sum(),
            exponents: exponents.into_boxed_slice(),
        }
    }

    /// The monomial `z_index` (1-based).
    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index - 1] = 1;
        Monomial::new(e)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: self.degree + other.degree,
            exponents: self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Whether `self` divides `other`.
    fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree
            && self
                .exponents
                .iter()
                .zip(other.exponents.iter())
                .all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            degree: other.degree - self.degree,
            exponents: other
                .exponents
                .iter()
                .zip(self.exponents.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exponents.iter().rev().cmp(other.exponents.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `z1..z_nvars` with arbitrary-precision integer
/// coefficients. No stored coefficient is zero, so structural equality is
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, value: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, Monomial::one(nvars), value)
    }

    /// The variable `z_index`, 1-based.
    ///
    /// Panics if `index` is not in `1..=nvars`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(
            (1..=nvars).contains(&index),
            "variable z{index} outside z1..z{nvars}"
        );
        Self::monomial(nvars, Monomial::variable(nvars, index), 1)
    }

    /// The variables `z1..z_nvars` of the ring.
    pub fn variables(nvars: usize) -> Vec<Self> {
        (1..=nvars).map(|k| Self::var(nvars, k)).collect()
    }

    pub fn monomial(nvars: usize, monomial: Monomial, coeff: impl Into<BigInt>) -> Self {
        assert_eq!(monomial.exponents().len(), nvars);
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Polynomial { nvars, terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I, C>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
        C: Into<BigInt>,
    {
        let mut p = Polynomial::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial::new(e), c.into());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// Largest variable index occurring with positive exponent, or 0 for
    /// constants.
    pub fn max_variable(&self) -> usize {
        self.terms
            .keys()
            .filter_map(|m| m.exponents().iter().rposition(|&e| e > 0))
            .max()
            .map_or(0, |i| i + 1)
    }

    /// Non-negative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .values()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn scale(&self, factor: &BigInt) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Divides every coefficient by `divisor`, which must divide them all.
    pub(crate) fn div_coefficients(&self, divisor: &BigInt) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    debug_assert!((c % divisor).is_zero());
                    (m.clone(), c / divisor)
                })
                .collect(),
        }
    }

    /// Evaluates at an integer point, one value per variable.
    pub fn eval(&self, point: &[BigInt]) -> BigInt {
        assert_eq!(point.len(), self.nvars, "evaluation point dimension");
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_nvars(&self, other: &Polynomial) -> Result<(), RingError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(RingError::VariableCountMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_nvars(other)?;
        let (mut acc, rest) = if self.terms.len() >= other.terms.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &rest.terms {
            acc.add_term(m.clone(), c.clone());
        }
        Ok(acc)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_nvars(other)?;
        let mut acc = self.clone();
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), -c);
        }
        Ok(acc)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_nvars(other)?;
        let mut acc = Polynomial::zero(self.nvars);
        if self.is_zero() || other.is_zero() {
            return Ok(acc);
        }
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor` in ℤ[z], by repeated cancellation of
    /// the leading term. Fails with [`RingError::DivisibilityFailure`] as
    /// soon as a leading term is not divisible, which happens iff no integer
    /// polynomial quotient exists.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial, RingError> {
        self.check_nvars(divisor)?;
        let (lead_m, lead_c) = divisor.leading_term().ok_or(RingError::DivisionByZero)?;
        let (lead_m, lead_c) = (lead_m.clone(), lead_c.clone());
        if let (Some(a), Some(b)) = (self.total_degree(), divisor.total_degree()) {
            if a < b {
                return Err(RingError::DivisibilityFailure);
            }
        }
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lead_m.divides(m) {
                return Err(RingError::DivisibilityFailure);
            }
            let (qc, r) = c.div_rem(&lead_c);
            if !r.is_zero() {
                return Err(RingError::DivisibilityFailure);
            }
            let qm = lead_m.quotient_of(m);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.mul(&qm), -(dc * &qc));
            }
            quotient.add_term(qm, qc);
        }
        Ok(quotient)
    }

    /// Parses the text format produced by `Display`, with variables
    /// `z1..z<nvars>`.
    pub fn parse(text: &str, nvars: usize) -> Result<Polynomial, RingError> {
        super::parse::parse_polynomial(text, nvars)
    }

    pub(crate) fn leading_coefficient_sign(&self) -> Option<bool> {
        self.leading_term().map(|(_, c)| c.is_positive())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let negative = c.is_negative();
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            if m.is_one() {
                write!(f, "{magnitude}")?;
                continue;
            }
            let mut first = true;
            if !magnitude.is_one() {
                write!(f, "{magnitude}")?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                write!(f, "z{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

// Operator forms panic on a variable-count mismatch; use the `checked_*`
// methods where that is a recoverable condition.
macro_rules! poly_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("polynomial variable count mismatch")
            }
        }
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, checked_add);
poly_binop!(Sub, sub, checked_sub);
poly_binop!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}
