use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Polynomial, RingError};

/// Element of ℚ(z1..zl) stored as `num / den` with integer-polynomial parts.
///
/// Normal form: `den` is nonzero with positive leading coefficient and the
/// integer content of the pair is 1. No polynomial gcd is taken, so two equal
/// rational functions may have different representations; equality is by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, RingError> {
        if num.nvars() != den.nvars() {
            return Err(RingError::VariableCountMismatch {
                left: num.nvars(),
                right: den.nvars(),
            });
        }
        if den.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn zero(nvars: usize) -> Self {
        Polynomial::zero(nvars).into()
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::one(nvars).into()
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        let nvars = num.nvars();
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(nvars),
            };
        }
        if den.is_one() {
            return RationalFunction { num, den };
        }
        if let Ok(q) = num.exact_div(&den) {
            return RationalFunction {
                num: q,
                den: Polynomial::one(nvars),
            };
        }
        let mut g = num.content().gcd(&den.content());
        if den.leading_coefficient_sign() == Some(false) {
            g = -g;
        }
        if g.is_one() {
            RationalFunction { num, den }
        } else {
            RationalFunction {
                num: num.div_coefficients(&g),
                den: den.div_coefficients(&g),
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this represents, if the denominator is a unit after
    /// normalization.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            self.num.exact_div(&self.den).ok()
        }
    }

    /// Cross-multiplication equality `a.num·b.den = b.num·a.den`.
    pub fn rat_equal(&self, other: &RationalFunction) -> bool {
        if self.nvars() != other.nvars() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, RingError> {
        self.combine(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.combine(other, true)
    }

    fn combine(&self, other: &Self, subtract: bool) -> Result<Self, RingError> {
        let rhs_num = if subtract { -&other.num } else { other.num.clone() };
        if self.den == other.den {
            let num = self.num.checked_add(&rhs_num)?;
            return Ok(Self::normalized(num, self.den.clone()));
        }
        // when one denominator divides the other, use the larger as common
        // denominator instead of the product
        if let Ok(q) = self.den.exact_div(&other.den) {
            let num = self.num.checked_add(&(&rhs_num * &q))?;
            return Ok(Self::normalized(num, self.den.clone()));
        }
        if let Ok(q) = other.den.exact_div(&self.den) {
            let num = (&self.num * &q).checked_add(&rhs_num)?;
            return Ok(Self::normalized(num, other.den.clone()));
        }
        let num = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&(&rhs_num * &self.den))?;
        Ok(Self::normalized(num, &self.den * &other.den))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, RingError> {
        if self.nvars() != other.nvars() {
            return Err(RingError::VariableCountMismatch {
                left: self.nvars(),
                right: other.nvars(),
            });
        }
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.nvars()));
        }
        let (a, d) = cancel_pair(&self.num, &other.den);
        let (c, b) = cancel_pair(&other.num, &self.den);
        Ok(Self::normalized(&a * &c, &b * &d))
    }

    pub fn recip(&self) -> Result<Self, RingError> {
        if self.is_zero() {
            return Err(RingError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, RingError> {
        self.checked_mul(&other.recip()?)
    }

    /// Removes the factor `f` from numerator and denominator as many times as
    /// it divides both.
    pub fn cancel_factor(&mut self, f: &Polynomial) {
        if f.as_constant().is_some() || self.den.is_one() {
            return;
        }
        loop {
            let Ok(d) = self.den.exact_div(f) else { return };
            let Ok(n) = self.num.exact_div(f) else { return };
            *self = Self::normalized(n, d);
            if self.den.is_one() {
                return;
            }
        }
    }

    /// Evaluates at an integer point; `None` when the denominator vanishes.
    /// The result is returned as a reduced fraction `(num, den)`.
    pub fn eval(&self, point: &[BigInt]) -> Option<(BigInt, BigInt)> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        let n = self.num.eval(point);
        let g = n.gcd(&d);
        let (mut n, mut d) = (n / &g, d / &g);
        if d < BigInt::zero() {
            n = -n;
            d = -d;
        }
        Some((n, d))
    }
}

/// Cancels `a / b` when one divides the other exactly.
fn cancel_pair(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial) {
    let nvars = a.nvars();
    if b.is_one() || a.as_constant().is_some() && b.as_constant().is_some() {
        return (a.clone(), b.clone());
    }
    if a == b {
        return (Polynomial::one(nvars), Polynomial::one(nvars));
    }
    if let Ok(q) = a.exact_div(b) {
        return (q, Polynomial::one(nvars));
    }
    if let Ok(q) = b.exact_div(a) {
        return (Polynomial::one(nvars), q);
    }
    (a.clone(), b.clone())
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.rat_equal(other)
    }
}

impl Eq for RationalFunction {}

impl From<Polynomial> for RationalFunction {
    fn from(num: Polynomial) -> Self {
        let den = Polynomial::one(num.nvars());
        RationalFunction { num, den }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

macro_rules! rat_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&RationalFunction> for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &RationalFunction) -> RationalFunction {
                self.$checked(rhs).expect("rational function operation failed")
            }
        }
        impl $trait<RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
    };
}

rat_binop!(Add, add, checked_add);
rat_binop!(Sub, sub, checked_sub);
rat_binop!(Mul, mul, checked_mul);
rat_binop!(Div, div, checked_div);

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -self.num,
            den: self.den,
        }
    }
}
