//! Exact commutative rings used as matrix entries: integers, sparse
//! multivariate polynomials over ℤ, and their fraction field.

mod parse;
mod poly;
mod rational;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use poly::{Monomial, Polynomial};
pub use rational::RationalFunction;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("divisor does not divide the dividend over the integers")]
    DivisibilityFailure,
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

/// A commutative ring with identity whose elements know how to produce the
/// zero and one of their own ring (polynomials carry their variable count).
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn integer_like(&self, value: i64) -> Self {
        let one = self.one_like();
        match value {
            0 => self.zero_like(),
            1 => one,
            -1 => one.neg_ref(),
            _ => {
                // only small constants are ever needed here
                let mut acc = self.zero_like();
                for _ in 0..value.unsigned_abs() {
                    acc = acc.add_ref(&one);
                }
                if value < 0 {
                    acc.neg_ref()
                } else {
                    acc
                }
            }
        }
    }

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

impl Ring for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn integer_like(&self, value: i64) -> Self {
        BigInt::from(value)
    }
}

impl Ring for Polynomial {
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.nvars())
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn integer_like(&self, value: i64) -> Self {
        Polynomial::constant(self.nvars(), value)
    }
}

impl Ring for RationalFunction {
    fn zero_like(&self) -> Self {
        RationalFunction::zero(self.nvars())
    }
    fn one_like(&self) -> Self {
        RationalFunction::one(self.nvars())
    }
    fn is_zero(&self) -> bool {
        RationalFunction::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn integer_like(&self, value: i64) -> Self {
        RationalFunction::from(Polynomial::constant(self.nvars(), value))
    }
}

/// `(-1)^e` as an `i64`.
pub fn sign_pow(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
