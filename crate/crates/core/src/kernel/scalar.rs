use std::fmt;

use super::{Jet, Rational};

/// Coefficient ring for structure constants: the ground field or truncated jets.
///
/// All jets meeting in one computation share an order; mixing orders panics.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn is_zero(&self) -> bool;
    fn accumulate(&mut self, other: &Self);
    fn deduct(&mut self, other: &Self);
    fn negated(&self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn scaled(&self, c: &Rational) -> Self;
    /// Lowest power of `h` with a nonzero coefficient.
    fn lowest_order(&self) -> Option<usize>;
    fn coefficients(&self) -> Vec<Rational>;
}

impl Scalar for Rational {
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn accumulate(&mut self, other: &Self) {
        *self = &*self + other;
    }
    fn deduct(&mut self, other: &Self) {
        *self = &*self - other;
    }
    fn negated(&self) -> Self {
        -self
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn scaled(&self, c: &Rational) -> Self {
        self * c
    }
    fn lowest_order(&self) -> Option<usize> {
        if Rational::is_zero(self) {
            None
        } else {
            Some(0)
        }
    }
    fn coefficients(&self) -> Vec<Rational> {
        vec![self.clone()]
    }
}

impl Scalar for Jet {
    fn is_zero(&self) -> bool {
        Jet::is_zero(self)
    }
    fn accumulate(&mut self, other: &Self) {
        self.add_assign_unchecked(other);
    }
    fn deduct(&mut self, other: &Self) {
        self.sub_assign_unchecked(other);
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn times(&self, other: &Self) -> Self {
        self.mul_unchecked(other)
    }
    fn scaled(&self, c: &Rational) -> Self {
        self.scale(c)
    }
    fn lowest_order(&self) -> Option<usize> {
        Jet::lowest_order(self)
    }
    fn coefficients(&self) -> Vec<Rational> {
        self.coeffs().to_vec()
    }
}
