use std::fmt;

use num_traits::{One, Zero};

use super::{Rational, Scalar};

/// Exact field arithmetic by reference, shared by the ℚ and ℚ(s) linear algebra.
pub trait Field: Clone + Eq + fmt::Debug + fmt::Display + Zero + One {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// Panics when `rhs` is zero.
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Rough size of the representation; elimination prefers small pivots.
    fn weight(&self) -> usize;
}

macro_rules! impl_field {
    ($t:ty, $weight:expr) => {
        impl Field for $t {
            fn add_ref(&self, rhs: &Self) -> Self {
                self + rhs
            }
            fn sub_ref(&self, rhs: &Self) -> Self {
                self - rhs
            }
            fn mul_ref(&self, rhs: &Self) -> Self {
                self * rhs
            }
            fn div_ref(&self, rhs: &Self) -> Self {
                self / rhs
            }
            fn neg_ref(&self) -> Self {
                -self
            }
            fn weight(&self) -> usize {
                $weight(self)
            }
        }
    };
}

fn rational_weight(q: &Rational) -> usize {
    (q.numer().bits() + q.denom().bits()) as usize
}

fn scalar_weight(x: &Scalar) -> usize {
    let poly = |p: &super::Poly| p.coeffs().iter().map(rational_weight).sum::<usize>();
    poly(x.numer()) + poly(x.denom())
}

impl_field!(Rational, rational_weight);
impl_field!(Scalar, scalar_weight);
