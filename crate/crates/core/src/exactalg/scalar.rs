//! Elements of the rational function field ℚ(s).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::parse::{parse_scalar, ScalarParseError};
use super::poly::Poly;
use super::Rational;

/// A reduced fraction `num/den` of polynomials in `s` with a monic denominator.
///
/// Every field element has exactly one such representation, so derived
/// equality and hashing are field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Scalar {
    /// Builds `num/den` in canonical form; `None` when `den` is zero.
    pub fn from_fraction(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Scalar::zero());
        }
        if den.is_constant() {
            let c = den.leading().recip();
            return Some(Scalar { num: num.scale(&c), den: Poly::one() });
        }
        let g = Poly::gcd(&num, &den);
        let (mut num, mut den) = if g.is_one() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        let lc = den.leading();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Some(Scalar { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar { num: p, den: Poly::one() }
    }

    pub fn from_rational(q: Rational) -> Self {
        Scalar::from_poly(Poly::constant(q))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(n.into()))
    }

    /// The transcendental parameter `s`.
    pub fn s() -> Self {
        Scalar::from_poly(Poly::s())
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    /// True when the value does not depend on `s`.
    pub fn is_rational(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.num.coeff(0))
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Value at `s = x`, or `None` when `x` is a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// The constant scalar obtained by substituting `s = x`.
    pub fn specialize(&self, x: &Rational) -> Option<Scalar> {
        self.eval(x).map(Scalar::from_rational)
    }

    pub fn inv(&self) -> Option<Scalar> {
        Scalar::from_fraction(self.den.clone(), self.num.clone()).filter(|_| !self.num.is_zero())
    }

    pub fn pow(&self, e: i64) -> Option<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(e.unsigned_abs()).ok()?;
        Some(Scalar { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn parse(text: &str) -> Result<Scalar, ScalarParseError> {
        parse_scalar(text)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar { num: Poly::zero(), den: Poly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_poly(Poly::one())
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::from_rational(q)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Scalar::from_fraction(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        // Both denominators are monic and each fraction is reduced, so only the
        // common factor g of the denominators can cancel.
        let g = Poly::gcd(&self.den, &rhs.den);
        if g.is_one() {
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            return Scalar { num, den: &self.den * &rhs.den };
        }
        let bd = self.den.div_rem(&g).0;
        let dd = rhs.den.div_rem(&g).0;
        let num = &(&self.num * &dd) + &(&rhs.num * &bd);
        if num.is_zero() {
            return Scalar::zero();
        }
        let den = &self.den * &dd;
        let h = Poly::gcd(&num, &g);
        if h.is_one() {
            Scalar { num, den }
        } else {
            Scalar { num: num.div_rem(&h).0, den: den.div_rem(&h).0 }
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        // Cross cancellation keeps the gcds small; the result is already reduced.
        let (a, b) = cancel(&self.num, &rhs.den);
        let (c, d) = cancel(&rhs.num, &self.den);
        Scalar { num: &a * &c, den: &b * &d }
    }
}

/// Removes the monic gcd of `p` and the monic `q` from both.
fn cancel(p: &Poly, q: &Poly) -> (Poly, Poly) {
    if q.is_one() {
        return (p.clone(), q.clone());
    }
    let g = Poly::gcd(p, q);
    if g.is_one() {
        (p.clone(), q.clone())
    } else {
        (p.div_rem(&g).0, q.div_rem(&g).0)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like the integer and rational types.
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero in ℚ(s)");
        if rhs.is_rational() {
            let c = rhs.num.coeff(0).recip();
            return Scalar { num: self.num.scale(&c), den: self.den.clone() };
        }
        let lc = rhs.num.leading().recip();
        let inv = Scalar { num: rhs.den.scale(&lc), den: rhs.num.scale(&lc) };
        self * &inv
    }
}

macro_rules! forward_by_value {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    )*};
}
forward_by_value!(Add::add, Sub::sub, Mul::mul, Div::div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let negated = -&self.num;
        let num = if self.num.renders_atomic() {
            self.num.to_string()
        } else if negated.renders_atomic() {
            format!("-{negated}")
        } else {
            format!("({})", self.num)
        };
        let den = if self.den.renders_atomic() { self.den.to_string() } else { format!("({})", self.den) };
        write!(f, "{num}/{den}")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl FromStr for Scalar {
    type Err = ScalarParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_scalar(&text).map_err(serde::de::Error::custom)
    }
}
