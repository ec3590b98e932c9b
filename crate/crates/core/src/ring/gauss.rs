//! Gaussian rationals `re + im·i` with exact big-rational parts.

use alloc::string::{String, ToString};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of ℚ(i). Both parts are kept in lowest terms by `BigRational`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn zero() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::zero() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn from_bigint(n: BigInt) -> Self {
        GaussRat { re: BigRational::from_integer(n), im: BigRational::zero() }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `re² + im²`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussRat { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussRat::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// A square root inside ℚ(i), if one exists.
    ///
    /// For `z = a + bi`, a root `x + yi` satisfies `x² = (a + |z|)/2` and
    /// `y² = (|z| − a)/2`, so it exists iff `|z|` and both halves are rational squares.
    pub fn sqrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.im.is_zero() {
            return if self.re.is_positive() {
                rational_sqrt(&self.re).map(GaussRat::from_real)
            } else {
                rational_sqrt(&(-self.re.clone()))
                    .map(|y| GaussRat { re: BigRational::zero(), im: y })
            };
        }
        let modulus = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let x = rational_sqrt(&((&self.re + &modulus) / &two))?;
        let y = rational_sqrt(&((&modulus - &self.re) / &two))?;
        // Pick the sign of y so that 2xy = im.
        let y = if (&x * &y * &two) == self.im { y } else { -y };
        let r = GaussRat { re: x, im: y };
        debug_assert!(&r * &r == *self);
        Some(r)
    }

    /// Real rational part if the value is real.
    pub fn as_real(&self) -> Option<&BigRational> {
        self.im.is_zero().then_some(&self.re)
    }

    /// Used by the formatter to decide whether a leading `-` can be pulled out.
    pub(crate) fn is_negative_real_or_imag(&self) -> bool {
        (self.im.is_zero() && self.re.is_negative()) || (self.re.is_zero() && self.im.is_negative())
    }

    /// Serialisation in the polynomial grammar: `3/4`, `-2*i`, `(1/2+3*i)`.
    pub fn to_expr(&self) -> String {
        if self.im.is_zero() {
            return fmt_rat(&self.re);
        }
        if self.re.is_zero() {
            return imag_expr(&self.im);
        }
        let im = if self.im.is_negative() {
            let mut s = String::from("-");
            s.push_str(&imag_expr(&(-self.im.clone())));
            s
        } else {
            let mut s = String::from("+");
            s.push_str(&imag_expr(&self.im));
            s
        };
        let mut s = String::from("(");
        s.push_str(&fmt_rat(&self.re));
        s.push_str(&im);
        s.push(')');
        s
    }
}

fn imag_expr(im: &BigRational) -> String {
    if im.is_one() {
        "i".to_string()
    } else if (-im).is_one() {
        "-i".to_string()
    } else {
        let mut s = fmt_rat(im);
        s.push_str("*i");
        s
    }
}

fn fmt_rat(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        let mut s = q.numer().to_string();
        s.push('/');
        s.push_str(&q.denom().to_string());
        s
    }
}

/// Square root of a non-negative rational, if it is a perfect square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::from_real(&self.re * &rhs.re);
        }
        GaussRat {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRat::i();
        assert_eq!(&i * &i, GaussRat::from_int(-1));
    }

    #[test]
    fn inverse_roundtrip() {
        let z = GaussRat::new(BigRational::new(3.into(), 2.into()), BigRational::from_integer((-5).into()));
        assert!((&z * &z.inv().unwrap()).is_one());
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn square_roots() {
        assert_eq!(GaussRat::from_int(-4).sqrt(), Some(GaussRat::new(BigRational::zero(), BigRational::from_integer(2.into()))));
        // (1 + 2i)^2 = -3 + 4i
        let z = GaussRat::new(BigRational::from_integer((-3).into()), BigRational::from_integer(4.into()));
        let r = z.sqrt().unwrap();
        assert_eq!(&r * &r, z);
        assert!(GaussRat::from_int(2).sqrt().is_none());
        assert!(GaussRat::i().sqrt().is_none());
        assert_eq!(GaussRat::from_ratio(9, 4).sqrt(), Some(GaussRat::from_ratio(3, 2)));
    }

    #[test]
    fn expr_forms() {
        assert_eq!(GaussRat::from_ratio(-3, 4).to_expr(), "-3/4");
        assert_eq!((-GaussRat::i()).to_expr(), "-i");
        let z = GaussRat::new(BigRational::new(1.into(), 2.into()), BigRational::from_integer((-3).into()));
        assert_eq!(z.to_expr(), "(1/2-3*i)");
    }
}
