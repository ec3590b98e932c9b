//! Unreduced fractions of polynomials.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::ring::{GaussRat, Monomial, Poly, RingError, Vars};

/// `num / den` with `den ≠ 0`. Equality is by cross-multiplication.
///
/// Only cheap normalisations are applied: the denominator is made monic, a
/// constant denominator is absorbed and the common monomial content is cancelled.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        match (self.num.checked_mul(&other.den), other.num.checked_mul(&self.den)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }
}

impl RatFunc {
    pub fn new(num: Poly, den: Poly) -> Result<Self, RingError> {
        if den.is_zero() {
            return Err(RingError::DivideByZero);
        }
        if !crate::ring::same_table(num.vars(), den.vars()) {
            return Err(RingError::VarTableMismatch);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if let Some(c) = den.constant_value() {
            let inv = c.inv().expect("nonzero denominator");
            let one = Poly::one(den.vars());
            return RatFunc { num: num.scale(&inv), den: one };
        }
        let mut num = num;
        let mut den = den;
        if !num.is_zero() {
            let content = monomial_content(&num).gcd(&monomial_content(&den));
            if !content.is_one() {
                num = divide_monomial(&num, &content);
                den = divide_monomial(&den, &content);
            }
        } else {
            den = Poly::one(den.vars());
        }
        let lc = den.lead_coeff().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn from_poly(p: Poly) -> Self {
        let one = Poly::one(p.vars());
        RatFunc { num: p, den: one }
    }

    pub fn zero(vars: &Vars) -> Self {
        Self::from_poly(Poly::zero(vars))
    }

    pub fn one(vars: &Vars) -> Self {
        Self::from_poly(Poly::one(vars))
    }

    pub fn constant(vars: &Vars, c: GaussRat) -> Self {
        Self::from_poly(Poly::constant(vars, c))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn vars(&self) -> &Vars {
        self.num.vars()
    }

    pub fn into_parts(self) -> (Poly, Poly) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial this fraction equals, if the denominator divides the numerator.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.den.is_one() {
            return Some(self.num.clone());
        }
        self.num.exact_divide(&self.den).ok()
    }

    pub fn checked_add(&self, o: &RatFunc) -> Result<RatFunc, RingError> {
        if self.den == o.den {
            return RatFunc::new(self.num.checked_add(&o.num)?, self.den.clone());
        }
        let n = self.num.checked_mul(&o.den)?.checked_add(&o.num.checked_mul(&self.den)?)?;
        RatFunc::new(n, self.den.checked_mul(&o.den)?)
    }

    pub fn checked_sub(&self, o: &RatFunc) -> Result<RatFunc, RingError> {
        self.checked_add(&-o)
    }

    pub fn checked_mul(&self, o: &RatFunc) -> Result<RatFunc, RingError> {
        RatFunc::new(self.num.checked_mul(&o.num)?, self.den.checked_mul(&o.den)?)
    }

    pub fn inv(&self) -> Result<RatFunc, RingError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, o: &RatFunc) -> Result<RatFunc, RingError> {
        self.checked_mul(&o.inv()?)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc::normalized(self.num.pow(e), self.den.pow(e))
    }

    pub fn scale(&self, c: &GaussRat) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn embed(&self, vars: &Vars) -> Result<RatFunc, RingError> {
        Ok(RatFunc { num: self.num.embed(vars)?, den: self.den.embed(vars)? })
    }

    /// Canonical text: the numerator alone when the denominator is 1.
    pub fn to_expr(&self) -> String {
        if self.den.is_one() {
            return self.num.to_expr();
        }
        alloc::format!("({})/({})", self.num, self.den)
    }
}

/// Largest monomial dividing every term.
pub(crate) fn monomial_content(p: &Poly) -> Monomial {
    let mut it = p.terms().iter();
    let first = match it.next() {
        Some((m, _)) => m.clone(),
        None => return Monomial::one(p.vars().len()),
    };
    it.fold(first, |acc, (m, _)| acc.gcd(m))
}

pub(crate) fn divide_monomial(p: &Poly, m: &Monomial) -> Poly {
    Poly::from_terms(p.vars(), p.terms().iter().map(|(t, c)| (t.div(m).expect("content divides"), c.clone())))
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

impl From<Poly> for RatFunc {
    fn from(p: Poly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        self.checked_add(o).expect("matching variable tables")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self.checked_sub(o).expect("matching variable tables")
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        self.checked_mul(o).expect("matching variable tables")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_poly, parse_ratfunc, VarTable};

    #[test]
    fn cross_multiplication_equality() {
        let v = VarTable::parse_header("x:P y:P z:P").unwrap();
        let a = parse_ratfunc("x/y", &v).unwrap();
        let z1 = parse_poly("z + 1", &v).unwrap();
        let b = RatFunc::new(parse_poly("x", &v).unwrap() * &z1, parse_poly("y", &v).unwrap() * &z1).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, parse_ratfunc("y/x", &v).unwrap());
    }

    #[test]
    fn monomial_content_cancels() {
        let v = VarTable::parse_header("x:P y:P").unwrap();
        let r = parse_ratfunc("(x^2*y + x*y^2)/(2*x*y)", &v).unwrap();
        assert_eq!(r.num(), &parse_poly("1/2*x + 1/2*y", &v).unwrap());
        assert!(r.den().is_one());
    }

    #[test]
    fn inverse_of_zero_fails() {
        let v = VarTable::parse_header("x:P").unwrap();
        assert_eq!(RatFunc::zero(&v).inv(), Err(RingError::DivideByZero));
        assert!(parse_ratfunc("x/(x-x)", &v).is_err());
    }
}
