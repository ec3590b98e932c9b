//! The [`Poly`] type and its exact arithmetic.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::{same_table, Bidegree, GaussRat, Grade, Monomial, RingError, Vars};

/// Sparse polynomial; terms are sorted descending in the table's order and carry no zero coefficients.
#[derive(Clone, Debug)]
pub struct Poly {
    vars: Vars,
    terms: Vec<(Monomial, GaussRat)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl Poly {
    pub fn zero(vars: &Vars) -> Self {
        Poly { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn constant(vars: &Vars, c: GaussRat) -> Self {
        Self::monomial(vars, Monomial::one(vars.len()), c)
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, GaussRat::one())
    }

    pub fn from_int(vars: &Vars, n: i64) -> Self {
        Self::constant(vars, GaussRat::from_int(n))
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: GaussRat) -> Self {
        debug_assert_eq!(m.len(), vars.len());
        let terms = if c.is_zero() { Vec::new() } else { alloc::vec![(m, c)] };
        Poly { vars: vars.clone(), terms }
    }

    /// The variable with index `idx`.
    pub fn var(vars: &Vars, idx: usize) -> Self {
        Self::monomial(vars, Monomial::var(vars.len(), idx, 1), GaussRat::one())
    }

    pub fn var_named(vars: &Vars, name: &str) -> Result<Self, RingError> {
        Ok(Self::var(vars, vars.index(name)?))
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Monomial, GaussRat)>) -> Self {
        let mut terms: Vec<(Monomial, GaussRat)> = terms.into_iter().collect();
        let order = vars.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Monomial, GaussRat)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = &*lc + &c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Poly { vars: vars.clone(), terms: out }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, GaussRat)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term in the table's order.
    pub fn lead(&self) -> Option<&(Monomial, GaussRat)> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lead_coeff(&self) -> Option<&GaussRat> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// Value of a constant polynomial (zero included).
    pub fn constant_value(&self) -> Option<GaussRat> {
        match self.terms.as_slice() {
            [] => Some(GaussRat::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(m, c)] if m.is_one() && c.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) > 0)
    }

    /// Indices of variables that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len()).filter(|&v| self.uses_var(v)).collect()
    }

    fn check_table(&self, other: &Poly) -> Result<(), RingError> {
        if same_table(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(RingError::VarTableMismatch)
        }
    }

    fn assert_table(&self, other: &Poly) {
        assert!(same_table(&self.vars, &other.vars), "polynomials over different variable tables");
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check_table(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check_table(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check_table(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let order = self.vars.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        Poly { vars: self.vars.clone(), terms: out }
    }

    fn product(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.vars);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        let mut prods = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                prods.push((m1.mul(m2), c1 * c2));
            }
        }
        Poly::from_terms(&self.vars, prods)
    }

    /// `self · c · m`; the order is multiplicative so sorting is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &GaussRat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect();
        Poly { vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, c: &GaussRat) -> Poly {
        self.mul_term(&Monomial::one(self.vars.len()), c)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.vars);
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

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.lead_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.inv().unwrap()),
            _ => self.clone(),
        }
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: usize) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(var) > 0).map(|(m, c)| {
            let e = m.exp(var);
            let mut m2 = m.clone();
            m2.set_exp(var, e - 1);
            (m2, c * &GaussRat::from_int(e as i64))
        });
        // Lowering one exponent can break grevlex sortedness, so re-sort.
        Poly::from_terms(&self.vars, terms)
    }

    pub fn derivative_named(&self, name: &str) -> Result<Poly, RingError> {
        Ok(self.derivative(self.vars.index(name)?))
    }

    /// Common bidegree of every term.
    pub fn bidegree(&self) -> Result<Bidegree, RingError> {
        let mut it = self.terms.iter();
        let (m0, c0) = it.next().ok_or(RingError::ZeroPolynomial)?;
        let b0 = self.vars.bidegree(m0);
        for (m, c) in it {
            if self.vars.bidegree(m) != b0 {
                return Err(RingError::NotBihomogeneous {
                    first: self.term_expr(m0, c0),
                    second: self.term_expr(m, c),
                });
            }
        }
        Ok(b0)
    }

    /// Coefficients of `self` as a polynomial in `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, GaussRat)>> = alloc::vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exp(var) as usize;
            let mut m2 = m.clone();
            m2.set_exp(var, 0);
            buckets[k].push((m2, c.clone()));
        }
        buckets.into_iter().map(|t| Poly::from_terms(&self.vars, t)).collect()
    }

    /// Replaces variable `var` by `value` (a polynomial over the same table).
    pub fn substitute_var(&self, var: usize, value: &Poly) -> Poly {
        self.assert_table(value);
        let coeffs = self.coefficients_in(var);
        // Horner in `value`.
        let mut acc = Poly::zero(&self.vars);
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Sets the listed variables to constants.
    pub fn specialize(&self, values: &[(usize, GaussRat)]) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut m2 = m.clone();
            let mut c2 = c.clone();
            for (v, val) in values {
                let e = m.exp(*v);
                if e > 0 {
                    c2 = &c2 * &val.pow(e);
                    m2.set_exp(*v, 0);
                }
            }
            (m2, c2)
        });
        Poly::from_terms(&self.vars, terms)
    }

    /// Sets every chart variable to 1. The variable table is kept.
    pub fn dehomogenize(&self, chart: &[&str]) -> Result<Poly, RingError> {
        let mut vals = Vec::with_capacity(chart.len());
        for name in chart {
            vals.push((self.vars.index(name)?, GaussRat::one()));
        }
        Ok(self.specialize(&vals))
    }

    /// Inverse of [`dehomogenize`](Self::dehomogenize): pads each term with powers of
    /// `y` and `x` up to `target`. The result equals `self` after dehomogenizing at `{y, x}`.
    pub fn rehomogenize(&self, y: usize, x: usize, target: Bidegree) -> Result<Poly, RingError> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let b = self.vars.bidegree(m);
            if b.dy > target.dy || b.dx > target.dx {
                return Err(RingError::DegreeTooHigh { term: b, target });
            }
            let mut m2 = m.clone();
            m2.set_exp(y, m.exp(y) + target.dy - b.dy);
            m2.set_exp(x, m.exp(x) + target.dx - b.dx);
            terms.push((m2, c.clone()));
        }
        Ok(Poly::from_terms(&self.vars, terms))
    }

    /// Quotient `q` with `self = q·g`.
    ///
    /// A single polynomial is a Gröbner basis of the ideal it generates, so if the
    /// running remainder's leading term is not divisible by `lt(g)` there is no quotient.
    pub fn exact_divide(&self, g: &Poly) -> Result<Poly, RingError> {
        self.check_table(g)?;
        let (gm, gc) = g.lead().ok_or(RingError::DivideByZero)?;
        let gc_inv = gc.inv().unwrap();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.lead() {
            let qm = m.div(gm).ok_or(RingError::NotDivisible)?;
            let qc = c * &gc_inv;
            let neg_qc = -&qc;
            rem = &rem + &g.mul_term(&qm, &neg_qc);
            quot.push((qm, qc));
        }
        Ok(Poly::from_terms(&self.vars, quot))
    }

    /// Same polynomial over a table with the same names in a possibly different order,
    /// or over any table containing every variable that occurs.
    pub fn embed(&self, target: &Vars) -> Result<Poly, RingError> {
        if same_table(&self.vars, target) {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, name) in self.vars.names().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => map.push(Some(j)),
                None if self.uses_var(i) => return Err(RingError::UnknownVariable(name.clone())),
                None => map.push(None),
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut exps = alloc::vec![0u32; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if let Some(j) = map[i] {
                    exps[j] = e;
                }
            }
            (Monomial::from_exps(exps), c.clone())
        });
        Ok(Poly::from_terms(target, terms))
    }

    /// Evaluates at a full point.
    pub fn eval(&self, point: &[GaussRat]) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_lead(&mut self) -> Option<(Monomial, GaussRat)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Builds from terms already sorted descending, distinct and nonzero.
    pub(crate) fn from_sorted_terms(vars: &Vars, terms: Vec<(Monomial, GaussRat)>) -> Poly {
        Poly { vars: vars.clone(), terms }
    }

    /// Whether every occurring variable has the given grade (constants qualify).
    pub fn only_grade(&self, g: Grade) -> bool {
        self.support().iter().all(|&v| self.vars.grade(v) == g)
    }

    pub(crate) fn term_expr(&self, m: &Monomial, c: &GaussRat) -> String {
        let p = Poly { vars: self.vars.clone(), terms: alloc::vec![(m.clone(), c.clone())] };
        p.to_expr()
    }

    /// Canonical text in the polynomial grammar.
    pub fn to_expr(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_real_or_imag();
            let shown = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = self.monomial_expr(m);
            if mono.is_empty() {
                out.push_str(&shown.to_expr());
            } else {
                if !shown.is_one() {
                    out.push_str(&shown.to_expr());
                    out.push('*');
                }
                out.push_str(&mono);
            }
        }
        out
    }

    fn monomial_expr(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(self.vars.name(i));
            if e > 1 {
                s.push('^');
                s.push_str(&alloc::format!("{e}"));
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_expr())
    }
}

// Operator impls panic on mismatched tables; use the `checked_*` methods for untrusted input.
impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_table(rhs);
        self.merge(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_table(rhs);
        self.merge(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_table(rhs);
        self.product(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_poly, VarTable};
    use super::*;

    fn vars() -> Vars {
        VarTable::parse_header("y0:Y y1:Y x0:X x1:X t:P").unwrap()
    }

    #[test]
    fn cancellation_is_exact() {
        let v = vars();
        let p = parse_poly("(y0+x0)*(y0-x0)", &v).unwrap();
        assert_eq!(p, parse_poly("y0^2 - x0^2", &v).unwrap());
        assert!((&p - &p).is_zero());
    }

    #[test]
    fn bidegree_reports_offending_terms() {
        let v = vars();
        let p = parse_poly("y0*x0 + y0^2", &v).unwrap();
        match p.bidegree() {
            Err(RingError::NotBihomogeneous { first, second }) => {
                assert!(first.contains("y0"));
                assert!(second.contains("y0"));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_poly("t*y0*x1^2", &v).unwrap().bidegree(), Ok(Bidegree::new(1, 2)));
        assert_eq!(Poly::zero(&v).bidegree(), Err(RingError::ZeroPolynomial));
    }

    #[test]
    fn dehomogenize_and_back() {
        let v = vars();
        let p = parse_poly("y0^2*x0 + y0*y1*x1", &v).unwrap();
        let d = p.dehomogenize(&["y0", "x0"]).unwrap();
        assert_eq!(d, parse_poly("1 + y1*x1", &v).unwrap());
        let back = d.rehomogenize(0, 2, Bidegree::new(2, 1)).unwrap();
        assert_eq!(back, p);
        let pure = parse_poly("y0^2*x0", &v).unwrap();
        assert!(pure.dehomogenize(&["y0", "x0"]).unwrap().is_one());
    }

    #[test]
    fn exact_division() {
        let v = vars();
        let f = parse_poly("y1*(y0^2 - t*x1)", &v).unwrap();
        let g = parse_poly("y1", &v).unwrap();
        assert_eq!(f.exact_divide(&g).unwrap(), parse_poly("y0^2 - t*x1", &v).unwrap());
        let x1 = parse_poly("x0+1", &v).unwrap();
        let x = parse_poly("x0", &v).unwrap();
        assert_eq!(x1.exact_divide(&x), Err(RingError::NotDivisible));
        assert_eq!(x.exact_divide(&Poly::zero(&v)), Err(RingError::DivideByZero));
    }

    #[test]
    fn mismatched_tables_are_reported() {
        let a = parse_poly("y0", &vars()).unwrap();
        let other = VarTable::parse_header("y0:Y").unwrap();
        let b = parse_poly("y0", &other).unwrap();
        assert_eq!(a.checked_add(&b), Err(RingError::VarTableMismatch));
        assert_eq!(b.embed(a.vars()).unwrap(), a);
    }

    #[test]
    fn derivative_and_coefficients() {
        let v = vars();
        let p = parse_poly("y0^3*x1 + t*y0", &v).unwrap();
        assert_eq!(p.derivative(0), parse_poly("3*y0^2*x1 + t", &v).unwrap());
        let cs = p.coefficients_in(0);
        assert_eq!(cs.len(), 4);
        assert_eq!(cs[1], parse_poly("t", &v).unwrap());
        assert_eq!(cs[3], parse_poly("x1", &v).unwrap());
        assert_eq!(p.substitute_var(0, &parse_poly("x0", &v).unwrap()), parse_poly("x0^3*x1 + t*x0", &v).unwrap());
    }
}
