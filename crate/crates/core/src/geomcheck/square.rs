//! Exact test for being a square in `K[v]`, where `K` is the fraction field of
//! the parameter ring.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::GeomError;
use crate::fractions::RatFunc;
use crate::ring::{GaussRat, Grade, Monomial, Poly, Vars};

/// Outcome of [`univariate_square_test`].
#[derive(Clone, PartialEq, Debug)]
pub enum SquareTest {
    /// `p = w²` with the witness `w ∈ K[v]`.
    Square(RatFunc),
    NotSquare(NotSquareReason),
}

#[derive(Clone, PartialEq, Debug)]
pub enum NotSquareReason {
    OddDegree { degree: u32 },
    /// A positive-degree factor occurring with odd multiplicity (cleared of denominators).
    OddMultiplicityFactor { factor: Poly, multiplicity: usize },
    /// The root coefficients forced from the top down fail to reproduce `p` at `power`.
    CoefficientMismatch { power: usize, root: Vec<RatFunc>, expected: RatFunc, found: RatFunc },
    /// The leading coefficient has no square root in the parameter ring.
    LeadNotSquare { lead: Poly },
}

impl NotSquareReason {
    pub fn describe(&self) -> String {
        match self {
            NotSquareReason::OddDegree { degree } => alloc::format!("odd degree {degree}"),
            NotSquareReason::OddMultiplicityFactor { factor, multiplicity } => {
                alloc::format!("factor {factor} has odd multiplicity {multiplicity}")
            }
            NotSquareReason::CoefficientMismatch { power, expected, found, .. } => {
                alloc::format!("coefficient of power {power}: forced square gives {found}, polynomial has {expected}")
            }
            NotSquareReason::LeadNotSquare { lead } => alloc::format!("leading coefficient {lead} is not a square"),
        }
    }
}

/// Square root in the polynomial ring, if one exists. The sign is fixed by the leading coefficient.
pub fn poly_sqrt(p: &Poly) -> Option<Poly> {
    let vars = p.vars();
    if p.is_zero() {
        return Some(Poly::zero(vars));
    }
    let (m, c) = p.lead()?;
    if m.exps().iter().any(|e| e % 2 != 0) {
        return None;
    }
    let half = Monomial::from_exps(m.exps().iter().map(|e| e / 2).collect());
    let sc = c.sqrt()?;
    let two_inv = (&sc * &GaussRat::from_int(2)).inv()?;
    let mut root = Poly::monomial(vars, half.clone(), sc);
    let mut last = half.clone();
    for _ in 0..=p.len() * 4 + 16 {
        let rem = p - &(&root * &root);
        let Some((rm, rc)) = rem.lead() else { return Some(root) };
        let q = rm.div(&half)?;
        if vars.order().cmp(&q, &last) != core::cmp::Ordering::Less {
            return None;
        }
        let qc = rc * &two_inv;
        root = &root + &Poly::monomial(vars, q.clone(), qc);
        last = q;
    }
    None
}

/// Decides whether `p`, a polynomial in `var` with parameter coefficients, is a square in `K[var]`.
pub fn univariate_square_test(p: &Poly, var: usize) -> Result<SquareTest, GeomError> {
    let vars = p.vars();
    for i in p.support() {
        if i != var && vars.grade(i) != Grade::Param {
            return Err(GeomError::NotUnivariate(vars.name(var).to_string()));
        }
    }
    if p.is_zero() {
        return Ok(SquareTest::Square(RatFunc::zero(vars)));
    }
    let degree = p.degree_in(var);
    if degree % 2 == 1 {
        return Ok(SquareTest::NotSquare(NotSquareReason::OddDegree { degree }));
    }
    let up = UniPoly::from_poly(p, var);
    if let Some((factor, multiplicity)) = odd_multiplicity_factor(&up) {
        let factor = factor.to_normalized_poly(var);
        return Ok(SquareTest::NotSquare(NotSquareReason::OddMultiplicityFactor { factor, multiplicity }));
    }
    match_coefficients(&up, var)
}

fn match_coefficients(p: &UniPoly, var: usize) -> Result<SquareTest, GeomError> {
    let vars = &p.vars;
    let deg = p.deg().unwrap_or(0);
    let n = deg / 2;
    let lead = p.c[deg].clone();
    let Some(rn) = poly_sqrt(&lead) else {
        return Ok(SquareTest::NotSquare(NotSquareReason::LeadNotSquare { lead }));
    };
    let mut r: Vec<RatFunc> = alloc::vec![RatFunc::zero(vars); n + 1];
    r[n] = RatFunc::from_poly(rn);
    let two_rn = r[n].scale(&GaussRat::from_int(2));
    for k in 1..=n {
        let power = 2 * n - k;
        let mut acc = p.coeff(power);
        for i in (n - k + 1)..=n {
            let j = power - i;
            if j > n - k && j <= n {
                acc = simplify(acc.checked_sub(&r[i].checked_mul(&r[j])?)?);
            }
        }
        r[n - k] = simplify(acc.checked_div(&two_rn)?);
    }
    for power in (0..n).rev() {
        let mut found = RatFunc::zero(vars);
        for i in 0..=power {
            found = found.checked_add(&r[i].checked_mul(&r[power - i])?)?;
        }
        let found = simplify(found);
        let expected = p.coeff(power);
        if found != expected {
            return Ok(SquareTest::NotSquare(NotSquareReason::CoefficientMismatch { power, root: r, expected, found }));
        }
    }
    let x = RatFunc::from_poly(Poly::var(vars, var));
    let mut w = RatFunc::zero(vars);
    for c in r.iter().rev() {
        w = simplify(w.checked_mul(&x)?.checked_add(c)?);
    }
    Ok(SquareTest::Square(w))
}

/// Cancels the denominator when it divides the numerator exactly.
fn simplify(f: RatFunc) -> RatFunc {
    if f.den().is_one() {
        return f;
    }
    match f.num().exact_divide(f.den()) {
        Ok(q) => RatFunc::from_poly(q),
        Err(_) => f,
    }
}

/// Yun's squarefree decomposition, returning the first factor of odd multiplicity.
///
/// Runs over the parameter ring: gcds are made primitive, so by Gauss's lemma
/// every quotient the algorithm takes is exact there.
fn odd_multiplicity_factor(p: &UniPoly) -> Option<(UniPoly, usize)> {
    let dp = p.derivative();
    let a0 = UniPoly::gcd(p, &dp);
    if a0.deg() == Some(0) {
        return None;
    }
    let mut b = p.div_exact(&a0);
    let mut d = dp.div_exact(&a0).sub(&b.derivative());
    let mut i = 1;
    while b.deg().is_some_and(|k| k > 0) {
        let a = UniPoly::gcd(&b, &d);
        b = b.div_exact(&a);
        d = d.div_exact(&a).sub(&b.derivative());
        if a.deg().is_some_and(|k| k > 0) && i % 2 == 1 {
            return Some((a, i));
        }
        i += 1;
    }
    None
}

/// Gcd in the polynomial ring, with leading numeric coefficient one.
fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() || b.is_zero() {
        let g = if a.is_zero() { b } else { a };
        return match g.lead_coeff().and_then(GaussRat::inv) {
            Some(inv) => g.scale(&inv),
            None => g.clone(),
        };
    }
    let mut support = a.support();
    support.extend(b.support());
    let Some(&v) = support.iter().min() else { return Poly::one(a.vars()) };
    let (ua, ub) = (UniPoly::from_poly(a, v), UniPoly::from_poly(b, v));
    let c = poly_gcd(&ua.content(), &ub.content());
    let g = UniPoly::gcd(&ua, &ub);
    let g = &g.to_poly(v) * &c;
    let inv = g.lead_coeff().and_then(GaussRat::inv).expect("nonzero gcd");
    g.scale(&inv)
}

/// Dense polynomial in one variable over the other variables, lowest coefficient first, trimmed.
#[derive(Clone, Debug)]
struct UniPoly {
    vars: Vars,
    c: Vec<Poly>,
}

impl UniPoly {
    fn from_poly(p: &Poly, var: usize) -> Self {
        UniPoly::trimmed(p.vars().clone(), p.coefficients_in(var))
    }

    fn trimmed(vars: Vars, mut c: Vec<Poly>) -> Self {
        while c.last().is_some_and(Poly::is_zero) {
            c.pop();
        }
        UniPoly { vars, c }
    }

    fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn lead(&self) -> &Poly {
        self.c.last().expect("nonzero polynomial")
    }

    fn coeff(&self, k: usize) -> RatFunc {
        RatFunc::from_poly(self.c.get(k).cloned().unwrap_or_else(|| Poly::zero(&self.vars)))
    }

    fn derivative(&self) -> Self {
        let c = self.c.iter().enumerate().skip(1).map(|(k, a)| a.scale(&GaussRat::from_int(k as i64))).collect();
        UniPoly::trimmed(self.vars.clone(), c)
    }

    fn sub(&self, o: &UniPoly) -> Self {
        let n = self.c.len().max(o.c.len());
        let zero = Poly::zero(&self.vars);
        let c = (0..n).map(|k| self.c.get(k).unwrap_or(&zero) - o.c.get(k).unwrap_or(&zero)).collect();
        UniPoly::trimmed(self.vars.clone(), c)
    }

    fn to_poly(&self, var: usize) -> Poly {
        let x = Poly::var(&self.vars, var);
        self.c.iter().rev().fold(Poly::zero(&self.vars), |acc, a| &(&acc * &x) + a)
    }

    fn content(&self) -> Poly {
        self.c.iter().fold(Poly::zero(&self.vars), |g, a| poly_gcd(&g, a))
    }

    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.exact_div_scalar(&self.content())
    }

    /// Quotient by a divisor known to divide exactly.
    fn div_exact(&self, d: &UniPoly) -> Self {
        let dd = d.deg().expect("nonzero divisor");
        let lc = d.lead();
        let mut r = self.c.clone();
        let mut q = alloc::vec![Poly::zero(&self.vars); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd {
            let top = r.len() - 1;
            let s = r[top].exact_divide(lc).expect("exact quotient over a primitive divisor");
            for j in 0..=dd {
                r[top - dd + j] = &r[top - dd + j] - &(&s * &d.c[j]);
            }
            q[top - dd] = s;
            while r.last().is_some_and(Poly::is_zero) {
                r.pop();
            }
        }
        debug_assert!(r.is_empty(), "division was not exact");
        UniPoly::trimmed(self.vars.clone(), q)
    }

    /// Divides by the numeric leading coefficient.
    fn monic(&self) -> Self {
        let Some(inv) = self.c.last().and_then(|l| l.lead_coeff()).and_then(GaussRat::inv) else { return self.clone() };
        UniPoly::trimmed(self.vars.clone(), self.c.iter().map(|a| a.scale(&inv)).collect())
    }

    fn scale(&self, f: &Poly) -> Self {
        UniPoly::trimmed(self.vars.clone(), self.c.iter().map(|a| a * f).collect())
    }

    fn exact_div_scalar(&self, f: &Poly) -> Self {
        let c = self.c.iter().map(|a| a.exact_divide(f).expect("subresultant division is exact")).collect();
        UniPoly::trimmed(self.vars.clone(), c)
    }

    /// `(q, r)` with `lc(d)^k · self = q·d + r`, for `k ≥ deg self − deg d + 1`.
    fn pseudo_divrem(&self, d: &UniPoly, k: usize) -> (UniPoly, UniPoly) {
        let dd = d.deg().expect("nonzero divisor");
        let lc = d.lead();
        let mut r = self.c.clone();
        let mut q = alloc::vec![Poly::zero(&self.vars); r.len().saturating_sub(dd).max(1)];
        let mut used = 0;
        while r.len() > dd {
            let top = r.len() - 1;
            let s = r[top].clone();
            for a in q.iter_mut() {
                *a = &*a * lc;
            }
            q[top - dd] = &q[top - dd] + &s;
            for a in r.iter_mut() {
                *a = &*a * lc;
            }
            for j in 0..=dd {
                r[top - dd + j] = &r[top - dd + j] - &(&s * &d.c[j]);
            }
            while r.last().is_some_and(Poly::is_zero) {
                r.pop();
            }
            used += 1;
        }
        debug_assert!(used <= k);
        let rest = lc.pow((k - used) as u32);
        (UniPoly::trimmed(self.vars.clone(), q).scale(&rest), UniPoly::trimmed(self.vars.clone(), r).scale(&rest))
    }

    /// The primitive gcd, from the subresultant sequence.
    fn gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
        if b.is_zero() {
            return a.primitive();
        }
        if a.is_zero() {
            return b.primitive();
        }
        let (mut a, mut b) = if a.deg() >= b.deg() { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        if a.c.iter().chain(&b.c).all(Poly::is_constant) {
            // Over the coefficient field: Euclid with monic remainders.
            while !b.is_zero() {
                let r = a.pseudo_divrem(&b, a.deg().unwrap() - b.deg().unwrap() + 1).1.monic();
                a = b;
                b = r;
            }
            return a.monic();
        }
        let one = Poly::one(&a.vars);
        let (mut g, mut h) = (one.clone(), one);
        loop {
            let delta = a.deg().unwrap() - b.deg().unwrap();
            let r = a.pseudo_divrem(&b, delta + 1).1;
            if r.is_zero() {
                return b.primitive();
            }
            if r.deg() == Some(0) {
                return UniPoly::trimmed(a.vars.clone(), alloc::vec![Poly::one(&a.vars)]);
            }
            a = b;
            b = r.exact_div_scalar(&(&g * &h.pow(delta as u32)));
            g = a.lead().clone();
            if delta > 0 {
                h = g.pow(delta as u32).exact_divide(&h.pow(delta as u32 - 1)).expect("subresultant division is exact");
            }
        }
    }

    /// The factor as a polynomial with leading numeric coefficient one.
    fn to_normalized_poly(&self, var: usize) -> Poly {
        poly_gcd(&self.to_poly(var), &Poly::zero(&self.vars))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_poly, VarTable};

    fn vars() -> Vars {
        VarTable::parse_header("x:X t:P s:P").unwrap()
    }

    #[test]
    fn squares_have_witnesses() {
        let v = vars();
        let p = parse_poly("(x^2 + t*x - s)^2", &v).unwrap();
        let SquareTest::Square(w) = univariate_square_test(&p, 0).unwrap() else { panic!() };
        assert_eq!(w.pow(2), RatFunc::from_poly(p));
        let q = parse_poly("4*t^2*x^2", &v).unwrap();
        assert!(matches!(univariate_square_test(&q, 0).unwrap(), SquareTest::Square(_)));
    }

    #[test]
    fn non_squares_name_a_reason() {
        let v = vars();
        let odd = parse_poly("x^3 + t", &v).unwrap();
        assert!(matches!(
            univariate_square_test(&odd, 0).unwrap(),
            SquareTest::NotSquare(NotSquareReason::OddDegree { degree: 3 })
        ));
        let p = parse_poly("x^4 + 4*t*x^2", &v).unwrap();
        let SquareTest::NotSquare(NotSquareReason::OddMultiplicityFactor { factor, multiplicity }) =
            univariate_square_test(&p, 0).unwrap()
        else {
            panic!()
        };
        assert_eq!(factor, parse_poly("x^2 + 4*t", &v).unwrap());
        assert_eq!(multiplicity, 1);
        let p = parse_poly("(x^2 - s)^2 - 4*x^2", &v).unwrap();
        let SquareTest::NotSquare(NotSquareReason::CoefficientMismatch { power, root, .. }) =
            univariate_square_test(&p, 0).unwrap()
        else {
            panic!()
        };
        assert_eq!(power, 0);
        assert_eq!(root[0], RatFunc::from_poly(parse_poly("-s - 2", &v).unwrap()));
        let lead = parse_poly("t*x^2 + 1", &v).unwrap();
        assert!(matches!(
            univariate_square_test(&lead, 0).unwrap(),
            SquareTest::NotSquare(NotSquareReason::LeadNotSquare { .. }) | SquareTest::NotSquare(_)
        ));
    }

    #[test]
    fn rejects_other_variables() {
        let v = VarTable::parse_header("x:X y:Y t:P").unwrap();
        let p = parse_poly("x^2 + y", &v).unwrap();
        assert!(matches!(univariate_square_test(&p, 0), Err(GeomError::NotUnivariate(_))));
    }

    #[test]
    fn multivariate_square_roots() {
        let v = VarTable::parse_header("a:Y b:Y t:P").unwrap();
        let r = parse_poly("a^2 - 3*a*b + t*b^2 + 7", &v).unwrap();
        let sq = &r * &r;
        let root = poly_sqrt(&sq).unwrap();
        assert_eq!(&root * &root, sq);
        assert!(poly_sqrt(&parse_poly("a^2 + b^2", &v).unwrap()).is_none());
        assert_eq!(poly_sqrt(&parse_poly("-4", &v).unwrap()), Some(parse_poly("2*i", &v).unwrap()));
    }
}
