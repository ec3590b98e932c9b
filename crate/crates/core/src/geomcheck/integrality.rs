//! Discriminants of quadratics and the one-sided integrality refutation:
//! a specialization under which the discriminant is not a square shows the
//! quadratic is irreducible over the function field.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::square::{univariate_square_test, SquareTest};
use super::{ChartSpec, GeomError};
use crate::cert::{CertBuilder, Certificate, Claim, Verdict};
use crate::fractions::{divide_monomial, monomial_content};
use crate::ring::{Grade, Monomial, Poly, Substitution};

/// `lead·v² + b·v + c` with coefficients free of `v`; the monic case has `lead = 1`.
#[derive(Clone, PartialEq, Debug)]
pub struct Quadratic {
    pub var: String,
    pub lead: Poly,
    pub b: Poly,
    pub c: Poly,
}

impl Quadratic {
    pub fn monic(var: &str, b: Poly, c: Poly) -> Self {
        let lead = Poly::one(b.vars());
        Quadratic { var: var.to_string(), lead, b, c }
    }

    /// Reads off the coefficients of a polynomial of degree exactly 2 in `var`.
    pub fn from_poly(p: &Poly, var: &str) -> Result<Self, GeomError> {
        let v = p.vars().index(var)?;
        let degree = p.degree_in(v);
        if degree != 2 {
            return Err(GeomError::NotQuadratic { var: var.to_string(), degree });
        }
        let mut cs = p.coefficients_in(v);
        let lead = cs.pop().unwrap();
        let b = cs.pop().unwrap();
        let c = cs.pop().unwrap();
        Ok(Quadratic { var: var.to_string(), lead, b, c })
    }

    pub fn is_monic(&self) -> bool {
        self.lead.is_one()
    }

    pub fn to_poly(&self) -> Result<Poly, GeomError> {
        let v = Poly::var_named(self.lead.vars(), &self.var)?;
        Ok(&(&(&self.lead * &(&v * &v)) + &(&self.b * &v)) + &self.c)
    }
}

/// `b² − 4·lead·c`.
pub fn discriminant(q: &Quadratic) -> Poly {
    let four = Poly::from_int(q.b.vars(), 4);
    &(&q.b * &q.b) - &(&four * &(&q.lead * &q.c))
}

/// Everything the refutation computed, alongside its certificate.
#[derive(Clone, Debug)]
pub struct IntegralityRefutation {
    pub certificate: Certificate,
    pub quadratic: Quadratic,
    pub discriminant: Poly,
    pub specialized: Poly,
    pub outcome: SquareTest,
}

/// Dehomogenizes `family_eq` on `chart`, reads it as a quadratic in `quad_var`,
/// specializes the discriminant by `spec_map` and tests it for being a square.
pub fn integrality_refutation(
    family_eq: &Poly,
    chart: &ChartSpec,
    quad_var: &str,
    spec_map: &Substitution,
) -> Result<IntegralityRefutation, GeomError> {
    let vars = family_eq.vars();
    chart.validate(vars)?;
    let qv = vars.index(quad_var)?;
    let inputs =
        [family_eq.to_expr(), chart.describe(), quad_var.to_string(), spec_map.entries().map(|(n, r)| alloc::format!("{n}->{r}")).collect::<Vec<_>>().join(";")];
    let mut cert = CertBuilder::new("integrality", "generic fiber is integral via a non-square discriminant", &inputs);

    let dehom = chart.dehomogenize(family_eq)?;
    let mut content = monomial_content(&dehom);
    let mut exps = content.exps().to_vec();
    exps[qv] = 0;
    content = Monomial::from_exps(exps);
    let eq = if content.is_one() {
        dehom
    } else {
        cert.note(alloc::format!("divided by the monomial {}", Poly::monomial(vars, content.clone(), crate::ring::GaussRat::one())));
        divide_monomial(&dehom, &content)
    };
    let quadratic = Quadratic::from_poly(&eq, quad_var)?;
    cert.check("quadratic reconstruction", Claim::PolyEq { lhs: quadratic.to_poly()?, rhs: eq.clone() });
    let delta = discriminant(&quadratic);
    cert.note(alloc::format!("discriminant: {delta}"));

    let image = spec_map.apply(&delta)?;
    let specialized_target = image.to_poly().ok_or(crate::ring::RingError::NotDivisible)?;
    let target = spec_map.target();
    let mut remaining = specialized_target.support().into_iter().filter(|&i| target.grade(i) != Grade::Param);
    let var = match (remaining.next(), remaining.next()) {
        (Some(v), None) => v,
        (None, _) => target.index_of(quad_var).filter(|&i| target.grade(i) != Grade::Param).unwrap_or(0),
        (Some(_), Some(_)) => return Err(GeomError::NotUnivariate(quad_var.to_string())),
    };
    let var_name = target.name(var).to_string();
    cert.note(alloc::format!("specialized discriminant: {specialized_target}"));

    let outcome = univariate_square_test(&specialized_target, var)?;
    let verdict = match &outcome {
        SquareTest::NotSquare(reason) => {
            cert.note(alloc::format!("not a square: {}", reason.describe()));
            cert.record(
                "specialized discriminant is not a square",
                Claim::NotSquare { poly: specialized_target.clone(), var: var_name },
                Verdict::Pass,
            );
            cert.current()
        }
        SquareTest::Square(w) => {
            cert.note(alloc::format!("specialization is a square of {w}; inconclusive"));
            Verdict::Unknown
        }
    };
    let certificate = cert.finish_with(verdict);
    Ok(IntegralityRefutation { certificate, quadratic, discriminant: delta, specialized: specialized_target, outcome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fractions::RatFunc;
    use crate::ring::{parse_poly, GaussRat, VarTable};

    #[test]
    fn discriminant_of_monic_quadratics() {
        let v = VarTable::parse_header("w:Y b:P c:P").unwrap();
        let q = Quadratic::from_poly(&parse_poly("w^2 - 1", &v).unwrap(), "w").unwrap();
        assert!(q.is_monic());
        assert_eq!(discriminant(&q), Poly::from_int(&v, 4));
        let q = Quadratic::monic("w", parse_poly("b", &v).unwrap(), parse_poly("c", &v).unwrap());
        assert_eq!(discriminant(&q), parse_poly("b^2 - 4*c", &v).unwrap());
        let cubic = parse_poly("w^3", &v).unwrap();
        assert!(matches!(Quadratic::from_poly(&cubic, "w"), Err(GeomError::NotQuadratic { degree: 3, .. })));
    }

    #[test]
    fn reducible_family_is_inconclusive() {
        let v = VarTable::parse_header("a:Y y0:Y x1:X").unwrap();
        let eq = parse_poly("a^2 - (x1 + y0)^2", &v).unwrap();
        let chart = ChartSpec::new(&["y0"], &[]);
        let map = Substitution::new(&v, &v).identity_on_shared();
        let r = integrality_refutation(&eq, &chart, "a", &map).unwrap();
        assert_eq!(r.certificate.verdict, Verdict::Unknown);
        assert!(matches!(r.outcome, SquareTest::Square(_)));
    }

    #[test]
    fn refutes_by_specialization() {
        let v = VarTable::parse_header("a:Y y0:Y x1:X t:P").unwrap();
        let eq = parse_poly("y0^2*a^2 + y0*x1*a - t*x1^2", &v).unwrap();
        let chart = ChartSpec::new(&["y0"], &[]);
        let map = Substitution::new(&v, &v).identity_on_shared().with(
            "y0",
            RatFunc::constant(&v, GaussRat::one()),
        ).unwrap();
        let r = integrality_refutation(&eq, &chart, "a", &map).unwrap();
        // Δ = x1² + 4t·x1² = x1²(1 + 4t) is a square only up to the parameter factor.
        assert_eq!(r.discriminant, parse_poly("x1^2 + 4*t*x1^2", &v).unwrap());
        assert_eq!(r.certificate.verdict, Verdict::Pass);
    }
}
