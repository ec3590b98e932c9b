//! Containments for singular loci: conic-wise membership of the Jacobian
//! ideal and chart-wise radical membership of a hyperplane union.

use alloc::string::ToString;
use alloc::vec::Vec;

use super::ChartSpec;
use crate::cert::{CertBuilder, Certificate, Claim, Verdict};
use crate::groebner::{buchberger, radical_member, GroebnerError, Ideal, Limits};
use crate::ring::{Grade, Poly};

/// One chart `{y_i = 1, x_j = 1}` per pair of a Y-graded and an X-graded variable.
pub fn affine_cover(vars: &crate::ring::Vars) -> Vec<ChartSpec> {
    let mut out = Vec::new();
    for y in vars.of_grade(Grade::Y) {
        for x in vars.of_grade(Grade::X) {
            out.push(ChartSpec::new(&[vars.name(y), vars.name(x)], &[]));
        }
    }
    out
}

fn jacobian_ideal_gens(q: &Poly) -> Vec<(alloc::string::String, Poly)> {
    let vars = q.vars();
    let mut out = alloc::vec![("Q".to_string(), q.clone())];
    for i in 0..vars.len() {
        if vars.grade(i) != Grade::Param {
            out.push((alloc::format!("dQ/d{}", vars.name(i)), q.derivative(i)));
        }
    }
    out
}

/// Pass iff `q` and all its partials lie in every listed ideal.
pub fn conic_singularity_check(q: &Poly, conics: &[Ideal], limits: &Limits) -> Result<Certificate, GroebnerError> {
    let mut inputs = alloc::vec![q.to_expr()];
    for c in conics {
        inputs.push(c.gens().iter().map(Poly::to_expr).collect::<Vec<_>>().join(","));
    }
    let mut cert = CertBuilder::new("conic-singularity", "listed curves lie in the singular locus", &inputs).limits(limits);
    let elems = jacobian_ideal_gens(q);
    for (k, conic) in conics.iter().enumerate() {
        let gb = buchberger(conic, q.vars().order(), limits)?;
        for (name, e) in &elems {
            let member = gb.contains(e).map_err(GroebnerError::Ring)?;
            cert.record(
                alloc::format!("curve {k}: {name}"),
                Claim::IdealMember { elem: e.clone(), gens: conic.gens().to_vec() },
                Verdict::from_bool(member),
            );
        }
    }
    Ok(cert.finish())
}

/// Pass iff `h` vanishes on the singular locus of `{q = 0}` in every chart; Unknown when a limit is hit.
pub fn singular_in_hyperplanes(q: &Poly, h: &Poly, charts: &[ChartSpec], limits: &Limits) -> Certificate {
    let inputs = [q.to_expr(), h.to_expr(), charts.iter().map(ChartSpec::describe).collect::<Vec<_>>().join(";")];
    let mut cert = CertBuilder::new("singular-in-hyperplanes", "singular locus lies in the given hypersurface", &inputs)
        .limits(limits);
    let elems = jacobian_ideal_gens(q);
    for chart in charts {
        let label = alloc::format!("chart {}", chart.describe());
        let dehom: Result<Vec<Poly>, _> = elems.iter().map(|(_, e)| chart.dehomogenize(e)).collect();
        let (gens, hu) = match (dehom, chart.dehomogenize(h)) {
            (Ok(g), Ok(hu)) => (g, hu),
            _ => {
                cert.record(label, Claim::Axiom("chart variables not declared".into()), Verdict::Fail);
                continue;
            }
        };
        let claim = Claim::RadicalMember { elem: hu.clone(), gens: gens.clone() };
        let outcome = match Ideal::new(gens) {
            Ok(ideal) => match radical_member(&hu, &ideal, limits) {
                Ok(b) => Verdict::from_bool(b),
                Err(GroebnerError::ResourceExceeded { .. }) => Verdict::Unknown,
                Err(_) => Verdict::Fail,
            },
            // Every generator vanished on the chart, so the singular locus is the whole chart.
            Err(_) => Verdict::from_bool(hu.is_zero()),
        };
        cert.record(label, claim, outcome);
    }
    cert.finish()
}
