//! Strict semistability of a two-equation family on an affine chart, checked
//! through a Jacobian minor and one partial derivative per stratum.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{det_minor, jacobian_matrix, ChartSpec, GeomError};
use crate::cert::{CertBuilder, Certificate, Claim};
use crate::families::DegenerationFamily;
use crate::ring::{GaussRat, Poly};

/// A component (`Y0`, `Y1` or `Z`) and the variable whose partial should be a unit on it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComponentPartial {
    pub component: String,
    pub var: String,
}

impl ComponentPartial {
    pub fn new(component: &str, var: &str) -> Self {
        ComponentPartial { component: component.to_string(), var: var.to_string() }
    }
}

#[derive(Clone, Debug)]
pub struct SemistabilityReport {
    pub certificate: Certificate,
    pub minor: Poly,
    /// `(component, variable, partial)` on the chart.
    pub partials: Vec<(String, String, Poly)>,
}

/// Checks on `chart`: (a) the minor of the Jacobian of `(h, f)` in `minor_cols` is a unit,
/// (b) the special fiber of `f` is the product of the component coordinates,
/// (c) each component's declared partial is a unit, (d) likewise for the intersection.
pub fn semistability_check(
    family: &DegenerationFamily,
    chart: &ChartSpec,
    minor_cols: (&str, &str),
    partials: &[ComponentPartial],
) -> Result<SemistabilityReport, GeomError> {
    let vars = &family.vars;
    chart.validate(vars)?;
    let f = family.f.as_ref().ok_or_else(|| GeomError::ComponentMismatch("family has no parameter equation".into()))?;
    let (Some(y0), Some(y1), Some(z)) = (family.component("Y0"), family.component("Y1"), family.intersection.as_ref())
    else {
        return Err(GeomError::ComponentMismatch("family needs components Y0, Y1 and an intersection".into()));
    };
    let (Some(b), Some(a)) = (&y0.coord, &y1.coord) else {
        return Err(GeomError::ComponentMismatch("components need coordinate hyperplanes".into()));
    };
    let (ai, bi) = (vars.index(a)?, vars.index(b)?);
    let invertibles: Vec<String> = chart.invertibles().to_vec();
    let inputs = [family.h.to_expr(), f.to_expr(), chart.describe(), alloc::format!("{},{}", minor_cols.0, minor_cols.1)];
    let mut cert = CertBuilder::new("semistability", "family is strictly semistable off the boundary", &inputs);

    let h_u = chart.dehomogenize(&family.h)?;
    let f_u = chart.dehomogenize(f)?;
    let jac = jacobian_matrix(&[h_u.clone(), f_u.clone()], &[minor_cols.0, minor_cols.1])?;
    let minor = det_minor(&jac, &[0, 1], &[0, 1])?;
    cert.check(
        alloc::format!("(a) minor in columns ({},{})", minor_cols.0, minor_cols.1),
        Claim::UnitOffBoundary { poly: minor.clone(), invertibles: invertibles.clone() },
    );

    let t = family.param_index();
    let zero = GaussRat::zero();
    let special = f_u.specialize(&[(t, zero.clone())]);
    let product = &Poly::var(vars, ai) * &Poly::var(vars, bi);
    cert.check(alloc::format!("(b) special fiber is {a}·{b}"), Claim::PolyEq { lhs: special, rhs: product });

    let mut out = Vec::new();
    for cp in partials {
        let (label, restricted, declared) = match cp.component.as_str() {
            "Y0" => ("(c) Y0", h_u.specialize(&[(bi, zero.clone())]), &y0.equation),
            "Y1" => ("(c) Y1", h_u.specialize(&[(ai, zero.clone())]), &y1.equation),
            "Z" => ("(d) Z", h_u.specialize(&[(ai, zero.clone()), (bi, zero.clone())]), z),
            other => return Err(GeomError::ComponentMismatch(alloc::format!("unknown component `{other}`"))),
        };
        cert.check(
            alloc::format!("{label} chart equation"),
            Claim::PolyEq { lhs: restricted.clone(), rhs: chart.dehomogenize(declared)? },
        );
        let d = restricted.derivative_named(&cp.var)?;
        cert.check(
            alloc::format!("{label} partial in {}", cp.var),
            Claim::UnitOffBoundary { poly: d.clone(), invertibles: invertibles.clone() },
        );
        out.push((cp.component.clone(), cp.var.clone(), d));
    }
    Ok(SemistabilityReport { certificate: cert.finish(), minor, partials: out })
}
