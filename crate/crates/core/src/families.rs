//! Constructors for the degeneration families and the check that a component
//! has trivial degree-zero Chow group of one-cycles after removing the boundary.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::cert::{CertBuilder, Certificate, Claim, Verdict};
use crate::geomcheck::ChartSpec;
use crate::ring::{Bidegree, GaussRat, Grade, Poly, RingError, Vars};

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum FamilyError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("seed `{name}` has bidegree {found}, expected {expected}")]
    SeedDegreeMismatch { name: String, expected: Bidegree, found: Bidegree },
    #[error("degree {degree} in `{var}`, expected 1")]
    NotLinearInVariable { var: String, degree: u32 },
    #[error("special fiber does not split: {0}")]
    FactorizationFails(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Variant {
    /// Two-equation family `{H = 0 = ab + t·y0²}` whose special fiber is a union of two double-cone components.
    DoubleCone,
    /// Single equation `tH − G·F` raising the bidegree of a seed.
    DegreeRaise,
    /// Two-equation family `{F + y0·x0²·a + y1²·x1·b = 0 = ab + t·x0·y0}` over a (2,2) seed.
    Kuechle,
    /// Two-equation family `{H = 0 = cd + s·y1²}` over a (3,2) seed.
    SectionSix,
    /// The (2,3) hypersurface `y0y1c + y1²x0M − t·y0²x0L` and its quartic partner.
    CubicReduction,
}

impl Variant {
    pub const ALL: [Variant; 5] =
        [Variant::DoubleCone, Variant::DegreeRaise, Variant::Kuechle, Variant::SectionSix, Variant::CubicReduction];

    pub fn name(self) -> &'static str {
        match self {
            Variant::DoubleCone => "double-cone",
            Variant::DegreeRaise => "degree-raise",
            Variant::Kuechle => "kuechle",
            Variant::SectionSix => "section-six",
            Variant::CubicReduction => "cubic-reduction",
        }
    }

    pub fn parse(s: &str) -> Option<Variant> {
        Variant::ALL.into_iter().find(|v| v.name() == s)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Bidegree parameters. `target` is the raised bidegree for [`Variant::DegreeRaise`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FamilyParams {
    pub d: u32,
    pub f: u32,
    pub target: Option<Bidegree>,
}

impl FamilyParams {
    pub fn new(d: u32, f: u32) -> Self {
        FamilyParams { d, f, target: None }
    }

    pub fn raised_to(mut self, d: u32, f: u32) -> Self {
        self.target = Some(Bidegree::new(d, f));
        self
    }
}

/// Named seed polynomials: `G` for most variants, `G` and `H` for degree raising,
/// `c`, `M`, `L` for the cubic reduction.
#[derive(Clone, Debug, Default)]
pub struct Seed {
    polys: BTreeMap<String, Poly>,
}

impl Seed {
    pub fn new() -> Self {
        Seed::default()
    }

    pub fn g(g: Poly) -> Self {
        Seed::new().with("G", g)
    }

    pub fn with(mut self, name: &str, p: Poly) -> Self {
        self.polys.insert(name.to_string(), p);
        self
    }

    pub fn get(&self, name: &str) -> Result<&Poly, FamilyError> {
        self.polys.get(name).ok_or_else(|| FamilyError::BadParams(alloc::format!("missing seed `{name}`")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Poly)> {
        self.polys.iter().map(|(k, v)| (k.as_str(), v))
    }
}

/// A special-fiber component: its equation inside the hyperplane `coord = 0`.
#[derive(Clone, PartialEq, Debug)]
pub struct Component {
    pub name: String,
    pub coord: Option<String>,
    pub equation: Poly,
}

#[derive(Clone, Debug)]
pub struct DegenerationFamily {
    pub variant: Variant,
    pub vars: Vars,
    /// The deformation parameter (`t` or `s`).
    pub param: String,
    /// `(l, m)` with the total space in `P^l × P^m` over the parameter line.
    pub dims: (usize, usize),
    pub degree: Bidegree,
    pub seed: Seed,
    /// The parameter equation, absent for single-equation families.
    pub f: Option<Poly>,
    pub h: Poly,
    pub components: Vec<Component>,
    pub intersection: Option<Poly>,
    pub chart: ChartSpec,
    /// Auxiliary equations: `X'` (double cone model) or `Q'` (cubic reduction partner).
    pub extra: BTreeMap<String, Poly>,
}

impl DegenerationFamily {
    /// Equations with their expected bidegrees.
    pub fn equations(&self) -> Vec<(&'static str, &Poly)> {
        let mut v = Vec::new();
        if let Some(f) = &self.f {
            v.push(("F", f));
        }
        v.push(("H", &self.h));
        v
    }

    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    /// `(n, r)` with the seed ambient written as `P^{n−r} × P^{r+1}`.
    pub fn seed_nr(&self) -> Option<(usize, usize)> {
        let g = self.seed.get("G").ok()?;
        let l = g.vars().of_grade(Grade::Y).len().checked_sub(1)?;
        let m = g.vars().of_grade(Grade::X).len().checked_sub(1)?;
        Some((l + m - 1, m.checked_sub(1)?))
    }

    pub fn param_index(&self) -> usize {
        self.vars.index_of(&self.param).expect("parameter declared")
    }
}

fn check_degree(name: &str, p: &Poly, expected: Bidegree) -> Result<(), FamilyError> {
    let found = p.bidegree()?;
    if found != expected {
        return Err(FamilyError::SeedDegreeMismatch { name: name.to_string(), expected, found });
    }
    Ok(())
}

fn block(vars: &Vars, g: Grade, need: usize, variant: Variant) -> Result<Vec<usize>, FamilyError> {
    let idx = vars.of_grade(g);
    if idx.len() < need {
        return Err(FamilyError::BadParams(alloc::format!(
            "{variant} needs at least {need} {}-graded variables in the seed",
            g.tag()
        )));
    }
    Ok(idx)
}

struct Builder {
    vars: Vars,
}

impl Builder {
    fn var(&self, name: &str) -> Poly {
        Poly::var_named(&self.vars, name).expect("declared")
    }

    /// `coeff · y^dy · x^dx · v`, by names.
    fn mono(&self, factors: &[(&str, u32)]) -> Poly {
        factors.iter().fold(Poly::one(&self.vars), |acc, (n, e)| &acc * &self.var(n).pow(*e))
    }
}

fn dims_of(vars: &Vars) -> (usize, usize) {
    (vars.of_grade(Grade::Y).len().saturating_sub(1), vars.of_grade(Grade::X).len().saturating_sub(1))
}

/// Builds the family of the given variant over the seed.
pub fn build_family(variant: Variant, params: FamilyParams, seed: &Seed) -> Result<DegenerationFamily, FamilyError> {
    match variant {
        Variant::DoubleCone => double_cone(params, seed),
        Variant::DegreeRaise => degree_raise(params, seed),
        Variant::Kuechle => kuechle(params, seed),
        Variant::SectionSix => section_six(params, seed),
        Variant::CubicReduction => cubic_reduction(params, seed),
    }
}

fn double_cone(p: FamilyParams, seed: &Seed) -> Result<DegenerationFamily, FamilyError> {
    if p.d < 2 || p.f < 2 {
        return Err(FamilyError::BadParams(alloc::format!("double cone needs d ≥ 2 and f ≥ 2, got ({},{})", p.d, p.f)));
    }
    let g = seed.get("G")?;
    check_degree("G", g, Bidegree::new(p.d, p.f))?;
    let sv = g.vars();
    let ys = block(sv, Grade::Y, 2, Variant::DoubleCone)?;
    let xs = block(sv, Grade::X, 2, Variant::DoubleCone)?;
    let (a, b, t) = (sv.fresh_name("a"), sv.fresh_name("b"), sv.fresh_name("t"));
    let vars = sv.extended([(a.clone(), Grade::Y), (b.clone(), Grade::Y), (t.clone(), Grade::Param)])?;
    let bl = Builder { vars: vars.clone() };
    let (y0, y1, x0, x1) = (sv.name(ys[0]), sv.name(ys[1]), sv.name(xs[0]), sv.name(xs[1]));
    let g = g.embed(&vars)?;
    let f = &bl.mono(&[(&a, 1), (&b, 1)]) + &bl.mono(&[(&t, 1), (y0, 2)]);
    let a_term = bl.mono(&[(y0, p.d - 1), (x0, p.f), (&a, 1)]);
    let b_term = bl.mono(&[(y1, p.d - 1), (x1, p.f), (&b, 1)]);
    let h = &(&g + &a_term) + &b_term;
    let model = &(&(&g * &bl.var(&a)) + &(&a_term * &bl.var(&a))) - &bl.mono(&[(&t, 1), (y1, p.d - 1), (x1, p.f), (y0, 2)]);
    let components = alloc::vec![
        Component { name: "Y0".into(), coord: Some(b.clone()), equation: &g + &a_term },
        Component { name: "Y1".into(), coord: Some(a.clone()), equation: &g + &b_term },
    ];
    let mut extra = BTreeMap::new();
    extra.insert("X'".to_string(), model);
    Ok(DegenerationFamily {
        variant: Variant::DoubleCone,
        dims: dims_of(&vars),
        vars,
        param: t,
        degree: Bidegree::new(p.d, p.f),
        seed: seed.clone(),
        f: Some(f),
        h,
        components,
        intersection: Some(g),
        chart: ChartSpec::new(&[y0, x0], &[y0, x0, y1, x1]),
        extra,
    })
}

fn degree_raise(p: FamilyParams, seed: &Seed) -> Result<DegenerationFamily, FamilyError> {
    let target = p.target.ok_or_else(|| FamilyError::BadParams("degree raise needs a target bidegree".into()))?;
    if target.dy < p.d || target.dx < p.f {
        return Err(FamilyError::BadParams(alloc::format!("target {target} is below ({},{})", p.d, p.f)));
    }
    let g = seed.get("G")?;
    let hs = seed.get("H")?;
    check_degree("G", g, Bidegree::new(p.d, p.f))?;
    check_degree("H", hs, target)?;
    let sv = g.vars();
    let ys = block(sv, Grade::Y, 1, Variant::DegreeRaise)?;
    let xs = block(sv, Grade::X, 1, Variant::DegreeRaise)?;
    let t = sv.fresh_name("t");
    let vars = sv.extended([(t.clone(), Grade::Param)])?;
    let bl = Builder { vars: vars.clone() };
    let (y0, x0) = (sv.name(ys[0]), sv.name(xs[0]));
    let g = g.embed(&vars)?;
    let hs = hs.embed(&vars)?;
    let fm = bl.mono(&[(y0, target.dy - p.d), (x0, target.dx - p.f)]);
    let h = &(&bl.var(&t) * &hs) - &(&g * &fm);
    let components = alloc::vec![
        Component { name: "G".into(), coord: None, equation: g },
        Component { name: "F".into(), coord: None, equation: fm },
    ];
    Ok(DegenerationFamily {
        variant: Variant::DegreeRaise,
        dims: dims_of(&vars),
        vars,
        param: t,
        degree: target,
        seed: seed.clone(),
        f: None,
        h,
        components,
        intersection: None,
        chart: ChartSpec::new(&[y0, x0], &[y0, x0]),
        extra: BTreeMap::new(),
    })
}

fn kuechle(p: FamilyParams, seed: &Seed) -> Result<DegenerationFamily, FamilyError> {
    let g = seed.get("G")?;
    if (p.d, p.f) != (2, 2) {
        return Err(FamilyError::BadParams(alloc::format!("the Küchle family has bidegree (2,2), got ({},{})", p.d, p.f)));
    }
    check_degree("G", g, Bidegree::new(2, 2))?;
    let sv = g.vars();
    let ys = block(sv, Grade::Y, 2, Variant::Kuechle)?;
    let xs = block(sv, Grade::X, 2, Variant::Kuechle)?;
    let (a, b, t) = (sv.fresh_name("a"), sv.fresh_name("b"), sv.fresh_name("t"));
    let vars = sv.extended([(a.clone(), Grade::Y), (b.clone(), Grade::X), (t.clone(), Grade::Param)])?;
    let bl = Builder { vars: vars.clone() };
    let (y0, y1, x0, x1) = (sv.name(ys[0]), sv.name(ys[1]), sv.name(xs[0]), sv.name(xs[1]));
    let g = g.embed(&vars)?;
    let f = &bl.mono(&[(&a, 1), (&b, 1)]) + &bl.mono(&[(&t, 1), (x0, 1), (y0, 1)]);
    let a_term = bl.mono(&[(y0, 1), (x0, 2), (&a, 1)]);
    let b_term = bl.mono(&[(y1, 2), (x1, 1), (&b, 1)]);
    let h = &(&g + &a_term) + &b_term;
    let components = alloc::vec![
        Component { name: "Y0".into(), coord: Some(b.clone()), equation: &g + &a_term },
        Component { name: "Y1".into(), coord: Some(a.clone()), equation: &g + &b_term },
    ];
    Ok(DegenerationFamily {
        variant: Variant::Kuechle,
        dims: dims_of(&vars),
        vars,
        param: t,
        degree: Bidegree::new(2, 2),
        seed: seed.clone(),
        f: Some(f),
        h,
        components,
        intersection: Some(g),
        chart: ChartSpec::new(&[y0, x0], &[x0, x1, y0, y1]),
        extra: BTreeMap::new(),
    })
}

fn section_six(p: FamilyParams, seed: &Seed) -> Result<DegenerationFamily, FamilyError> {
    if p.d < 2 || p.f < 1 {
        return Err(FamilyError::BadParams(alloc::format!("needs d ≥ 2 and f ≥ 1, got ({},{})", p.d, p.f)));
    }
    let g = seed.get("G")?;
    check_degree("G", g, Bidegree::new(p.d, p.f))?;
    let sv = g.vars();
    let ys = block(sv, Grade::Y, 3, Variant::SectionSix)?;
    let xs = block(sv, Grade::X, 3, Variant::SectionSix)?;
    let (c, d, s) = (sv.fresh_name("c"), sv.fresh_name("d"), sv.fresh_name("s"));
    let vars = sv.extended([(c.clone(), Grade::Y), (d.clone(), Grade::Y), (s.clone(), Grade::Param)])?;
    let bl = Builder { vars: vars.clone() };
    let (y0, y1, y2) = (sv.name(ys[0]), sv.name(ys[1]), sv.name(ys[2]));
    let (x0, x1, x2) = (sv.name(xs[0]), sv.name(xs[1]), sv.name(xs[2]));
    let g = g.embed(&vars)?;
    let f = &bl.mono(&[(&c, 1), (&d, 1)]) + &bl.mono(&[(&s, 1), (y1, 2)]);
    let c_term = bl.mono(&[(y1, p.d - 1), (x1, p.f), (&c, 1)]);
    let d_term = bl.mono(&[(y0, p.d - 1), (x0, p.f), (&d, 1)]);
    let h = &(&g + &c_term) + &d_term;
    let components = alloc::vec![
        Component { name: "Y0".into(), coord: Some(d.clone()), equation: &g + &c_term },
        Component { name: "Y1".into(), coord: Some(c.clone()), equation: &g + &d_term },
    ];
    Ok(DegenerationFamily {
        variant: Variant::SectionSix,
        dims: dims_of(&vars),
        vars,
        param: s,
        degree: Bidegree::new(p.d, p.f),
        seed: seed.clone(),
        f: Some(f),
        h,
        components,
        intersection: Some(g),
        chart: ChartSpec::new(&[y1, x0], &[y0, x0, y1, x1, y2, x2]),
        extra: BTreeMap::new(),
    })
}

fn cubic_reduction(p: FamilyParams, seed: &Seed) -> Result<DegenerationFamily, FamilyError> {
    if (p.d, p.f) != (2, 3) {
        return Err(FamilyError::BadParams(alloc::format!("the cubic reduction has bidegree (2,3), got ({},{})", p.d, p.f)));
    }
    let c = seed.get("c")?;
    let m = seed.get("M")?;
    let l = seed.get("L")?;
    check_degree("c", c, Bidegree::new(0, 3))?;
    check_degree("M", m, Bidegree::new(0, 2))?;
    check_degree("L", l, Bidegree::new(0, 2))?;
    let sv = c.vars();
    let xs = block(sv, Grade::X, 1, Variant::CubicReduction)?;
    let (y0, y1) = (sv.fresh_name("y0"), sv.fresh_name("y1"));
    let xr = sv.fresh_name(&alloc::format!("x{}", xs.len()));
    let t = sv.fresh_name("t");
    let mut decls: Vec<(String, Grade)> = alloc::vec![(y0.clone(), Grade::Y), (y1.clone(), Grade::Y)];
    decls.extend(sv.names().iter().cloned().zip((0..sv.len()).map(|i| sv.grade(i))));
    decls.push((xr.clone(), Grade::X));
    decls.push((t.clone(), Grade::Param));
    let vars = crate::ring::VarTable::new(decls, sv.order())?;
    let bl = Builder { vars: vars.clone() };
    let x0 = sv.name(xs[0]);
    let (c, m, l) = (c.embed(&vars)?, m.embed(&vars)?, l.embed(&vars)?);
    let h = &(&(&bl.mono(&[(&y0, 1), (&y1, 1)]) * &c) + &(&bl.mono(&[(&y1, 2), (x0, 1)]) * &m))
        - &(&bl.mono(&[(&t, 1), (&y0, 2), (x0, 1)]) * &l);
    let q = &(&(&bl.var(&xr) * &c) + &(&bl.mono(&[(&xr, 2)]) * &m)) - &(&bl.mono(&[(&t, 1), (x0, 2)]) * &l);
    let mut extra = BTreeMap::new();
    extra.insert("Q'".to_string(), q);
    Ok(DegenerationFamily {
        variant: Variant::CubicReduction,
        dims: dims_of(&vars),
        vars,
        param: t,
        degree: Bidegree::new(2, 3),
        seed: seed.clone(),
        f: None,
        h,
        components: Vec::new(),
        intersection: None,
        chart: ChartSpec::new(&[y0.as_str(), x0], &[]),
        extra,
    })
}

/// The three special-fiber polynomials and the certificate of the split.
#[derive(Clone, Debug)]
pub struct SpecialFiber {
    pub y0: Poly,
    pub y1: Poly,
    pub z: Option<Poly>,
    pub certificate: Certificate,
}

/// Checks that the special fiber is the union of the declared components.
pub fn special_fiber_split(family: &DegenerationFamily) -> Result<SpecialFiber, FamilyError> {
    let vars = &family.vars;
    let t = family.param_index();
    let at_zero = |p: &Poly| p.specialize(&[(t, GaussRat::zero())]);
    let inputs = [family.variant.name().to_string(), family.h.to_expr()];
    let mut cert = CertBuilder::new("special-fiber", "special fiber splits into the declared components", &inputs);
    let fail = |label: &str| FamilyError::FactorizationFails(label.to_string());
    match family.variant {
        Variant::CubicReduction => return Err(fail("the cubic reduction has no declared components")),
        Variant::DegreeRaise => {
            let g = &family.components[0].equation;
            let fm = &family.components[1].equation;
            let label = "H at parameter 0 is -G·F";
            if cert.check(label, Claim::PolyEq { lhs: at_zero(&family.h), rhs: -&(g * fm) }) != Verdict::Pass {
                return Err(fail(label));
            }
            return Ok(SpecialFiber { y0: g.clone(), y1: fm.clone(), z: None, certificate: cert.finish() });
        }
        _ => {}
    }
    let (Some(c0), Some(c1)) = (family.component("Y0"), family.component("Y1")) else {
        return Err(fail("missing components"));
    };
    let (Some(b), Some(a)) = (&c0.coord, &c1.coord) else { return Err(fail("components without coordinates")) };
    let (bi, ai) = (vars.index(b)?, vars.index(a)?);
    let f = family.f.as_ref().ok_or_else(|| fail("no parameter equation"))?;
    let product = &Poly::var(vars, ai) * &Poly::var(vars, bi);
    let label = alloc::format!("F at parameter 0 is {a}·{b}");
    if cert.check(label.clone(), Claim::PolyEq { lhs: at_zero(f), rhs: product }) != Verdict::Pass {
        return Err(fail(&label));
    }
    let zero = GaussRat::zero();
    let checks = [
        (alloc::format!("H restricted to {b}=0 is Y0"), family.h.specialize(&[(bi, zero.clone())]), c0.equation.clone()),
        (alloc::format!("H restricted to {a}=0 is Y1"), family.h.specialize(&[(ai, zero.clone())]), c1.equation.clone()),
    ];
    for (label, lhs, rhs) in checks {
        if cert.check(label.clone(), Claim::PolyEq { lhs, rhs }) != Verdict::Pass {
            return Err(fail(&label));
        }
    }
    let z = family.h.specialize(&[(ai, zero.clone()), (bi, zero)]);
    if let Some(declared) = &family.intersection {
        let label = alloc::format!("H restricted to {a}={b}=0 is Z");
        if cert.check(label.clone(), Claim::PolyEq { lhs: z.clone(), rhs: declared.clone() }) != Verdict::Pass {
            return Err(fail(&label));
        }
    }
    Ok(SpecialFiber { y0: c0.equation.clone(), y1: c1.equation.clone(), z: Some(z), certificate: cert.finish() })
}

/// `P` from `Q + P·v`, and the boundary variables dividing it.
#[derive(Clone, Debug)]
pub struct Ch1Report {
    pub certificate: Certificate,
    pub p: Poly,
    pub witnesses: Option<(String, String)>,
}

/// Checks the hypothesis of the projection argument: the hypersurface is `Q + P·v` and
/// `{P = 0}` contains a boundary divisor of each of the types (1,0) and (0,1).
///
/// Only single-variable divisors are detected; the distinguished variable may sit in either block.
pub fn ch1_hypothesis_check(hypersurface: &Poly, var: &str, boundary: &ChartSpec) -> Result<Ch1Report, FamilyError> {
    let vars = hypersurface.vars();
    let v = vars.index(var)?;
    hypersurface.bidegree()?;
    let degree = hypersurface.degree_in(v);
    if degree != 1 {
        return Err(FamilyError::NotLinearInVariable { var: var.to_string(), degree });
    }
    let coeffs = hypersurface.coefficients_in(v);
    let p = coeffs[1].clone();
    let inputs = [hypersurface.to_expr(), var.to_string(), boundary.describe()];
    let mut cert = CertBuilder::new("ch1-hypothesis", "a component containing boundary divisors of both types", &inputs);
    cert.check("linear coefficient is nonzero", Claim::NonZero { value: p.clone().into() });
    let divides = |i: usize| p.terms().iter().all(|(m, _)| m.exp(i) > 0);
    let mut candidates: Vec<usize> = boundary.boundary().iter().filter_map(|n| vars.index_of(n)).collect();
    candidates.sort_unstable();
    let find = |g: Grade| candidates.iter().copied().find(|&i| vars.grade(i) == g && i != v && divides(i));
    let wy = find(Grade::Y);
    let wx = find(Grade::X);
    for (g, w) in [(Grade::Y, wy), (Grade::X, wx)] {
        match w {
            Some(i) => {
                cert.check(
                    alloc::format!("{} divides P", vars.name(i)),
                    Claim::VarDivides { var: vars.name(i).to_string(), poly: p.clone() },
                );
            }
            None => {
                cert.record(
                    alloc::format!("a {}-graded boundary variable divides P", g.tag()),
                    Claim::Axiom(alloc::format!("no {}-graded boundary variable divides {p}", g.tag())),
                    Verdict::Fail,
                );
                if !p.is_monomial() {
                    cert.note("P is not a monomial; general linear-factor detection was not attempted");
                }
            }
        }
    }
    let witnesses = match (wy, wx) {
        (Some(y), Some(x)) => Some((vars.name(y).to_string(), vars.name(x).to_string())),
        _ => None,
    };
    if let Some((y, x)) = &witnesses {
        cert.note(alloc::format!("witnesses: {y}, {x}"));
    }
    Ok(Ch1Report { certificate: cert.finish(), p, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_poly, VarTable};

    fn q() -> Poly {
        let v = VarTable::parse_header("y0:Y y1:Y y2:Y x0:X x1:X x2:X x3:X").unwrap();
        parse_poly(
            "y1*y2*x0^2 + y0*y2*x1^2 + y0*y1*x2^2 + (y0^2 + y1^2 + y2^2 - 2*y0*y1 - 2*y0*y2 - 2*y1*y2)*x3^2",
            &v,
        )
        .unwrap()
    }

    #[test]
    fn double_cone_over_q() {
        let fam = build_family(Variant::DoubleCone, FamilyParams::new(2, 2), &Seed::g(q())).unwrap();
        let v = &fam.vars;
        assert_eq!(fam.f.as_ref().unwrap(), &parse_poly("a*b + t*y0^2", v).unwrap());
        let expected_h = &q().embed(v).unwrap() + &parse_poly("y0*x0^2*a + y1*x1^2*b", v).unwrap();
        assert_eq!(fam.h, expected_h);
        assert_eq!(fam.h.bidegree().unwrap(), Bidegree::new(2, 2));
        assert_eq!(fam.f.as_ref().unwrap().bidegree().unwrap(), Bidegree::new(2, 0));
        assert_eq!(fam.seed_nr(), Some((4, 2)));
        let split = special_fiber_split(&fam).unwrap();
        assert_eq!(split.z.unwrap(), q().embed(v).unwrap());
        assert_eq!(split.certificate.verdict, Verdict::Pass);
    }

    #[test]
    fn parameter_bounds() {
        assert!(matches!(
            build_family(Variant::DoubleCone, FamilyParams::new(2, 1), &Seed::g(q())),
            Err(FamilyError::BadParams(_))
        ));
        assert!(matches!(
            build_family(Variant::DoubleCone, FamilyParams::new(3, 2), &Seed::g(q())),
            Err(FamilyError::SeedDegreeMismatch { .. })
        ));
        assert!(matches!(
            build_family(Variant::DegreeRaise, FamilyParams::new(2, 2).raised_to(1, 2), &Seed::g(q())),
            Err(FamilyError::BadParams(_))
        ));
    }

    #[test]
    fn perturbed_parameter_equation_still_splits() {
        let mut fam = build_family(Variant::DoubleCone, FamilyParams::new(2, 2), &Seed::g(q())).unwrap();
        fam.f = Some(parse_poly("a*b + t*y0*y1", &fam.vars).unwrap());
        assert!(special_fiber_split(&fam).is_ok());
        fam.f = Some(parse_poly("a*b + y0^2", &fam.vars).unwrap());
        assert!(matches!(special_fiber_split(&fam), Err(FamilyError::FactorizationFails(_))));
    }

    #[test]
    fn ch1_witnesses() {
        let fam = build_family(Variant::DoubleCone, FamilyParams::new(2, 2), &Seed::g(q())).unwrap();
        let y0 = &fam.component("Y0").unwrap().equation;
        let r = ch1_hypothesis_check(y0, "a", &fam.chart).unwrap();
        assert_eq!(r.certificate.verdict, Verdict::Pass);
        assert_eq!(r.witnesses, Some(("y0".into(), "x0".into())));
        let y1 = &fam.component("Y1").unwrap().equation;
        let r = ch1_hypothesis_check(y1, "b", &fam.chart).unwrap();
        assert_eq!(r.witnesses, Some(("y1".into(), "x1".into())));
        let shrunk = ChartSpec::new(&["y0", "x0"], &["y0", "x0"]);
        assert_eq!(ch1_hypothesis_check(y1, "b", &shrunk).unwrap().certificate.verdict, Verdict::Fail);
        assert!(matches!(
            ch1_hypothesis_check(&q(), "x3", &fam.chart),
            Err(FamilyError::NotLinearInVariable { degree: 2, .. })
        ));
    }
}
