//! The concrete polynomials, curves, maps and families the toolkit checks,
//! kept as source text so data files can be compared against them.

use alloc::string::String;
use alloc::vec::Vec;

use crate::birat::{map_from_pairs, ChartIdentity};
use crate::families::{build_family, DegenerationFamily, FamilyParams, Seed, Variant};
use crate::fractions::{PfisterForm, QuadForm, RatFunc, Representation, Sign, SubformCertificate};
use crate::geomcheck::ChartSpec;
use crate::groebner::Ideal;
use crate::ring::{parse_poly, GaussRat, Poly, Substitution, VarTable, Vars};

pub const HPT_VARS: &str = "y0:Y y1:Y y2:Y x0:X x1:X x2:X x3:X";
/// The quadratic form in three variables whose product with `x3²` completes the quadric bundle.
pub const HPT_F: &str = "y0^2 + y1^2 + y2^2 - 2*(y0*y1 + y0*y2 + y1*y2)";
pub const HPT_Q: &str =
    "y1*y2*x0^2 + y0*y2*x1^2 + y0*y1*x2^2 + (y0^2 + y1^2 + y2^2 - 2*(y0*y1 + y0*y2 + y1*y2))*x3^2";

/// The six singular conics of the quadric bundle, by name.
pub const HPT_CONICS: [(&str, [&str; 4]); 6] = [
    ("C_y1", ["y1", "x1", "x3", "y2*x0^2 + y0*x2^2"]),
    ("C_y0", ["y0", "x0", "x3", "y2*x1^2 + y1*x2^2"]),
    ("C_y2", ["y2", "x2", "x3", "y0*x1^2 + y1*x0^2"]),
    ("R_y1", ["y0 - y2", "y1", "x1", "x0^2 + x2^2 - 4*x3^2"]),
    ("R_y0", ["y1 - y2", "y0", "x0", "x1^2 + x2^2 - 4*x3^2"]),
    ("R_y2", ["y0 - y1", "y2", "x2", "x0^2 + x1^2 - 4*x3^2"]),
];

pub const X23_VARS: &str = "s0:Y s1:Y z0:X z1:X z2:X z3:X z4:X";
/// Bidegree (2,3) hypersurface in `P¹ × P⁴` birational to the quadric bundle.
pub const X23: &str = "z3^3*s0^2 + (z4*z0^2 + z3*z1^2 - 2*z3^2*(z3 + z4))*s0*s1 + (z4*z2^2 + z3*(z3 - z4)^2)*s1^2";

/// Ambient of the (3,2) model obtained from the quadric bundle by the double cone.
pub const MODEL_VARS: &str = "y0:Y y1:Y y2:Y a:Y x0:X x1:X x2:X x3:X t:P";
pub const MODEL: &str = "(y1*y2*x0^2 + y0*y2*x1^2 + y0*y1*x2^2 + (y0^2 + y1^2 + y2^2 - 2*(y0*y1 + y0*y2 + y1*y2))*x3^2)*a \
     + y1*x0^2*a^2 - t*y1*x2^2*y0^2";

/// Ambient of the (3,2) reference hypersurface; `X2` is the coordinate rescaled by `y1`.
pub const REFERENCE_VARS: &str = "y0:Y y1:Y y2:Y a:Y x0:X x1:X X2:X x3:X t:P";
pub const REFERENCE: &str = "y1^2*(y2 + a)*x0^2 + y0*y2*y1*x1^2 + a*y0*(a - t*y0)*X2^2 \
     + y1*(y0^2 + y1^2 + y2^2 - 2*(y0*y1 + y0*y2 + y1*y2))*x3^2";

/// The (3,2) hypersurface after eliminating `d` and rescaling `x0`.
pub const SECTION_T: &str = "c^2*(y2 + a)*x0^2 + y0*y2*y1*x1^2 + a*y0*(a - t*y0)*X2^2 \
     + y1*(y0^2 + y1^2 + y2^2 - 2*(y0*y1 + y0*y2 + y1*y2))*x3^2 + y1^2*x1^2*c - s*y0^2*x0^2*c";

pub const S24_VARS: &str = "S0:Y S1:Y W0:X W1:X W2:X W3:X W4:X W5:X W6:X t:P s:P";
/// Bidegree (2,4) hypersurface in `P¹ × P⁶`.
pub const S24: &str = "S1^2*W0*W5^2*(W6 + W4) + S0*S1*W0*W6*W1^2 + S0*S1*W4^2*W2^2 - t*S0^2*W0*W4*W2^2 \
     + ((S0 - S1)^2*W0^2 + S1^2*W6^2 - 2*S1*(S0 + S1)*W0*W6)*W3^2 + S1^2*W0*W1^2*W5 - s*S0^2*W0^3*W5";

/// A fixed (2,2) form in `P² × P²` used as the Küchle seed.
pub const KUECHLE_VARS: &str = "y0:Y y1:Y y2:Y x0:X x1:X x2:X";
pub const KUECHLE_SEED: &str =
    "y0^2*x1^2 + y1^2*x2^2 + y2^2*x0^2 + y0*y1*x0*x1 - y1*y2*x1*x2 + 2*y0*y2*x2*x0 + 3*y2^2*x2^2";

/// Cubic and quadrics in `P²` used as seeds of the cubic reduction.
pub const CUBIC_VARS: &str = "x0:X x1:X x2:X";
pub const CUBIC_C: &str = "x0^3 + x1^3 + x2^3 - x0*x1*x2";
pub const CUBIC_M: &str = "x1*x2 + x0^2";
pub const CUBIC_L: &str = "x0^2 + x2^2 - 3*x1^2";

fn table(h: &str) -> Vars {
    VarTable::parse_header(h).expect("catalog header")
}

fn poly(src: &str, vars: &Vars) -> Poly {
    parse_poly(src, vars).expect("catalog polynomial")
}

pub fn hpt_vars() -> Vars {
    table(HPT_VARS)
}

pub fn hpt_q() -> Poly {
    poly(HPT_Q, &hpt_vars())
}

pub fn hpt_conics() -> Vec<(&'static str, Ideal)> {
    let v = hpt_vars();
    HPT_CONICS
        .iter()
        .map(|(name, gens)| (*name, Ideal::new(gens.iter().map(|g| poly(g, &v)).collect()).expect("conic ideal")))
        .collect()
}

/// `h = y0·y1·y2`, the union of hyperplanes containing the singular locus.
pub fn hpt_hyperplanes() -> Poly {
    poly("y0*y1*y2", &hpt_vars())
}

pub fn x23() -> Poly {
    poly(X23, &table(X23_VARS))
}

pub fn model() -> Poly {
    poly(MODEL, &table(MODEL_VARS))
}

pub fn reference() -> Poly {
    poly(REFERENCE, &table(REFERENCE_VARS))
}

pub fn s24() -> Poly {
    poly(S24, &table(S24_VARS))
}

pub fn double_cone_q() -> DegenerationFamily {
    build_family(Variant::DoubleCone, FamilyParams::new(2, 2), &Seed::g(hpt_q())).expect("double cone")
}

pub fn kuechle() -> DegenerationFamily {
    let g = poly(KUECHLE_SEED, &table(KUECHLE_VARS));
    build_family(Variant::Kuechle, FamilyParams::new(2, 2), &Seed::g(g)).expect("Küchle family")
}

pub fn section_six() -> DegenerationFamily {
    build_family(Variant::SectionSix, FamilyParams::new(3, 2), &Seed::g(reference())).expect("(3,2) family")
}

pub fn cubic_reduction() -> DegenerationFamily {
    let v = table(CUBIC_VARS);
    let seed = Seed::new().with("c", poly(CUBIC_C, &v)).with("M", poly(CUBIC_M, &v)).with("L", poly(CUBIC_L, &v));
    build_family(Variant::CubicReduction, FamilyParams::new(2, 3), &seed).expect("cubic reduction")
}

/// `T` over the variables of [`section_six`].
pub fn section_t() -> Poly {
    poly(SECTION_T, &section_six().vars)
}

/// Absorbing the squares: `X2 ↦ y1·x2` sends the reference chart equation to `y1` times the model's.
pub fn identity_absorb() -> ChartIdentity {
    let (f, g) = (model(), reference());
    let map = Substitution::new(g.vars(), f.vars()).identity_on_shared().with_poly("X2", poly("y1*x2", f.vars())).unwrap();
    let chart = ChartSpec::new(&["a", "x3"], &[]);
    ChartIdentity::new(f.clone(), g, map)
        .with_cofactor(RatFunc::from_poly(poly("y1", f.vars())))
        .with_charts(chart.clone(), chart)
}

/// The quadric bundle on `y0 = 1 = x3` against the (2,3) hypersurface on `s1 = 1 = z3`.
pub fn identity_hpt_x23() -> ChartIdentity {
    let (x, q) = (x23(), hpt_q());
    let map = map_from_pairs(q.vars(), x.vars(), &[("y1", "z4"), ("y2", "s0"), ("x0", "z0"), ("x1", "z1"), ("x2", "z2")])
        .unwrap();
    ChartIdentity::new(x, q, map).with_charts(ChartSpec::new(&["s1", "z3"], &[]), ChartSpec::new(&["y0", "x3"], &[]))
}

/// Eliminating `d` through the parameter equation and rescaling `x0` turns `H` into `T`.
pub fn identity_section_t() -> ChartIdentity {
    let fam = section_six();
    let t = section_t();
    let map = map_from_pairs(&fam.vars, &fam.vars, &[("d", "-s*y1^2/c"), ("x0", "c*x0/y1")]).unwrap().identity_on_shared();
    ChartIdentity::new(t, fam.h.clone(), map)
}

/// `S₂,₄` on `S1 = 1 = W0` against `T` on `y1 = 1 = x0`.
pub fn identity_s24() -> ChartIdentity {
    let (s, t) = (s24(), section_t());
    let pairs = [
        ("y0", "S0"),
        ("y2", "W6"),
        ("a", "W4"),
        ("c", "W5"),
        ("x1", "W1"),
        ("X2", "W2"),
        ("x3", "W3"),
        ("t", "t"),
        ("s", "s"),
    ];
    let map = map_from_pairs(t.vars(), s.vars(), &pairs).unwrap();
    ChartIdentity::new(s, t, map).with_charts(ChartSpec::new(&["S1", "W0"], &[]), ChartSpec::new(&["y1", "x0"], &[]))
}

/// The (2,3) hypersurface on `y0 = 1 = x0` against the quartic partner on `x0 = 1`, with `x3 ↦ y1`.
pub fn identity_cubic() -> ChartIdentity {
    let fam = cubic_reduction();
    let q = fam.extra["Q'"].clone();
    let xr = fam.vars.names().iter().rev().find(|n| n.starts_with('x')).unwrap().clone();
    let map = Substitution::new(&fam.vars, &fam.vars).with_poly(&xr, Poly::var_named(&fam.vars, "y1").unwrap()).unwrap().identity_on_shared();
    let x0 = "x0";
    ChartIdentity::new(fam.h.clone(), q, map)
        .with_charts(ChartSpec::new(&["y0", x0], &[]), ChartSpec::new(&[x0], &[]))
}

/// The named chart identities in a fixed order.
pub fn chart_identities() -> Vec<(&'static str, ChartIdentity)> {
    alloc::vec![
        ("absorb-squares", identity_absorb()),
        ("hpt-to-2-3", identity_hpt_x23()),
        ("eliminate-d", identity_section_t()),
        ("s24-to-t", identity_s24()),
        ("cubic-reduction", identity_cubic()),
    ]
}

/// Inputs of an integrality refutation: equation, chart, quadratic variable and specialization.
pub struct IntegralityCase {
    pub equation: Poly,
    pub chart: ChartSpec,
    pub quad_var: &'static str,
    pub map: Substitution,
}

fn specialization(vars: &Vars, values: &[(&str, i64)]) -> Substitution {
    let mut map = Substitution::new(vars, vars);
    for (v, c) in values {
        map.set(v, RatFunc::constant(vars, GaussRat::from_int(*c))).unwrap();
    }
    map.identity_on_shared()
}

/// The model over the quadric bundle, on `y1 = 1 = x0`, quadratic in `a`.
pub fn integrality_model() -> IntegralityCase {
    let eq = model();
    let map = specialization(eq.vars(), &[("y0", 1), ("y2", 0), ("x1", 0), ("x3", 0)]);
    IntegralityCase { equation: eq, chart: ChartSpec::new(&["y1", "x0"], &[]), quad_var: "a", map }
}

/// `T` on `y1 = 1 = x0`, quadratic in `c` with leading coefficient `y2 + a`.
pub fn integrality_section_t() -> IntegralityCase {
    let eq = section_t();
    let map = specialization(eq.vars(), &[("y0", 1), ("y2", 1), ("a", 0), ("X2", 0), ("x3", 0)]);
    IntegralityCase { equation: eq, chart: ChartSpec::new(&["y1", "x0"], &[]), quad_var: "c", map }
}

/// Function field of the base plane: `u = y2/y0`, `v = y1/y0`.
pub const FUNCTION_FIELD_VARS: &str = "u:P v:P";

fn uv() -> Vars {
    table(FUNCTION_FIELD_VARS)
}

fn uv_elem(src: &str) -> RatFunc {
    crate::ring::parse_ratfunc(src, &uv()).expect("catalog element")
}

/// `f = F(1, v, u)`, the discriminant form of the quadric bundle on `y0 = 1`.
pub fn discriminant_f() -> RatFunc {
    let hv = table(HPT_VARS);
    let map = map_from_pairs(&hv, &uv(), &[("y0", "1"), ("y1", "v"), ("y2", "u")]).unwrap();
    map.apply(&poly(HPT_F, &hv)).expect("mapped")
}

/// `⟨⟨v, u⟩⟩ = ⟨1, −v, −u, vu⟩`.
pub fn pfister_uv() -> PfisterForm {
    PfisterForm::new(&uv(), alloc::vec![uv_elem("v"), uv_elem("u")]).expect("nonzero slots")
}

/// Witnesses `(a, b, c1, c2)` with `a²·c1 + b²·c2 = f`.
pub fn representation_witnesses() -> Vec<(&'static str, [RatFunc; 4])> {
    alloc::vec![
        ("in <1, uv>", [uv_elem("u + v - 1"), uv_elem("2*i"), uv_elem("1"), uv_elem("u*v")]),
        ("in <1, u>", [uv_elem("u - v + 1"), uv_elem("2*i"), uv_elem("1"), uv_elem("u")]),
    ]
}

fn represent(w: &[RatFunc; 4], block: (usize, usize)) -> Representation {
    let [a, b, c1, c2] = w.clone();
    Representation { a, b, c1, c2, block }
}

/// The four conic-bundle forms with certificates that they are subforms of [`pfister_uv`].
///
/// Entries of `⟨1, −v, −u, vu⟩` are indexed 0..4; signs absorb the minus entries.
pub fn subform_cases() -> Vec<(&'static str, QuadForm, SubformCertificate)> {
    let f = discriminant_f();
    let one = uv_elem("1");
    let w = representation_witnesses();
    let form = |entries: [RatFunc; 3]| QuadForm::new(entries.to_vec()).expect("nonzero entries");
    let swapped = [uv_elem("v - u + 1"), uv_elem("2*i"), uv_elem("1"), uv_elem("v")];
    alloc::vec![
        (
            "L0",
            form([uv_elem("u"), uv_elem("v"), f.clone()]),
            SubformCertificate::new()
                .matching(0, 2, Sign::Minus, one.clone())
                .matching(1, 1, Sign::Minus, one.clone())
                .representation(2, represent(&w[0].1, (0, 3))),
        ),
        (
            "L1",
            form([uv_elem("v"), uv_elem("v*u"), f.clone()]),
            SubformCertificate::new()
                .matching(0, 1, Sign::Minus, one.clone())
                .matching(1, 3, Sign::Plus, one.clone())
                .representation(2, represent(&w[1].1, (0, 2))),
        ),
        (
            "L2",
            form([uv_elem("u"), uv_elem("v*u"), f]),
            SubformCertificate::new()
                .matching(0, 2, Sign::Minus, one.clone())
                .matching(1, 3, Sign::Plus, one.clone())
                .representation(2, represent(&swapped, (0, 1))),
        ),
        (
            "L3",
            form([uv_elem("v"), uv_elem("u"), uv_elem("v*u")]),
            SubformCertificate::new()
                .matching(0, 1, Sign::Minus, one.clone())
                .matching(1, 2, Sign::Minus, one.clone())
                .matching(2, 3, Sign::Plus, one),
        ),
    ]
}

/// Source text of every catalog polynomial, keyed by name.
pub fn sources() -> Vec<(&'static str, &'static str, String)> {
    alloc::vec![
        ("Q", HPT_VARS, String::from(HPT_Q)),
        ("X23", X23_VARS, String::from(X23)),
        ("MODEL", MODEL_VARS, String::from(MODEL)),
        ("REFERENCE", REFERENCE_VARS, String::from(REFERENCE)),
        ("S24", S24_VARS, String::from(S24)),
        ("KUECHLE", KUECHLE_VARS, String::from(KUECHLE_SEED)),
    ]
}
