//! One runner per check kind. Each loads its inputs, calls the core checker
//! and turns the certificate into a [`Finding`].

use std::path::Path;

use anyhow::{anyhow, bail, Context as _, Result};
use bidegree_core::birat::{verify_chart_identity, ChartIdentity};
use bidegree_core::cert::{digest_inputs, Certificate, Verdict};
use bidegree_core::classify::{closure_classify, emit_tables, ClassifyError, FactBase, Grid, Layout, Rules, TableFormat};
use bidegree_core::families::{build_family, ch1_hypothesis_check, special_fiber_split, DegenerationFamily, FamilyParams, Seed, Variant};
use bidegree_core::fractions::{
    pfister_expand, verify_subform_certificate, PfisterForm, QuadForm, RatFunc, Representation, Sign, SubformCertificate,
};
use bidegree_core::geomcheck::{
    affine_cover, conic_singularity_check, integrality_refutation, semistability_check, singular_in_hyperplanes,
    ComponentPartial,
};
use bidegree_core::groebner::{ideal_member, radical_member, GroebnerError, Ideal};
use bidegree_core::random::{random_bihomogeneous, rng_from_seed};
use bidegree_core::ring::{Bidegree, Poly, Vars, VarTable};

use crate::polyfile::{PolyFile, DEFAULT_TABLE};
use crate::suite::{CheckConfig, CheckKind, Context, FamilySpec, Finding};

pub fn run(check: &CheckConfig, ctx: &Context<'_>) -> Result<Finding> {
    match check.kind {
        CheckKind::Identity => identity(check, ctx),
        CheckKind::Semistability => semistability(check, ctx),
        CheckKind::Integrality => integrality(check, ctx),
        CheckKind::Conics => conics(check, ctx),
        CheckKind::Hyperplanes => hyperplanes(check, ctx),
        CheckKind::Ch1 => ch1(check, ctx),
        CheckKind::SpecialFiber => special_fiber(check, ctx),
        CheckKind::Classify => classify(check, ctx),
        CheckKind::Member => membership(check, ctx, false),
        CheckKind::Radical => membership(check, ctx, true),
        CheckKind::Pfister => pfister(check, ctx),
    }
}

fn need<'a, T>(field: &'a Option<T>, name: &str) -> Result<&'a T> {
    field.as_ref().ok_or_else(|| anyhow!("missing field `{name}`"))
}

fn load(check: &CheckConfig, ctx: &Context<'_>) -> Result<PolyFile> {
    let path = ctx.path(need(&check.file, "file")?);
    Ok(PolyFile::load(&path)?)
}

fn from_cert(cert: &Certificate) -> Finding {
    Finding { verdict: cert.verdict, digest: cert.trace_digest(), detail: cert.notes.clone() }
}

/// Loads an identity file: bindings `source`, `target` and optionally `cofactor`,
/// one map from the target table to the source table, and optional charts `source`, `target`.
pub fn load_identity(path: &Path) -> Result<ChartIdentity> {
    let file = PolyFile::load(path)?;
    let (source, target) = (file.poly("source")?, file.poly("target")?);
    let map = match file.maps.len() {
        1 => file.maps.values().next().unwrap().clone(),
        n => bail!("identity file needs exactly one map, found {n}"),
    };
    let mut id = ChartIdentity::new(source, target, map);
    if let Ok(c) = file.ratfunc("cofactor") {
        id = id.with_cofactor(c.clone());
    }
    let chart = |n: &str| file.charts.get(n).cloned().unwrap_or_default();
    Ok(id.with_charts(chart("source"), chart("target")))
}

fn identity(check: &CheckConfig, ctx: &Context<'_>) -> Result<Finding> {
    let id = load_identity(&ctx.path(need(&check.file, "file")?))?;
    Ok(from_cert(&verify_chart_identity(&id)?))
}

/// Builds the family described by `spec`. Random seeds draw from the suite seed mixed with `salt`.
pub fn build_family_spec(spec: &FamilySpec, base: &Path, rng_seed: u64, salt: &str) -> Result<DegenerationFamily> {
    let variant = Variant::parse(&spec.variant).ok_or_else(|| anyhow!("unknown family variant `{}`", spec.variant))?;
    let mut params = FamilyParams::new(spec.d, spec.f);
    if let Some([d, f]) = spec.raise {
        params = params.raised_to(d, f);
    }
    let mut seed = Seed::new();
    if let Some(path) = &spec.seed_file {
        let file = PolyFile::load(&base.join(path))?;
        for (role, binding) in &spec.seed {
            seed = seed.with(role, file.poly(binding)?);
        }
    }
    if let Some(r) = &spec.random {
        let vars = VarTable::parse_header(&r.vars)?;
        let mut rng = rng_from_seed(rng_seed ^ fnv1a(salt));
        seed = seed.with("G", random_bihomogeneous(&mut rng, &vars, Bidegree::new(spec.d, spec.f), r.density, r.height));
    }
    Ok(build_family(variant, params, &seed)?)
}

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

fn family(check: &CheckConfig, ctx: &Context<'_>) -> Result<DegenerationFamily> {
    build_family_spec(need(&check.family, "family")?, ctx.base, ctx.rng_seed, &check.id)
}

fn semistability(check: &CheckConfig, ctx: &Context<'_>) -> Result<Finding> {
    let fam = family(check, ctx)?;
    let [c0, c1] = need(&check.columns, "columns")?;
    let partials = need(&check.partials, "partials")?
        .iter()
        .map(|p| p.split_once(':').map(|(c, v)| ComponentPartial::new(c.trim(), v.trim())))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| anyhow!("partials look like `COMPONENT:VAR`"))?;
    let r = semistability_check(&fam, &fam.chart, (c0, c1), &partials)?;
    let mut finding = from_cert(&r.certificate);
    finding.detail.push(format!("minor = {}", r.minor));
    for (comp, var, p) in &r.partials {
        finding.detail.push(format!("d{comp}/d{var} = {p}"));
    }
    let eval = |e: &str| bidegree_core::ring::parse_poly(e, &fam.vars);
    if let Some(m) = &check.minor {
        if eval(m)? != r.minor {
            finding.verdict = Verdict::Fail;
            finding.detail.push(format!("expected minor {m}"));
        }
    }
    if let Some(values) = &check.partial_values {
        if values.len() != r.partials.len() {
            bail!("{} partial values for {} partials", values.len(), r.partials.len());
        }
        for (v, (comp, _, p)) in values.iter().zip(&r.partials) {
            if eval(v)? != *p {
                finding.verdict = Verdict::Fail;
                finding.detail.push(format!("expected {comp} partial {v}"));
            }
        }
    }
    Ok(finding)
}

fn integrality(check: &CheckConfig, ctx: &Context<'_>) -> Result<Finding> {
    let file = load(check, ctx)?;
    let eq = file.poly(need(&check.equation, "equation")?)?;
    let chart = file.chart(need(&check.chart, "chart")?)?;
    let map = file.map(need(&check.map, "map")?)?;
    let r = integrality_refutation(&eq, chart, need(&check.quad_var, "quad_var")?, map)?;
    let mut finding = from_cert(&r.certificate);
    if let Some(expected) = &check.specialized {
        if file.eval_poly(expected, eq.vars())? != r.specialized {
            finding.verdict = Verdict::Fail;
            finding.detail.push(format!("expected specialized discriminant {expected}"));
        }
    }
    Ok(finding)
}

fn ideals(file: &PolyFile, names: &Option<Vec<String>>) -> Result<Vec<Ideal>> {
    match names {
        Some(names) => names.iter().map(|n| Ok(file.ideal(n)?.clone())).collect(),
        None => Ok(file.ideals.values().cloned().collect()),
    }
}

fn conics(check: &CheckConfig, ctx: &Context<'_>) -> Result<Finding> {
    let file = load(check, ctx)?;
    let q = file.poly(need(&check.equation, "equation")?)?;
    let cert = match conic_singularity_check(&q, &ideals(&file, &check.ideals)?, &ctx.limits()) {
        Ok(c) => c,
        Err(GroebnerError::ResourceExceeded { .. }) => return Ok(unknown("limit reached")),
        Err(e) => return Err(e.into()),
    };
    let mut finding = from_cert(&cert);
    finding.detail.push(format!("{} membership claims", cert.trace.len()));
    if let Some(k) = cert.failed_step() {
        finding.detail.push(format!("first failure: {}", cert.trace[k].label));
    }
    Ok(finding)
}

fn unknown(why: &str) -> Finding {
    Finding { verdict: Verdict::Unknown, digest: String::new(), detail: vec![why.to_string()] }
}

/// Each chart gets its own deadline.
fn hyperplanes(check: &CheckConfig, ctx: &Context<'_>) -> Result<Finding> {
    let file = load(check, ctx)?;
    let q = file.poly(need(&check.equation, "equation")?)?;
    let h = file.eval_poly(need(&check.element, "element")?, q.vars())?;
    let charts = match &check.charts {
        Some(names) => names.iter().map(|n| Ok(file.chart(n)?.clone())).collect::<Result<Vec<_>>>()?,
        None => affine_cover(q.vars()),
    };
    let mut verdict = Verdict::Pass;
    let (mut digests, mut detail) = (Vec::new(), Vec::new());
    for chart in &charts {
        let cert = singular_in_hyperplanes(&q, &h, std::slice::from_ref(chart), &ctx.limits());
        verdict = verdict.combine(cert.verdict);
        digests.push(cert.trace_digest());
        detail.push(format!("{} {}", cert.verdict, chart.describe()));
    }
    Ok(Finding { verdict, digest: digest_inputs(&digests), detail })
}

fn ch1(check: &CheckConfig, ctx: &Context<'_>) -> Result<Finding> {
    let fam = family(check, ctx)?;
    let mut verdict = Verdict::Pass;
    let (mut digests, mut detail) = (Vec::new(), Vec::new());
    for comp in &fam.components {
        if check.component.as_ref().is_some_and(|c| *c != comp.name) {
            continue;
        }
        let var = match &check.var {
            Some(v) => v.clone(),
            None => fam
                .components
                .iter()
                .find(|c| c.name != comp.name)
                .and_then(|c| c.coord.clone())
                .ok_or_else(|| anyhow!("component {} has no partner coordinate", comp.name))?,
        };
        let r = ch1_hypothesis_check(&comp.equation, &var, &fam.chart)?;
        verdict = verdict.combine(r.certificate.verdict);
        digests.push(r.certificate.trace_digest());
        let w = r.witnesses.map_or("none".to_string(), |(y, x)| format!("({y},{x})"));
        detail.push(format!("{}: {} linear in {var}, witnesses {w}", comp.name, r.certificate.verdict));
    }
    if digests.is_empty() {
        bail!("no component matched");
    }
    Ok(Finding { verdict, digest: digest_inputs(&digests), detail })
}

fn special_fiber(check: &CheckConfig, ctx: &Context<'_>) -> Result<Finding> {
    let fam = family(check, ctx)?;
    Ok(match special_fiber_split(&fam) {
        Ok(s) => from_cert(&s.certificate),
        Err(e @ bidegree_core::families::FamilyError::FactorizationFails(_)) => {
            Finding { verdict: Verdict::Fail, digest: String::new(), detail: vec![e.to_string()] }
        }
        Err(e) => return Err(e.into()),
    })
}

fn classify(check: &CheckConfig, ctx: &Context<'_>) -> Result<Finding> {
    let path = ctx.path(need(&check.facts, "facts")?);
    let text = std::fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let base = FactBase::parse(&text)?;
    let rules = Rules { literature: check.literature.unwrap_or(true), ..Rules::default() };
    let result = match closure_classify(&base, Grid::default(), rules) {
        Ok(r) => r,
        Err(e @ ClassifyError::InconsistentFactBase { .. }) => {
            return Ok(Finding { verdict: Verdict::Fail, digest: String::new(), detail: vec![e.to_string()] })
        }
        Err(e) => return Err(e.into()),
    };
    let name = need(&check.table, "table")?;
    let layout = Layout::by_name(name).ok_or_else(|| anyhow!("unknown table `{name}`"))?;
    let csv = emit_tables(&result, &layout, TableFormat::Csv)?;
    let mut finding = Finding { verdict: Verdict::Pass, digest: digest_inputs(&[&csv]), detail: Vec::new() };
    let unknown = csv.lines().skip(1).filter(|l| l.rsplit(',').nth(1) == Some("?")).count();
    finding.detail.push(format!("{} cells, {unknown} unknown", csv.lines().count() - 1));
    if let Some(golden) = &check.golden {
        let gp = ctx.path(golden);
        let expected = std::fs::read_to_string(&gp).with_context(|| format!("reading {}", gp.display()))?;
        for (k, (a, b)) in expected.lines().zip(csv.lines()).enumerate() {
            if a != b {
                finding.verdict = Verdict::Fail;
                finding.detail.push(format!("line {}: expected `{a}`, got `{b}`", k + 1));
            }
        }
        if expected.lines().count() != csv.lines().count() {
            finding.verdict = Verdict::Fail;
            finding.detail.push("golden and emitted tables differ in length".to_string());
        }
    }
    Ok(finding)
}

fn membership(check: &CheckConfig, ctx: &Context<'_>, radical: bool) -> Result<Finding> {
    let file = load(check, ctx)?;
    let ideal = file.ideal(need(&check.ideal, "ideal")?)?;
    let elem_src = need(&check.element, "element")?;
    let elem = file.eval_poly(elem_src, ideal.vars())?;
    let digest = digest_inputs(&[elem.to_expr(), format!("{:?}", ideal.gens().iter().map(Poly::to_expr).collect::<Vec<_>>())]);
    let limits = ctx.limits();
    let outcome = if radical {
        radical_member(&elem, ideal, &limits).map(|b| (b, None))
    } else {
        ideal_member(&elem, ideal, &limits).map(|m| (m.member, Some(m.normal_form)))
    };
    match outcome {
        Ok((member, nf)) => {
            let mut detail = Vec::new();
            if let Some(nf) = nf.filter(|nf| !nf.is_zero()) {
                detail.push(format!("normal form {nf}"));
            }
            Ok(Finding { verdict: Verdict::from_bool(member), digest, detail })
        }
        Err(GroebnerError::ResourceExceeded { .. }) => Ok(unknown("limit reached")),
        Err(e) => Err(e.into()),
    }
}

fn pfister(check: &CheckConfig, ctx: &Context<'_>) -> Result<Finding> {
    let file = load(check, ctx)?;
    let vars = file.table(DEFAULT_TABLE)?.clone();
    let elems = |list: &Vec<String>| list.iter().map(|e| Ok(file.eval(e, &vars)?)).collect::<Result<Vec<RatFunc>>>();
    let p = PfisterForm::new(&vars, elems(need(&check.slots, "slots")?)?)?;
    let form = QuadForm::new(elems(need(&check.form, "form")?)?)?;
    let mut cert = SubformCertificate::new();
    for m in check.matches.iter().flatten() {
        let (k, j, sign, witness) = parse_match(m).ok_or_else(|| anyhow!("bad match `{m}`"))?;
        cert = cert.matching(k, j, sign, file.eval(witness, &vars)?);
    }
    let pe = pfister_expand(&p);
    for r in check.represent.iter().flatten() {
        let (k, rep) = parse_representation(r, &file, &vars, pe.diag()).ok_or_else(|| anyhow!("bad representation `{r}`"))??;
        cert = cert.representation(k, rep);
    }
    let c = verify_subform_certificate(&form, &p, &cert)?;
    let mut finding = from_cert(&c);
    finding.detail.insert(0, format!("{} in {}", form.to_expr(), pe.to_expr()));
    Ok(finding)
}

/// `K -> J SIGN [WITNESS]`.
fn parse_match(s: &str) -> Option<(usize, usize, Sign, &str)> {
    let (k, rest) = s.split_once("->")?;
    let mut words = rest.trim().splitn(3, char::is_whitespace);
    let j = words.next()?.parse().ok()?;
    let sign = parse_sign(words.next()?)?;
    Some((k.trim().parse().ok()?, j, sign, words.next().unwrap_or("1")))
}

fn parse_sign(s: &str) -> Option<Sign> {
    match s {
        "+" => Some(Sign::Plus),
        "-" => Some(Sign::Minus),
        _ => None,
    }
}

/// `K: A, B, ±I, ±J` meaning `A²·(±P[I]) + B²·(±P[J]) = form[K]`.
fn parse_representation(
    s: &str,
    file: &PolyFile,
    vars: &Vars,
    pe: &[RatFunc],
) -> Option<Result<(usize, Representation)>> {
    let (k, rest) = s.split_once(':')?;
    let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
    let [a, b, i, j] = parts[..] else { return None };
    let entry = |e: &str| -> Option<(usize, RatFunc)> {
        let (sign, idx) = e.split_at(1);
        let idx: usize = idx.parse().ok()?;
        let c = pe.get(idx)?.clone();
        Some((idx, if parse_sign(sign)? == Sign::Minus { -&c } else { c }))
    };
    let ((i, c1), (j, c2)) = (entry(i)?, entry(j)?);
    let k = k.trim().parse().ok()?;
    Some((|| Ok((k, Representation { a: file.eval(a, vars)?, b: file.eval(b, vars)?, c1, c2, block: (i, j) })))())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn match_entries_parse() {
        assert_eq!(parse_match("0 -> 2 -"), Some((0, 2, Sign::Minus, "1")));
        assert_eq!(parse_match("1 -> 3 + u*v"), Some((1, 3, Sign::Plus, "u*v")));
        assert_eq!(parse_match("1 -> x +"), None);
    }

    #[test]
    fn seeds_mix_with_check_id() {
        assert_ne!(fnv1a("a"), fnv1a("b"));
        assert_eq!(fnv1a(""), 0xcbf2_9ce4_8422_2325);
    }
}
