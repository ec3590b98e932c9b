//! Chart-level birational identities: a substitution sends the target chart
//! equation to a cofactor times the source chart equation.

use alloc::string::String;
use alloc::vec::Vec;

use crate::cert::{CertBuilder, Certificate, Claim, Verdict};
use crate::fractions::RatFunc;
use crate::geomcheck::ChartSpec;
use crate::ring::{same_table, Poly, RingError, Substitution};

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum BiratError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("the map is defined on a different ring than the target equation")]
    MapDomainMismatch,
    #[error("the map lands in a different ring than the source equation")]
    MapCodomainMismatch,
    #[error("cofactor is zero")]
    ZeroCofactor,
}

/// `map(target) = cofactor · source` after dehomogenizing both on their charts.
///
/// `map` sends the variables of `target` to fractions over the variables of `source`.
#[derive(Clone, Debug)]
pub struct ChartIdentity {
    pub source: Poly,
    pub target: Poly,
    pub map: Substitution,
    pub cofactor: RatFunc,
    pub source_chart: ChartSpec,
    pub target_chart: ChartSpec,
}

impl ChartIdentity {
    /// Identity with cofactor 1 and empty charts.
    pub fn new(source: Poly, target: Poly, map: Substitution) -> Self {
        let cofactor = RatFunc::one(source.vars());
        ChartIdentity { source, target, map, cofactor, source_chart: ChartSpec::default(), target_chart: ChartSpec::default() }
    }

    pub fn with_cofactor(mut self, cofactor: RatFunc) -> Self {
        self.cofactor = cofactor;
        self
    }

    pub fn with_charts(mut self, source_chart: ChartSpec, target_chart: ChartSpec) -> Self {
        self.source_chart = source_chart;
        self.target_chart = target_chart;
        self
    }

    fn inputs(&self) -> Vec<String> {
        let mut v = alloc::vec![
            self.source.to_expr(),
            self.target.to_expr(),
            self.cofactor.to_expr(),
            self.source_chart.describe(),
            self.target_chart.describe(),
        ];
        v.extend(self.map.entries().map(|(n, r)| alloc::format!("{n}->{r}")));
        v
    }
}

/// Checks `map(target_U) = cofactor · source_U` by cross-multiplication.
pub fn verify_chart_identity(id: &ChartIdentity) -> Result<Certificate, BiratError> {
    if !same_table(id.map.source(), id.target.vars()) {
        return Err(BiratError::MapDomainMismatch);
    }
    if !same_table(id.map.target(), id.source.vars()) {
        return Err(BiratError::MapCodomainMismatch);
    }
    if id.cofactor.is_zero() {
        return Err(BiratError::ZeroCofactor);
    }
    let src = id.source_chart.dehomogenize(&id.source)?;
    let tgt = id.target_chart.dehomogenize(&id.target)?;
    let image = id.map.apply(&tgt)?;
    let scaled = id.cofactor.checked_mul(&RatFunc::from_poly(src))?;
    let mut cert = CertBuilder::new("chart-identity", "charts are isomorphic under the map", &id.inputs());
    let verdict = cert.check("image equals cofactor times source", Claim::RatEq { lhs: image.clone(), rhs: scaled.clone() });
    if verdict == Verdict::Fail {
        let diff = image.num() * scaled.den() - scaled.num() * image.den();
        if let Some((m, c)) = diff.lead() {
            cert.note(alloc::format!("difference has leading term {}", diff.term_expr(m, c)));
        }
    }
    Ok(cert.finish())
}

/// Composes `first` (B → A) after `second` (C → B) into C → A with cofactor `first(m₂)·m₁`.
pub fn compose(first: &ChartIdentity, second: &ChartIdentity) -> Result<ChartIdentity, BiratError> {
    if !same_table(second.source.vars(), first.target.vars()) {
        return Err(BiratError::MapCodomainMismatch);
    }
    let mut map = Substitution::new(second.map.source(), first.map.target());
    for (name, img) in second.map.entries() {
        map.set(name, first.map.apply_ratfunc(img)?)?;
    }
    let cofactor = first.map.apply_ratfunc(&second.cofactor)?.checked_mul(&first.cofactor)?;
    Ok(ChartIdentity {
        source: first.source.clone(),
        target: second.target.clone(),
        map,
        cofactor,
        source_chart: first.source_chart.clone(),
        target_chart: second.target_chart.clone(),
    })
}

/// The substitution naming the image of each variable by expression source text.
pub fn map_from_pairs(
    domain: &crate::ring::Vars,
    codomain: &crate::ring::Vars,
    pairs: &[(&str, &str)],
) -> Result<Substitution, RingError> {
    let mut map = Substitution::new(domain, codomain);
    for (v, e) in pairs {
        map.set(v, crate::ring::parse_ratfunc(e, codomain)?)?;
    }
    Ok(map)
}

