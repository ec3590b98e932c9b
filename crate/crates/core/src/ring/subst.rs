//! Ring homomorphisms between polynomial rings, with rational-function images.

use alloc::string::String;
use alloc::vec::Vec;

use super::{GaussRat, Poly, RingError, Vars};
use crate::fractions::RatFunc;

/// A map sending each source variable to a rational function over `target`.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: Vars,
    target: Vars,
    images: Vec<Option<RatFunc>>,
}

impl Substitution {
    pub fn new(source: &Vars, target: &Vars) -> Self {
        Substitution { source: source.clone(), target: target.clone(), images: alloc::vec![None; source.len()] }
    }

    /// Every source variable that also exists in the target maps to its namesake.
    pub fn identity_on_shared(mut self) -> Self {
        for (i, name) in self.source.names().iter().enumerate() {
            if self.images[i].is_none() {
                if let Some(j) = self.target.index_of(name) {
                    self.images[i] = Some(RatFunc::from_poly(Poly::var(&self.target, j)));
                }
            }
        }
        self
    }

    pub fn source(&self) -> &Vars {
        &self.source
    }

    pub fn target(&self) -> &Vars {
        &self.target
    }

    pub fn set(&mut self, var: &str, image: RatFunc) -> Result<(), RingError> {
        let i = self.source.index(var)?;
        self.images[i] = Some(image.embed(&self.target)?);
        Ok(())
    }

    pub fn with(mut self, var: &str, image: RatFunc) -> Result<Self, RingError> {
        self.set(var, image)?;
        Ok(self)
    }

    pub fn with_poly(self, var: &str, image: Poly) -> Result<Self, RingError> {
        self.with(var, RatFunc::from_poly(image))
    }

    pub fn with_const(self, var: &str, c: GaussRat) -> Result<Self, RingError> {
        let p = Poly::constant(&self.target, c);
        self.with_poly(var, p)
    }

    /// Image given as a numerator/denominator pair.
    pub fn with_fraction(self, var: &str, num: Poly, den: Poly) -> Result<Self, RingError> {
        let r = RatFunc::new(num, den).map_err(|e| match e {
            RingError::DivideByZero => RingError::ZeroDenominatorImage(String::from(var)),
            e => e,
        })?;
        self.with(var, r)
    }

    pub fn image(&self, var: usize) -> Option<&RatFunc> {
        self.images[var].as_ref()
    }

    /// Pairs `(source name, image)` for mapped variables.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &RatFunc)> {
        self.images.iter().enumerate().filter_map(|(i, r)| r.as_ref().map(|r| (self.source.name(i), r)))
    }

    /// Applies the homomorphism to `p`.
    pub fn apply(&self, p: &Poly) -> Result<RatFunc, RingError> {
        substitute_hom(p, self)
    }

    /// Applies the homomorphism to a fraction.
    pub fn apply_ratfunc(&self, r: &RatFunc) -> Result<RatFunc, RingError> {
        self.apply(r.num())?.checked_div(&self.apply(r.den())?)
    }
}

/// Evaluates `p` under `map`.
///
/// The denominator is the product of the image denominators raised to the
/// highest degree in which their variable occurs; it is not reduced further.
pub fn substitute_hom(p: &Poly, map: &Substitution) -> Result<RatFunc, RingError> {
    let p = if crate::ring::same_table(p.vars(), &map.source) { p.clone() } else { p.embed(&map.source)? };
    let target = &map.target;
    let support = p.support();
    // Powers of numerators and denominators for each occurring variable.
    let mut num_pows: Vec<Vec<Poly>> = alloc::vec![Vec::new(); map.source.len()];
    let mut den_pows: Vec<Vec<Poly>> = alloc::vec![Vec::new(); map.source.len()];
    let mut degs = alloc::vec![0u32; map.source.len()];
    let mut common_den = Poly::one(target);
    for &v in &support {
        let img = map.images[v].as_ref().ok_or_else(|| RingError::UnmappedVariable(String::from(map.source.name(v))))?;
        let d = p.degree_in(v);
        degs[v] = d;
        num_pows[v] = powers(img.num(), d);
        if !img.den().is_one() {
            den_pows[v] = powers(img.den(), d);
            common_den = &common_den * &den_pows[v][d as usize];
        }
    }
    let mut num = Poly::zero(target);
    for (m, c) in p.terms() {
        let mut t = Poly::constant(target, c.clone());
        for &v in &support {
            let e = m.exp(v) as usize;
            if e > 0 {
                t = &t * &num_pows[v][e];
            }
            if !den_pows[v].is_empty() {
                let rest = degs[v] as usize - e;
                if rest > 0 {
                    t = &t * &den_pows[v][rest];
                }
            }
        }
        num = &num + &t;
    }
    RatFunc::new(num, common_den)
}

fn powers(base: &Poly, d: u32) -> Vec<Poly> {
    let mut out = Vec::with_capacity(d as usize + 1);
    out.push(Poly::one(base.vars()));
    for k in 1..=d as usize {
        let next = &out[k - 1] * base;
        out.push(next);
    }
    out
}
