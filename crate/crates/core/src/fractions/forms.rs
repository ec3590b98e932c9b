//! Diagonal quadratic forms, Pfister expansion and subform certificates.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::{FracError, RatFunc};
use crate::cert::{CertBuilder, Certificate, Claim, Verdict};
use crate::ring::{GaussRat, Vars};

/// Diagonal form `⟨c₁, …, cₙ⟩` with nonzero entries.
#[derive(Clone, Debug)]
pub struct QuadForm {
    diag: Vec<RatFunc>,
}

impl QuadForm {
    pub fn new(diag: Vec<RatFunc>) -> Result<Self, FracError> {
        if let Some(k) = diag.iter().position(RatFunc::is_zero) {
            return Err(FracError::ZeroEntry(k));
        }
        Ok(QuadForm { diag })
    }

    pub fn diag(&self) -> &[RatFunc] {
        &self.diag
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    pub fn to_expr(&self) -> String {
        bracketed(&self.diag)
    }
}

/// `⟨⟨a₁, …, aₙ⟩⟩`.
#[derive(Clone, Debug)]
pub struct PfisterForm {
    vars: Vars,
    slots: Vec<RatFunc>,
}

impl PfisterForm {
    pub fn new(vars: &Vars, slots: Vec<RatFunc>) -> Result<Self, FracError> {
        if let Some(k) = slots.iter().position(RatFunc::is_zero) {
            return Err(FracError::ZeroSlot(k));
        }
        Ok(PfisterForm { vars: vars.clone(), slots })
    }

    pub fn slots(&self) -> &[RatFunc] {
        &self.slots
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn to_expr(&self) -> String {
        let mut s = String::from("<");
        s.push_str(&bracketed(&self.slots));
        s.push('>');
        s
    }
}

fn bracketed(xs: &[RatFunc]) -> String {
    let inner: Vec<String> = xs.iter().map(RatFunc::to_expr).collect();
    alloc::format!("<{}>", inner.join(", "))
}

/// Expands `⟨⟨a₁,…,aₙ⟩⟩` to the `2ⁿ` entries `∏_{j∈S} (−a_j)`, with subset `S`
/// read from the bits of the entry index (bit `j` selects `a_{j+1}`).
pub fn pfister_expand(p: &PfisterForm) -> QuadForm {
    let n = p.slots.len();
    let neg: Vec<RatFunc> = p.slots.iter().map(|a| -a).collect();
    let mut diag = Vec::with_capacity(1 << n);
    for mask in 0usize..(1 << n) {
        let mut e = RatFunc::one(&p.vars);
        for (j, nj) in neg.iter().enumerate() {
            if mask & (1 << j) != 0 {
                e = &e * nj;
            }
        }
        diag.push(e);
    }
    QuadForm { diag }
}

/// Checks `a²·c₁ + b²·c₂ = target`.
pub fn verify_representation(
    a: &RatFunc,
    b: &RatFunc,
    c1: &RatFunc,
    c2: &RatFunc,
    target: &RatFunc,
) -> Result<Certificate, FracError> {
    if a.is_zero() && b.is_zero() {
        return Err(FracError::ZeroWitness);
    }
    let inputs = [a.to_expr(), b.to_expr(), c1.to_expr(), c2.to_expr(), target.to_expr()];
    let mut cb = CertBuilder::new("representation", "representation criterion a^2 c1 + b^2 c2 = target", &inputs);
    let lhs = (&(&a.pow(2) * c1) + &(&b.pow(2) * c2)).clone();
    cb.check("a^2*c1 + b^2*c2 = target", Claim::RatEq { lhs, rhs: target.clone() });
    Ok(cb.finish())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply(self, r: &RatFunc) -> RatFunc {
        match self {
            Sign::Plus => r.clone(),
            Sign::Minus => -r,
        }
    }
}

/// `sub[k] = sign · witness² · P[pfister_index]`.
#[derive(Clone, Debug)]
pub struct EntryMatch {
    pub pfister_index: usize,
    pub witness: RatFunc,
    pub sign: Sign,
}

/// `a²·c₁ + b²·c₂ = sub[k]` where `cᵢ = ±P[blockᵢ]`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub a: RatFunc,
    pub b: RatFunc,
    pub c1: RatFunc,
    pub c2: RatFunc,
    pub block: (usize, usize),
}

/// Witness data for "`sub` is a subform of the expanded Pfister form".
#[derive(Clone, Debug, Default)]
pub struct SubformCertificate {
    pub entry_matching: BTreeMap<usize, EntryMatch>,
    pub representations: BTreeMap<usize, Representation>,
}

impl SubformCertificate {
    pub fn new() -> Self {
        Self::default()
    }

    /// Matches `sub[k]` to Pfister entry `j` with sign and square witness.
    pub fn matching(mut self, k: usize, j: usize, sign: Sign, witness: RatFunc) -> Self {
        self.entry_matching.insert(k, EntryMatch { pfister_index: j, witness, sign });
        self
    }

    pub fn representation(mut self, k: usize, rep: Representation) -> Self {
        self.representations.insert(k, rep);
        self
    }
}

/// Verifies that `sub` embeds in `pfister_expand(p)` as certified by `cert`.
///
/// Every entry of `sub` must be covered either by a matching (a distinct Pfister
/// entry up to sign and a square) or by a representation inside a binary block
/// `⟨±P[i], ±P[j]⟩` of two further distinct entries. A represented value `c` makes
/// that block isometric to `⟨c, c·P[i]P[j]⟩`, so `⟨c⟩` splits off.
pub fn verify_subform_certificate(sub: &QuadForm, p: &PfisterForm, cert: &SubformCertificate) -> Result<Certificate, FracError> {
    let expanded = pfister_expand(p);
    let pe = expanded.diag();
    for k in 0..sub.rank() {
        if !cert.entry_matching.contains_key(&k) && !cert.representations.contains_key(&k) {
            return Err(FracError::IncompleteCertificate(k));
        }
    }
    let mut inputs: Vec<String> = alloc::vec![sub.to_expr(), p.to_expr()];
    for (k, m) in &cert.entry_matching {
        inputs.push(alloc::format!("m{k}:{}:{:?}:{}", m.pfister_index, m.sign, m.witness));
    }
    for (k, r) in &cert.representations {
        inputs.push(alloc::format!("r{k}:{}:{}:{}:{}:{:?}", r.a, r.b, r.c1, r.c2, r.block));
    }
    let mut cb = CertBuilder::new("subform", "subform of a Pfister form via entry matching and representations", &inputs);

    let mut used: Vec<usize> = Vec::new();
    let mut claim_index = |j: usize, k: usize| -> Result<(), FracError> {
        if j >= pe.len() {
            return Err(FracError::IndexOutOfRange(j));
        }
        if used.contains(&j) {
            return Err(FracError::IdentityFails(k));
        }
        used.push(j);
        Ok(())
    };

    for k in 0..sub.rank() {
        let entry = &sub.diag()[k];
        if let Some(m) = cert.entry_matching.get(&k) {
            claim_index(m.pfister_index, k)?;
            if m.witness.is_zero() {
                return Err(FracError::IdentityFails(k));
            }
            let rhs = m.sign.apply(&(&m.witness.pow(2) * &pe[m.pfister_index]));
            let v = cb.check(alloc::format!("entry {k} = sign*w^2*P[{}]", m.pfister_index), Claim::RatEq { lhs: entry.clone(), rhs });
            if v != Verdict::Pass {
                return Err(FracError::IdentityFails(k));
            }
        } else {
            let r = &cert.representations[&k];
            if r.a.is_zero() && r.b.is_zero() {
                return Err(FracError::ZeroWitness);
            }
            claim_index(r.block.0, k)?;
            claim_index(r.block.1, k)?;
            for (c, j) in [(&r.c1, r.block.0), (&r.c2, r.block.1)] {
                let plus = *c == pe[j];
                let minus = *c == -&pe[j];
                let v = if plus || minus { Verdict::Pass } else { Verdict::Fail };
                let rhs = if minus { -&pe[j] } else { pe[j].clone() };
                cb.record(alloc::format!("entry {k}: block coefficient = +-P[{j}]"), Claim::RatEq { lhs: c.clone(), rhs }, v);
                if v != Verdict::Pass {
                    return Err(FracError::IdentityFails(k));
                }
            }
            let lhs = &(&r.a.pow(2) * &r.c1) + &(&r.b.pow(2) * &r.c2);
            let v = cb.check(alloc::format!("entry {k} = a^2*c1 + b^2*c2"), Claim::RatEq { lhs, rhs: entry.clone() });
            if v != Verdict::Pass {
                return Err(FracError::IdentityFails(k));
            }
        }
    }
    cb.record(
        "subform implies vanishing of the restricted class",
        Claim::Axiom(String::from("cycle-theoretic consequence of the subform relation; not computed")),
        Verdict::Pass,
    );
    Ok(cb.finish())
}

/// Certificate matching every entry of `pfister_expand(p)` to itself.
pub fn self_certificate(p: &PfisterForm) -> (QuadForm, SubformCertificate) {
    let q = pfister_expand(p);
    let mut c = SubformCertificate::new();
    for k in 0..q.rank() {
        c = c.matching(k, k, Sign::Plus, RatFunc::constant(&p.vars, GaussRat::one()));
    }
    (q, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_ratfunc, VarTable};

    fn uv() -> Vars {
        VarTable::parse_header("u:P v:P").unwrap()
    }

    fn r(s: &str) -> RatFunc {
        parse_ratfunc(s, &uv()).unwrap()
    }

    #[test]
    fn two_fold_expansion() {
        let p = PfisterForm::new(&uv(), alloc::vec![r("v"), r("u")]).unwrap();
        let q = pfister_expand(&p);
        let expected = [r("1"), r("-v"), r("-u"), r("v*u")];
        assert_eq!(q.diag(), &expected);
    }

    #[test]
    fn zero_and_one_fold() {
        let p0 = PfisterForm::new(&uv(), alloc::vec![]).unwrap();
        assert_eq!(pfister_expand(&p0).diag(), &[r("1")]);
        let p1 = PfisterForm::new(&uv(), alloc::vec![r("u+v")]).unwrap();
        assert_eq!(pfister_expand(&p1).diag(), &[r("1"), r("-u-v")]);
        assert!(matches!(PfisterForm::new(&uv(), alloc::vec![r("0")]), Err(FracError::ZeroSlot(0))));
    }

    #[test]
    fn representation_witnesses() {
        let f = r("(u+v-1)^2 - 4*u*v");
        let c = verify_representation(&r("u+v-1"), &r("2*i"), &r("1"), &r("u*v"), &f).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        let c = verify_representation(&r("u-v+1"), &r("2*i"), &r("1"), &r("u"), &f).unwrap();
        assert_eq!(c.verdict, Verdict::Pass);
        let c = verify_representation(&r("u+v-1"), &r("2"), &r("1"), &r("u*v"), &f).unwrap();
        assert_eq!(c.verdict, Verdict::Fail);
        assert!(matches!(verify_representation(&r("0"), &r("0"), &r("1"), &r("1"), &f), Err(FracError::ZeroWitness)));
    }

    #[test]
    fn self_subform() {
        let p = PfisterForm::new(&uv(), alloc::vec![r("v"), r("u")]).unwrap();
        let (q, c) = self_certificate(&p);
        assert_eq!(verify_subform_certificate(&q, &p, &c).unwrap().verdict, Verdict::Pass);
    }

    #[test]
    fn incomplete_and_reused_indices() {
        let p = PfisterForm::new(&uv(), alloc::vec![r("v"), r("u")]).unwrap();
        let q = QuadForm::new(alloc::vec![r("v"), r("u")]).unwrap();
        let one = r("1");
        let c = SubformCertificate::new().matching(0, 1, Sign::Minus, one.clone());
        assert!(matches!(verify_subform_certificate(&q, &p, &c), Err(FracError::IncompleteCertificate(1))));
        let c = c.matching(1, 1, Sign::Minus, one);
        assert!(matches!(verify_subform_certificate(&q, &p, &c), Err(FracError::IdentityFails(1))));
    }
}
