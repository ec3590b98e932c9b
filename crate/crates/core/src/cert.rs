//! Verification records: a verdict plus a replayable trace of checked claims.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use sha2::{Digest, Sha256};

use crate::fractions::RatFunc;
use crate::groebner::{ideal_member, radical_member, GroebnerError, Ideal, Limits};
use crate::ring::Poly;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Unknown => "UNKNOWN",
        }
    }

    pub fn parse(s: &str) -> Option<Verdict> {
        match s.to_ascii_lowercase().as_str() {
            "pass" => Some(Verdict::Pass),
            "fail" => Some(Verdict::Fail),
            "unknown" => Some(Verdict::Unknown),
            _ => None,
        }
    }

    pub fn from_bool(b: bool) -> Verdict {
        if b {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// Fail dominates Unknown, which dominates Pass.
    pub fn combine(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Unknown, _) | (_, Verdict::Unknown) => Verdict::Unknown,
            _ => Verdict::Pass,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A single checkable statement.
#[derive(Clone, Debug)]
pub enum Claim {
    /// `lhs = rhs` as polynomials.
    PolyEq { lhs: Poly, rhs: Poly },
    /// `lhs = rhs` as fractions (cross-multiplied).
    RatEq { lhs: RatFunc, rhs: RatFunc },
    /// `poly` is a nonzero constant times a monomial in the listed variables.
    UnitOffBoundary { poly: Poly, invertibles: Vec<String> },
    /// `elem` lies in the ideal generated by `gens`.
    IdealMember { elem: Poly, gens: Vec<Poly> },
    /// `elem` lies in the radical of the ideal generated by `gens`.
    RadicalMember { elem: Poly, gens: Vec<Poly> },
    /// `poly` is not a square in `K[var]`, `K` the fraction field of the other variables.
    NotSquare { poly: Poly, var: String },
    /// The variable divides the polynomial.
    VarDivides { var: String, poly: Poly },
    /// The fraction is nonzero.
    NonZero { value: RatFunc },
    /// Accepted without computation; kept in the trace for the record.
    Axiom(String),
}

impl Claim {
    /// Evaluates the claim from scratch.
    pub fn check(&self, limits: &Limits) -> Verdict {
        match self {
            Claim::PolyEq { lhs, rhs } => Verdict::from_bool(lhs == rhs),
            Claim::RatEq { lhs, rhs } => Verdict::from_bool(lhs == rhs),
            Claim::UnitOffBoundary { poly, invertibles } => {
                let names: Vec<&str> = invertibles.iter().map(String::as_str).collect();
                Verdict::from_bool(crate::geomcheck::is_boundary_unit(poly, &names))
            }
            Claim::IdealMember { elem, gens } => match Ideal::new(gens.clone()) {
                Ok(i) => membership_verdict(ideal_member(elem, &i, limits).map(|m| m.member)),
                Err(_) => Verdict::Fail,
            },
            Claim::RadicalMember { elem, gens } => match Ideal::new(gens.clone()) {
                Ok(i) => membership_verdict(radical_member(elem, &i, limits)),
                Err(_) => Verdict::Fail,
            },
            Claim::NotSquare { poly, var } => match poly.vars().index(var) {
                Ok(v) => match crate::geomcheck::univariate_square_test(poly, v) {
                    Ok(crate::geomcheck::SquareTest::NotSquare(_)) => Verdict::Pass,
                    Ok(crate::geomcheck::SquareTest::Square(_)) => Verdict::Fail,
                    Err(_) => Verdict::Fail,
                },
                Err(_) => Verdict::Fail,
            },
            Claim::VarDivides { var, poly } => match poly.vars().index(var) {
                Ok(v) => Verdict::from_bool(!poly.is_zero() && poly.terms().iter().all(|(m, _)| m.exp(v) > 0)),
                Err(_) => Verdict::Fail,
            },
            Claim::NonZero { value } => Verdict::from_bool(!value.is_zero()),
            Claim::Axiom(_) => Verdict::Pass,
        }
    }

    /// One-line description, truncated for reports.
    pub fn summary(&self) -> String {
        let s = match self {
            Claim::PolyEq { lhs, rhs } => alloc::format!("{lhs} == {rhs}"),
            Claim::RatEq { lhs, rhs } => alloc::format!("{lhs} == {rhs}"),
            Claim::UnitOffBoundary { poly, invertibles } => {
                alloc::format!("{poly} is a unit off {{{}}}", invertibles.join(","))
            }
            Claim::IdealMember { elem, gens } => alloc::format!("{elem} in ({})", join_polys(gens)),
            Claim::RadicalMember { elem, gens } => alloc::format!("{elem} in rad({})", join_polys(gens)),
            Claim::NotSquare { poly, var } => alloc::format!("{poly} not a square in K[{var}]"),
            Claim::VarDivides { var, poly } => alloc::format!("{var} divides {poly}"),
            Claim::NonZero { value } => alloc::format!("{value} != 0"),
            Claim::Axiom(s) => alloc::format!("axiom: {s}"),
        };
        truncate(s, 160)
    }

    /// Full, untruncated text used for digests.
    fn canonical(&self) -> String {
        match self {
            Claim::PolyEq { lhs, rhs } => alloc::format!("polyeq|{lhs}|{rhs}"),
            Claim::RatEq { lhs, rhs } => alloc::format!("rateq|{lhs}|{rhs}"),
            Claim::UnitOffBoundary { poly, invertibles } => alloc::format!("unit|{poly}|{}", invertibles.join(",")),
            Claim::IdealMember { elem, gens } => alloc::format!("member|{elem}|{}", join_polys(gens)),
            Claim::RadicalMember { elem, gens } => alloc::format!("radical|{elem}|{}", join_polys(gens)),
            Claim::NotSquare { poly, var } => alloc::format!("notsquare|{poly}|{var}"),
            Claim::VarDivides { var, poly } => alloc::format!("divides|{var}|{poly}"),
            Claim::NonZero { value } => alloc::format!("nonzero|{value}"),
            Claim::Axiom(s) => alloc::format!("axiom|{s}"),
        }
    }
}

fn membership_verdict(r: Result<bool, GroebnerError>) -> Verdict {
    match r {
        Ok(b) => Verdict::from_bool(b),
        Err(GroebnerError::ResourceExceeded { .. }) => Verdict::Unknown,
        Err(_) => Verdict::Fail,
    }
}

fn join_polys(ps: &[Poly]) -> String {
    ps.iter().map(|p| p.to_expr()).collect::<Vec<_>>().join(", ")
}

fn truncate(mut s: String, n: usize) -> String {
    if s.len() > n {
        let mut cut = n;
        while !s.is_char_boundary(cut) {
            cut -= 1;
        }
        s.truncate(cut);
        s.push_str("...");
    }
    s
}

/// A labelled claim and the outcome it had when the certificate was built.
#[derive(Clone, Debug)]
pub struct Step {
    pub label: String,
    pub claim: Claim,
    pub outcome: Verdict,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub kind: String,
    /// Hex SHA-256 prefix of the canonical inputs.
    pub digest: String,
    pub verdict: Verdict,
    pub trace: Vec<Step>,
    pub anchor: String,
    /// Free-form remarks such as a refutation reason.
    pub notes: Vec<String>,
}

impl Certificate {
    /// Index of the first failing step.
    pub fn failed_step(&self) -> Option<usize> {
        self.trace.iter().position(|s| s.outcome == Verdict::Fail)
    }

    pub fn step(&self, label: &str) -> Option<&Step> {
        self.trace.iter().find(|s| s.label == label)
    }

    /// Re-checks every step recorded as passing. Returns the first index that no longer passes.
    pub fn replay(&self, limits: &Limits) -> Result<(), usize> {
        for (k, s) in self.trace.iter().enumerate() {
            if s.outcome == Verdict::Pass && s.claim.check(limits) != Verdict::Pass {
                return Err(k);
            }
        }
        Ok(())
    }

    /// Digest of the trace, stable across runs.
    pub fn trace_digest(&self) -> String {
        let mut h = Sha256::new();
        for s in &self.trace {
            h.update(s.label.as_bytes());
            h.update([0u8]);
            h.update(s.claim.canonical().as_bytes());
            h.update([0u8]);
            h.update(s.outcome.as_str().as_bytes());
            h.update([1u8]);
        }
        hex_prefix(&h.finalize())
    }

    /// Structured-text rendering used by reports.
    pub fn render(&self) -> String {
        let mut s = String::new();
        s.push_str(&alloc::format!("certificate {}\n", self.kind));
        s.push_str(&alloc::format!("  anchor: {}\n", self.anchor));
        s.push_str(&alloc::format!("  inputs: {}\n", self.digest));
        s.push_str(&alloc::format!("  verdict: {}\n", self.verdict));
        for n in &self.notes {
            s.push_str(&alloc::format!("  note: {n}\n"));
        }
        s.push_str("  trace:\n");
        for (k, st) in self.trace.iter().enumerate() {
            s.push_str(&alloc::format!("    [{k}] {} {}: {}\n", st.outcome, st.label, st.claim.summary()));
        }
        s
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn hex_prefix(bytes: &[u8]) -> String {
    let mut s = String::with_capacity(32);
    for b in &bytes[..16] {
        s.push_str(&alloc::format!("{b:02x}"));
    }
    s
}

/// Digest of a list of canonical input strings.
pub fn digest_inputs<S: AsRef<str>>(inputs: &[S]) -> String {
    let mut h = Sha256::new();
    for i in inputs {
        h.update(i.as_ref().as_bytes());
        h.update([0u8]);
    }
    hex_prefix(&h.finalize())
}

/// Incremental certificate construction.
pub struct CertBuilder {
    kind: String,
    anchor: String,
    digest: String,
    trace: Vec<Step>,
    notes: Vec<String>,
    limits: Limits,
}

impl CertBuilder {
    pub fn new<S: AsRef<str>>(kind: &str, anchor: &str, inputs: &[S]) -> Self {
        CertBuilder {
            kind: kind.to_string(),
            anchor: anchor.to_string(),
            digest: digest_inputs(inputs),
            trace: Vec::new(),
            notes: Vec::new(),
            limits: Limits::default(),
        }
    }

    /// Limits used by claims that need Gröbner computations.
    pub fn limits(mut self, limits: &Limits) -> Self {
        self.limits = limits.clone();
        self
    }

    /// Checks `claim` now and records the outcome.
    pub fn check(&mut self, label: impl Into<String>, claim: Claim) -> Verdict {
        let outcome = claim.check(&self.limits);
        self.trace.push(Step { label: label.into(), claim, outcome });
        outcome
    }

    /// Records a claim whose outcome the caller already computed.
    pub fn record(&mut self, label: impl Into<String>, claim: Claim, outcome: Verdict) {
        self.trace.push(Step { label: label.into(), claim, outcome });
    }

    pub fn note(&mut self, n: impl Into<String>) {
        self.notes.push(n.into());
    }

    /// Verdict of the steps so far.
    pub fn current(&self) -> Verdict {
        self.trace.iter().fold(Verdict::Pass, |v, s| v.combine(s.outcome))
    }

    pub fn finish(self) -> Certificate {
        let verdict = self.current();
        self.finish_with(verdict)
    }

    /// Finishes with an explicit verdict, for one-sided checks where a failed step means Unknown.
    pub fn finish_with(self, verdict: Verdict) -> Certificate {
        Certificate {
            kind: self.kind,
            digest: self.digest,
            verdict,
            trace: self.trace,
            anchor: self.anchor,
            notes: self.notes,
        }
    }
}
