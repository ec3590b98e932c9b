//! Buchberger's algorithm with the normal selection strategy, ideal membership
//! and radical membership through the Rabinowitsch trick.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::ring::{same_table, GaussRat, Grade, Monomial, MonomialOrder, Poly, RingError, Vars};

/// Finitely generated ideal over one variable table.
#[derive(Clone, Debug)]
pub struct Ideal {
    vars: Vars,
    gens: Vec<Poly>,
}

impl Ideal {
    /// Zero generators are dropped; an empty list is rejected.
    pub fn new(gens: Vec<Poly>) -> Result<Ideal, GroebnerError> {
        let first = gens.first().ok_or(GroebnerError::EmptyIdeal)?;
        let vars = first.vars().clone();
        if gens.iter().any(|g| !same_table(g.vars(), &vars)) {
            return Err(GroebnerError::Ring(RingError::VarTableMismatch));
        }
        Ok(Ideal { vars, gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }
}

/// Cooperative cancellation hook polled during long computations.
#[derive(Clone)]
pub struct Interrupt(Arc<dyn Fn() -> bool + Send + Sync>);

impl Interrupt {
    pub fn new(f: impl Fn() -> bool + Send + Sync + 'static) -> Self {
        Interrupt(Arc::new(f))
    }

    pub fn fired(&self) -> bool {
        (self.0)()
    }
}

impl fmt::Debug for Interrupt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Interrupt")
    }
}

/// Resource caps. `None` means unbounded.
#[derive(Clone, Debug, Default)]
pub struct Limits {
    pub max_pairs: Option<u64>,
    pub max_terms: Option<usize>,
    pub interrupt: Option<Interrupt>,
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits::default()
    }

    pub fn with_max_pairs(mut self, n: u64) -> Self {
        self.max_pairs = Some(n);
        self
    }

    pub fn with_max_terms(mut self, n: usize) -> Self {
        self.max_terms = Some(n);
        self
    }

    pub fn with_interrupt(mut self, i: Interrupt) -> Self {
        self.interrupt = Some(i);
        self
    }

    fn interrupted(&self) -> bool {
        self.interrupt.as_ref().is_some_and(|i| i.fired())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Stats {
    /// S-pairs reduced.
    pub pairs_reduced: u64,
    /// S-pairs discarded by the coprime or chain criterion.
    pub pairs_skipped: u64,
    pub zero_reductions: u64,
    /// Largest term count seen in an intermediate polynomial.
    pub max_terms: usize,
    pub basis_size: usize,
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pairs reduced {}, skipped {}, zero reductions {}, max terms {}, basis size {}",
            self.pairs_reduced, self.pairs_skipped, self.zero_reductions, self.max_terms, self.basis_size
        )
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LimitKind {
    Pairs,
    Terms,
    Interrupted,
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitKind::Pairs => "pair limit",
            LimitKind::Terms => "term limit",
            LimitKind::Interrupted => "interrupted",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum GroebnerError {
    #[error("ideal has no generators")]
    EmptyIdeal,
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("resource limit reached ({kind}); {stats}")]
    ResourceExceeded { kind: LimitKind, stats: Stats },
}

/// Reduced Gröbner basis, monic and sorted ascending by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    vars: Vars,
    basis: Vec<Poly>,
    stats: Stats,
}

impl GroebnerBasis {
    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn order(&self) -> MonomialOrder {
        self.vars.order()
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_constant() && !self.basis[0].is_zero()
    }

    /// Normal form of `f` (embedded into the basis' table).
    pub fn reduce(&self, f: &Poly) -> Result<Poly, RingError> {
        let f = f.embed(&self.vars)?;
        let refs: Vec<&Poly> = self.basis.iter().collect();
        Ok(normal_form(f, &refs, &mut Budget::free()).expect("unbounded budget"))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, RingError> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Recomputes every S-polynomial and checks that it reduces to zero.
    pub fn verify(&self) -> bool {
        let refs: Vec<&Poly> = self.basis.iter().collect();
        for i in 0..self.basis.len() {
            for j in i + 1..self.basis.len() {
                let s = s_poly(&self.basis[i], &self.basis[j]);
                if !normal_form(s, &refs, &mut Budget::free()).expect("unbounded").is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Per-run counters checked against [`Limits`].
struct Budget<'a> {
    limits: Option<&'a Limits>,
    stats: Stats,
    ticks: u32,
}

impl<'a> Budget<'a> {
    fn free() -> Self {
        Budget { limits: None, stats: Stats::default(), ticks: 0 }
    }

    fn observe(&mut self, p: &Poly) -> Result<(), LimitKind> {
        self.stats.max_terms = self.stats.max_terms.max(p.len());
        let Some(l) = self.limits else { return Ok(()) };
        if l.max_terms.is_some_and(|m| p.len() > m) {
            return Err(LimitKind::Terms);
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks % 64 == 0 && l.interrupted() {
            return Err(LimitKind::Interrupted);
        }
        Ok(())
    }
}

fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, fc) = f.lead().unwrap();
    let (gm, gc) = g.lead().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&l.div(fm).unwrap(), &gc);
    let b = g.mul_term(&l.div(gm).unwrap(), &fc);
    &a - &b
}

/// Full reduction of `p` by `basis` (leading and tail terms).
fn normal_form(mut p: Poly, basis: &[&Poly], budget: &mut Budget<'_>) -> Result<Poly, LimitKind> {
    let vars = p.vars().clone();
    let mut rem: Vec<(Monomial, GaussRat)> = Vec::new();
    while let Some((m, c)) = p.lead().cloned() {
        let divisor = basis.iter().find(|g| g.lead_monomial().is_some_and(|gm| gm.divides(&m)));
        match divisor {
            Some(g) => {
                let (gm, gc) = g.lead().unwrap();
                let q = m.div(gm).unwrap();
                let k = if gc.is_one() { -&c } else { -&(&c * &gc.inv().unwrap()) };
                p = &p + &g.mul_term(&q, &k);
                budget.observe(&p)?;
            }
            None => {
                rem.push(p.pop_lead().unwrap());
            }
        }
    }
    Ok(Poly::from_sorted_terms(&vars, rem))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    seq: u64,
}

/// Computes the reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder, limits: &Limits) -> Result<GroebnerBasis, GroebnerError> {
    run(ideal, order, limits)
}

fn run(ideal: &Ideal, order: MonomialOrder, limits: &Limits) -> Result<GroebnerBasis, GroebnerError> {
    let vars = if ideal.vars.order() == order { ideal.vars.clone() } else { ideal.vars.with_order(order) };
    let mut budget = Budget { limits: Some(limits), stats: Stats::default(), ticks: 0 };
    let exceeded = |kind: LimitKind, budget: &Budget<'_>| GroebnerError::ResourceExceeded { kind, stats: budget.stats };

    let mut polys: Vec<Poly> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut seq = 0u64;

    let unit = |vars: &Vars, stats: Stats| GroebnerBasis {
        vars: vars.clone(),
        basis: alloc::vec![Poly::one(vars)],
        stats: Stats { basis_size: 1, ..stats },
    };

    for g in &ideal.gens {
        let g = g.embed(&vars)?;
        let refs: Vec<&Poly> = active_refs(&polys, &active);
        let h = normal_form(g, &refs, &mut budget).map_err(|k| exceeded(k, &budget))?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit(&vars, budget.stats));
        }
        gm_update(&mut polys, &mut active, &mut pairs, h.monic(), &mut seq, &mut budget.stats);
    }

    while !pairs.is_empty() {
        if limits.interrupted() {
            return Err(exceeded(LimitKind::Interrupted, &budget));
        }
        if limits.max_pairs.is_some_and(|m| budget.stats.pairs_reduced >= m) {
            return Err(exceeded(LimitKind::Pairs, &budget));
        }
        let k = select(&pairs, order);
        let pair = pairs.swap_remove(k);
        budget.stats.pairs_reduced += 1;
        let s = s_poly(&polys[pair.i], &polys[pair.j]);
        let refs = active_refs(&polys, &active);
        let h = normal_form(s, &refs, &mut budget).map_err(|k| exceeded(k, &budget))?;
        if h.is_zero() {
            budget.stats.zero_reductions += 1;
            continue;
        }
        if h.is_constant() {
            return Ok(unit(&vars, budget.stats));
        }
        gm_update(&mut polys, &mut active, &mut pairs, h.monic(), &mut seq, &mut budget.stats);
    }

    let basis = interreduce(&polys, &active, &vars);
    let stats = Stats { basis_size: basis.len(), ..budget.stats };
    Ok(GroebnerBasis { vars, basis, stats })
}

fn active_refs<'a>(polys: &'a [Poly], active: &[bool]) -> Vec<&'a Poly> {
    polys.iter().zip(active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
}

/// Smallest lcm degree, then smallest lcm in the order, then oldest.
fn select(pairs: &[Pair], order: MonomialOrder) -> usize {
    let mut best = 0;
    for k in 1..pairs.len() {
        let (a, b) = (&pairs[k], &pairs[best]);
        let c = a
            .lcm
            .degree()
            .cmp(&b.lcm.degree())
            .then_with(|| order.cmp(&a.lcm, &b.lcm))
            .then_with(|| a.seq.cmp(&b.seq));
        if c == Ordering::Less {
            best = k;
        }
    }
    best
}

/// Gebauer–Möller installation of a new basis element `h`.
fn gm_update(polys: &mut Vec<Poly>, active: &mut Vec<bool>, pairs: &mut Vec<Pair>, h: Poly, seq: &mut u64, stats: &mut Stats) {
    let hm = h.lead_monomial().unwrap().clone();
    let hi = polys.len();
    let cands: Vec<(usize, Monomial, bool)> = (0..polys.len())
        .filter(|&g| active[g])
        .map(|g| {
            let gm = polys[g].lead_monomial().unwrap();
            (g, hm.lcm(gm), hm.coprime(gm))
        })
        .collect();

    // Chain criterion among the new pairs, then the coprime criterion.
    // state: 0 = pending, 1 = kept, 2 = dropped.
    let mut state = alloc::vec![0u8; cands.len()];
    for k in 0..cands.len() {
        let (_, lk, cop) = &cands[k];
        let covered = !*cop
            && (0..cands.len()).any(|j| j != k && state[j] != 2 && (j > k || state[j] == 1) && cands[j].1.divides(lk));
        state[k] = if covered { 2 } else { 1 };
    }
    let mut fresh: Vec<Pair> = Vec::new();
    for (k, (g, l, cop)) in cands.into_iter().enumerate() {
        if state[k] == 2 || cop {
            stats.pairs_skipped += 1;
            continue;
        }
        *seq += 1;
        fresh.push(Pair { i: g, j: hi, lcm: l, seq: *seq });
    }

    // Old pairs made redundant by h.
    let before = pairs.len();
    pairs.retain(|p| {
        if !hm.divides(&p.lcm) {
            return true;
        }
        let li = hm.lcm(polys[p.i].lead_monomial().unwrap());
        let lj = hm.lcm(polys[p.j].lead_monomial().unwrap());
        li == p.lcm || lj == p.lcm
    });
    stats.pairs_skipped += (before - pairs.len()) as u64;

    for g in 0..polys.len() {
        if active[g] && hm.divides(polys[g].lead_monomial().unwrap()) {
            active[g] = false;
        }
    }
    polys.push(h);
    active.push(true);
    pairs.extend(fresh);
}

fn interreduce(polys: &[Poly], active: &[bool], vars: &Vars) -> Vec<Poly> {
    let mut min: Vec<Poly> = active_refs(polys, active).into_iter().cloned().collect();
    // Minimality: GM deactivation already removed elements whose leading term is a multiple of a later one,
    // but an earlier element may divide a later one.
    let lts: Vec<Monomial> = min.iter().map(|p| p.lead_monomial().unwrap().clone()).collect();
    let mut drop = alloc::vec![false; min.len()];
    for i in 0..min.len() {
        for j in 0..min.len() {
            if i != j && !drop[j] && lts[j].divides(&lts[i]) && (lts[i] != lts[j] || j < i) {
                drop[i] = true;
                break;
            }
        }
    }
    min = min.into_iter().zip(drop).filter(|(_, d)| !d).map(|(p, _)| p).collect();
    let mut out = Vec::with_capacity(min.len());
    for i in 0..min.len() {
        let others: Vec<&Poly> = (0..min.len()).filter(|&j| j != i).map(|j| &min[j]).collect();
        let r = normal_form(min[i].clone(), &others, &mut Budget::free()).expect("unbounded");
        // Leading terms are minimal so only the tail changes.
        out.push(r.monic());
    }
    let order = vars.order();
    out.sort_by(|a, b| order.cmp(a.lead_monomial().unwrap(), b.lead_monomial().unwrap()));
    out
}

/// Result of a membership query.
#[derive(Clone, Debug)]
pub struct Membership {
    pub member: bool,
    pub normal_form: Poly,
    pub stats: Stats,
}

/// Whether `f ∈ ideal`, with the normal form under grevlex.
pub fn ideal_member(f: &Poly, ideal: &Ideal, limits: &Limits) -> Result<Membership, GroebnerError> {
    if !same_table(f.vars(), &ideal.vars) {
        return Err(GroebnerError::Ring(RingError::VarTableMismatch));
    }
    let gb = buchberger(ideal, ideal.vars.order(), limits)?;
    let nf = gb.reduce(f)?;
    Ok(Membership { member: nf.is_zero(), normal_form: nf, stats: gb.stats })
}

/// Whether `f ∈ √ideal`: `1 ∈ ideal + (1 − z·f)` with a fresh variable `z`.
pub fn radical_member(f: &Poly, ideal: &Ideal, limits: &Limits) -> Result<bool, GroebnerError> {
    Ok(radical_member_with_stats(f, ideal, limits)?.0)
}

pub fn radical_member_with_stats(f: &Poly, ideal: &Ideal, limits: &Limits) -> Result<(bool, Stats), GroebnerError> {
    if !same_table(f.vars(), &ideal.vars) {
        return Err(GroebnerError::Ring(RingError::VarTableMismatch));
    }
    let z = ideal.vars.fresh_name("z");
    let ext = ideal.vars.extended([(z, Grade::Param)])?;
    let zi = ext.len() - 1;
    let mut gens = Vec::with_capacity(ideal.gens.len() + 1);
    for g in &ideal.gens {
        gens.push(g.embed(&ext)?);
    }
    let fz = &f.embed(&ext)? * &Poly::var(&ext, zi);
    gens.push(&Poly::one(&ext) - &fz);
    let gb = run(&Ideal::new(gens)?, ext.order(), limits)?;
    Ok((gb.is_unit(), gb.stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{parse_poly, VarTable};

    fn ideal(v: &Vars, gens: &[&str]) -> Ideal {
        Ideal::new(gens.iter().map(|g| parse_poly(g, v).unwrap()).collect()).unwrap()
    }

    #[test]
    fn unit_ideal() {
        let v = VarTable::parse_header("x:P").unwrap();
        let gb = buchberger(&ideal(&v, &["x", "1-x"]), MonomialOrder::GrevLex, &Limits::default()).unwrap();
        assert!(gb.is_unit());
        assert!(ideal_member(&Poly::one(&v), &ideal(&v, &["x", "1-x"]), &Limits::default()).unwrap().member);
    }

    #[test]
    fn lex_hand_example() {
        // (x² + y², y) under lex x > y has reduced basis {y, x²}.
        let v = VarTable::new([("x", Grade::Param), ("y", Grade::Param)], MonomialOrder::Lex).unwrap();
        let gb = buchberger(&ideal(&v, &["x^2+y^2", "y"]), MonomialOrder::Lex, &Limits::default()).unwrap();
        let expected = [parse_poly("y", &v).unwrap(), parse_poly("x^2", &v).unwrap()];
        assert_eq!(gb.basis(), &expected);
    }

    #[test]
    fn coprime_generators_are_already_a_basis() {
        let v = VarTable::parse_header("y0:Y y1:Y y2:Y x0:X x1:X x2:X x3:X").unwrap();
        let i = ideal(&v, &["y1", "x1", "x3", "y2*x0^2 + y0*x2^2"]);
        let gb = buchberger(&i, MonomialOrder::GrevLex, &Limits::default()).unwrap();
        assert_eq!(gb.basis().len(), 4);
        for g in i.gens() {
            assert!(gb.basis().contains(&g.monic()));
        }
        assert_eq!(gb.stats().pairs_reduced, 0);
    }

    #[test]
    fn membership_reports_normal_form() {
        let v = VarTable::parse_header("x:P y:P").unwrap();
        let m = ideal_member(&parse_poly("x", &v).unwrap(), &ideal(&v, &["x^2", "y"]), &Limits::default()).unwrap();
        assert!(!m.member);
        assert_eq!(m.normal_form, parse_poly("x", &v).unwrap());
    }

    #[test]
    fn radical_basics() {
        let v = VarTable::parse_header("x:P y:P").unwrap();
        let i = ideal(&v, &["x^2"]);
        assert!(radical_member(&parse_poly("x", &v).unwrap(), &i, &Limits::default()).unwrap());
        assert!(!radical_member(&parse_poly("y", &v).unwrap(), &i, &Limits::default()).unwrap());
    }

    #[test]
    fn cyclic_three_basis_verifies() {
        let v = VarTable::parse_header("a:P b:P c:P").unwrap();
        let i = ideal(&v, &["a+b+c", "a*b+b*c+c*a", "a*b*c-1"]);
        let gb = buchberger(&i, MonomialOrder::GrevLex, &Limits::default()).unwrap();
        assert!(gb.verify());
        for g in i.gens() {
            assert!(gb.contains(g).unwrap());
        }
        let lex = buchberger(&i, MonomialOrder::Lex, &Limits::default()).unwrap();
        assert!(lex.verify());
        // c^3 - 1 lies in the ideal (elimination).
        assert!(lex.contains(&parse_poly("c^3-1", &v).unwrap()).unwrap());
    }

    #[test]
    fn limits_degrade_to_error() {
        let v = VarTable::parse_header("a:P b:P c:P d:P").unwrap();
        let i = ideal(&v, &["a+b+c+d", "a*b+b*c+c*d+d*a", "a*b*c+b*c*d+c*d*a+d*a*b", "a*b*c*d-1"]);
        let r = buchberger(&i, MonomialOrder::GrevLex, &Limits::default().with_max_pairs(2));
        assert!(matches!(r, Err(GroebnerError::ResourceExceeded { kind: LimitKind::Pairs, .. })));
        let r = buchberger(&i, MonomialOrder::GrevLex, &Limits::default().with_interrupt(Interrupt::new(|| true)));
        assert!(matches!(r, Err(GroebnerError::ResourceExceeded { kind: LimitKind::Interrupted, .. })));
    }
}
