//! Independent oracles shared by the property suites.

#![allow(dead_code)]

use bidegree_core::random::bihomogeneous_monomials;
use bidegree_core::ring::{Bidegree, GaussRat, Monomial, Poly, Substitution};
use std::collections::BTreeMap;

/// Whether the linear system `rows · x = rhs` has a solution, by exact Gaussian elimination.
pub fn solvable(mut rows: Vec<Vec<GaussRat>>, mut rhs: Vec<GaussRat>) -> bool {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(pivot_row, p);
        rhs.swap(pivot_row, p);
        let inv = rows[pivot_row][col].inv().unwrap();
        for r in 0..rows.len() {
            if r == pivot_row || rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] * &inv;
            for c in col..ncols {
                let v = &rows[r][c] - &(&factor * &rows[pivot_row][c]);
                rows[r][c] = v;
            }
            rhs[r] = &rhs[r] - &(&factor * &rhs[pivot_row]);
        }
        pivot_row += 1;
    }
    rhs[pivot_row..].iter().all(GaussRat::is_zero)
}

/// Decides `f ∈ (gens)` for homogeneous `f` and `gens` in `Y`-graded variables by
/// solving for cofactors of complementary degree.
pub fn homogeneous_member(f: &Poly, gens: &[Poly]) -> bool {
    if f.is_zero() {
        return true;
    }
    let vars = f.vars();
    let e = f.bidegree().unwrap().dy;
    let mut unknowns: Vec<(usize, Monomial)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let dg = g.bidegree().unwrap().dy;
        if dg <= e {
            for m in bihomogeneous_monomials(vars, Bidegree::new(e - dg, 0)) {
                unknowns.push((i, m));
            }
        }
    }
    let targets = bihomogeneous_monomials(vars, Bidegree::new(e, 0));
    let index: BTreeMap<Vec<u32>, usize> = targets.iter().enumerate().map(|(k, m)| (m.exps().to_vec(), k)).collect();
    let mut rows = vec![vec![GaussRat::zero(); unknowns.len()]; targets.len()];
    for (col, (i, m)) in unknowns.iter().enumerate() {
        for (gm, c) in gens[*i].terms() {
            let row = index[gm.mul(m).exps()];
            rows[row][col] = &rows[row][col] + c;
        }
    }
    let mut rhs = vec![GaussRat::zero(); targets.len()];
    for (m, c) in f.terms() {
        rhs[index[m.exps()]] = c.clone();
    }
    solvable(rows, rhs)
}

/// Checks `φ(p)` against evaluation: `φ(p)(pt) = p(φ(pt))` at the given point of the target.
pub fn substitution_agrees_pointwise(p: &Poly, map: &Substitution, pt: &[GaussRat]) -> bool {
    let image = map.apply(p).unwrap();
    let den = image.den().eval(pt);
    if den.is_zero() {
        return true;
    }
    let lhs = &image.num().eval(pt) * &den.inv().unwrap();
    let mut at = Vec::new();
    for i in 0..map.source().len() {
        let r = map.image(i).unwrap();
        let d = r.den().eval(pt);
        if d.is_zero() {
            return true;
        }
        at.push(&r.num().eval(pt) * &d.inv().unwrap());
    }
    lhs == p.eval(&at)
}
