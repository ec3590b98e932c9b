//! Seeded pseudorandom coefficients and polynomials for "very general" seeds and property tests.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ring::{Bidegree, GaussRat, Grade, Monomial, Poly, Vars};

/// Deterministic generator; the seed is recorded in every report that uses it.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero rational `a/b` with `|a| <= height`, `1 <= b <= height`.
pub fn random_rational<R: Rng>(rng: &mut R, height: i64) -> GaussRat {
    let h = height.max(1);
    loop {
        let a = rng.random_range(-h..=h);
        if a != 0 {
            return GaussRat::from_ratio(a, rng.random_range(1..=h));
        }
    }
}

/// A nonzero element of ℚ(i); the imaginary part is nonzero with probability `imag`.
pub fn random_gauss<R: Rng>(rng: &mut R, height: i64, imag: f64) -> GaussRat {
    let re = random_rational(rng, height);
    if rng.random_bool(imag.clamp(0.0, 1.0)) {
        let im = random_rational(rng, height);
        &re + &(&GaussRat::i() * &im)
    } else {
        re
    }
}

/// All exponent vectors over `vars` (a subset of indices) with total degree `deg`.
fn compositions(idx: &[usize], deg: u32, n: usize) -> Vec<Vec<u32>> {
    let Some((&first, rest)) = idx.split_first() else {
        return if deg == 0 { alloc::vec![alloc::vec![0; n]] } else { Vec::new() };
    };
    if rest.is_empty() {
        let mut e = alloc::vec![0; n];
        e[first] = deg;
        return alloc::vec![e];
    }
    let mut out = Vec::new();
    for k in 0..=deg {
        for mut e in compositions(rest, deg - k, n) {
            e[first] = k;
            out.push(e);
        }
    }
    out
}

/// Every monomial of the given bidegree that avoids parameter variables.
pub fn bihomogeneous_monomials(vars: &Vars, b: Bidegree) -> Vec<Monomial> {
    let n = vars.len();
    let ys = vars.of_grade(Grade::Y);
    let xs = vars.of_grade(Grade::X);
    let mut out = Vec::new();
    for ey in compositions(&ys, b.dy, n) {
        for ex in compositions(&xs, b.dx, n) {
            out.push(Monomial::from_exps(ey.iter().zip(&ex).map(|(a, c)| a + c).collect()));
        }
    }
    out
}

/// A bihomogeneous polynomial where each monomial appears with probability `density`.
/// Never returns zero.
pub fn random_bihomogeneous<R: Rng>(rng: &mut R, vars: &Vars, b: Bidegree, density: f64, height: i64) -> Poly {
    let monos = bihomogeneous_monomials(vars, b);
    assert!(!monos.is_empty(), "no monomials of bidegree {b}");
    loop {
        let mut terms: Vec<(Monomial, GaussRat)> = Vec::new();
        for m in &monos {
            if rng.random_bool(density.clamp(0.0, 1.0)) {
                terms.push((m.clone(), random_rational(rng, height)));
            }
        }
        let p = Poly::from_terms(vars, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A polynomial with up to `max_terms` terms, each variable of degree at most `max_deg`.
pub fn random_poly<R: Rng>(rng: &mut R, vars: &Vars, max_terms: usize, max_deg: u32, height: i64) -> Poly {
    let count = rng.random_range(0..=max_terms);
    let terms: Vec<(Monomial, GaussRat)> = (0..count)
        .map(|_| {
            let e = (0..vars.len()).map(|_| rng.random_range(0..=max_deg)).collect();
            (Monomial::from_exps(e), random_gauss(rng, height, 0.25))
        })
        .collect();
    Poly::from_terms(vars, terms)
}
