//! Exponent vectors and the two supported monomial orders.

use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector indexed by the owning [`VarTable`](super::VarTable).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: alloc::vec![0; nvars] }
    }

    pub fn from_exps(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn var(nvars: usize, idx: usize, e: u32) -> Self {
        let mut m = Self::one(nvars);
        m.exps[idx] = e;
        m
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect() })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect() }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub(crate) fn set_exp(&mut self, idx: usize, e: u32) {
        self.exps[idx] = e;
    }
}

/// Term order. The first declared variable is the largest.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum MonomialOrder {
    #[default]
    GrevLex,
    Lex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => {
                for (x, y) in a.exps.iter().zip(&b.exps) {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevLex => {
                let (da, db) = (a.degree(), b.degree());
                if da != db {
                    return da.cmp(&db);
                }
                for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonomialOrder::GrevLex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        // x*z < y^2 in grevlex with x > y > z.
        let xz = Monomial::from_exps(vec![1, 0, 1]);
        let yy = Monomial::from_exps(vec![0, 2, 0]);
        assert_eq!(MonomialOrder::GrevLex.cmp(&xz, &yy), Ordering::Less);
        assert_eq!(MonomialOrder::Lex.cmp(&xz, &yy), Ordering::Greater);
    }

    #[test]
    fn divisibility() {
        let a = Monomial::from_exps(vec![1, 2]);
        let b = Monomial::from_exps(vec![2, 2]);
        assert!(a.divides(&b));
        assert_eq!(b.div(&a), Some(Monomial::from_exps(vec![1, 0])));
        assert!(a.div(&b).is_none());
        assert_eq!(a.lcm(&Monomial::from_exps(vec![0, 3])).exps(), &[1, 3]);
    }
}
