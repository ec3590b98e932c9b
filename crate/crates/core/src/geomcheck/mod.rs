//! Checkers for the geometric claims: Jacobian minors, boundary units,
//! discriminants, square tests, integrality refutations, semistability and
//! singular-locus containments.

mod integrality;
mod semistable;
mod singular;
mod square;

pub use integrality::{discriminant, integrality_refutation, IntegralityRefutation, Quadratic};
pub use semistable::{semistability_check, ComponentPartial, SemistabilityReport};
pub use singular::{affine_cover, conic_singularity_check, singular_in_hyperplanes};
pub use square::{poly_sqrt, univariate_square_test, NotSquareReason, SquareTest};

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::groebner::GroebnerError;
use crate::ring::{Poly, RingError, Vars};

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum GeomError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error("index {index} out of range (size {size})")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("polynomial is not univariate in `{0}` over the parameters")]
    NotUnivariate(String),
    #[error("equation has degree {degree} in `{var}`, expected a quadratic")]
    NotQuadratic { var: String, degree: u32 },
    #[error("component mismatch: {0}")]
    ComponentMismatch(String),
}

/// An affine chart together with the variables known to be nonzero on the locus of interest.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ChartSpec {
    ones: Vec<String>,
    boundary: Vec<String>,
    invertibles: Vec<String>,
}

impl ChartSpec {
    /// `invertibles` starts as `ones ∪ boundary`.
    pub fn new<S: AsRef<str>>(ones: &[S], boundary: &[S]) -> Self {
        let ones: Vec<String> = ones.iter().map(|s| s.as_ref().to_string()).collect();
        let boundary: Vec<String> = boundary.iter().map(|s| s.as_ref().to_string()).collect();
        let mut invertibles = ones.clone();
        for b in &boundary {
            if !invertibles.contains(b) {
                invertibles.push(b.clone());
            }
        }
        ChartSpec { ones, boundary, invertibles }
    }

    pub fn with_invertible(mut self, name: &str) -> Self {
        if !self.invertibles.iter().any(|n| n == name) {
            self.invertibles.push(name.to_string());
        }
        self
    }

    pub fn ones(&self) -> &[String] {
        &self.ones
    }

    pub fn boundary(&self) -> &[String] {
        &self.boundary
    }

    pub fn invertibles(&self) -> &[String] {
        &self.invertibles
    }

    pub fn ones_str(&self) -> Vec<&str> {
        self.ones.iter().map(String::as_str).collect()
    }

    /// Checks that every named variable exists in `vars`.
    pub fn validate(&self, vars: &Vars) -> Result<(), RingError> {
        for n in self.ones.iter().chain(&self.boundary).chain(&self.invertibles) {
            vars.index(n)?;
        }
        Ok(())
    }

    pub fn dehomogenize(&self, p: &Poly) -> Result<Poly, RingError> {
        p.dehomogenize(&self.ones_str())
    }

    pub fn describe(&self) -> String {
        alloc::format!("ones={{{}}} boundary={{{}}}", self.ones.join(","), self.boundary.join(","))
    }
}

/// Entry `(i, j)` is `∂eqs[i]/∂vars[j]`.
pub fn jacobian_matrix(eqs: &[Poly], vars: &[&str]) -> Result<Vec<Vec<Poly>>, GeomError> {
    let mut m = Vec::with_capacity(eqs.len());
    for e in eqs {
        let mut row = Vec::with_capacity(vars.len());
        for v in vars {
            row.push(e.derivative_named(v)?);
        }
        m.push(row);
    }
    Ok(m)
}

/// Determinant of the submatrix on `rows × cols` by cofactor expansion.
pub fn det_minor(matrix: &[Vec<Poly>], rows: &[usize], cols: &[usize]) -> Result<Poly, GeomError> {
    if rows.len() != cols.len() {
        return Err(GeomError::IndexOutOfRange { index: cols.len(), size: rows.len() });
    }
    for &r in rows {
        if r >= matrix.len() {
            return Err(GeomError::IndexOutOfRange { index: r, size: matrix.len() });
        }
        for &c in cols {
            if c >= matrix[r].len() {
                return Err(GeomError::IndexOutOfRange { index: c, size: matrix[r].len() });
            }
        }
    }
    let vars = match matrix.first().and_then(|r| r.first()) {
        Some(p) => p.vars().clone(),
        None => return Err(GeomError::IndexOutOfRange { index: 0, size: 0 }),
    };
    Ok(cofactor(matrix, rows, cols, &vars))
}

fn cofactor(m: &[Vec<Poly>], rows: &[usize], cols: &[usize], vars: &Vars) -> Poly {
    match rows.len() {
        0 => Poly::one(vars),
        1 => m[rows[0]][cols[0]].clone(),
        _ => {
            let mut acc = Poly::zero(vars);
            let rest_rows = &rows[1..];
            for (k, &c) in cols.iter().enumerate() {
                let entry = &m[rows[0]][c];
                if entry.is_zero() {
                    continue;
                }
                let rest_cols: Vec<usize> = cols.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &c)| c).collect();
                let sub = entry * &cofactor(m, rest_rows, &rest_cols, vars);
                acc = if k % 2 == 0 { &acc + &sub } else { &acc - &sub };
            }
            acc
        }
    }
}

/// Whether `p` is a nonzero constant times a monomial in the named variables.
pub fn is_boundary_unit(p: &Poly, invertibles: &[&str]) -> bool {
    let [(m, c)] = p.terms() else { return false };
    if c.is_zero() {
        return false;
    }
    m.exps().iter().enumerate().all(|(i, &e)| e == 0 || invertibles.contains(&p.vars().name(i)))
}

/// [`is_boundary_unit`] against the chart's invertible variables.
pub fn unit_off_boundary(p: &Poly, chart: &ChartSpec) -> bool {
    let names: Vec<&str> = chart.invertibles.iter().map(String::as_str).collect();
    is_boundary_unit(p, &names)
}
