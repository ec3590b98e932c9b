//! Sparse multivariate polynomials over ℚ(i) with a bigrading.
//!
//! Every [`Poly`] points at a shared [`VarTable`] which fixes variable names,
//! their grades (first factor `Y`, second factor `X`, or degree-zero `Param`)
//! and the monomial order used for the canonical term list.

mod gauss;
mod monomial;
mod parse;
mod poly;
mod subst;

pub use gauss::{rational_sqrt, GaussRat};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_expr, parse_poly, parse_ratfunc, Expr};
pub use poly::Poly;
pub use subst::{substitute_hom, Substitution};

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// Grade of a variable in the bigraded ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Grade {
    /// Coordinate of the first projective factor, bidegree (1,0).
    Y,
    /// Coordinate of the second projective factor, bidegree (0,1).
    X,
    /// Parameter of bidegree (0,0).
    Param,
}

impl Grade {
    pub fn tag(self) -> &'static str {
        match self {
            Grade::Y => "Y",
            Grade::X => "X",
            Grade::Param => "P",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Grade> {
        match tag {
            "Y" | "y" => Some(Grade::Y),
            "X" | "x" => Some(Grade::X),
            "P" | "p" | "PARAM" | "param" => Some(Grade::Param),
            _ => None,
        }
    }
}

/// Bidegree `(dy, dx)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct Bidegree {
    pub dy: u32,
    pub dx: u32,
}

impl Bidegree {
    pub const fn new(dy: u32, dx: u32) -> Self {
        Bidegree { dy, dx }
    }
}

impl core::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.dy + o.dy, self.dx + o.dx)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.dy, self.dx)
    }
}

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum RingError {
    #[error("syntax error at byte {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("bad grade tag `{0}`")]
    BadGrade(String),
    #[error("operands use different variable tables")]
    VarTableMismatch,
    #[error("not bihomogeneous: terms `{first}` and `{second}` differ in bidegree")]
    NotBihomogeneous { first: String, second: String },
    #[error("zero polynomial has no bidegree")]
    ZeroPolynomial,
    #[error("variable `{0}` has no image under the substitution")]
    UnmappedVariable(String),
    #[error("image of `{0}` has zero denominator")]
    ZeroDenominatorImage(String),
    #[error("polynomial is not divisible by the divisor")]
    NotDivisible,
    #[error("division by zero")]
    DivideByZero,
    #[error("term of bidegree {term} exceeds target {target}")]
    DegreeTooHigh { term: Bidegree, target: Bidegree },
}

/// Ordered variable names with grades and a monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct VarTable {
    names: Vec<String>,
    grades: Vec<Grade>,
    order: MonomialOrder,
}

/// Shared handle to a variable table.
pub type Vars = Arc<VarTable>;

impl VarTable {
    pub fn new<I, S>(decls: I, order: MonomialOrder) -> Result<Vars, RingError>
    where
        I: IntoIterator<Item = (S, Grade)>,
        S: Into<String>,
    {
        let mut names: Vec<String> = Vec::new();
        let mut grades = Vec::new();
        for (n, g) in decls {
            let n = n.into();
            if !is_identifier(&n) || n == "i" {
                return Err(RingError::SyntaxError { pos: 0, msg: alloc::format!("bad variable name `{n}`") });
            }
            if names.contains(&n) {
                return Err(RingError::DuplicateVariable(n));
            }
            names.push(n);
            grades.push(g);
        }
        Ok(Arc::new(VarTable { names, grades, order }))
    }

    /// Parses a header such as `vars: y0:Y y1:Y x0:X t:P` (the `vars:` prefix is optional).
    pub fn parse_header(src: &str) -> Result<Vars, RingError> {
        let body = src.trim();
        let body = body.strip_prefix("vars:").unwrap_or(body);
        let mut decls = Vec::new();
        for tok in body.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (name, tag) = tok.split_once(':').ok_or_else(|| RingError::BadGrade(tok.to_string()))?;
            let g = Grade::from_tag(tag).ok_or_else(|| RingError::BadGrade(tag.to_string()))?;
            decls.push((name.to_string(), g));
        }
        VarTable::new(decls, MonomialOrder::GrevLex)
    }

    /// Table whose grades are guessed from name prefixes: `y…` is `Y`, `x…`/`X…` is `X`, anything else a parameter.
    pub fn infer<I, S>(names: I) -> Result<Vars, RingError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let decls: Vec<(String, Grade)> = names
            .into_iter()
            .map(|n| {
                let n: String = n.into();
                let g = match n.chars().next() {
                    Some('y') => Grade::Y,
                    Some('x') | Some('X') => Grade::X,
                    _ => Grade::Param,
                };
                (n, g)
            })
            .collect();
        VarTable::new(decls, MonomialOrder::GrevLex)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn grade(&self, idx: usize) -> Grade {
        self.grades[idx]
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn index(&self, name: &str) -> Result<usize, RingError> {
        self.index_of(name).ok_or_else(|| RingError::UnknownVariable(name.to_string()))
    }

    /// Indices of all variables with the given grade, in declaration order.
    pub fn of_grade(&self, g: Grade) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.grades[i] == g).collect()
    }

    pub fn with_order(&self, order: MonomialOrder) -> Vars {
        Arc::new(VarTable { names: self.names.clone(), grades: self.grades.clone(), order })
    }

    /// Appends variables at the end (smallest in the order).
    pub fn extended<S: Into<String>>(&self, extra: impl IntoIterator<Item = (S, Grade)>) -> Result<Vars, RingError> {
        let decls = self
            .names
            .iter()
            .cloned()
            .zip(self.grades.iter().copied())
            .chain(extra.into_iter().map(|(n, g)| (n.into(), g)));
        VarTable::new(decls, self.order)
    }

    /// A name not yet used in the table, built from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (0..)
            .map(|k| alloc::format!("{base}_{k}"))
            .find(|n| self.index_of(n).is_none())
            .unwrap()
    }

    /// Header line accepted by [`VarTable::parse_header`].
    pub fn header(&self) -> String {
        let mut s = String::from("vars:");
        for (n, g) in self.names.iter().zip(&self.grades) {
            s.push(' ');
            s.push_str(n);
            s.push(':');
            s.push_str(g.tag());
        }
        s
    }

    /// Bidegree contribution of a monomial.
    pub fn bidegree(&self, m: &Monomial) -> Bidegree {
        let mut b = Bidegree::default();
        for (e, g) in m.exps().iter().zip(&self.grades) {
            match g {
                Grade::Y => b.dy += e,
                Grade::X => b.dx += e,
                Grade::Param => {}
            }
        }
        b
    }
}

/// Two tables are compatible when they are the same allocation or structurally equal.
pub fn same_table(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
