//! Line-oriented data files holding variable tables, named polynomials,
//! ideals, substitutions and charts.
//!
//! ```text
//! # comment
//! order: lex
//! vars: y0:Y y1:Y x0:X t:P
//! Q = y0*x0^2 + t*y1*x0^2
//! vars other: a:P b:P
//! g = a^2 - b
//! ideal I: a, b - 1
//! map phi from default to other: y0 -> a; x0 -> 1
//! chart U: ones y0 x0; boundary y1
//! ```
//!
//! A trailing `\` joins the next line. Bindings, ideals and charts use the
//! most recent table. Expressions may name earlier bindings, which are
//! embedded into the current table. Unmapped variables of a map go to their
//! namesakes in the target table.

use std::collections::BTreeMap;
use std::path::Path;

use bidegree_core::fractions::RatFunc;
use bidegree_core::geomcheck::ChartSpec;
use bidegree_core::groebner::Ideal;
use bidegree_core::ring::{parse_expr, MonomialOrder, Poly, RingError, Substitution, VarTable, Vars};

/// Name of the table declared by a bare `vars:` line.
pub const DEFAULT_TABLE: &str = "default";

#[derive(Debug, thiserror::Error)]
pub enum PolyFileError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {source}")]
    Ring { line: usize, source: RingError },
    #[error("no {kind} named `{name}`")]
    Missing { kind: &'static str, name: String },
    #[error("`{0}` has a non-constant denominator")]
    NotPolynomial(String),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Clone, Debug, Default)]
pub struct PolyFile {
    pub tables: BTreeMap<String, Vars>,
    pub bindings: BTreeMap<String, RatFunc>,
    pub ideals: BTreeMap<String, Ideal>,
    pub maps: BTreeMap<String, Substitution>,
    pub charts: BTreeMap<String, ChartSpec>,
    /// Binding names in declaration order.
    pub order: Vec<String>,
}

fn syntax(line: usize, msg: impl Into<String>) -> PolyFileError {
    PolyFileError::Syntax { line, msg: msg.into() }
}

/// Physical lines joined across trailing backslashes, with the first line number of each.
fn logical_lines(src: &str) -> Vec<(usize, String)> {
    let mut out = Vec::new();
    let mut buf = String::new();
    let mut start = 0;
    for (k, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("").trim_end();
        if buf.is_empty() {
            start = k + 1;
        }
        match text.strip_suffix('\\') {
            Some(head) => {
                buf.push_str(head);
                buf.push(' ');
            }
            None => {
                buf.push_str(text);
                let line = std::mem::take(&mut buf);
                if !line.trim().is_empty() {
                    out.push((start, line.trim().to_string()));
                }
            }
        }
    }
    if !buf.trim().is_empty() {
        out.push((start, buf.trim().to_string()));
    }
    out
}

impl PolyFile {
    pub fn load(path: &Path) -> Result<PolyFile, PolyFileError> {
        let src = std::fs::read_to_string(path)
            .map_err(|source| PolyFileError::Io { path: path.display().to_string(), source })?;
        PolyFile::parse(&src)
    }

    pub fn parse(src: &str) -> Result<PolyFile, PolyFileError> {
        let mut file = PolyFile::default();
        let mut order = MonomialOrder::GrevLex;
        let mut current: Option<Vars> = None;
        for (line, text) in logical_lines(src) {
            let ring = |source| PolyFileError::Ring { line, source };
            if let Some(rest) = text.strip_prefix("order:") {
                order = match rest.trim() {
                    "grevlex" => MonomialOrder::GrevLex,
                    "lex" => MonomialOrder::Lex,
                    other => return Err(syntax(line, format!("unknown order `{other}`"))),
                };
            } else if let Some(rest) = text.strip_prefix("vars").filter(|r| r.starts_with([':', ' '])) {
                let (name, header) = rest.split_once(':').ok_or_else(|| syntax(line, "expected `vars NAME: ...`"))?;
                let name = match name.trim() {
                    "" => DEFAULT_TABLE,
                    n => n,
                };
                let vars = VarTable::parse_header(header).map_err(ring)?.with_order(order);
                file.tables.insert(name.to_string(), vars.clone());
                current = Some(vars);
            } else if let Some(rest) = text.strip_prefix("ideal ") {
                let vars = current.as_ref().ok_or_else(|| syntax(line, "ideal before any `vars:` line"))?;
                let (name, body) = rest.split_once(':').ok_or_else(|| syntax(line, "expected `ideal NAME: ...`"))?;
                let gens = body
                    .split(',')
                    .map(|g| file.eval_poly(g, vars).map_err(|e| e.at(line)))
                    .collect::<Result<Vec<_>, _>>()?;
                let ideal = Ideal::new(gens).map_err(|e| syntax(line, e.to_string()))?;
                file.ideals.insert(name.trim().to_string(), ideal);
            } else if let Some(rest) = text.strip_prefix("map ") {
                let (name, map) = file.parse_map(rest).map_err(|e| e.at(line))?;
                file.maps.insert(name, map);
            } else if let Some(rest) = text.strip_prefix("chart ") {
                let (name, body) = rest.split_once(':').ok_or_else(|| syntax(line, "expected `chart NAME: ...`"))?;
                let chart = parse_chart(body).map_err(|msg| syntax(line, msg))?;
                if let Some(vars) = &current {
                    chart.validate(vars).map_err(ring)?;
                }
                file.charts.insert(name.trim().to_string(), chart);
            } else if let Some((name, expr)) = text.split_once('=') {
                let vars = current.as_ref().ok_or_else(|| syntax(line, "binding before any `vars:` line"))?;
                let name = name.trim();
                if !is_name(name) {
                    return Err(syntax(line, format!("bad binding name `{name}`")));
                }
                let value = file.eval(expr, vars).map_err(|e| e.at(line))?;
                if file.bindings.insert(name.to_string(), value).is_none() {
                    file.order.push(name.to_string());
                }
            } else {
                return Err(syntax(line, format!("cannot parse `{text}`")));
            }
        }
        Ok(file)
    }

    /// Evaluates an expression over `vars`, resolving earlier bindings.
    pub fn eval(&self, src: &str, vars: &Vars) -> Result<RatFunc, EvalError> {
        let expr = parse_expr(src.trim())?;
        let lookup = |name: &str| self.bindings.get(name).and_then(|r| r.embed(vars).ok());
        Ok(expr.eval_ratfunc(vars, &lookup)?)
    }

    pub fn eval_poly(&self, src: &str, vars: &Vars) -> Result<Poly, EvalError> {
        let r = self.eval(src, vars)?;
        r.to_poly().ok_or_else(|| EvalError::NotPolynomial(src.trim().to_string()))
    }

    fn parse_map(&self, rest: &str) -> Result<(String, Substitution), EvalError> {
        let (head, body) = rest.split_once(':').ok_or(EvalError::Msg("expected `map NAME from A to B: ...`"))?;
        let words: Vec<&str> = head.split_whitespace().collect();
        let [name, "from", src, "to", dst] = words[..] else {
            return Err(EvalError::Msg("expected `map NAME from A to B: ...`"));
        };
        let table = |n: &str| self.tables.get(n).cloned().ok_or_else(|| EvalError::MissingTable(n.to_string()));
        let (source, target) = (table(src)?, table(dst)?);
        let mut map = Substitution::new(&source, &target);
        for entry in body.split(';').filter(|e| !e.trim().is_empty()) {
            let (var, image) = entry.split_once("->").ok_or(EvalError::Msg("map entries look like `v -> expr`"))?;
            map.set(var.trim(), self.eval(image, &target)?)?;
        }
        Ok((name.to_string(), map.identity_on_shared()))
    }

    pub fn table(&self, name: &str) -> Result<&Vars, PolyFileError> {
        self.tables.get(name).ok_or_else(|| missing("table", name))
    }

    pub fn ratfunc(&self, name: &str) -> Result<&RatFunc, PolyFileError> {
        self.bindings.get(name).ok_or_else(|| missing("binding", name))
    }

    pub fn poly(&self, name: &str) -> Result<Poly, PolyFileError> {
        self.ratfunc(name)?.to_poly().ok_or_else(|| PolyFileError::NotPolynomial(name.to_string()))
    }

    pub fn ideal(&self, name: &str) -> Result<&Ideal, PolyFileError> {
        self.ideals.get(name).ok_or_else(|| missing("ideal", name))
    }

    pub fn map(&self, name: &str) -> Result<&Substitution, PolyFileError> {
        self.maps.get(name).ok_or_else(|| missing("map", name))
    }

    pub fn chart(&self, name: &str) -> Result<&ChartSpec, PolyFileError> {
        self.charts.get(name).ok_or_else(|| missing("chart", name))
    }
}

fn missing(kind: &'static str, name: &str) -> PolyFileError {
    PolyFileError::Missing { kind, name: name.to_string() }
}

fn is_name(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic() || ch == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == '\'')
}

/// `ones a b; boundary c; invertible t`, sections in any order.
fn parse_chart(body: &str) -> Result<ChartSpec, String> {
    let (mut ones, mut boundary, mut invertible) = (Vec::new(), Vec::new(), Vec::new());
    for part in body.split(';').filter(|p| !p.trim().is_empty()) {
        let mut words = part.split_whitespace();
        let slot = match words.next() {
            Some("ones") => &mut ones,
            Some("boundary") => &mut boundary,
            Some("invertible") => &mut invertible,
            other => return Err(format!("unknown chart section `{}`", other.unwrap_or(""))),
        };
        slot.extend(words.map(str::to_string));
    }
    let mut chart = ChartSpec::new(&ones, &boundary);
    for v in &invertible {
        chart = chart.with_invertible(v);
    }
    Ok(chart)
}

/// Failure while evaluating one entry, before the line number is attached.
#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error("`{0}` has a non-constant denominator")]
    NotPolynomial(String),
    #[error("unknown table `{0}`")]
    MissingTable(String),
    #[error("{0}")]
    Msg(&'static str),
}

impl EvalError {
    fn at(self, line: usize) -> PolyFileError {
        match self {
            EvalError::Ring(source) => PolyFileError::Ring { line, source },
            other => syntax(line, other.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use bidegree_core::ring::parse_poly;

    const SAMPLE: &str = "\
# sample
vars: y0:Y y1:Y x0:X t:P
Q = y0*x0^2 \\
  + t*y1*x0^2
R = Q*y1
vars other: a:P b:P
g = a^2 - b
ideal I: a, b - 1
map phi from default to other: y0 -> a; y1 -> b; x0 -> 1; t -> 2
chart U: ones a; boundary b; invertible b
";

    #[test]
    fn parses_every_entry_kind() {
        let f = PolyFile::parse(SAMPLE).unwrap();
        let v = f.table(DEFAULT_TABLE).unwrap().clone();
        assert_eq!(f.poly("R").unwrap(), parse_poly("y1*y0*x0^2 + t*y1^2*x0^2", &v).unwrap());
        assert_eq!(f.order, ["Q", "R", "g"]);
        assert_eq!(f.ideal("I").unwrap().gens().len(), 2);
        let w = f.table("other").unwrap();
        let img = f.map("phi").unwrap().apply(&f.poly("Q").unwrap()).unwrap();
        assert_eq!(img.to_poly().unwrap(), parse_poly("a + 2*b", w).unwrap());
        assert_eq!(f.chart("U").unwrap().ones(), ["a"]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = PolyFile::parse("vars: a:P\n\nb = a +\n").unwrap_err();
        assert!(matches!(e, PolyFileError::Ring { line: 3, .. }), "{e}");
        let e = PolyFile::parse("g = 1\n").unwrap_err();
        assert!(matches!(e, PolyFileError::Syntax { line: 1, .. }));
        let e = PolyFile::parse("vars: a:P\nmap m from default to nowhere: a -> 1\n").unwrap_err();
        assert!(e.to_string().contains("nowhere"));
    }

    #[test]
    fn rational_bindings_are_not_polynomials() {
        let f = PolyFile::parse("vars: a:P\nr = 1/(a + 1)\n").unwrap();
        assert!(f.ratfunc("r").is_ok());
        assert!(matches!(f.poly("r"), Err(PolyFileError::NotPolynomial(_))));
    }

    #[test]
    fn lex_order_applies_to_later_tables() {
        let f = PolyFile::parse("order: lex\nvars: a:P b:P\n").unwrap();
        assert_eq!(f.table(DEFAULT_TABLE).unwrap().order(), MonomialOrder::Lex);
    }
}
