//! Forward-chaining classification of bidegree hypersurface cells `(l, m, d, f)`:
//! a hypersurface of bidegree `(d, f)` in `P^l × P^m`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum ClassifyError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("cell {cell} is both {first} and {second}")]
    InconsistentFactBase { cell: Cell, first: String, second: String },
    #[error("grid does not cover the layout: {0}")]
    GridTooSmall(String),
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cell {
    pub l: u32,
    pub m: u32,
    pub d: u32,
    pub f: u32,
}

impl Cell {
    pub const fn new(l: u32, m: u32, d: u32, f: u32) -> Self {
        Cell { l, m, d, f }
    }

    /// The same hypersurface with the factors listed in the other order.
    pub fn swapped(self) -> Cell {
        Cell { l: self.m, m: self.l, d: self.f, f: self.d }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.l, self.m, self.d, self.f)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Status {
    Rational,
    RationalByLang,
    TorGreaterOne,
    Unknown,
}

impl Status {
    pub fn symbol(self) -> &'static str {
        match self {
            Status::Rational => "R",
            Status::RationalByLang => "R*",
            Status::TorGreaterOne => "T",
            Status::Unknown => "?",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        match s {
            "R" => Some(Status::Rational),
            "R*" => Some(Status::RationalByLang),
            "T" => Some(Status::TorGreaterOne),
            "?" => Some(Status::Unknown),
            _ => None,
        }
    }

    pub fn is_rational(self) -> bool {
        matches!(self, Status::Rational | Status::RationalByLang)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// One coordinate of a cell pattern.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Bound {
    Exact(u32),
    AtLeast(u32),
}

impl Bound {
    pub fn matches(self, v: u32) -> bool {
        match self {
            Bound::Exact(k) => v == k,
            Bound::AtLeast(k) => v >= k,
        }
    }

    pub fn min(self) -> u32 {
        match self {
            Bound::Exact(k) | Bound::AtLeast(k) => k,
        }
    }

    fn parse(s: &str) -> Option<Bound> {
        match s.strip_suffix('+') {
            Some(k) => k.parse().ok().map(Bound::AtLeast),
            None => s.parse().ok().map(Bound::Exact),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(k) => write!(f, "{k}"),
            Bound::AtLeast(k) => write!(f, "{k}+"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Pattern {
    pub l: Bound,
    pub m: Bound,
    pub d: Bound,
    pub f: Bound,
}

impl Pattern {
    pub fn cell(c: Cell) -> Self {
        Pattern { l: Bound::Exact(c.l), m: Bound::Exact(c.m), d: Bound::Exact(c.d), f: Bound::Exact(c.f) }
    }

    pub fn matches(&self, c: Cell) -> bool {
        self.l.matches(c.l) && self.m.matches(c.m) && self.d.matches(c.d) && self.f.matches(c.f)
    }
}

/// Where a fact comes from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FactKind {
    /// Proved by the computations this toolkit checks.
    Proved,
    /// Taken from other work.
    Literature,
    /// A table entry not derivable from the other facts.
    Table,
}

impl FactKind {
    pub fn name(self) -> &'static str {
        match self {
            FactKind::Proved => "proved",
            FactKind::Literature => "literature",
            FactKind::Table => "table",
        }
    }

    fn parse(s: &str) -> Option<FactKind> {
        [FactKind::Proved, FactKind::Literature, FactKind::Table].into_iter().find(|k| k.name() == s)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fact {
    pub pattern: Pattern,
    pub status: Status,
    pub kind: FactKind,
    pub tag: String,
}

/// Facts plus the dimensions `m` for which the cubic hypothesis is assumed.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct FactBase {
    pub facts: Vec<Fact>,
    pub cubic_assumptions: Vec<u32>,
}

impl FactBase {
    /// Parses lines `STATUS l m d f KIND TAG`, where each coordinate is `k` or `k+`,
    /// and `assume-cubic m` lines. `#` starts a comment.
    pub fn parse(src: &str) -> Result<FactBase, ClassifyError> {
        let mut base = FactBase::default();
        for (k, raw) in src.lines().enumerate() {
            let line = k + 1;
            let text = raw.split('#').next().unwrap_or("").trim();
            if text.is_empty() {
                continue;
            }
            let err = |msg: &str| ClassifyError::Parse { line, msg: msg.to_string() };
            let toks: Vec<&str> = text.split_whitespace().collect();
            if toks[0] == "assume-cubic" {
                let [_, m] = toks[..] else { return Err(err("expected `assume-cubic m`")) };
                base.cubic_assumptions.push(m.parse().map_err(|_| err("bad dimension"))?);
                continue;
            }
            let [status, l, m, d, f, kind, tag] = toks[..] else {
                return Err(err("expected `STATUS l m d f KIND TAG`"));
            };
            let status = Status::parse(status).ok_or_else(|| err("unknown status"))?;
            if status == Status::Unknown {
                return Err(err("a fact cannot assert `?`"));
            }
            let b = |s: &str| Bound::parse(s).ok_or_else(|| err("bad coordinate"));
            let pattern = Pattern { l: b(l)?, m: b(m)?, d: b(d)?, f: b(f)? };
            let kind = FactKind::parse(kind).ok_or_else(|| err("unknown kind"))?;
            base.facts.push(Fact { pattern, status, kind, tag: tag.to_string() });
        }
        Ok(base)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for f in &self.facts {
            let p = &f.pattern;
            s.push_str(&alloc::format!(
                "{} {} {} {} {} {} {}\n",
                f.status,
                p.l,
                p.m,
                p.d,
                p.f,
                f.kind.name(),
                f.tag
            ));
        }
        for m in &self.cubic_assumptions {
            s.push_str(&alloc::format!("assume-cubic {m}\n"));
        }
        s
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Grid {
    pub max_l: u32,
    pub max_m: u32,
    pub max_d: u32,
    pub max_f: u32,
}

impl Default for Grid {
    fn default() -> Self {
        Grid { max_l: 7, max_m: 7, max_d: 8, max_f: 8 }
    }
}

impl Grid {
    pub fn contains(&self, c: Cell) -> bool {
        (1..=self.max_l).contains(&c.l)
            && (1..=self.max_m).contains(&c.m)
            && (1..=self.max_d).contains(&c.d)
            && (1..=self.max_f).contains(&c.f)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (1..=self.max_l).flat_map(move |l| {
            (1..=self.max_m).flat_map(move |m| {
                (1..=self.max_d).flat_map(move |d| (1..=self.max_f).map(move |f| Cell::new(l, m, d, f)))
            })
        })
    }

    fn symmetric(&self) -> bool {
        self.max_l == self.max_m && self.max_d == self.max_f
    }
}

/// Which inference rules run besides the linear-degree and Lang rules.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rules {
    /// Raising dimension and degree in the first factor.
    pub raise: bool,
    /// Reading a cell with its factors exchanged.
    pub swap: bool,
    /// Include literature and table facts.
    pub literature: bool,
    /// The conditional reduction to cubic hypersurfaces.
    pub cubic: bool,
}

impl Default for Rules {
    fn default() -> Self {
        Rules { raise: true, swap: true, literature: true, cubic: false }
    }
}

/// How a cell got its status.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Step {
    Fact { tag: String, kind: FactKind },
    /// Degree one in some factor.
    LinearDegree,
    /// Quadric bundle with more variables than `2^l`.
    Lang,
    Raise { from: Cell },
    Swap { from: Cell },
    Cubic { m: u32 },
}

impl Step {
    fn parent(&self) -> Option<Cell> {
        match self {
            Step::Raise { from } | Step::Swap { from } => Some(*from),
            _ => None,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Step::Fact { tag, kind } => alloc::format!("{} fact {tag}", kind.name()),
            Step::LinearDegree => "degree one in a factor".to_string(),
            Step::Lang => "quadric bundle with a section".to_string(),
            Step::Raise { from } => alloc::format!("raise from {from}"),
            Step::Swap { from } => alloc::format!("swap of {from}"),
            Step::Cubic { m } => alloc::format!("cubic hypothesis in P^{m}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassCell {
    pub cell: Cell,
    pub status: Status,
    /// Derivation from a root step down to this cell.
    pub provenance: Vec<Step>,
}

impl ClassCell {
    /// Tags of the facts the derivation starts from.
    pub fn sources(&self) -> Vec<String> {
        self.provenance
            .iter()
            .filter_map(|s| match s {
                Step::Fact { tag, .. } => Some(tag.clone()),
                Step::Cubic { m } => Some(alloc::format!("cubic-P{m}")),
                _ => None,
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub grid: Grid,
    steps: BTreeMap<Cell, (Status, Step)>,
}

impl Classification {
    pub fn status(&self, c: Cell) -> Status {
        self.steps.get(&c).map_or(Status::Unknown, |(s, _)| *s)
    }

    pub fn get(&self, c: Cell) -> ClassCell {
        let status = self.status(c);
        let mut provenance = Vec::new();
        let mut cur = Some(c);
        while let Some(k) = cur {
            let Some((_, step)) = self.steps.get(&k) else { break };
            cur = step.parent();
            provenance.push(step.clone());
        }
        provenance.reverse();
        ClassCell { cell: c, status, provenance }
    }

    /// Every cell with a known status.
    pub fn known(&self) -> impl Iterator<Item = (Cell, Status)> + '_ {
        self.steps.iter().map(|(c, (s, _))| (*c, *s))
    }
}

fn conflict(c: Cell, a: Status, b: Status) -> ClassifyError {
    ClassifyError::InconsistentFactBase { cell: c, first: a.symbol().to_string(), second: b.symbol().to_string() }
}

/// Least fixed point of the rules on the grid, with one derivation kept per cell.
pub fn closure_classify(base: &FactBase, grid: Grid, rules: Rules) -> Result<Classification, ClassifyError> {
    let mut steps: BTreeMap<Cell, (Status, Step)> = BTreeMap::new();
    for c in grid.cells() {
        if c.d == 1 || c.f == 1 {
            steps.insert(c, (Status::Rational, Step::LinearDegree));
        } else if c.f == 2 && u64::from(c.m) + 1 > 1u64 << c.l.min(63) {
            steps.insert(c, (Status::RationalByLang, Step::Lang));
        }
    }
    let mut queue: VecDeque<Cell> = VecDeque::new();
    let assign = |steps: &mut BTreeMap<Cell, (Status, Step)>,
                      queue: &mut VecDeque<Cell>,
                      c: Cell,
                      status: Status,
                      step: Step|
     -> Result<(), ClassifyError> {
        match steps.get(&c) {
            Some((s, _)) if *s == status || (s.is_rational() && status.is_rational()) => Ok(()),
            Some((s, _)) => Err(conflict(c, *s, status)),
            None => {
                steps.insert(c, (status, step));
                if status == Status::TorGreaterOne {
                    queue.push_back(c);
                }
                Ok(())
            }
        }
    };
    for fact in &base.facts {
        if fact.kind != FactKind::Proved && !rules.literature {
            continue;
        }
        for c in grid.cells().filter(|c| fact.pattern.matches(*c)) {
            assign(&mut steps, &mut queue, c, fact.status, Step::Fact { tag: fact.tag.clone(), kind: fact.kind })?;
        }
    }
    if rules.cubic {
        for &m in &base.cubic_assumptions {
            let r = m.saturating_sub(1);
            if !((r >= 3 && r % 2 == 1) || r == 4) {
                continue;
            }
            for c in grid.cells().filter(|c| c.m == m && c.f == 3 && c.d > c.l) {
                assign(&mut steps, &mut queue, c, Status::TorGreaterOne, Step::Cubic { m })?;
            }
        }
    }
    let swap_ok = rules.swap && grid.symmetric();
    while let Some(c) = queue.pop_front() {
        if rules.raise {
            for l in c.l..=grid.max_l {
                for d in (c.d + (l - c.l))..=grid.max_d {
                    for f in c.f..=grid.max_f {
                        let n = Cell::new(l, c.m, d, f);
                        if n != c {
                            assign(&mut steps, &mut queue, n, Status::TorGreaterOne, Step::Raise { from: c })?;
                        }
                    }
                }
            }
        }
        if swap_ok {
            let n = c.swapped();
            if n != c {
                assign(&mut steps, &mut queue, n, Status::TorGreaterOne, Step::Swap { from: c })?;
            }
        }
    }
    Ok(Classification { grid, steps })
}

/// A table row: a bidegree pattern.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Row {
    pub label: &'static str,
    pub d: Bound,
    pub f: Bound,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Layout {
    pub name: &'static str,
    pub columns: Vec<(u32, u32)>,
    pub rows: Vec<Row>,
}

const fn row(label: &'static str, d: Bound, f: Bound) -> Row {
    Row { label, d, f }
}

impl Layout {
    /// Threefolds and fourfolds.
    pub fn table1() -> Layout {
        use Bound::*;
        Layout {
            name: "table1",
            columns: alloc::vec![(1, 3), (2, 2), (2, 3), (1, 4)],
            rows: alloc::vec![
                row("(1,f)", Exact(1), AtLeast(1)),
                row("(d,1)", AtLeast(1), Exact(1)),
                row("(2,2)", Exact(2), Exact(2)),
                row("(2,f>=3)", Exact(2), AtLeast(3)),
                row("(d>=3,2)", AtLeast(3), Exact(2)),
                row("(d>=3,f>=3)", AtLeast(3), AtLeast(3)),
            ],
        }
    }

    /// Fivefolds and sixfolds.
    pub fn table2() -> Layout {
        use Bound::*;
        Layout {
            name: "table2",
            columns: alloc::vec![(1, 5), (2, 4), (3, 3), (1, 6), (2, 5), (3, 4)],
            rows: alloc::vec![
                row("(1,f)", Exact(1), AtLeast(1)),
                row("(d,1)", AtLeast(1), Exact(1)),
                row("(2,2)", Exact(2), Exact(2)),
                row("(3,2)", Exact(3), Exact(2)),
                row("(2,3)", Exact(2), Exact(3)),
                row("(3,3)", Exact(3), Exact(3)),
                row("(d>=2,f>=4)", AtLeast(2), AtLeast(4)),
                row("(d>=4,2)", AtLeast(4), Exact(2)),
                row("(d>=4,3)", AtLeast(4), Exact(3)),
            ],
        }
    }

    pub fn by_name(name: &str) -> Option<Layout> {
        match name {
            "table1" => Some(Layout::table1()),
            "table2" => Some(Layout::table2()),
            _ => None,
        }
    }
}

/// A rendered table cell: the common status of its concrete cells, or `None` if they disagree.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TableCell {
    pub row: &'static str,
    pub column: (u32, u32),
    pub status: Option<Status>,
    pub sources: Vec<String>,
    pub cells: Vec<Cell>,
}

impl TableCell {
    pub fn symbol(&self) -> String {
        match self.status {
            Some(s) => s.symbol().to_string(),
            None => "mixed".to_string(),
        }
    }
}

/// Evaluates every cell of the layout against the classification.
pub fn table_cells(result: &Classification, layout: &Layout) -> Result<Vec<TableCell>, ClassifyError> {
    let g = result.grid;
    for &(l, m) in &layout.columns {
        if l > g.max_l || m > g.max_m {
            return Err(ClassifyError::GridTooSmall(alloc::format!("column P^{l} x P^{m}")));
        }
    }
    let mut out = Vec::new();
    for r in &layout.rows {
        if r.d.min() > g.max_d || r.f.min() > g.max_f {
            return Err(ClassifyError::GridTooSmall(alloc::format!("row {}", r.label)));
        }
        for &(l, m) in &layout.columns {
            let cells: Vec<Cell> = (1..=g.max_d)
                .filter(|&d| r.d.matches(d))
                .flat_map(|d| (1..=g.max_f).filter(|&f| r.f.matches(f)).map(move |f| Cell::new(l, m, d, f)))
                .collect();
            let first = result.status(cells[0]);
            let status = cells.iter().all(|c| result.status(*c) == first).then_some(first);
            let mut sources: Vec<String> = Vec::new();
            if status == Some(Status::TorGreaterOne) {
                for c in &cells {
                    for s in result.get(*c).sources() {
                        if !sources.contains(&s) {
                            sources.push(s);
                        }
                    }
                }
            }
            out.push(TableCell { row: r.label, column: (l, m), status, sources, cells });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TableFormat {
    Markdown,
    Csv,
}

/// Renders the layout as a Markdown table with source footnotes, or as CSV with one line per table cell.
///
/// Row labels contain commas, so the CSV quotes them.
pub fn emit_tables(result: &Classification, layout: &Layout, format: TableFormat) -> Result<String, ClassifyError> {
    let cells = table_cells(result, layout)?;
    let mut s = String::new();
    match format {
        TableFormat::Csv => {
            s.push_str("table,row,column,l,m,status,sources\n");
            for c in &cells {
                s.push_str(&alloc::format!(
                    "{},\"{}\",P{}xP{},{},{},{},{}\n",
                    layout.name,
                    c.row,
                    c.column.0,
                    c.column.1,
                    c.column.0,
                    c.column.1,
                    c.symbol(),
                    c.sources.join(";")
                ));
            }
        }
        TableFormat::Markdown => {
            let mut notes: Vec<String> = Vec::new();
            s.push_str("| bidegree |");
            for (l, m) in &layout.columns {
                s.push_str(&alloc::format!(" P{l}xP{m} |"));
            }
            s.push_str("\n|---|");
            for _ in &layout.columns {
                s.push_str("---|");
            }
            s.push('\n');
            for chunk in cells.chunks(layout.columns.len()) {
                s.push_str(&alloc::format!("| {} |", chunk[0].row));
                for c in chunk {
                    let mut refs = Vec::new();
                    for src in &c.sources {
                        let k = match notes.iter().position(|n| n == src) {
                            Some(k) => k,
                            None => {
                                notes.push(src.clone());
                                notes.len() - 1
                            }
                        };
                        refs.push(alloc::format!("{}", k + 1));
                    }
                    if refs.is_empty() {
                        s.push_str(&alloc::format!(" {} |", c.symbol()));
                    } else {
                        s.push_str(&alloc::format!(" {} [{}] |", c.symbol(), refs.join(",")));
                    }
                }
                s.push('\n');
            }
            if !notes.is_empty() {
                s.push('\n');
                for (k, n) in notes.iter().enumerate() {
                    s.push_str(&alloc::format!("[{}] {n}\n", k + 1));
                }
            }
        }
    }
    Ok(s)
}

/// The fact base shipped with the toolkit.
pub const BASE_FACTS: &str = "\
# status l m d f kind tag
T 2 3 2 2 proved quadric-bundle
T 4 3 3 2 proved raise-dimension-3-2
T 1 4 2 3 proved fourfold-2-3
T 1 6 2 4 proved fivefold-2-4
T 2 2 2 2 literature hassett-tschinkel
T 1 3 2 3 literature okada-krylov
T 1 5 2 4 literature lange-zhang
T 3 4 4 2 table table2-p3xp4-d4
";

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> Classification {
        closure_classify(&FactBase::parse(BASE_FACTS).unwrap(), Grid::default(), Rules::default()).unwrap()
    }

    #[test]
    fn quadric_bundle_raises() {
        let r = base();
        assert_eq!(r.status(Cell::new(3, 3, 3, 2)), Status::TorGreaterOne);
        assert_eq!(r.status(Cell::new(2, 3, 2, 3)), Status::TorGreaterOne);
        assert_eq!(r.status(Cell::new(1, 3, 2, 2)), Status::RationalByLang);
        assert_eq!(r.status(Cell::new(3, 3, 2, 2)), Status::Unknown);
        assert_eq!(r.status(Cell::new(5, 2, 1, 7)), Status::Rational);
        let p = r.get(Cell::new(3, 3, 3, 2));
        assert_eq!(p.sources(), alloc::vec!["quadric-bundle".to_string()]);
        assert!(matches!(p.provenance.last(), Some(Step::Raise { .. })));
    }

    #[test]
    fn empty_base_fills_only_rule_cells() {
        let r = closure_classify(&FactBase::default(), Grid::default(), Rules::default()).unwrap();
        assert!(r.known().all(|(_, s)| s.is_rational()));
        assert_eq!(r.status(Cell::new(2, 3, 2, 2)), Status::Unknown);
    }

    #[test]
    fn conflicts_are_reported() {
        let base = FactBase::parse("T 1 3 2 2 proved bogus").unwrap();
        assert!(matches!(
            closure_classify(&base, Grid::default(), Rules::default()),
            Err(ClassifyError::InconsistentFactBase { .. })
        ));
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = FactBase::parse("# header\nT 1 2 3\n").unwrap_err();
        assert!(matches!(e, ClassifyError::Parse { line: 2, .. }));
        let base = FactBase::parse("T 2+ 3 2 2+ proved x\nassume-cubic 4\n").unwrap();
        assert_eq!(base.facts[0].pattern.l, Bound::AtLeast(2));
        assert_eq!(base.cubic_assumptions, alloc::vec![4]);
        assert_eq!(FactBase::parse(&base.to_text()).unwrap(), base);
    }

    #[test]
    fn cubic_rule_is_opt_in() {
        let base = FactBase::parse("assume-cubic 6").unwrap();
        let off = closure_classify(&base, Grid::default(), Rules::default()).unwrap();
        assert_eq!(off.status(Cell::new(1, 6, 2, 3)), Status::Unknown);
        let on = closure_classify(&base, Grid::default(), Rules { cubic: true, ..Rules::default() }).unwrap();
        assert_eq!(on.status(Cell::new(1, 6, 2, 3)), Status::TorGreaterOne);
        assert_eq!(on.status(Cell::new(2, 6, 2, 3)), Status::Unknown);
    }

    #[test]
    fn small_grid_is_rejected() {
        let g = Grid { max_l: 2, max_m: 2, max_d: 8, max_f: 8 };
        let r = closure_classify(&FactBase::default(), g, Rules::default()).unwrap();
        assert!(matches!(emit_tables(&r, &Layout::table1(), TableFormat::Csv), Err(ClassifyError::GridTooSmall(_))));
    }
}
