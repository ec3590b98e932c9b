//! The classification closure reproduces both published tables cell by cell.

use bidegree_core::classify::{
    closure_classify, emit_tables, table_cells, Cell, FactBase, Grid, Layout, Rules, Status, TableFormat, BASE_FACTS,
};
use proptest::prelude::*;

fn status(sym: &str) -> Status {
    Status::parse(sym).unwrap()
}

/// Expected symbols, one row per layout row, one entry per column.
const TABLE1: [[&str; 4]; 6] = [
    ["R", "R", "R", "R"],
    ["R", "R", "R", "R"],
    ["R*", "T", "T", "R*"],
    ["T", "T", "T", "T"],
    ["R*", "T", "T", "R*"],
    ["T", "T", "T", "T"],
];

const TABLE2: [[&str; 6]; 9] = [
    ["R", "R", "R", "R", "R", "R"],
    ["R", "R", "R", "R", "R", "R"],
    ["R*", "R*", "?", "R*", "R*", "?"],
    ["R*", "R*", "T", "R*", "R*", "?"],
    ["?", "T", "T", "?", "?", "T"],
    ["?", "T", "T", "?", "?", "T"],
    ["T", "T", "T", "T", "T", "T"],
    ["R*", "R*", "T", "R*", "R*", "T"],
    ["?", "T", "T", "?", "?", "T"],
];

fn check_layout<const N: usize>(layout: &Layout, expected: &[[&str; N]]) {
    let base = FactBase::parse(BASE_FACTS).unwrap();
    let result = closure_classify(&base, Grid::default(), Rules::default()).unwrap();
    let cells = table_cells(&result, layout).unwrap();
    assert_eq!(cells.len(), expected.len() * N);
    for (cell, want) in cells.iter().zip(expected.iter().flatten()) {
        for c in &cell.cells {
            assert_eq!(
                result.status(*c),
                status(want),
                "{} row {} column {:?} at {c}",
                layout.name,
                cell.row,
                cell.column
            );
        }
    }
}

#[test]
fn first_table_matches() {
    check_layout(&Layout::table1(), &TABLE1);
}

#[test]
fn second_table_matches() {
    check_layout(&Layout::table2(), &TABLE2);
}

#[test]
fn csv_has_one_line_per_table_cell() {
    let result = closure_classify(&FactBase::parse(BASE_FACTS).unwrap(), Grid::default(), Rules::default()).unwrap();
    let csv = emit_tables(&result, &Layout::table2(), TableFormat::Csv).unwrap();
    assert_eq!(csv.lines().count(), 55);
    assert!(csv.lines().any(|l| l == "table2,\"(2,2)\",P3xP3,3,3,?,"), "{csv}");
    let md = emit_tables(&result, &Layout::table1(), TableFormat::Markdown).unwrap();
    assert!(md.contains("| (2,2) | R* | T [1] | T [2] | R* |"), "{md}");
    assert!(md.contains("[2] quadric-bundle"), "{md}");
}

#[test]
fn dropping_literature_only_loses_torsion() {
    let base = FactBase::parse(BASE_FACTS).unwrap();
    let all = closure_classify(&base, Grid::default(), Rules::default()).unwrap();
    let own = closure_classify(&base, Grid::default(), Rules { literature: false, ..Rules::default() }).unwrap();
    for c in Grid::default().cells() {
        let s = own.status(c);
        if s != Status::Unknown {
            assert_eq!(s, all.status(c), "{c}");
        }
    }
    assert_eq!(own.status(Cell::new(1, 3, 2, 3)), Status::Unknown);
    assert_eq!(own.status(Cell::new(2, 4, 2, 3)), Status::TorGreaterOne);
}

#[test]
fn provenance_chains_end_at_their_cell() {
    let result = closure_classify(&FactBase::parse(BASE_FACTS).unwrap(), Grid::default(), Rules::default()).unwrap();
    let c = result.get(Cell::new(2, 5, 2, 4));
    assert_eq!(c.status, Status::TorGreaterOne);
    assert_eq!(c.sources(), vec!["quadric-bundle".to_string()]);
    assert!(c.provenance.len() >= 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// More facts never change a status already derived from fewer.
    #[test]
    fn closure_is_monotone(mask in 0u8..=255, extra in 0u8..=255) {
        let base = FactBase::parse(BASE_FACTS).unwrap();
        let pick = |m: u8| FactBase {
            facts: base.facts.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, f)| f.clone()).collect(),
            cubic_assumptions: Vec::new(),
        };
        let small = closure_classify(&pick(mask), Grid::default(), Rules::default()).unwrap();
        let big = closure_classify(&pick(mask | extra), Grid::default(), Rules::default()).unwrap();
        for (c, s) in small.known() {
            prop_assert_eq!(big.status(c), s);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Statuses do not depend on the order facts are listed in.
    #[test]
    fn closure_ignores_fact_order(keys in proptest::collection::vec(any::<u32>(), 8)) {
        let base = FactBase::parse(BASE_FACTS).unwrap();
        let mut order: Vec<usize> = (0..base.facts.len()).collect();
        order.sort_by_key(|&k| keys[k % keys.len()]);
        let shuffled = FactBase {
            facts: order.iter().map(|&k| base.facts[k].clone()).collect(),
            cubic_assumptions: Vec::new(),
        };
        let a = closure_classify(&base, Grid::default(), Rules::default()).unwrap();
        let b = closure_classify(&shuffled, Grid::default(), Rules::default()).unwrap();
        for c in Grid::default().cells() {
            prop_assert_eq!(a.status(c), b.status(c));
        }
    }

    /// Without swapping, a single torsion fact spreads to exactly the cells one raise step reaches.
    #[test]
    fn raise_closure_is_one_step(l in 1u32..=4, m in 1u32..=7, d in 2u32..=5, f in 3u32..=5) {
        let base = FactBase::parse(&format!("T {l} {m} {d} {f} proved seed")).unwrap();
        let r = closure_classify(&base, Grid::default(), Rules { swap: false, ..Rules::default() }).unwrap();
        for c in Grid::default().cells() {
            let reached = c.m == m && c.l >= l && c.f >= f && c.d >= d + (c.l - l);
            prop_assert_eq!(r.status(c) == Status::TorGreaterOne, reached, "{}", c);
        }
    }
}
