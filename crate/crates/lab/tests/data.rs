//! The shipped data files describe the same objects as the core catalog.

use std::path::PathBuf;

use bidegree_core::catalog;
use bidegree_core::classify::BASE_FACTS;
use bidegree_core::ring::{parse_poly, same_table, VarTable};
use bidegree_lab::checks::load_identity;
use bidegree_lab::PolyFile;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn load(name: &str) -> PolyFile {
    PolyFile::load(&data(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn named_sources_match() {
    let places = [
        ("Q", "hpt.poly", "Q"),
        ("X23", "id-hpt-x23.poly", "source"),
        ("MODEL", "integrality-model.poly", "E"),
        ("MODEL", "id-absorb.poly", "source"),
        ("REFERENCE", "reference.poly", "G"),
        ("REFERENCE", "id-absorb.poly", "target"),
        ("S24", "id-s24-to-t.poly", "source"),
        ("KUECHLE", "kuechle.poly", "G"),
    ];
    let sources = catalog::sources();
    for (name, file, binding) in places {
        let (_, header, expr) = sources.iter().find(|s| s.0 == name).unwrap();
        let vars = VarTable::parse_header(header).unwrap();
        let expected = parse_poly(expr, &vars).unwrap();
        let found = load(file).poly(binding).unwrap();
        assert!(same_table(found.vars(), &vars), "{name} in {file}: table differs");
        assert_eq!(found, expected, "{name} in {file}");
    }
    for (name, _, _) in &sources {
        assert!(places.iter().any(|p| p.0 == *name), "{name} has no data file");
    }
}

#[test]
fn identity_files_match_catalog() {
    let files = [
        ("absorb-squares", "id-absorb.poly"),
        ("hpt-to-2-3", "id-hpt-x23.poly"),
        ("eliminate-d", "id-eliminate-d.poly"),
        ("s24-to-t", "id-s24-to-t.poly"),
        ("cubic-reduction", "id-cubic.poly"),
    ];
    let ids = catalog::chart_identities();
    assert_eq!(ids.len(), files.len());
    for ((name, expected), (fname, file)) in ids.iter().zip(files) {
        assert_eq!(*name, fname);
        let found = load_identity(&data(file)).unwrap();
        assert_eq!(found.source, expected.source, "{name} source");
        assert_eq!(found.target, expected.target, "{name} target");
        assert_eq!(found.cofactor, expected.cofactor, "{name} cofactor");
        assert_eq!(found.source_chart.describe(), expected.source_chart.describe(), "{name} source chart");
        assert_eq!(found.target_chart.describe(), expected.target_chart.describe(), "{name} target chart");
        let entries = |m: &bidegree_core::ring::Substitution| {
            m.entries().map(|(v, r)| (v.to_string(), r.clone())).collect::<Vec<_>>()
        };
        assert_eq!(entries(&found.map), entries(&expected.map), "{name} map");
    }
}

#[test]
fn conic_ideals_match() {
    let file = load("hpt.poly");
    assert_eq!(file.poly("Q").unwrap(), catalog::hpt_q());
    for (name, ideal) in catalog::hpt_conics() {
        assert_eq!(file.ideal(name).unwrap().gens(), ideal.gens(), "{name}");
    }
}

#[test]
fn integrality_specializations_match() {
    for (file, case) in [("integrality-model.poly", catalog::integrality_model()), ("integrality-t.poly", catalog::integrality_section_t())] {
        let f = load(file);
        let eq = f.bindings.get(if file.contains("model") { "E" } else { "T" }).unwrap().to_poly().unwrap();
        assert_eq!(eq, case.equation, "{file}");
        assert_eq!(f.chart("U").unwrap().describe(), case.chart.describe());
        let got: Vec<_> = f.map("spec").unwrap().entries().map(|(v, r)| (v.to_string(), r.clone())).collect();
        let want: Vec<_> = case.map.entries().map(|(v, r)| (v.to_string(), r.clone())).collect();
        assert_eq!(got, want, "{file}");
    }
}

#[test]
fn subform_data_matches() {
    let f = load("subform.poly");
    assert_eq!(f.ratfunc("f").unwrap(), &catalog::discriminant_f());
    let w = catalog::representation_witnesses();
    assert_eq!(f.ratfunc("a0").unwrap(), &w[0].1[0]);
    assert_eq!(f.ratfunc("a1").unwrap(), &w[1].1[0]);
    assert_eq!(f.ratfunc("b").unwrap(), &w[0].1[1]);
}

#[test]
fn cubic_seed_matches() {
    let f = load("cubic-seed.poly");
    let v = VarTable::parse_header(catalog::CUBIC_VARS).unwrap();
    for (name, src) in [("c", catalog::CUBIC_C), ("M", catalog::CUBIC_M), ("L", catalog::CUBIC_L)] {
        assert_eq!(f.poly(name).unwrap(), parse_poly(src, &v).unwrap(), "{name}");
    }
}

#[test]
fn facts_file_matches_builtin() {
    let text = std::fs::read_to_string(data("paper.facts")).unwrap();
    assert_eq!(text, BASE_FACTS);
}
