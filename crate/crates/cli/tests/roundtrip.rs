use std::path::Path;

use hklab_cli::parse_spec;
use proptest::prelude::*;

fn corpus() -> Vec<(String, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/specs");
    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "hk"))
        .collect();
    files.sort();
    files
        .into_iter()
        .map(|p| (p.display().to_string(), std::fs::read_to_string(&p).unwrap()))
        .collect()
}

#[test]
fn corpus_is_large_enough() {
    assert!(corpus().len() >= 20);
}

#[test]
fn corpus_round_trips() {
    for (name, text) in corpus() {
        let spec = parse_spec(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let rendered = spec.render();
        let again = parse_spec(&rendered).unwrap_or_else(|e| panic!("{name} rendered: {e}"));
        assert_eq!(again, spec, "{name}");
        assert_eq!(again.render(), rendered, "{name}");
    }
}

#[test]
fn corpus_normalizes_coefficients() {
    let text = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/specs/negative_coefficients.hk")).unwrap();
    let spec = parse_spec(&text).unwrap();
    // −3x² + xy − y² over F_7
    assert_eq!(spec.relations()[0].to_string(), "4*x^2 + x*y + 6*y^2");
    assert_eq!(spec.ideal("J").unwrap()[1].to_string(), "3*y");
}

fn expr_strategy() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0u32..40).prop_map(|c| c.to_string()),
        prop::sample::select(vec!["x", "y", "z"]).prop_map(str::to_string),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a})*({b})")),
            (inner.clone(), 0u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
            inner.prop_map(|a| format!("-({a})")),
        ]
    })
}

proptest! {
    #[test]
    fn random_specs_round_trip(
        p in prop::sample::select(vec![2u64, 3, 5, 7, 101]),
        rels in prop::collection::vec(expr_strategy(), 0..3),
        gens in prop::collection::vec(expr_strategy(), 1..4),
    ) {
        let mut text = format!("char {p};\nvars x y z;\n");
        for r in &rels {
            text.push_str(&format!("rel {r};\n"));
        }
        text.push_str(&format!("ideal I = {};\n", gens.join(", ")));
        let spec = parse_spec(&text).unwrap();
        let again = parse_spec(&spec.render()).unwrap();
        prop_assert_eq!(again, spec);
    }
}
