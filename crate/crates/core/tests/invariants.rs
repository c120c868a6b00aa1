mod common;

use std::collections::BTreeSet;

use chordlab::invariants::{catalog_eval, parse_catalog, quarter, Derivation};
use chordlab::word::concat;
use chordlab::{builtin, derive_invariants, evaluate, GaussWord, InvariantSpec, RelatorType, Selector};
use proptest::prelude::*;

fn word_strategy(max_chords: usize) -> impl Strategy<Value = GaussWord> {
    (0..=max_chords).prop_flat_map(|n| {
        Just((1..=n as u32).flat_map(|l| [l, l]).collect::<Vec<u32>>())
            .prop_shuffle()
            .prop_map(|w| GaussWord::new(w).unwrap())
    })
}

fn oracle_terms(spec: &InvariantSpec) -> Vec<(Vec<u32>, i64)> {
    spec.basis.iter().zip(&spec.coeffs).map(|(x, &c)| (x.letters().to_vec(), c)).collect()
}

#[test]
fn lambda3_by_hand() {
    let terms = [(common::parse("1 2 1 2"), 1), (common::parse("1 2 3 1 2 3"), -3), (common::parse("1 2 3 1 3 2"), 3)];
    let l3 = builtin("lambda3").unwrap();
    for w in ["-", "1 1", "1 2 1 2", "1 2 3 1 2 3", "1 2 3 1 3 2", "1 2 3 4 1 2 3 4", "1 2 3 2 4 3 1 4"] {
        let g: GaussWord = w.parse().unwrap();
        assert_eq!(evaluate(&l3, &g).unwrap(), common::oracle_eval(&terms, g.letters()), "{w}");
    }
    assert_eq!(evaluate(&l3, &"1 2 3 1 2 3".parse().unwrap()).unwrap(), 0);
}

#[test]
fn lambda4_lies_in_the_conn_kernel() {
    let der = Derivation::new(2, 4, Selector::Conn, &[RelatorType::SIII].into()).unwrap();
    let l4 = builtin("lambda4").unwrap();
    assert_eq!(l4.basis, der.basis);
    assert!(chordlab::intlinalg::lattice_contains_i64(&der.kernel, &l4.coeffs).unwrap());
    l4.validate().unwrap();
    builtin("lambda3").unwrap().validate().unwrap();
}

#[test]
fn catalog_reports_rows_and_pairs() {
    let specs = [builtin("lambda3").unwrap(), builtin("lambda4").unwrap()];
    let text = "# name\tword\nunknot\t-\nkink\t1 1\nfig\t1 2 1 2\nbroken\t1 2 x\n";
    let table = catalog_eval(&specs, &parse_catalog(text));
    assert_eq!(table.rows.len(), 4);
    assert_eq!(table.rows[0].values, Ok(vec![0, 0]));
    assert_eq!(table.rows[1].values, Ok(vec![0, 0]));
    assert!(table.rows[3].values.is_err());
    assert!(table.distinguished.is_empty());
    assert_eq!(quarter(0), Some(0));
}

#[test]
fn distinguished_pairs_need_equal_first_value() {
    // the empty word and [1 2 3 1 2 3] agree on lambda3 but not on lambda4
    let specs = [builtin("lambda3").unwrap(), builtin("lambda4").unwrap()];
    let g: GaussWord = "1 2 3 1 2 3".parse().unwrap();
    assert_eq!(evaluate(&specs[0], &g).unwrap(), 0);
    let l4 = evaluate(&specs[1], &g).unwrap();
    let table = catalog_eval(&specs, &parse_catalog("a\t-\nb\t1 2 3 1 2 3\n"));
    assert_eq!(table.distinguished.is_empty(), l4 == 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn builtins_match_oracle(g in word_strategy(6)) {
        for name in ["lambda3", "lambda4"] {
            let spec = builtin(name).unwrap();
            prop_assert_eq!(evaluate(&spec, &g).unwrap(), common::oracle_eval(&oracle_terms(&spec), g.letters()));
        }
    }

    #[test]
    fn connected_invariants_are_additive(v in word_strategy(4), w in word_strategy(4)) {
        let ts: BTreeSet<RelatorType> = [RelatorType::SIII].into();
        let specs = derive_invariants(2, 4, Selector::Conn, &ts).unwrap();
        let vw = concat(&v, &w);
        for spec in &specs {
            prop_assert_eq!(evaluate(spec, &vw).unwrap(), evaluate(spec, &v).unwrap() + evaluate(spec, &w).unwrap());
        }
    }

    #[test]
    fn json_round_trips(name in prop::sample::select(vec!["lambda3", "lambda4"])) {
        let spec = builtin(name).unwrap();
        prop_assert_eq!(InvariantSpec::from_json(&spec.to_json()).unwrap(), spec);
    }
}
