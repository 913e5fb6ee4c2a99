use std::collections::BTreeSet;

use ontropy::annotations::{parse_annotations, AnnotationFormat};
use ontropy::bitscores::load_bitscores;
use ontropy::obo::{emit_obo, parse_obo, to_graph, OboTerm};
use ontropy_core::Ontology;
use proptest::prelude::*;

fn term_id() -> impl Strategy<Value = String> {
    "[A-Z]{1,3}:[0-9]{1,7}"
}

fn obo_terms() -> impl Strategy<Value = Vec<OboTerm>> {
    prop::collection::btree_set(term_id(), 1..15).prop_flat_map(|ids| {
        let ids: Vec<String> = ids.into_iter().collect();
        let n = ids.len();
        let stanza = (
            "[a-z][a-z ]{0,12}[a-z]",
            prop_oneof![Just("bp"), Just("mf")],
            prop::collection::vec(0..n, 0..3),
            prop::collection::vec(
                (prop_oneof![Just("part_of"), Just("regulates")], 0..n),
                0..2,
            ),
            any::<bool>(),
        );
        prop::collection::vec(stanza, n).prop_map(move |rows| {
            rows.into_iter()
                .zip(&ids)
                .map(|((name, ns, is_a, rels, obsolete), id)| OboTerm {
                    id: id.clone(),
                    name,
                    namespace: ns.to_string(),
                    is_a: is_a.into_iter().map(|i| ids[i].clone()).collect(),
                    relationships: rels
                        .into_iter()
                        .map(|(r, i)| (r.to_string(), ids[i].clone()))
                        .collect(),
                    obsolete,
                })
                .collect()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn obo_round_trip(terms in obo_terms()) {
        let text = emit_obo(&terms);
        prop_assert_eq!(parse_obo(text.as_bytes()).unwrap(), terms);
    }

    #[test]
    fn graph_edges_stay_inside_kept_terms(terms in obo_terms(), ns in prop_oneof![Just("bp"), Just("mf")]) {
        let rels: BTreeSet<String> = ["part_of".to_string()].into();
        let Ok(g) = to_graph(&terms, Some(ns), &rels) else { return Ok(()) };
        let kept: BTreeSet<&String> = g.terms.iter().collect();
        for (c, p) in &g.edges {
            prop_assert!(kept.contains(c) && kept.contains(p));
        }
        let followed: usize = terms
            .iter()
            .filter(|t| !t.obsolete && t.namespace == ns)
            .map(|t| t.is_a.len() + t.relationships.iter().filter(|(r, _)| r == "part_of").count())
            .sum();
        prop_assert_eq!(g.edges.len() + g.dropped_edges, followed);
    }

    #[test]
    fn acyclic_input_builds(picks in prop::collection::vec(any::<prop::sample::Index>(), 0..20)) {
        // term i takes its parent among terms 0..i
        let n = picks.len() + 1;
        let ids: Vec<String> = (0..n).map(|i| format!("X:{i:03}")).collect();
        let terms: Vec<OboTerm> = (0..n)
            .map(|i| OboTerm {
                id: ids[i].clone(),
                is_a: if i == 0 { vec![] } else { vec![ids[picks[i - 1].index(i)].clone()] },
                ..OboTerm::default()
            })
            .collect();
        let parsed = parse_obo(emit_obo(&terms).as_bytes()).unwrap();
        let g = to_graph(&parsed, None, &BTreeSet::new()).unwrap();
        let o = Ontology::build(g.terms, g.edges).unwrap();
        prop_assert_eq!(o.len(), n);
        prop_assert_eq!(o.edge_count(), n - 1);
    }

    #[test]
    fn annotation_tsv_round_trip(pairs in prop::collection::vec(("[a-z0-9]{1,8}", term_id()), 0..30)) {
        let text: String = pairs.iter().map(|(g, t)| format!("{g}\t{t}\n")).collect();
        prop_assert_eq!(parse_annotations(text.as_bytes(), AnnotationFormat::Tsv).unwrap(), pairs);
    }

    #[test]
    fn bitscores_keep_maximum(rows in prop::collection::vec((0u8..5, 0u8..5, 0u32..10_000), 1..40)) {
        let text: String = rows.iter().map(|(a, b, s)| format!("p{a}\tp{b}\t{}\n", *s as f64 / 10.0)).collect();
        let loaded = load_bitscores(text.as_bytes()).unwrap();
        let keys: BTreeSet<(u8, u8)> = rows.iter().map(|r| (r.0, r.1)).collect();
        prop_assert_eq!(loaded.scores.len(), keys.len());
        prop_assert_eq!(loaded.duplicates, rows.len() - keys.len());
        for (a, b) in keys {
            let max = rows.iter().filter(|r| (r.0, r.1) == (a, b)).map(|r| r.2).max().unwrap();
            prop_assert_eq!(loaded.scores.get(&format!("p{a}"), &format!("p{b}")), Some(max as f64 / 10.0));
        }
    }
}
