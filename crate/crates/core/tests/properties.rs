//! Randomized invariants: canonical serialization round-trips and the
//! union relabeling.

use std::collections::BTreeSet;

use proptest::prelude::*;
use steiner_core::*;

/// A random canonical triple system: an order and a set of distinct triples
/// over it. Not necessarily a valid design; canonicalization and the
/// formats must not care.
fn triple_system_strategy() -> impl Strategy<Value = TripleSystem> {
    (4usize..40).prop_flat_map(|order| {
        let triple = prop::sample::subsequence((0..order).collect::<Vec<_>>(), 3)
            .prop_map(|points| [points[0], points[1], points[2]]);
        prop::collection::btree_set(triple, 0..30).prop_map(move |blocks| {
            TripleSystem::new(order, blocks).expect("distinct in-range triples canonicalize")
        })
    })
}

proptest! {
    #[test]
    fn txt_roundtrip_is_identity(system in triple_system_strategy()) {
        let doc = DesignDocument::from_system(&system);
        let rendered = doc.render_txt();
        let parsed = DesignDocument::parse_txt(&rendered).unwrap();
        let reparsed = parsed.to_system().unwrap();
        prop_assert_eq!(reparsed.blocks(), system.blocks());
        prop_assert_eq!(parsed.render_txt(), rendered.clone());
        // canonical text: LF endings, no trailing whitespace
        prop_assert!(rendered.ends_with('\n'));
        for line in rendered.lines() {
            prop_assert_eq!(line.trim_end(), line);
        }
    }

    #[test]
    fn json_roundtrip_is_identity(system in triple_system_strategy(), set in prop::collection::btree_set(0usize..4, 0..4)) {
        let set: Vec<usize> = set.into_iter().collect();
        let doc = DesignDocument::from_system(&system).with_independent_set(&set);
        let parsed = DesignDocument::parse_json(&doc.render_json()).unwrap();
        prop_assert_eq!(&parsed, &doc);
        prop_assert_eq!(parsed.render_json(), doc.render_json());
    }

    #[test]
    fn canonicalization_is_idempotent(system in triple_system_strategy()) {
        let raw: Vec<[usize; 3]> = system.blocks().iter().map(|b| b.points()).collect();
        let again = TripleSystem::new(system.order(), raw).unwrap();
        prop_assert_eq!(again.blocks(), system.blocks());
    }

    #[test]
    fn relabel_union_roundtrips(x_size in 0usize..200, y_size in 0usize..200) {
        let map = relabel_union(x_size, y_size);
        prop_assert_eq!(map.total(), x_size + y_size);
        let mut seen = BTreeSet::new();
        for i in 0..x_size {
            let p = map.x_point(i);
            prop_assert_eq!(map.side(p).unwrap(), Side::X(i));
            seen.insert(p);
        }
        for r in 0..y_size {
            let p = map.y_point(r);
            prop_assert_eq!(map.side(p).unwrap(), Side::Y(r));
            seen.insert(p);
        }
        // the two injections tile {0..total} with no overlap
        prop_assert_eq!(seen.len(), map.total());
        prop_assert!(map.side(map.total()).is_err());
    }

    #[test]
    fn factorization_roundtrip(n in 2u32..7) {
        let fact = difference_factorization(n);
        let doc = FactorizationDocument::from_factorization(&fact);
        let txt = FactorizationDocument::parse_txt(&doc.render_txt()).unwrap();
        prop_assert_eq!(txt.to_factorization().unwrap(), fact.clone());
        let json = FactorizationDocument::parse_json(&doc.render_json()).unwrap();
        prop_assert_eq!(json.to_factorization().unwrap(), fact);
    }

    #[test]
    fn verify_routes_agree_on_random_systems(system in triple_system_strategy()) {
        let fast = verify_sts(&system);
        let merge = verify_sts_merge(&system);
        prop_assert_eq!(fast.passed(), merge.passed());
        prop_assert_eq!(fast.violations.len(), merge.violations.len());
    }
}
