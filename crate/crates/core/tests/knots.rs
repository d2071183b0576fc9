use std::collections::BTreeMap;

use floer_core::graded_modules::{deg, Flavor, GradedFUModule};
use floer_core::knot_complex::build_cfk;
use floer_core::surgery_cone::{
    build_cone_padded, flip_equivalence, flip_equivalences, genus_bound, quotient_homology, FlipMode, QuotientKind,
};
use floer_core::{parse_knot, surgery_homology, FilteredComplex};
use proptest::prelude::*;

const K: &str = "K(1, T2^2 T3^2 T2^2 T3^-2 T2^-2)";
const LEFT: &str = "K(1, T2^-2 T3^1 T2^2)";
const RIGHT: &str = "K(-1, T2^2 T3^-1 T2^-2)";

fn knot(s: &str) -> FilteredComplex {
    build_cfk(&parse_knot(s).unwrap()).unwrap()
}

/// Words in `T2^2` and `T3`, which is where `parse_knot` accepts braids.
fn word() -> impl Strategy<Value = String> {
    let letter = prop_oneof![
        (-1i64..=1).prop_filter("nonzero", |p| *p != 0).prop_map(|p| format!("T2^{}", 2 * p)),
        (-2i64..=2).prop_filter("nonzero", |p| *p != 0).prop_map(|p| format!("T3^{p}")),
    ];
    (prop_oneof![Just(1i64), Just(-1)], prop::collection::vec(letter, 1..=3))
        .prop_map(|(e, ls)| format!("K({e}, {})", ls.join(" ")))
}

fn total(h: &BTreeMap<(i64, i64), usize>) -> usize {
    h.values().sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn built_complexes_are_knot_complexes(s in word()) {
        let c = knot(&s);
        prop_assert!(c.check().is_ok());
        prop_assert!(c.d_squared_is_zero());
        let h = c.hfk_hat();
        for (&(a, m), &r) in &h {
            prop_assert_eq!(h.get(&(-a, m - 2 * a)).copied(), Some(r), "{}: symmetry at {:?}", s, (a, m));
        }
        prop_assert_eq!(total(&h) % 2, 1);
        let delta = c.alexander_polynomial();
        prop_assert_eq!(delta.values().sum::<i64>(), 1);
        for (&a, &k) in &delta {
            prop_assert_eq!(delta.get(&-a).copied(), Some(k));
        }
    }

    #[test]
    fn mirror_negates_gradings(s in word()) {
        let spec = parse_knot(&s).unwrap();
        let h = build_cfk(&spec).unwrap().hfk_hat();
        let hm = build_cfk(&spec.mirror()).unwrap().hfk_hat();
        let flipped: BTreeMap<_, _> = h.iter().map(|(&(a, m), &r)| ((-a, -m), r)).collect();
        prop_assert_eq!(hm, flipped);
    }

    #[test]
    fn json_round_trip(s in word()) {
        let c = knot(&s);
        let back = FilteredComplex::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), c.to_json());
    }
}

#[test]
fn trefoils_are_distinguished() {
    let (l, r) = (knot(LEFT), knot(RIGHT));
    let want: BTreeMap<_, _> = [((-1, 0), 1), ((0, 1), 1), ((1, 2), 1)].into_iter().collect();
    assert_eq!(l.hfk_hat(), want);
    assert_ne!(r.hfk_hat(), want);
}

#[test]
fn k_fixture_matches_pipeline() {
    let v: serde_json::Value = serde_json::from_str(include_str!("../../cli/fixtures/k.json")).unwrap();
    let fixture = FilteredComplex::from_json(&v).unwrap();
    let built = knot(K);
    assert_eq!(fixture.to_json(), built.to_json());
    assert_eq!(built.len(), 9);
    assert_eq!(genus_bound(&built), 2);
}

#[test]
fn quotients_stabilise_past_the_genus() {
    for s in [LEFT, K] {
        let c = knot(s);
        let g = genus_bound(&c);
        let b = quotient_homology(&c, QuotientKind::B);
        assert!(b.torsion.is_empty() && b.towers.len() == 1);
        for t in g..g + 3 {
            for a in [quotient_homology(&c, QuotientKind::A(t)), quotient_homology(&c, QuotientKind::A(-t))] {
                assert!(a.torsion.is_empty() && a.towers.len() == 1, "{s}: A{t} = {a}");
            }
        }
    }
}

#[test]
fn wider_window_gives_the_same_homology() {
    let c = knot(K);
    let flip = flip_equivalence(&c).unwrap();
    for n in [-2, -1, 1, 2] {
        let base = build_cone_padded(&c, n, FlipMode::Chain, &flip, 0).unwrap();
        let wide = build_cone_padded(&c, n, FlipMode::Chain, &flip, 2).unwrap();
        assert!(wide.is_valid());
        assert_eq!(base.homology(), wide.homology(), "n = {n}");
    }
}

#[test]
fn every_flip_gives_the_same_surgery() {
    for s in [LEFT, K] {
        let c = knot(s);
        let flips = flip_equivalences(&c, 6).unwrap();
        assert!(flips.len() > 1, "{s}: only {} flip", flips.len());
        let first = build_cone_padded(&c, -1, FlipMode::Chain, &flips[0], 0).unwrap().homology();
        for f in &flips[1..] {
            assert_eq!(build_cone_padded(&c, -1, FlipMode::Chain, f, 0).unwrap().homology(), first, "{s}");
        }
        assert_eq!(surgery_homology(&c, -1, FlipMode::Homology).unwrap(), first);
    }
}

#[test]
fn k_surgeries() {
    let c = knot(K);
    let minus = surgery_homology(&c, -1, FlipMode::Chain).unwrap();
    let want = GradedFUModule::tower(Flavor::Plus, deg(0)).direct_sum(&GradedFUModule::field_sum(Flavor::Plus, 2, deg(-1)));
    assert_eq!(minus, want);
    let plus = surgery_homology(&c, 1, FlipMode::Chain).unwrap();
    assert_eq!(plus.towers.len(), 1);
    assert_eq!(plus.reduced_part().torsion.len(), 2);
    assert_eq!(surgery_homology(&c, 0, FlipMode::Chain).map(|_| ()).unwrap_err().to_string(), "zero surgery is not supported");
}

#[test]
fn surgery_on_the_unknot_is_a_single_tower() {
    for n in [-3, -1, 1, 2] {
        let m = surgery_homology(&FilteredComplex::unknot(), n, FlipMode::Chain).unwrap();
        assert_eq!(m.towers.len(), n.unsigned_abs() as usize);
        assert!(m.torsion.is_empty());
    }
}
