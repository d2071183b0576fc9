use floer_core::graded_modules::{
    assemble, deg, random_short_exact, tower_pattern, triangle_deduce, verify_lemma_on_cone, Family, Flavor,
    GradedFUModule, Torsion, TriangleData,
};
use floer_core::lattice::{alpha_class, blowup_lattice, reflection, Isometry};
use proptest::prelude::*;

fn module(flavor: Flavor) -> impl Strategy<Value = GradedFUModule> {
    (
        prop::collection::vec(-6i64..6, 0..4),
        prop::collection::vec((-6i64..6, 1u32..4), 0..5),
    )
        .prop_map(move |(t, r)| {
            let torsion = r.into_iter().map(|(d, order)| Torsion { degree: deg(d), order }).collect();
            GradedFUModule::new(flavor, t.into_iter().map(deg).collect(), torsion).unwrap()
        })
}

fn flavor() -> impl Strategy<Value = Flavor> {
    prop_oneof![Just(Flavor::Plus), Just(Flavor::Minus)]
}

proptest! {
    #[test]
    fn shift_round_trip(m in flavor().prop_flat_map(module), d in -8i64..8) {
        prop_assert_eq!(m.shift(deg(d)).shift(deg(-d)), m.clone());
        let orders = |x: &GradedFUModule| x.torsion.iter().map(|t| t.order).collect::<Vec<_>>();
        prop_assert_eq!(orders(&m.shift(deg(d))), orders(&m));
        prop_assert_eq!(m.shift(deg(d)).rank(), m.rank());
    }

    #[test]
    fn reduced_part_and_assembly(m in flavor().prop_flat_map(module)) {
        let r = m.reduced_part();
        prop_assert_eq!(r.reduced_part(), r.clone());
        prop_assert!(r.towers.is_empty());
        let (towers, red) = m.disassemble();
        prop_assert_eq!(assemble(&towers, &red).unwrap(), m.clone());
        prop_assert!(assemble(&towers, &m).is_err() || m.towers.is_empty());
    }

    #[test]
    fn json_round_trip(m in flavor().prop_flat_map(module)) {
        prop_assert_eq!(GradedFUModule::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn direct_sum_commutes(a in module(Flavor::Plus), b in module(Flavor::Plus)) {
        prop_assert_eq!(a.direct_sum(&b), b.direct_sum(&a));
        prop_assert_eq!(a.direct_sum(&b).rank(), a.rank() + b.rank());
    }

    #[test]
    fn lemma_holds_on_random_sequences(seed in any::<u64>(), f in 0usize..3) {
        let family = [Family::General, Family::Ag0, Family::Ag1][f];
        let (c, sub) = random_short_exact(seed, family, 8, 3);
        prop_assert!(c.is_valid());
        let r = verify_lemma_on_cone(&c, &sub);
        prop_assert_eq!(r.violations(), 0, "{:?}", r);
    }

    #[test]
    fn triangle_solution_is_consistent(t1 in -3i64..3, k in 0usize..3, d in -2i64..3) {
        // Slot 1 reduced part vanishes, so slot 2 and slot 3 agree up to the map degree.
        let top2 = t1 + 1 + 3;
        let m1 = assemble(&tower_pattern(1, deg(t1)), &GradedFUModule::zero(Flavor::Minus)).unwrap();
        let red2 = GradedFUModule::field_sum(Flavor::Minus, k, deg(d));
        let m2 = assemble(&tower_pattern(2, deg(top2)), &red2).unwrap();
        let t = TriangleData {
            slots: [Some(m1), Some(m2), None],
            map_degrees: [Some(deg(3)), Some(deg(0)), None],
            b: 1,
            ag: true,
        };
        let c = triangle_deduce(&t).unwrap();
        let (slot, m3) = c.solved.unwrap();
        prop_assert_eq!(slot, 2);
        prop_assert_eq!(m3.reduced_part(), red2);
        let mut want = tower_pattern(1, deg(top2));
        want.sort();
        prop_assert_eq!(m3.towers, want);
    }
}

#[test]
fn patterns_have_binomial_multiplicities() {
    assert_eq!(tower_pattern(0, deg(0)), vec![deg(0)]);
    let mut p = tower_pattern(2, deg(0));
    p.sort();
    assert_eq!(p, vec![deg(-2), deg(-1), deg(-1), deg(0)]);
}

#[test]
fn triangle_without_ag_is_rejected() {
    let t = TriangleData {
        slots: [None, None, None],
        map_degrees: [None; 3],
        b: 0,
        ag: false,
    };
    assert!(triangle_deduce(&t).is_err());
}

#[test]
fn reflections_are_involutive_isometries() {
    for m in 1..=3 {
        let l = blowup_lattice(m);
        let r = reflection(&l, &alpha_class(&l, m).unwrap()).unwrap();
        assert!(l.preserves(&r));
        assert_eq!(r.compose(&r), Isometry::identity(l.rank()));
    }
}
