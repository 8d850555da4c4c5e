use cyclic_ainf::algebra::*;
use cyclic_ainf::kontsevich::{evaluate, kontsevich_value, verify_cocycle, Presentation};
use cyclic_ainf::ribbon::*;
use proptest::prelude::*;
use proptest::sample::Index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn pool() -> &'static Vec<RibbonGraph> {
    static P: OnceLock<Vec<RibbonGraph>> = OnceLock::new();
    P.get_or_init(|| {
        let mut out = vec![theta(), dumbbell(), figure_eight(), torus_figure_eight()];
        for pairs in [
            [(0, 3), (1, 4), (2, 5)],
            [(0, 2), (1, 4), (3, 5)],
            [(0, 1), (2, 4), (3, 5)],
        ] {
            let r = rose(&pairs).unwrap();
            for gs in generate_subcomplex(&r, Twist::Untwisted).into_values() {
                out.extend(gs);
            }
        }
        out.sort();
        out.dedup();
        out
    })
}

fn arb_graph() -> impl Strategy<Value = RibbonGraph> {
    any::<Index>().prop_map(|i| pool()[i.index(pool().len())].clone())
}

fn arb_twist() -> impl Strategy<Value = Twist> {
    prop_oneof![Just(Twist::Untwisted), Just(Twist::Twisted)]
}

fn shuffle(n: usize, seed: u64) -> Vec<usize> {
    use rand::seq::SliceRandom;
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    v
}

#[test]
fn the_pool_is_large_enough() {
    assert!(pool().len() > 20);
}

#[test]
fn kontsevich_classes_are_cocycles_on_rose_complexes() {
    let r = rose(&[(0, 2), (1, 4), (3, 5)]).unwrap();
    for (alg, twist) in [
        (ground_field(), Twist::Untwisted),
        (split_algebra(), Twist::Untwisted),
        (dual_numbers(true), Twist::Twisted),
    ] {
        let rep = verify_cocycle(&alg, &r, twist).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }
}

#[test]
fn parity_must_match_the_regime() {
    assert!(kontsevich_value(&dual_numbers(true), &theta(), Twist::Untwisted, 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn euler_characteristic(g in arb_graph()) {
        let (genus, b) = g.genus_and_boundaries();
        let chi = g.num_vertices() as i64 - g.num_edges() as i64;
        prop_assert_eq!(chi, 2 - 2 * genus as i64 - b as i64);
    }

    #[test]
    fn canonical_form_ignores_labels(g in arb_graph(), twist in arb_twist(), seed in any::<u64>()) {
        let label = shuffle(g.half_edges(), seed);
        let h = g.relabel(&label);
        let s = transport_sign(&g, twist, &label);
        prop_assert_eq!(canonicalize(&g, twist, 1), canonicalize(&h, twist, s));
    }

    #[test]
    fn boundary_squares_to_zero(g in arb_graph(), twist in arb_twist()) {
        let b = boundary(&oriented(&g, twist, 1), twist);
        prop_assert!(boundary(&b, twist).is_zero());
    }

    #[test]
    fn expansion_counts(g in arb_graph(), twist in arb_twist()) {
        for (v, val) in g.valencies().into_iter().enumerate() {
            prop_assert_eq!(expansions_at(&g, twist, 1, v).len(), val * (val - 3) / 2);
        }
    }

    #[test]
    fn contraction_undoes_expansion(g in arb_graph(), twist in arb_twist(), v in any::<Index>(), k in any::<Index>()) {
        let v = v.index(g.num_vertices());
        let ex = expansions_at(&g, twist, 1, v);
        prop_assume!(!ex.is_empty());
        let (h, s) = &ex[k.index(ex.len())];
        let e = h.edge_of()[g.half_edges()];
        prop_assert_eq!(contract_edge(h, twist, *s, e).unwrap(), (g.clone(), 1));
    }

    #[test]
    fn kontsevich_value_ignores_the_presentation(g in arb_graph(), a in any::<Index>(), seed in any::<u64>()) {
        let algebras = [
            (ground_field(), Twist::Untwisted),
            (split_algebra(), Twist::Untwisted),
            (matrix_superalgebra(1, 1), Twist::Untwisted),
            (dual_numbers(true), Twist::Twisted),
            (m3_algebra(), Twist::Twisted),
        ];
        let (alg, twist) = &algebras[a.index(algebras.len())];
        let want = evaluate(alg, &g, *twist, 1, &Presentation::standard(&g)).unwrap().value;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Presentation::random(&g, &mut rng);
        prop_assert_eq!(evaluate(alg, &g, *twist, 1, &p).unwrap().value, want);
    }

    #[test]
    fn relabeled_graphs_have_equal_values(g in arb_graph(), seed in any::<u64>()) {
        let label = shuffle(g.half_edges(), seed);
        let h = g.relabel(&label);
        let s = transport_sign(&g, Twist::Untwisted, &label);
        let alg = split_algebra();
        prop_assert_eq!(
            kontsevich_value(&alg, &g, Twist::Untwisted, 1).unwrap(),
            kontsevich_value(&alg, &h, Twist::Untwisted, s).unwrap()
        );
    }
}
