use cyclic_ainf::algebra::*;
use cyclic_ainf::diagonal::{build_diagonal, Diagonal, Flags};
use cyclic_ainf::rational::{pm, q, sign_q};
use cyclic_ainf::{Chain, Q};
use proptest::prelude::*;
use proptest::sample::Index;
use std::sync::OnceLock;

fn diagonal() -> &'static Diagonal {
    static D: OnceLock<Diagonal> = OnceLock::new();
    D.get_or_init(|| build_diagonal(5, Flags::CYCLIC_COCOMMUTATIVE).unwrap())
}

fn zoo() -> Vec<CyclicAInfAlgebra> {
    vec![
        ground_field(),
        dual_numbers(false),
        dual_numbers(true),
        split_algebra(),
        odd_clifford(),
        matrix_superalgebra(1, 1),
        m3_algebra(),
    ]
}

fn arb_pair() -> impl Strategy<Value = (CyclicAInfAlgebra, CyclicAInfAlgebra)> {
    (any::<Index>(), any::<Index>()).prop_map(|(i, j)| {
        let z = zoo();
        (z[i.index(z.len())].clone(), z[j.index(z.len())].clone())
    })
}

#[test]
fn test_algebras_validate() {
    for a in zoo() {
        assert!(validate_algebra(&a, 5).passed(), "{:?}", a.names);
    }
}

#[test]
fn small_products_validate() {
    for (a, b) in [
        (m3_algebra(), dual_numbers(true)),
        (split_algebra(), odd_clifford()),
        (dual_numbers(false), m3_algebra()),
    ] {
        let ab = tensor_product_algebra(&a, &b, diagonal(), 4).unwrap();
        let r = validate_algebra(&ab, 4);
        assert!(r.passed(), "{r:?}");
    }
}

#[test]
fn short_diagonals_are_rejected() {
    let d = build_diagonal(3, Flags::CYCLIC).unwrap();
    assert!(tensor_product_algebra(&ground_field(), &ground_field(), &d, 4).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn product_pairing_has_the_koszul_sign((a, b) in arb_pair(), t in any::<[Index; 4]>()) {
        let ab = tensor_product_algebra(&a, &b, diagonal(), 2).unwrap();
        let (a1, b1, a2, b2) = (t[0].index(a.dim()), t[1].index(b.dim()), t[2].index(a.dim()), t[3].index(b.dim()));
        let want = a.pair(a1, a2) * b.pair(b1, b2) * sign_q(pm(b.par(b1) * a.par(a2)));
        prop_assert_eq!(ab.pair(a1 * b.dim() + b1, a2 * b.dim() + b2), &want);
    }

    #[test]
    fn product_m2_is_the_graded_tensor_product((a, b) in arb_pair(), t in any::<[Index; 4]>()) {
        let ab = tensor_product_algebra(&a, &b, diagonal(), 2).unwrap();
        let (a1, b1, a2, b2) = (t[0].index(a.dim()), t[1].index(b.dim()), t[2].index(a.dim()), t[3].index(b.dim()));
        let s = sign_q(pm(b.par(b1) * a.par(a2)));
        let mut want = Chain::zero();
        for (x, cx) in a.op(&[a1, a2]).iter() {
            for (y, cy) in b.op(&[b1, b2]).iter() {
                want.add_term(x * b.dim() + y, cx * cy * &s);
            }
        }
        prop_assert_eq!(ab.op(&[a1 * b.dim() + b1, a2 * b.dim() + b2]), want);
    }

    #[test]
    fn relations_hold_on_random_tuples((a, b) in arb_pair(), t in prop::collection::vec(any::<Index>(), 3..=5)) {
        let n = if a.dim() * b.dim() > 4 { 4 } else { 5 };
        let ab = tensor_product_algebra(&a, &b, diagonal(), n).unwrap();
        let tuple: Vec<usize> = t.iter().take(n).map(|i| i.index(ab.dim())).collect();
        prop_assert!(relation_value(&ab, &tuple).is_zero());
    }

    #[test]
    fn flipped_signs_are_detected(scale in prop_oneof![Just(-1i64), Just(2), Just(3)]) {
        let mut a = m3_algebra();
        a.set_op(&[1, 2], Chain::single(3, q(scale, 1)));
        prop_assert!(!validate_algebra(&a, 4).passed());
    }

    #[test]
    fn pairing_is_inverted_exactly(a in any::<Index>()) {
        let z = zoo();
        let alg = &z[a.index(z.len())];
        let co = alg.copairing().unwrap();
        let n = alg.dim();
        for i in 0..n {
            for k in 0..n {
                let s: Q = (0..n).map(|j| alg.pair(i, j) * &co[j][k]).sum();
                prop_assert_eq!(s, if i == k { q(1, 1) } else { q(0, 1) });
            }
        }
    }
}
