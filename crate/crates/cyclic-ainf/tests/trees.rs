use cyclic_ainf::rational::{pm, sign_q};
use cyclic_ainf::tree::*;
use cyclic_ainf::Chain;
use proptest::prelude::*;
use proptest::sample::Index;

fn tree(n: usize, pick: Index) -> PlanarTree {
    let all = all_trees(n);
    all[pick.index(all.len())].clone()
}

fn arb_tree(max: usize) -> impl Strategy<Value = PlanarTree> {
    (2..=max, any::<Index>()).prop_map(|(n, i)| tree(n, i))
}

#[test]
fn cell_counts_follow_kirkman() {
    for n in 2..=8 {
        for d in 0..=n - 2 {
            let got = enumerate_trees(n, d).unwrap().len() as u128;
            assert_eq!(got, kirkman_count(n, n - 2 - d), "n={n} d={d}");
        }
    }
}

proptest! {
    #[test]
    fn boundary_squares_to_zero(t in arb_tree(7)) {
        prop_assert!(boundary_chain(&tree_boundary(&t)).is_zero());
    }

    #[test]
    fn codes_round_trip(t in arb_tree(8)) {
        prop_assert_eq!(PlanarTree::parse(t.code()).unwrap(), t);
    }

    #[test]
    fn rotation_has_order_n_plus_one(t in arb_tree(6)) {
        let mut c = signed(t.clone(), 1);
        for _ in 0..=t.leaves() {
            c = rotate_chain(&c);
        }
        prop_assert_eq!(c, signed(t, 1));
    }

    #[test]
    fn rotation_is_a_chain_map(t in arb_tree(6)) {
        let c = signed(t, 1);
        prop_assert_eq!(rotate_chain(&boundary_chain(&c)), boundary_chain(&rotate_chain(&c)));
    }

    #[test]
    fn grafting_adds_leaves_and_edges(u in arb_tree(4), v in arb_tree(4), i in any::<Index>()) {
        let i = i.index(u.leaves()) + 1;
        let (w, _) = graft(&u, i, &v).unwrap();
        prop_assert_eq!(w.leaves(), u.leaves() + v.leaves() - 1);
        prop_assert_eq!(w.internal_edges(), u.internal_edges() + v.internal_edges() + 1);
    }

    #[test]
    fn boundary_is_a_derivation_of_grafting(u in arb_tree(4), v in arb_tree(4), i in any::<Index>()) {
        let i = i.index(u.leaves()) + 1;
        let (cu, cv) = (signed(u.clone(), 1), signed(v, 1));
        let lhs = boundary_chain(&graft_chain(&cu, i, &cv).unwrap());
        let mut rhs = graft_chain(&boundary_chain(&cu), i, &cv).unwrap();
        rhs.add_scaled(&graft_chain(&cu, i, &boundary_chain(&cv)).unwrap(), &sign_q(pm(u.degree())));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn chains_cancel() {
    let t = PlanarTree::corolla(3);
    let mut c = signed(t.clone(), 1);
    c.add_scaled(&signed(t, 1), &sign_q(-1));
    assert_eq!(c, Chain::zero());
}
