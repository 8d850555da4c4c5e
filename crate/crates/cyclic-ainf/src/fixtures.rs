//! Printed low-arity diagonals, transcribed from their pictures.

use crate::chain::Chain;
use crate::rational::{q, Q};
use crate::tensor::PairChain;
use crate::tree::PlanarTree;
use num_traits::One;

fn t(s: &str) -> PlanarTree {
    PlanarTree::parse(s).expect("fixture tree")
}

/// `B1 = c2∘1c2`, `B2 = c2∘2c2` as signed canonical trees.
pub fn three_leaf_b() -> [(PlanarTree, i32); 2] {
    [(t("((**)*)"), -1), (t("(*(**))"), 1)]
}

/// Signs of `e1∧e2` against the canonical edge order, as labelled in the pictures.
pub const FOUR_LEAF_B_PICTURE_SIGNS: [i32; 5] = [1, -1, 1, -1, -1];

/// The five trivalent four-leaf trees. The orientation is `e2∧e1` in the
/// pictures' labels: the literal `e1∧e2` reading fails the chain-map test.
pub fn four_leaf_b() -> [(PlanarTree, i32); 5] {
    let trees = [
        "(*(*(**)))",
        "(*((**)*))",
        "((*(**))*)",
        "(((**)*)*)",
        "((**)(**))",
    ];
    let mut out = trees.map(|s| (t(s), 1));
    for (o, s) in out.iter_mut().zip(FOUR_LEAF_B_PICTURE_SIGNS) {
        o.1 = -s;
    }
    out
}

/// The five one-edge four-leaf trees as operadic composites
/// `c3∘1c2, c3∘2c2, c3∘3c2, c2∘1c3, c2∘2c3`.
pub fn four_leaf_e() -> [(PlanarTree, i32); 5] {
    [
        (t("((**)**)"), -1),
        (t("(*(**)*)"), 1),
        (t("(**(**))"), -1),
        (t("((***)*)"), 1),
        (t("(*(***))"), 1),
    ]
}

fn signed_sum(trees: &[(PlanarTree, i32)]) -> Chain<PlanarTree> {
    trees
        .iter()
        .map(|(tr, s)| (tr.clone(), Q::from_integer((*s).into())))
        .collect()
}

fn tensor(a: &Chain<PlanarTree>, b: &Chain<PlanarTree>) -> PairChain {
    let mut out = Chain::zero();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_term((x.clone(), y.clone()), cx * cy);
        }
    }
    out
}

/// `Δ(c3) = ½(B1⊗c3 + B2⊗c3 + c3⊗B1 + c3⊗B2)`.
pub fn printed_delta3() -> PairChain {
    let b = signed_sum(&three_leaf_b());
    let c3 = Chain::single(PlanarTree::corolla(3), Q::one());
    (&tensor(&b, &c3) + &tensor(&c3, &b)).scaled(&q(1, 2))
}

/// The γ table: `γ[i][j]` for the one-parameter family.
pub fn gamma_table(x: &Q) -> [[Q; 5]; 5] {
    let a = q(-1, 10) - x;
    let b = x.clone();
    let c = q(-2, 5) - x;
    let d = q(-1, 5) + x;
    let e = q(1, 5) + x;
    let n = |v: &Q| -v.clone();
    [
        [a.clone(), b.clone(), c.clone(), d.clone(), e.clone()],
        [e.clone(), a.clone(), b.clone(), c.clone(), n(&d)],
        [n(&d), e.clone(), a.clone(), b.clone(), n(&c)],
        [n(&c), n(&d), e.clone(), a.clone(), n(&b)],
        [b, c, d, n(&e), a],
    ]
}

/// `Δ(c4) = ⅕ c4⊗ΣB + ⅕ ΣB⊗c4 + Σ γ_ij E_i⊗E_j`.
pub fn printed_delta4(x: &Q) -> PairChain {
    let b = signed_sum(&four_leaf_b());
    let c4 = Chain::single(PlanarTree::corolla(4), Q::one());
    let mut out = (&tensor(&c4, &b) + &tensor(&b, &c4)).scaled(&q(1, 5));
    let e = four_leaf_e();
    let g = gamma_table(x);
    for (i, (ei, si)) in e.iter().enumerate() {
        for (j, (ej, sj)) in e.iter().enumerate() {
            let s = Q::from_integer((si * sj).into());
            out.add_term((ei.clone(), ej.clone()), &g[i][j] * s);
        }
    }
    out
}

pub const ALGEBRA_FIELD: &str = include_str!("../fixtures/algebra_field.json");
pub const ALGEBRA_DUAL_EVEN: &str = include_str!("../fixtures/algebra_dual_even.json");
pub const ALGEBRA_DUAL_ODD: &str = include_str!("../fixtures/algebra_dual_odd.json");
pub const ALGEBRA_M3: &str = include_str!("../fixtures/algebra_m3.json");
pub const DIAGONAL_3: &str = include_str!("../fixtures/diagonal_3.json");
pub const DIAGONAL_4: &str = include_str!("../fixtures/diagonal_4.json");
pub const GRAPH_THETA: &str = include_str!("../fixtures/graph_theta.json");
pub const GRAPH_DUMBBELL: &str = include_str!("../fixtures/graph_dumbbell.json");
pub const GRAPH_FIGURE_EIGHT: &str = include_str!("../fixtures/graph_figure_eight.json");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_relations_at_minus_tenth() {
        let g = gamma_table(&q(-1, 10));
        assert_eq!(g[0][0], q(0, 1));
        assert_eq!(g[0][1], q(-1, 10));
        assert_eq!(g[3][4], q(1, 10));
    }

    #[test]
    fn e_trees_are_composites() {
        use crate::tree::graft;
        let c = PlanarTree::corolla;
        let composites = [(3, 1, 2), (3, 2, 2), (3, 3, 2), (2, 1, 3), (2, 2, 3)];
        for ((a, i, b), e) in composites.iter().zip(four_leaf_e()) {
            assert_eq!(graft(&c(*a), *i, &c(*b)).unwrap(), e);
        }
    }

    #[test]
    fn printed_delta4_has_expected_support() {
        let d = printed_delta4(&q(-1, 10));
        // 10 corolla terms plus the nonzero γ entries
        assert_eq!(d.len(), 10 + 20);
    }

    #[test]
    fn shipped_files_match_constructors() {
        use crate::algebra::{dual_numbers, ground_field, m3_algebra};
        use crate::diagonal::{build_diagonal, Flags};
        use crate::io::*;
        use crate::ribbon::{dumbbell, figure_eight, theta, Twist};
        let j = |s: &str| parse_json(s, "fixture").unwrap();
        let d4 = diagonal_from_json(&j(DIAGONAL_4)).unwrap();
        assert_eq!(d4, build_diagonal(4, Flags::CYCLIC_COCOMMUTATIVE).unwrap());
        assert_eq!(d4.entries[&4], printed_delta4(&q(-1, 10)));
        assert_eq!(
            diagonal_from_json(&j(DIAGONAL_3)).unwrap().entries[&3],
            printed_delta3()
        );
        assert_eq!(
            algebra_from_json(&j(ALGEBRA_FIELD)).unwrap(),
            ground_field()
        );
        assert_eq!(
            algebra_from_json(&j(ALGEBRA_DUAL_EVEN)).unwrap(),
            dual_numbers(false)
        );
        assert_eq!(
            algebra_from_json(&j(ALGEBRA_DUAL_ODD)).unwrap(),
            dual_numbers(true)
        );
        assert_eq!(algebra_from_json(&j(ALGEBRA_M3)).unwrap(), m3_algebra());
        for (text, g) in [
            (GRAPH_THETA, theta()),
            (GRAPH_DUMBBELL, dumbbell()),
            (GRAPH_FIGURE_EIGHT, figure_eight()),
        ] {
            let o = graph_from_json(&j(text)).unwrap();
            assert_eq!((o.graph, o.twist, o.sign), (g, Twist::Untwisted, 1));
        }
    }
}
