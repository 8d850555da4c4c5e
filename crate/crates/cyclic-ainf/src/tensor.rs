//! The tensor-square operad `(A∞ ⊗ A∞)(n) = A∞(n) ⊗ A∞(n)`.

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::rational::pm;
use crate::tree::{all_trees, graft, rotate, tree_boundary, PlanarTree};

pub type Pair = (PlanarTree, PlanarTree);
pub type PairChain = Chain<Pair>;

pub fn pair_degree(p: &Pair) -> usize {
    p.0.degree() + p.1.degree()
}

pub fn pair_arity(p: &Pair) -> usize {
    p.0.leaves()
}

/// `(U1⊗U2) ∘_i (V1⊗V2) = (-1)^{|U2||V1|} U1∘_iV1 ⊗ U2∘_iV2`.
pub fn tensor_compose(x: &PairChain, i: usize, y: &PairChain) -> Result<PairChain> {
    let mut out = Chain::zero();
    for ((u1, u2), cu) in x.iter() {
        for ((v1, v2), cv) in y.iter() {
            if u1.leaves() != u2.leaves() {
                return Err(Error::ArityMismatch {
                    expected: u1.leaves(),
                    got: u2.leaves(),
                });
            }
            if v1.leaves() != v2.leaves() {
                return Err(Error::ArityMismatch {
                    expected: v1.leaves(),
                    got: v2.leaves(),
                });
            }
            let (w1, s1) = graft(u1, i, v1)?;
            let (w2, s2) = graft(u2, i, v2)?;
            let s = s1 * s2 * pm(u2.degree() * v1.degree());
            let c = cu * cv;
            out.add_term((w1, w2), if s > 0 { c } else { -c });
        }
    }
    Ok(out)
}

/// `∂(U1⊗U2) = ∂U1⊗U2 + (-1)^{|U1|} U1⊗∂U2`.
pub fn pair_boundary(p: &Pair) -> PairChain {
    let (u1, u2) = p;
    let mut out = Chain::zero();
    for (w, c) in tree_boundary(u1).iter() {
        out.add_term((w.clone(), u2.clone()), c.clone());
    }
    let s = pm(u1.degree());
    for (w, c) in tree_boundary(u2).iter() {
        out.add_term(
            (u1.clone(), w.clone()),
            if s > 0 { c.clone() } else { -c.clone() },
        );
    }
    out
}

pub fn tensor_boundary(x: &PairChain) -> PairChain {
    x.map_linear(pair_boundary)
}

/// `(r⊗r)(U1⊗U2)`; the rotation has degree zero, so no Koszul sign.
pub fn rotate_pair(p: &Pair) -> (Pair, i32) {
    let (a, sa) = rotate(&p.0);
    let (b, sb) = rotate(&p.1);
    ((a, b), sa * sb)
}

pub fn rotate_pairs(x: &PairChain) -> PairChain {
    x.map_signed(|p| Some(rotate_pair(p)))
}

/// `τ(U⊗V) = (-1)^{|U||V|} V⊗U`.
pub fn flip_pair(p: &Pair) -> (Pair, i32) {
    ((p.1.clone(), p.0.clone()), pm(p.0.degree() * p.1.degree()))
}

pub fn flip_pairs(x: &PairChain) -> PairChain {
    x.map_signed(|p| Some(flip_pair(p)))
}

/// Basis of `(A∞⊗A∞)(n)` in total degree `d`, in lexicographic order.
pub fn pair_basis(n: usize, d: usize) -> Vec<Pair> {
    let trees = all_trees(n);
    let mut out = Vec::new();
    for a in &trees {
        for b in &trees {
            if a.degree() + b.degree() == d {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

pub fn pair(a: &PlanarTree, b: &PlanarTree) -> Pair {
    (a.clone(), b.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;
    use num_traits::One;

    fn c(n: usize) -> PlanarTree {
        PlanarTree::corolla(n)
    }
    fn t(s: &str) -> PlanarTree {
        PlanarTree::parse(s).unwrap()
    }

    #[test]
    fn compose_corollas() {
        let x = Chain::single((c(2), c(2)), qi(1));
        let l = tensor_compose(&x, 1, &x).unwrap();
        assert_eq!(l, Chain::single((t("((**)*)"), t("((**)*)")), qi(1)));
        let r = tensor_compose(&x, 2, &x).unwrap();
        assert_eq!(r, Chain::single((t("(*(**))"), t("(*(**))")), qi(1)));
    }

    #[test]
    fn koszul_in_composition() {
        // |U2| = |V1| = 1
        let l3 = t("((**)*)");
        let x = Chain::single((l3.clone(), c(3)), qi(1));
        let y = Chain::single((c(3), l3.clone()), qi(1));
        let z = tensor_compose(&x, 1, &y).unwrap();
        let (w1, s1) = graft(&l3, 1, &c(3)).unwrap();
        let (w2, s2) = graft(&c(3), 1, &l3).unwrap();
        assert_eq!(z.coeff(&(w1, w2)), qi(-(s1 * s2) as i64));
    }

    #[test]
    fn boundary_squares_to_zero() {
        let y = Chain::single((c(4), c(4)), num_rational::BigRational::one());
        assert!(tensor_boundary(&tensor_boundary(&y)).is_zero());
        assert!(tensor_boundary(&Chain::single((c(2), c(2)), qi(1))).is_zero());
    }

    #[test]
    fn leibniz_sign() {
        let x = Chain::single((c(3), c(3)), qi(1));
        let d = tensor_boundary(&x);
        assert_eq!(d.coeff(&(t("((**)*)"), c(3))), qi(1));
        assert_eq!(d.coeff(&(c(3), t("((**)*)"))), qi(-1));
    }

    #[test]
    fn basis_sizes_at_six() {
        assert_eq!(pair_basis(6, 4).len(), 5572);
        assert_eq!(pair_basis(6, 3).len(), 10584);
    }
}
