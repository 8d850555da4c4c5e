//! Kontsevich cocycles of cyclic A∞-algebras on the ribbon graph complex.
//!
//! A vertex with half-edges `e_0, e_1, …, e_n` carries
//! `(x_1, …, x_{n+1}) ↦ ⟨m_n(x_1, …, x_n), x_{n+1}⟩` on `e_1 … e_n e_0`; the
//! half-edges are then reordered to `h_1^+ h_1^- … h_E^+ h_E^-` with the Koszul
//! sign and each edge is contracted against the copairing.
//!
//! With an odd pairing a half-edge labelled `x` has Koszul parity `|x| + 1`, and
//! each vertex functional picks up `(−1)^{Σ_k k|x_k|}`. This makes the vertex
//! functionals graded-cyclic and even, so the value is independent of the roots
//! and the vertex order, and changes sign with the edge order.

use crate::algebra::{CyclicAInfAlgebra, Vector};
use crate::chain::Chain;
use crate::diagonal::Diagonal;
use crate::error::{Error, Result};
use crate::rational::{index_perm_sign, koszul_sign, pm, sign_q, Q};
use crate::ribbon::{
    generate_subcomplex, graph_boundary, graph_diagonal, marking_sign, oriented, GraphChain,
    Marking, ParityCase, RibbonGraph, Twist,
};
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// The choices behind one evaluation: marking, edge order, and which edges run hi→lo.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub marking: Marking,
    pub edge_order: Vec<usize>,
    pub flipped: Vec<bool>,
}

impl Presentation {
    pub fn standard(g: &RibbonGraph) -> Presentation {
        Presentation {
            marking: Marking::standard(g),
            edge_order: (0..g.num_edges()).collect(),
            flipped: vec![false; g.num_edges()],
        }
    }

    /// Random vertex order, roots, edge order and edge directions.
    pub fn random<R: Rng>(g: &RibbonGraph, rng: &mut R) -> Presentation {
        let mut roots: Vec<usize> = g
            .vertices()
            .into_iter()
            .map(|c| *c.choose(rng).unwrap())
            .collect();
        roots.shuffle(rng);
        let mut edge_order: Vec<usize> = (0..g.num_edges()).collect();
        edge_order.shuffle(rng);
        Presentation {
            marking: Marking { roots },
            edge_order,
            flipped: (0..g.num_edges()).map(|_| rng.gen()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeContraction {
    pub plus: usize,
    pub minus: usize,
    /// Nonzero copairing entries available on this edge.
    pub states: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KontsevichEvaluation {
    pub graph: RibbonGraph,
    pub twist: Twist,
    pub sign: i32,
    pub value: Q,
    /// Parity of the half-edge permutation `η` as a plain permutation.
    pub eta_parity: usize,
    pub per_edge: Vec<EdgeContraction>,
}

struct VertexCache<'a> {
    alg: &'a CyclicAInfAlgebra,
    memo: HashMap<Vec<usize>, Q>,
}

impl VertexCache<'_> {
    /// `(−1)^{ε Σ k|x_k|} ⟨m_n(x_1, …, x_n), x_{n+1}⟩`.
    fn value(&mut self, xs: &[usize]) -> Q {
        if let Some(v) = self.memo.get(xs) {
            return v.clone();
        }
        let alg = self.alg;
        let n = xs.len() - 1;
        let out: Vector = alg.op(&xs[..n]);
        let mut v = alg.pair_vectors(&out, &Chain::single(xs[n], Q::one()));
        if alg.parity % 2 == 1 {
            let e: usize = xs
                .iter()
                .enumerate()
                .map(|(k, &x)| (k + 1) * alg.par(x))
                .sum();
            v *= sign_q(pm(e));
        }
        self.memo.insert(xs.to_vec(), v.clone());
        v
    }
}

/// The state sum `Z` for one presentation, without orientation factors.
fn state_sum(
    alg: &CyclicAInfAlgebra,
    g: &RibbonGraph,
    pres: &Presentation,
) -> Result<(Q, usize, Vec<EdgeContraction>)> {
    let co = alg.copairing()?;
    let eps = alg.parity % 2;
    let blocks = pres.marking.blocks(g);
    let edges = g.edges();
    if pres.edge_order.len() != edges.len() || pres.flipped.len() != edges.len() {
        return Err(Error::InvalidGraph(
            "presentation does not match the graph".into(),
        ));
    }
    let mut source: Vec<usize> = Vec::with_capacity(g.half_edges());
    for b in &blocks {
        source.extend(&b[1..]);
        source.push(b[0]);
    }
    let mut pos = vec![0; g.half_edges()];
    for (i, &h) in source.iter().enumerate() {
        pos[h] = i;
    }
    let ends: Vec<(usize, usize)> = pres
        .edge_order
        .iter()
        .map(|&k| {
            if pres.flipped[k] {
                (edges[k].1, edges[k].0)
            } else {
                edges[k]
            }
        })
        .collect();
    let order: Vec<usize> = ends.iter().flat_map(|&(p, m)| [pos[p], pos[m]]).collect();
    let eta_parity = usize::from(index_perm_sign(&order) < 0);

    let dim = alg.dim();
    let pairs: Vec<(usize, usize)> = (0..dim)
        .flat_map(|x| (0..dim).map(move |y| (x, y)))
        .filter(|&(x, y)| !co[x][y].is_zero())
        .collect();
    let per_edge: Vec<EdgeContraction> = ends
        .iter()
        .map(|&(p, m)| EdgeContraction {
            plus: p,
            minus: m,
            states: pairs.len(),
        })
        .collect();

    let mut cache = VertexCache {
        alg,
        memo: HashMap::new(),
    };
    let mut label = vec![0usize; g.half_edges()];
    let mut total = Q::zero();
    let mut pick = vec![0usize; ends.len()];
    if pairs.is_empty() {
        return Ok((total, eta_parity, per_edge));
    }
    loop {
        let mut w = Q::one();
        for (i, &(p, m)) in ends.iter().enumerate() {
            let (x, y) = pairs[pick[i]];
            label[p] = x;
            label[m] = y;
            w *= &co[x][y];
        }
        for b in &blocks {
            if w.is_zero() {
                break;
            }
            let xs: Vec<usize> = b[1..].iter().chain(&b[..1]).map(|&h| label[h]).collect();
            w *= cache.value(&xs);
        }
        if !w.is_zero() {
            let parities: Vec<usize> = source
                .iter()
                .map(|&h| (alg.par(label[h]) + eps) % 2)
                .collect();
            total += w * sign_q(koszul_sign(&parities, &order));
        }
        let mut i = pick.len();
        loop {
            if i == 0 {
                return Ok((total, eta_parity, per_edge));
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < pairs.len() {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// `c_A(g, sign · standard)` computed through the given presentation.
pub fn evaluate(
    alg: &CyclicAInfAlgebra,
    g: &RibbonGraph,
    twist: Twist,
    sign: i32,
    pres: &Presentation,
) -> Result<KontsevichEvaluation> {
    if twist.parity() != alg.parity % 2 {
        return Err(Error::ParityMismatch);
    }
    pres.marking.check(g)?;
    let (z, eta_parity, per_edge) = state_sum(alg, g, pres)?;
    let orient = match twist {
        Twist::Untwisted => marking_sign(g, twist, sign, &pres.marking)?,
        // the compatible edge order differs from ours by ⟨order⟩ against μ
        Twist::Twisted => sign * index_perm_sign(&pres.edge_order),
    };
    let value = z * sign_q(orient * pm(g.degree()));
    Ok(KontsevichEvaluation {
        graph: g.clone(),
        twist,
        sign,
        value,
        eta_parity,
        per_edge,
    })
}

pub fn kontsevich_value(
    alg: &CyclicAInfAlgebra,
    g: &RibbonGraph,
    twist: Twist,
    sign: i32,
) -> Result<Q> {
    Ok(evaluate(alg, g, twist, sign, &Presentation::standard(g))?.value)
}

pub fn kontsevich_chain(alg: &CyclicAInfAlgebra, x: &GraphChain, twist: Twist) -> Result<Q> {
    let mut s = Q::zero();
    for (g, c) in x.iter() {
        s += c * kontsevich_value(alg, g, twist, 1)?;
    }
    Ok(s)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleReport {
    pub checked: usize,
    pub failures: Vec<(RibbonGraph, Q)>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `c_A(∂G) = 0` for every generator `G` of `𝒢_*(Γ)` in degree ≥ 1.
pub fn verify_cocycle(
    alg: &CyclicAInfAlgebra,
    base: &RibbonGraph,
    twist: Twist,
) -> Result<CocycleReport> {
    let mut report = CocycleReport::default();
    for (d, gs) in generate_subcomplex(base, twist) {
        if d == 0 {
            continue;
        }
        for g in gs {
            let v = kontsevich_chain(alg, &graph_boundary(&g, twist), twist)?;
            report.checked += 1;
            if !v.is_zero() {
                report.failures.push((g, v));
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorFormulaReport {
    pub lhs: Q,
    pub rhs: Q,
    pub terms: usize,
    pub equal: bool,
}

/// `c_{A⊗B}(G)` against `(c_A ⊗ c_B)(δ G)`, for `G` with its standard orientation.
pub fn verify_tensor_formula(
    a: &CyclicAInfAlgebra,
    b: &CyclicAInfAlgebra,
    d: &Diagonal,
    g: &RibbonGraph,
) -> Result<TensorFormulaReport> {
    let case = ParityCase::from_parities(a.parity, b.parity);
    let (src, left, right) = case.twists();
    let n = g.valencies().into_iter().max().unwrap_or(3) - 1;
    let ab = crate::algebra::tensor_product_algebra(a, b, d, n)?;
    let x = oriented(g, src, 1);
    let lhs = kontsevich_chain(&ab, &x, src)?;
    let delta = graph_diagonal(&x, case, d)?;
    let mut rhs = Q::zero();
    for ((g1, g2), c) in delta.iter() {
        let v = kontsevich_value(a, g1, left, 1)? * kontsevich_value(b, g2, right, 1)?;
        rhs += c * v * sign_q(pm(g1.degree() * g2.degree()));
    }
    Ok(TensorFormulaReport {
        equal: lhs == rhs,
        lhs,
        rhs,
        terms: delta.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{
        dual_numbers, ground_field, m3_algebra, matrix_superalgebra, odd_clifford, split_algebra,
    };
    use crate::diagonal::{build_diagonal, Flags};
    use crate::ribbon::{dumbbell, figure_eight, rose, theta, torus_figure_eight};
    use num_traits::Signed;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn graphs() -> Vec<RibbonGraph> {
        let r = rose(&[(0, 3), (1, 4), (2, 5)]).unwrap();
        let r2 = rose(&[(0, 1), (2, 4), (3, 5)]).unwrap();
        let mut out = vec![
            theta(),
            dumbbell(),
            figure_eight(),
            torus_figure_eight(),
            r.clone(),
            r2.clone(),
        ];
        for b in [r, r2] {
            for gs in generate_subcomplex(&b, Twist::Untwisted).into_values() {
                out.extend(gs);
            }
        }
        out
    }

    #[test]
    fn choice_independence() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (alg, twist) in [
            (ground_field(), Twist::Untwisted),
            (dual_numbers(false), Twist::Untwisted),
            (dual_numbers(true), Twist::Twisted),
            (m3_algebra(), Twist::Twisted),
            (split_algebra(), Twist::Untwisted),
            (matrix_superalgebra(1, 1), Twist::Untwisted),
            (odd_clifford(), Twist::Twisted),
        ] {
            for g in graphs() {
                let base = evaluate(&alg, &g, twist, 1, &Presentation::standard(&g))
                    .unwrap()
                    .value;
                for _ in 0..6 {
                    let p = Presentation::random(&g, &mut rng);
                    let v = evaluate(&alg, &g, twist, 1, &p).unwrap().value;
                    assert_eq!(v, base, "{g} {twist:?} {p:?}");
                }
            }
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(
            kontsevich_value(&ground_field(), &theta(), Twist::Untwisted, 1)
                .unwrap()
                .abs(),
            Q::one()
        );
        assert!(
            kontsevich_value(&dual_numbers(false), &theta(), Twist::Untwisted, 1)
                .unwrap()
                .is_zero()
        );
        assert_eq!(
            kontsevich_value(&dual_numbers(true), &theta(), Twist::Untwisted, 1),
            Err(Error::ParityMismatch)
        );
    }

    #[test]
    fn supermatrices_count_boundary_cycles() {
        // a trivalent graph sees M(p|q) as (p − q)^{#boundary cycles} copies of ℚ
        for g in [theta(), dumbbell()] {
            let base = kontsevich_value(&ground_field(), &g, Twist::Untwisted, 1).unwrap();
            let b = g.genus_and_boundaries().1 as i32;
            for (p, q) in [(2, 0), (1, 1), (2, 1), (1, 2)] {
                let v =
                    kontsevich_value(&matrix_superalgebra(p, q), &g, Twist::Untwisted, 1).unwrap();
                assert_eq!(
                    v,
                    &base * Q::from_integer((p as i64 - q as i64).pow(b as u32).into()),
                    "{g} M({p}|{q})"
                );
            }
        }
    }

    #[test]
    fn tensor_formula_small_matrix() {
        let d = build_diagonal(5, Flags::CYCLIC).unwrap();
        let algs = [
            ground_field(),
            split_algebra(),
            dual_numbers(false),
            dual_numbers(true),
            odd_clifford(),
        ];
        for a in &algs {
            for b in &algs {
                let (src, _, _) = ParityCase::from_parities(a.parity, b.parity).twists();
                for base in [theta(), dumbbell(), figure_eight()] {
                    for gs in generate_subcomplex(&base, src).into_values() {
                        for g in gs {
                            let r = verify_tensor_formula(a, b, &d, &g).unwrap();
                            assert!(r.equal, "{g}: {} vs {}", r.lhs, r.rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cocycles() {
        let r = rose(&[(0, 3), (1, 4), (2, 5)]).unwrap();
        let r2 = rose(&[(0, 1), (2, 4), (3, 5)]).unwrap();
        let r3 = rose(&[(0, 2), (1, 4), (3, 5)]).unwrap();
        for base in [figure_eight(), r, r2, r3] {
            for (alg, twist) in [
                (ground_field(), Twist::Untwisted),
                (dual_numbers(false), Twist::Untwisted),
                (dual_numbers(true), Twist::Twisted),
                (m3_algebra(), Twist::Twisted),
            ] {
                let rep = verify_cocycle(&alg, &base, twist).unwrap();
                assert!(rep.passed(), "{base} {twist:?} {:?}", rep.failures);
            }
        }
    }
}
