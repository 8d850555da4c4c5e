//! Finite-dimensional cyclic A∞-algebras with exact structure constants.

use crate::chain::Chain;
use crate::diagonal::Diagonal;
use crate::error::{Error, Result};
use crate::rational::{pm, Q};
use crate::tree::{root_decomposition, PlanarTree};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// A vector in the basis `0..dim`.
pub type Vector = Chain<usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Grading {
    Z,
    Z2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAInfAlgebra {
    pub parity: usize,
    pub grading: Grading,
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
    pub pairing: Vec<Vec<Q>>,
    /// `ops[k][inputs]` is `m_k(inputs)`; absent entries are zero.
    pub ops: BTreeMap<usize, BTreeMap<Vec<usize>, Vector>>,
}

fn basis_vec(i: usize) -> Vector {
    Chain::single(i, Q::one())
}

/// All tuples of length `n` over `0..dim`, lexicographically.
pub fn tuples(dim: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * dim);
        for t in &out {
            for a in 0..dim {
                let mut u = t.clone();
                u.push(a);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

impl CyclicAInfAlgebra {
    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn par(&self, i: usize) -> usize {
        self.degrees[i].rem_euclid(2) as usize
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn max_arity(&self) -> usize {
        self.ops
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(k, _)| *k)
            .max()
            .unwrap_or(0)
    }

    pub fn set_op(&mut self, inputs: &[usize], out: Vector) {
        let e = self.ops.entry(inputs.len()).or_default();
        if out.is_zero() {
            e.remove(inputs);
        } else {
            e.insert(inputs.to_vec(), out);
        }
    }

    /// `m_k` on basis elements.
    pub fn op(&self, inputs: &[usize]) -> Vector {
        self.ops
            .get(&inputs.len())
            .and_then(|m| m.get(inputs))
            .cloned()
            .unwrap_or_default()
    }

    /// `m_k` extended multilinearly.
    pub fn apply(&self, inputs: &[Vector]) -> Vector {
        let Some(table) = self.ops.get(&inputs.len()) else {
            return Chain::zero();
        };
        let mut out = Chain::zero();
        let mut stack: Vec<(Vec<usize>, Q)> = vec![(vec![], Q::one())];
        for v in inputs {
            let mut next = Vec::new();
            for (t, c) in &stack {
                for (i, ci) in v.iter() {
                    let mut u = t.clone();
                    u.push(*i);
                    next.push((u, c * ci));
                }
            }
            stack = next;
        }
        for (t, c) in stack {
            if let Some(r) = table.get(&t) {
                out.add_scaled(r, &c);
            }
        }
        out
    }

    pub fn pair(&self, a: usize, b: usize) -> &Q {
        &self.pairing[a][b]
    }

    pub fn pair_vectors(&self, x: &Vector, y: &Vector) -> Q {
        let mut s = Q::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                s += ca * cb * &self.pairing[*a][*b];
            }
        }
        s
    }

    /// The inverse of the pairing matrix: `copairing[a][b] = g^{ab}`.
    pub fn copairing(&self) -> Result<Vec<Vec<Q>>> {
        invert(&self.pairing).ok_or(Error::NonInvertiblePairing)
    }

    fn degree_matches(&self, out: i64, expected: i64) -> bool {
        match self.grading {
            Grading::Z => out == expected,
            Grading::Z2 => (out - expected).rem_euclid(2) == 0,
        }
    }

    /// Parity of a homogeneous vector, or `None` for zero.
    pub fn vector_parity(&self, v: &Vector) -> Option<usize> {
        v.keys().next().map(|i| self.par(*i))
    }
}

/// Gauss–Jordan inverse over ℚ.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = Q::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row.iter()) {
                    *x -= &f * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Evaluates `ρ(T)` on basis tuples, caching subtree values.
pub struct TreeEvaluator<'a> {
    alg: &'a CyclicAInfAlgebra,
    cache: HashMap<(PlanarTree, Vec<usize>), Vector>,
}

impl<'a> TreeEvaluator<'a> {
    pub fn new(alg: &'a CyclicAInfAlgebra) -> Self {
        TreeEvaluator {
            alg,
            cache: HashMap::new(),
        }
    }

    /// `ρ((T, can))(inputs)`.
    pub fn eval(&mut self, t: &PlanarTree, inputs: &[usize]) -> Result<Vector> {
        if inputs.len() != t.leaves() {
            return Err(Error::ArityMismatch {
                expected: t.leaves(),
                got: inputs.len(),
            });
        }
        if t.is_corolla() {
            return Ok(self.alg.op(inputs));
        }
        let key = (t.clone(), inputs.to_vec());
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let (subs, sign) = root_decomposition(t);
        let mut args = Vec::with_capacity(subs.len());
        let mut pos = 0;
        let mut before = 0usize;
        let mut parity = 0usize;
        for s in &subs {
            match s {
                None => {
                    let a = inputs[pos];
                    args.push(basis_vec(a));
                    before += self.alg.par(a);
                    pos += 1;
                }
                Some(s) => {
                    let m = s.leaves();
                    let block = &inputs[pos..pos + m];
                    let b = self.eval(s, block)?;
                    if b.is_zero() {
                        self.cache.insert(key, Chain::zero());
                        return Ok(Chain::zero());
                    }
                    parity += s.degree() * before;
                    before += s.degree() + block.iter().map(|&a| self.alg.par(a)).sum::<usize>();
                    args.push(b);
                    pos += m;
                }
            }
        }
        let v = self
            .alg
            .apply(&args)
            .scaled(&Q::from_integer((sign * pm(parity)).into()));
        self.cache.insert(key, v.clone());
        Ok(v)
    }
}

/// `ρ((T, sign·can))(inputs)`.
pub fn evaluate_tree(
    alg: &CyclicAInfAlgebra,
    t: &PlanarTree,
    sign: i32,
    inputs: &[usize],
) -> Result<Vector> {
    Ok(TreeEvaluator::new(alg)
        .eval(t, inputs)?
        .scaled(&Q::from_integer(sign.into())))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct AlgebraReport {
    pub pairing_symmetric: bool,
    pub pairing_parity: bool,
    pub nondegenerate: bool,
    pub degrees: bool,
    pub self_adjoint: bool,
    pub relations: bool,
    pub cyclic: bool,
    pub failure: Option<String>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.pairing_symmetric
            && self.pairing_parity
            && self.nondegenerate
            && self.degrees
            && self.self_adjoint
            && self.relations
            && self.cyclic
    }
}

fn names(alg: &CyclicAInfAlgebra, t: &[usize]) -> String {
    t.iter()
        .map(|&i| alg.names[i].as_str())
        .collect::<Vec<_>>()
        .join(",")
}

/// Left side of the `n`-th A∞ relation on a basis tuple.
pub fn relation_value(alg: &CyclicAInfAlgebra, a: &[usize]) -> Vector {
    let n = a.len();
    let mut out = Chain::zero();
    for j in 1..=n {
        for i in 1..=n - j + 1 {
            let inner = alg.op(&a[i - 1..i - 1 + j]);
            if inner.is_zero() {
                continue;
            }
            let mut args: Vec<Vector> = a[..i - 1].iter().map(|&x| basis_vec(x)).collect();
            args.push(inner);
            args.extend(a[i - 1 + j..].iter().map(|&x| basis_vec(x)));
            let before: usize = a[..i - 1].iter().map(|&x| alg.par(x)).sum();
            let s = pm(i * (j + 1) + j * n + j * before);
            out.add_scaled(&alg.apply(&args), &Q::from_integer(s.into()));
        }
    }
    out
}

/// Checks every invariant through arity `n_max` on all basis tuples.
pub fn validate_algebra(alg: &CyclicAInfAlgebra, n_max: usize) -> AlgebraReport {
    let dim = alg.dim();
    let mut r = AlgebraReport::default();
    let fail = |r: &mut AlgebraReport, msg: String| {
        if r.failure.is_none() {
            r.failure = Some(msg);
        }
    };
    r.pairing_symmetric = true;
    r.pairing_parity = true;
    for a in 0..dim {
        for b in 0..dim {
            let g = alg.pair(a, b);
            let back = alg.pair(b, a) * Q::from_integer(pm(alg.par(a) * alg.par(b)).into());
            if *g != back {
                r.pairing_symmetric = false;
                fail(
                    &mut r,
                    format!("pairing symmetry at ({})", names(alg, &[a, b])),
                );
            }
            if !g.is_zero() && (alg.par(a) + alg.par(b) + alg.parity) % 2 != 0 {
                r.pairing_parity = false;
                fail(
                    &mut r,
                    format!("pairing parity at ({})", names(alg, &[a, b])),
                );
            }
        }
    }
    r.nondegenerate = alg.copairing().is_ok();
    if !r.nondegenerate {
        fail(&mut r, "pairing is degenerate".into());
    }
    r.degrees = true;
    for (k, table) in &alg.ops {
        for (ins, out) in table {
            let expected: i64 = ins.iter().map(|&i| alg.degrees[i]).sum::<i64>() + *k as i64 - 2;
            if ins.len() != *k
                || out
                    .keys()
                    .any(|&o| !alg.degree_matches(alg.degrees[o], expected))
            {
                r.degrees = false;
                fail(&mut r, format!("degree of m{k}({})", names(alg, ins)));
            }
        }
    }
    r.self_adjoint = true;
    for a0 in 0..dim {
        for a1 in 0..dim {
            let l = alg.pair_vectors(&alg.op(&[a0]), &basis_vec(a1));
            let rr = alg.pair_vectors(&basis_vec(a0), &alg.op(&[a1]))
                * Q::from_integer(pm(alg.par(a0) + 1).into());
            if l != rr {
                r.self_adjoint = false;
                fail(
                    &mut r,
                    format!("self-adjointness at ({})", names(alg, &[a0, a1])),
                );
            }
        }
    }
    r.relations = true;
    r.cyclic = true;
    for n in 1..=n_max {
        for t in tuples(dim, n) {
            if !relation_value(alg, &t).is_zero() {
                r.relations = false;
                fail(&mut r, format!("A∞ relation {n} at ({})", names(alg, &t)));
            }
        }
        for t in tuples(dim, n + 1) {
            let l = alg.pair_vectors(&alg.op(&t[..n]), &basis_vec(t[n]));
            let rest: usize = t[1..].iter().map(|&x| alg.par(x)).sum();
            let s = pm(n + alg.par(t[0]) * rest);
            let rr =
                alg.pair_vectors(&alg.op(&t[1..]), &basis_vec(t[0])) * Q::from_integer(s.into());
            if l != rr {
                r.cyclic = false;
                fail(&mut r, format!("cyclicity {n} at ({})", names(alg, &t)));
            }
        }
    }
    r
}

/// `ρ = i ∘ (ρ_A ⊗ ρ_B) ∘ Δ` on `A ⊗ B`, with the pairing
/// `⟨a1⊗b1, a2⊗b2⟩ = (-1)^{|b1||a2|} ⟨a1,a2⟩⟨b1,b2⟩`.
pub fn tensor_product_algebra(
    a: &CyclicAInfAlgebra,
    b: &CyclicAInfAlgebra,
    delta: &Diagonal,
    n_max: usize,
) -> Result<CyclicAInfAlgebra> {
    if delta.max_arity < n_max {
        return Err(Error::DiagonalArityTooSmall {
            have: delta.max_arity,
            need: n_max,
        });
    }
    let (da, db) = (a.dim(), b.dim());
    let idx = |i: usize, j: usize| i * db + j;
    let mut out = CyclicAInfAlgebra {
        parity: (a.parity + b.parity) % 2,
        grading: if a.grading == Grading::Z && b.grading == Grading::Z {
            Grading::Z
        } else {
            Grading::Z2
        },
        names: Vec::new(),
        degrees: Vec::new(),
        pairing: vec![vec![Q::zero(); da * db]; da * db],
        ops: BTreeMap::new(),
    };
    for i in 0..da {
        for j in 0..db {
            out.names.push(format!("{}⊗{}", a.names[i], b.names[j]));
            out.degrees.push(a.degrees[i] + b.degrees[j]);
        }
    }
    for (a1, b1, a2, b2) in (0..da).flat_map(|a1| {
        (0..db)
            .flat_map(move |b1| (0..da).flat_map(move |a2| (0..db).map(move |b2| (a1, b1, a2, b2))))
    }) {
        let g = a.pair(a1, a2) * b.pair(b1, b2) * Q::from_integer(pm(b.par(b1) * a.par(a2)).into());
        out.pairing[idx(a1, b1)][idx(a2, b2)] = g;
    }
    // d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db
    for i in 0..da {
        for j in 0..db {
            let mut v = Chain::zero();
            for (x, c) in a.op(&[i]).iter() {
                v.add_term(idx(*x, j), c.clone());
            }
            for (y, c) in b.op(&[j]).iter() {
                v.add_term(idx(i, *y), c * Q::from_integer(pm(a.par(i)).into()));
            }
            out.set_op(&[idx(i, j)], v);
        }
    }
    let mut ea = TreeEvaluator::new(a);
    let mut eb = TreeEvaluator::new(b);
    for k in 2..=n_max {
        let mut acc: BTreeMap<Vec<usize>, Vector> = BTreeMap::new();
        let ta = tuples(da, k);
        let tb = tuples(db, k);
        for ((t1, t2), c) in delta.get(k)?.iter() {
            let fa: Vec<(&Vec<usize>, Vector)> = ta
                .iter()
                .map(|x| Ok((x, ea.eval(t1, x)?)))
                .filter(|r: &Result<_>| r.as_ref().map_or(true, |(_, v)| !v.is_zero()))
                .collect::<Result<_>>()?;
            if fa.is_empty() {
                continue;
            }
            let fb: Vec<(&Vec<usize>, Vector)> = tb
                .iter()
                .map(|y| Ok((y, eb.eval(t2, y)?)))
                .filter(|r: &Result<_>| r.as_ref().map_or(true, |(_, v)| !v.is_zero()))
                .collect::<Result<_>>()?;
            for (xa, va) in &fa {
                for (yb, vb) in &fb {
                    let mut parity = t2.degree() * xa.iter().map(|&x| a.par(x)).sum::<usize>();
                    for p in 0..k {
                        for q in p + 1..k {
                            parity += b.par(yb[p]) * a.par(xa[q]);
                        }
                    }
                    let s = c * Q::from_integer(pm(parity).into());
                    let ins: Vec<usize> = (0..k).map(|p| idx(xa[p], yb[p])).collect();
                    let e = acc.entry(ins).or_default();
                    for (x, cx) in va.iter() {
                        for (y, cy) in vb.iter() {
                            e.add_term(idx(*x, *y), cx * cy * &s);
                        }
                    }
                }
            }
        }
        for (ins, v) in acc {
            out.set_op(&ins, v);
        }
    }
    Ok(out)
}

fn build(
    parity: usize,
    names: &[&str],
    degrees: &[i64],
    pairs: &[(usize, usize, Q)],
    ops: &[(&[usize], &[(usize, Q)])],
) -> CyclicAInfAlgebra {
    let n = names.len();
    let mut pairing = vec![vec![Q::zero(); n]; n];
    for (a, b, c) in pairs {
        pairing[*a][*b] = c.clone();
    }
    let mut alg = CyclicAInfAlgebra {
        parity,
        grading: Grading::Z,
        names: names.iter().map(|s| s.to_string()).collect(),
        degrees: degrees.to_vec(),
        pairing,
        ops: BTreeMap::new(),
    };
    for (ins, out) in ops {
        alg.set_op(ins, out.iter().cloned().collect());
    }
    alg
}

/// `ℚ` with `⟨1,1⟩ = 1`.
pub fn ground_field() -> CyclicAInfAlgebra {
    build(
        0,
        &["1"],
        &[0],
        &[(0, 0, Q::one())],
        &[(&[0, 0], &[(0, Q::one())])],
    )
}

/// `ℚ[x]/x²` with `⟨1,x⟩ = ⟨x,1⟩ = 1`; `|x| = 1` gives an odd pairing.
pub fn dual_numbers(odd: bool) -> CyclicAInfAlgebra {
    let one = Q::one();
    build(
        usize::from(odd),
        &["1", "x"],
        &[0, i64::from(odd)],
        &[(0, 1, one.clone()), (1, 0, one.clone())],
        &[
            (&[0, 0], &[(0, one.clone())]),
            (&[0, 1], &[(1, one.clone())]),
            (&[1, 0], &[(1, one.clone())]),
        ],
    )
}

/// `ℚ × ℚ` with `⟨e_i, e_j⟩ = δ_ij`.
pub fn split_algebra() -> CyclicAInfAlgebra {
    let one = Q::one();
    build(
        0,
        &["p", "q"],
        &[0, 0],
        &[(0, 0, one.clone()), (1, 1, one.clone())],
        &[
            (&[0, 0], &[(0, one.clone())]),
            (&[1, 1], &[(1, one.clone())]),
        ],
    )
}

/// `ℚ[ξ]/(ξ² − 1)` with `|ξ| = 1`, ℤ/2-graded, paired by the coefficient of `ξ` in the product.
pub fn odd_clifford() -> CyclicAInfAlgebra {
    let one = Q::one();
    let mut a = build(
        1,
        &["1", "ξ"],
        &[0, 1],
        &[(0, 1, one.clone()), (1, 0, one.clone())],
        &[
            (&[0, 0], &[(0, one.clone())]),
            (&[0, 1], &[(1, one.clone())]),
            (&[1, 0], &[(1, one.clone())]),
            (&[1, 1], &[(0, one.clone())]),
        ],
    );
    a.grading = Grading::Z2;
    a
}

/// `p|q` supermatrices with the supertrace pairing `⟨a, b⟩ = str(ab)`, ℤ/2-graded.
pub fn matrix_superalgebra(p: usize, q: usize) -> CyclicAInfAlgebra {
    let n = p + q;
    let par = |i: usize| usize::from(i >= p);
    let idx = |i: usize, j: usize| i * n + j;
    let mut names = Vec::new();
    let mut degrees = Vec::new();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            names.push(format!("E{}{}", i + 1, j + 1));
            degrees.push(((par(i) + par(j)) % 2) as i64);
            // str(E_ij E_ji) = (−1)^{|i|}
            pairs.push((idx(i, j), idx(j, i), Q::from_integer(pm(par(i)).into())));
        }
    }
    let mut a = CyclicAInfAlgebra {
        parity: 0,
        grading: Grading::Z2,
        names,
        degrees,
        pairing: vec![vec![Q::zero(); n * n]; n * n],
        ops: BTreeMap::new(),
    };
    for (x, y, c) in pairs {
        a.pairing[x][y] = c;
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                a.set_op(&[idx(i, j), idx(j, l)], basis_vec(idx(i, l)));
            }
        }
    }
    a
}

/// Four-dimensional algebra with a strict unit `e`, an odd pairing, and `m3(u,u,u) = v`.
pub fn m3_algebra() -> CyclicAInfAlgebra {
    let one = Q::one();
    let (e, u, v, f) = (0, 1, 2, 3);
    build(
        1,
        &["e", "u", "v", "f"],
        &[0, 1, 4, 5],
        &[
            (e, f, one.clone()),
            (f, e, one.clone()),
            (u, v, one.clone()),
            (v, u, one.clone()),
        ],
        &[
            (&[e, e], &[(e, one.clone())]),
            (&[e, u], &[(u, one.clone())]),
            (&[u, e], &[(u, one.clone())]),
            (&[e, v], &[(v, one.clone())]),
            (&[v, e], &[(v, one.clone())]),
            (&[e, f], &[(f, one.clone())]),
            (&[f, e], &[(f, one.clone())]),
            (&[u, v], &[(f, one.clone())]),
            (&[v, u], &[(f, one.clone())]),
            (&[u, u, u], &[(v, one.clone())]),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_algebras_validate() {
        for a in [
            ground_field(),
            dual_numbers(false),
            dual_numbers(true),
            m3_algebra(),
            split_algebra(),
            odd_clifford(),
            matrix_superalgebra(1, 1),
            matrix_superalgebra(2, 1),
        ] {
            let r = validate_algebra(&a, 5);
            assert!(r.passed(), "{:?}", r);
        }
    }

    #[test]
    fn corrupted_sign_is_caught() {
        let mut a = m3_algebra();
        a.set_op(&[1, 1, 1], Chain::single(2, -Q::one()));
        a.set_op(&[1, 2], Chain::single(3, Q::one()));
        a.set_op(&[2, 1], Chain::single(3, -Q::one()));
        assert!(!validate_algebra(&a, 4).passed());
    }

    #[test]
    fn corolla_evaluates_to_operation() {
        let a = m3_algebra();
        assert_eq!(
            evaluate_tree(&a, &PlanarTree::corolla(3), 1, &[1, 1, 1]).unwrap(),
            basis_vec(2)
        );
        assert_eq!(
            evaluate_tree(&a, &PlanarTree::corolla(3), -1, &[1, 1, 1]).unwrap(),
            -&basis_vec(2)
        );
        assert!(evaluate_tree(&a, &PlanarTree::corolla(3), 1, &[1, 1]).is_err());
    }

    #[test]
    fn b1_is_left_bracketing() {
        // B1 = c2∘1c2 = -(l3), so ρ(l3) = -m2(m2(a,b),c)
        let a = dual_numbers(false);
        let l3 = PlanarTree::parse("((**)*)").unwrap();
        assert_eq!(
            evaluate_tree(&a, &l3, 1, &[0, 0, 1]).unwrap(),
            -&basis_vec(1)
        );
    }

    #[test]
    fn inverse_of_pairing() {
        let a = m3_algebra();
        let c = a.copairing().unwrap();
        assert_eq!(c[0][3], Q::one());
        assert_eq!(c[1][2], Q::one());
    }
}
