//! Cyclic diagonals `Δ: A∞ → A∞ ⊗ A∞` built by induction on arity.

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::linalg::Eliminator;
use crate::rational::{pm, q, Q};
use crate::tensor::{
    flip_pair, flip_pairs, pair_basis, rotate_pair, rotate_pairs, tensor_boundary, tensor_compose,
    Pair, PairChain,
};
use crate::tree::{graft, PlanarTree};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
pub struct Flags {
    pub cyclic: bool,
    pub cocommutative: bool,
}

impl Flags {
    pub const CYCLIC: Flags = Flags {
        cyclic: true,
        cocommutative: false,
    };
    pub const CYCLIC_COCOMMUTATIVE: Flags = Flags {
        cyclic: true,
        cocommutative: true,
    };
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    pub max_arity: usize,
    pub flags: Flags,
    pub entries: BTreeMap<usize, PairChain>,
}

impl Diagonal {
    pub fn get(&self, n: usize) -> Result<&PairChain> {
        self.entries.get(&n).ok_or(Error::MissingLowerArity(n))
    }

    pub fn truncated(&self, max: usize) -> Diagonal {
        Diagonal {
            max_arity: max.min(self.max_arity),
            flags: self.flags,
            entries: self
                .entries
                .range(..=max)
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }
}

pub fn corolla_pair_c2() -> PairChain {
    Chain::single((PlanarTree::corolla(2), PlanarTree::corolla(2)), Q::one())
}

/// Terms `(j, i, sign)` of `∂c_n = Σ (-1)^{i(j+1)+jn} c_{n-j+1} ∘_i c_j`.
pub fn corolla_boundary_terms(n: usize) -> Vec<(usize, usize, i32)> {
    let mut out = Vec::new();
    for j in 2..n {
        for i in 1..=n - j + 1 {
            out.push((j, i, pm(i * (j + 1) + j * n)));
        }
    }
    out
}

/// `∂c_n` assembled by grafting corollas.
pub fn corolla_boundary_by_grafting(n: usize) -> Chain<PlanarTree> {
    let mut out = Chain::zero();
    for (j, i, s) in corolla_boundary_terms(n) {
        let (w, g) = graft(&PlanarTree::corolla(n - j + 1), i, &PlanarTree::corolla(j)).unwrap();
        out.add_term(w, Q::from_integer((s * g).into()));
    }
    out
}

/// `Δ(∂c_n) = Σ (-1)^{i(j+1)+jn} Δ(c_{n-j+1}) ∘_i Δ(c_j)`.
pub fn diagonal_rhs(n: usize, entries: &BTreeMap<usize, PairChain>) -> Result<PairChain> {
    let mut out = Chain::zero();
    for (j, i, s) in corolla_boundary_terms(n) {
        let a = entries
            .get(&(n - j + 1))
            .ok_or(Error::MissingLowerArity(n - j + 1))?;
        let b = entries.get(&j).ok_or(Error::MissingLowerArity(j))?;
        out.add_scaled(&tensor_compose(a, i, b)?, &Q::from_integer(s.into()));
    }
    Ok(out)
}

/// Generators of the signed symmetry group in arity `n`: `(-1)^n (r⊗r)` and `τ`.
fn generators(n: usize, flags: Flags) -> Vec<Box<dyn Fn(&Pair) -> (Pair, i32)>> {
    let mut g: Vec<Box<dyn Fn(&Pair) -> (Pair, i32)>> = Vec::new();
    if flags.cyclic {
        g.push(Box::new(move |p: &Pair| {
            let (q, s) = rotate_pair(p);
            (q, s * pm(n))
        }));
    }
    if flags.cocommutative {
        g.push(Box::new(flip_pair));
    }
    g
}

/// Signed orbit of a basis pair; `None` when the stabiliser acts by −1.
pub fn signed_orbit(p: &Pair, n: usize, flags: Flags) -> Option<BTreeMap<Pair, i32>> {
    let gens = generators(n, flags);
    let mut seen: BTreeMap<Pair, i32> = BTreeMap::new();
    seen.insert(p.clone(), 1);
    let mut queue = VecDeque::from([p.clone()]);
    let mut conflict = false;
    while let Some(x) = queue.pop_front() {
        let sx = seen[&x];
        for g in &gens {
            let (y, s) = g(&x);
            let sy = sx * s;
            match seen.get(&y) {
                Some(&old) => {
                    if old != sy {
                        conflict = true;
                    }
                }
                None => {
                    seen.insert(y.clone(), sy);
                    queue.push_back(y);
                }
            }
        }
    }
    if conflict {
        None
    } else {
        Some(seen)
    }
}

/// Orbit sums spanning the invariant part of degree `d` in arity `n`.
pub fn invariant_basis(n: usize, d: usize, flags: Flags) -> Vec<PairChain> {
    let mut done: BTreeSet<Pair> = BTreeSet::new();
    let mut out = Vec::new();
    for p in pair_basis(n, d) {
        if done.contains(&p) {
            continue;
        }
        match signed_orbit(&p, n, flags) {
            Some(orbit) => {
                done.extend(orbit.keys().cloned());
                out.push(
                    orbit
                        .into_iter()
                        .map(|(k, s)| (k, Q::from_integer(s.into())))
                        .collect(),
                );
            }
            None => done.extend(orbit_support(&p, n, flags)),
        }
    }
    out
}

fn orbit_support(p: &Pair, n: usize, flags: Flags) -> BTreeSet<Pair> {
    let gens = generators(n, flags);
    let mut seen = BTreeSet::from([p.clone()]);
    let mut queue = VecDeque::from([p.clone()]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let (y, _) = g(&x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// `α = (1/(n+1)) Σ (-1)^{in} r^i(γ)`, followed by `(α + τα)/2` when cocommutative.
pub fn equivariant_average(gamma: &PairChain, n: usize, flags: Flags) -> PairChain {
    let mut out = gamma.clone();
    if flags.cyclic {
        let mut acc = Chain::zero();
        let mut cur = gamma.clone();
        for i in 0..=n {
            acc.add_scaled(&cur, &Q::from_integer(pm(i * n).into()));
            cur = rotate_pairs(&cur);
        }
        out = acc.scaled(&q(1, (n + 1) as i64));
    }
    if flags.cocommutative {
        out = (&out + &flip_pairs(&out)).scaled(&q(1, 2));
    }
    out
}

/// `x` with `∂x = b` in `(A∞⊗A∞)(n)`, by elimination over the full degree-`d+1` basis.
pub fn solve_boundary(b: &PairChain, n: usize, d: usize) -> Result<PairChain> {
    if b.is_zero() {
        return Ok(Chain::zero());
    }
    let basis = pair_basis(n, d + 1);
    crate::linalg::solve_in_span(
        &basis,
        |p| tensor_boundary(&Chain::single(p.clone(), Q::one())),
        b,
    )
    .map_err(|r| Error::NotSolvable {
        residual_terms: r.len(),
    })
}

/// Equivariant solve: columns are boundaries of orbit sums.
struct InvariantSolve {
    orbit_sums: Vec<PairChain>,
    elim: Eliminator<Pair>,
    cycles: Vec<PairChain>,
}

impl InvariantSolve {
    fn new(n: usize, d: usize, flags: Flags) -> Self {
        let orbit_sums = invariant_basis(n, d, flags);
        let mut elim = Eliminator::new();
        let mut cycles = Vec::new();
        for o in &orbit_sums {
            if let Some(rel) = elim.insert_chain(&tensor_boundary(o)) {
                let mut z = Chain::zero();
                for (j, c) in rel {
                    z.add_scaled(&orbit_sums[j], &c);
                }
                cycles.push(z);
            }
        }
        InvariantSolve {
            orbit_sums,
            elim,
            cycles,
        }
    }

    fn solve(&self, b: &PairChain) -> Result<PairChain> {
        let x = self.elim.solve(b).map_err(|r| Error::NotSolvable {
            residual_terms: r.len(),
        })?;
        let mut out = Chain::zero();
        for (j, c) in x {
            out.add_scaled(&self.orbit_sums[j], &c);
        }
        Ok(out)
    }

    fn canonical(&self, x: &PairChain) -> PairChain {
        let mut z = Eliminator::without_tracking();
        for c in &self.cycles {
            z.insert_chain(c);
        }
        z.residue(x)
    }
}

/// `x` in the invariant part of degree `d` with `∂x = b`.
pub fn solve_invariant(b: &PairChain, n: usize, d: usize, flags: Flags) -> Result<PairChain> {
    if b.is_zero() {
        return Ok(Chain::zero());
    }
    InvariantSolve::new(n, d, flags).solve(b)
}

/// Dimension of the closed invariant elements of degree `n-2`: the ambiguity of `Δ(c_n)`.
pub fn freedom_dimension(n: usize, flags: Flags) -> usize {
    InvariantSolve::new(n, n - 2, flags).cycles.len()
}

pub fn build_diagonal(max_arity: usize, flags: Flags) -> Result<Diagonal> {
    let mut entries = BTreeMap::new();
    entries.insert(2, corolla_pair_c2());
    for n in 3..=max_arity {
        let rhs = diagonal_rhs(n, &entries)?;
        let inv = InvariantSolve::new(n, n - 2, flags);
        let x = inv.solve(&rhs)?;
        let alpha = equivariant_average(&x, n, flags);
        entries.insert(n, inv.canonical(&alpha));
    }
    Ok(Diagonal {
        max_arity,
        flags,
        entries,
    })
}

/// Same construction through the full-space solver and explicit averaging.
pub fn build_diagonal_unreduced(max_arity: usize, flags: Flags, average: bool) -> Result<Diagonal> {
    let mut entries = BTreeMap::new();
    entries.insert(2, corolla_pair_c2());
    for n in 3..=max_arity {
        let rhs = diagonal_rhs(n, &entries)?;
        let x = solve_boundary(&rhs, n, n - 3)?;
        entries.insert(
            n,
            if average {
                equivariant_average(&x, n, flags)
            } else {
                x
            },
        );
    }
    Ok(Diagonal {
        max_arity,
        flags,
        entries,
    })
}

/// Reduce each arity of a diagonal to the canonical representative modulo closed invariants.
pub fn canonicalize(d: &Diagonal) -> Diagonal {
    let mut out = d.clone();
    for (&n, v) in out.entries.iter_mut() {
        if n >= 3 {
            *v = InvariantSolve::new(n, n - 2, d.flags).canonical(v);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ArityReport {
    pub arity: usize,
    pub chain_map: bool,
    pub cyclic: Option<bool>,
    pub cocommutative: Option<bool>,
    pub normalization: Option<bool>,
    pub witness: Option<String>,
}

impl ArityReport {
    pub fn passed(&self) -> bool {
        self.chain_map
            && self.cyclic.unwrap_or(true)
            && self.cocommutative.unwrap_or(true)
            && self.normalization.unwrap_or(true)
    }
}

fn first_key(c: &PairChain) -> Option<String> {
    c.keys().next().map(|(a, b)| format!("{a} ⊗ {b}"))
}

pub fn verify_diagonal(d: &Diagonal) -> Vec<ArityReport> {
    let mut out = Vec::new();
    for n in 2..=d.max_arity {
        let Some(x) = d.entries.get(&n) else {
            out.push(ArityReport {
                arity: n,
                chain_map: false,
                cyclic: None,
                cocommutative: None,
                normalization: None,
                witness: Some("missing".into()),
            });
            continue;
        };
        let mut witness = None;
        let chain_map = match diagonal_rhs(n, &d.entries) {
            Ok(rhs) => {
                let diff = &tensor_boundary(x) - &rhs;
                if !diff.is_zero() {
                    witness = first_key(&diff);
                }
                diff.is_zero()
            }
            Err(_) => false,
        };
        let degree_ok = x
            .keys()
            .all(|p| p.0.degree() + p.1.degree() == n - 2 && p.0.leaves() == n);
        let cyclic = d.flags.cyclic.then(|| {
            let diff = &rotate_pairs(x) - &x.scaled(&Q::from_integer(pm(n).into()));
            if witness.is_none() && !diff.is_zero() {
                witness = first_key(&diff);
            }
            diff.is_zero()
        });
        let cocommutative = d.flags.cocommutative.then(|| {
            let diff = &flip_pairs(x) - x;
            if witness.is_none() && !diff.is_zero() {
                witness = first_key(&diff);
            }
            diff.is_zero()
        });
        let normalization = (n == 2).then(|| *x == corolla_pair_c2());
        out.push(ArityReport {
            arity: n,
            chain_map: chain_map && degree_ok,
            cyclic,
            cocommutative,
            normalization,
            witness,
        });
    }
    out
}

/// Sum of the coefficients of `Δ(c_n)` on `c_n ⊗ T` for trivalent `T`, used in summaries.
pub fn corolla_weight(x: &PairChain, n: usize) -> Q {
    let c = PlanarTree::corolla(n);
    x.iter()
        .filter(|((a, _), _)| *a == c)
        .fold(Q::zero(), |acc, (_, v)| acc + v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{all_trees, tree_boundary};

    #[test]
    fn corolla_boundary_matches_grafting() {
        for n in 2..=7 {
            assert_eq!(
                corolla_boundary_by_grafting(n),
                tree_boundary(&PlanarTree::corolla(n)),
                "n = {n}"
            );
        }
    }

    #[test]
    fn low_arity_rhs() {
        let e = BTreeMap::from([(2, corolla_pair_c2())]);
        assert!(diagonal_rhs(2, &e).unwrap().is_zero());
        let r3 = diagonal_rhs(3, &e).unwrap();
        let l = PlanarTree::parse("((**)*)").unwrap();
        let r = PlanarTree::parse("(*(**))").unwrap();
        // -B1⊗B1 + B2⊗B2 with B1 = -l, B2 = r
        assert_eq!(r3.coeff(&(l.clone(), l)), -Q::one());
        assert_eq!(r3.coeff(&(r.clone(), r)), Q::one());
        assert!(diagonal_rhs(4, &e).is_err());
    }

    #[test]
    fn averaging_examples() {
        let c2 = corolla_pair_c2();
        assert_eq!(equivariant_average(&c2, 2, Flags::CYCLIC), c2);
        let b1 = PlanarTree::parse("((**)*)").unwrap();
        let b2 = PlanarTree::parse("(*(**))").unwrap();
        let c3 = PlanarTree::corolla(3);
        // B1 = -l3
        let g = Chain::single((b1.clone(), c3.clone()), -Q::one());
        let a = equivariant_average(&g, 3, Flags::CYCLIC);
        assert_eq!(a.coeff(&(b1, c3.clone())), q(-1, 2));
        assert_eq!(a.coeff(&(b2, c3)), q(1, 2));
    }

    #[test]
    fn unique_c3() {
        let d = build_diagonal(3, Flags::CYCLIC).unwrap();
        assert_eq!(d.get(3).unwrap().len(), 4);
        assert!(verify_diagonal(&d).iter().all(ArityReport::passed));
        assert_eq!(all_trees(3).len(), 3);
    }
}
