//! Sparse exact Gaussian elimination.
//!
//! Vectors are inserted one at a time and kept in echelon form keyed by
//! their least basis element. Each stored vector remembers which inserted
//! columns it combines, which turns reduction into solving.

use crate::chain::Chain;
use crate::rational::Q;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::ops::Bound::{Excluded, Unbounded};

type Vector<K> = BTreeMap<K, Q>;

#[derive(Clone, Debug)]
struct Row<K> {
    vec: Vector<K>,
    combo: BTreeMap<usize, Q>,
}

#[derive(Clone, Debug)]
pub struct Eliminator<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
    columns: usize,
    track: bool,
}

fn axpy<K: Ord + Clone>(y: &mut BTreeMap<K, Q>, a: &Q, x: &BTreeMap<K, Q>) {
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Q::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

impl<K: Ord + Clone> Default for Eliminator<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Ord + Clone> Eliminator<K> {
    pub fn new() -> Self {
        Eliminator {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            columns: 0,
            track: true,
        }
    }

    /// Skip combination bookkeeping when only ranks and residues are needed.
    pub fn without_tracking() -> Self {
        Eliminator {
            track: false,
            ..Self::new()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn pivot_keys(&self) -> impl Iterator<Item = &K> {
        self.pivots.keys()
    }

    /// Remove every pivot coordinate from `v`; returns the residue and the
    /// column combination subtracted (`v = residue + Σ c_j col_j`).
    fn reduce_tracked(&self, mut v: Vector<K>) -> (Vector<K>, BTreeMap<usize, Q>) {
        let mut combo = BTreeMap::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = {
                let mut it: Box<dyn Iterator<Item = (&K, &Q)>> = match &cursor {
                    None => Box::new(v.iter()),
                    Some(c) => Box::new(v.range((Excluded(c.clone()), Unbounded))),
                };
                it.find(|(k, _)| self.pivots.contains_key(*k))
                    .map(|(k, c)| (k.clone(), c.clone()))
            };
            let Some((k, c)) = next else { break };
            let row = &self.rows[self.pivots[&k]];
            let lead = &row.vec[&k];
            let f = &c / lead;
            axpy(&mut v, &(-f.clone()), &row.vec);
            if self.track {
                axpy(&mut combo, &f, &row.combo);
            }
            cursor = Some(k);
        }
        (v, combo)
    }

    /// Insert the next column. Returns `Some(relation)` when it is dependent:
    /// the relation lists coefficients of earlier columns plus this one summing to zero.
    pub fn insert(&mut self, v: Vector<K>) -> Option<BTreeMap<usize, Q>> {
        let idx = self.columns;
        self.columns += 1;
        let (res, combo) = self.reduce_tracked(v);
        if res.is_empty() {
            let mut rel: BTreeMap<usize, Q> = combo.into_iter().map(|(k, c)| (k, -c)).collect();
            rel.insert(idx, Q::from_integer(1.into()));
            return Some(rel);
        }
        let mut own = BTreeMap::new();
        if self.track {
            own = combo.into_iter().map(|(k, c)| (k, -c)).collect();
            own.insert(idx, Q::from_integer(1.into()));
        }
        let lead = res.keys().next().unwrap().clone();
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(Row {
            vec: res,
            combo: own,
        });
        None
    }

    pub fn insert_chain(&mut self, c: &Chain<K>) -> Option<BTreeMap<usize, Q>> {
        self.insert(c.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
    }

    /// Residue of `b` with all pivot coordinates removed; canonical modulo the span.
    pub fn residue(&self, b: &Chain<K>) -> Chain<K> {
        let (res, _) = self.reduce_tracked(b.iter().map(|(k, v)| (k.clone(), v.clone())).collect());
        res.into_iter().collect()
    }

    /// Coefficients `x_j` with `Σ x_j col_j = b`, or the nonzero residue.
    pub fn solve(&self, b: &Chain<K>) -> Result<BTreeMap<usize, Q>, Chain<K>> {
        assert!(self.track, "solve needs combination tracking");
        let (res, combo) =
            self.reduce_tracked(b.iter().map(|(k, v)| (k.clone(), v.clone())).collect());
        if res.is_empty() {
            Ok(combo)
        } else {
            Err(res.into_iter().collect())
        }
    }
}

/// Rank of the span of a family of chains.
pub fn rank_of<K: Ord + Clone>(cols: &[Chain<K>]) -> usize {
    let mut e = Eliminator::without_tracking();
    for c in cols {
        e.insert_chain(c);
    }
    e.rank()
}

/// Kernel of a linear map given on a basis, as combinations of that basis.
pub fn kernel<B: Ord + Clone, K: Ord + Clone>(
    basis: &[B],
    f: impl Fn(&B) -> Chain<K>,
) -> Vec<Chain<B>> {
    let mut e = Eliminator::new();
    let mut out = Vec::new();
    for b in basis {
        if let Some(rel) = e.insert_chain(&f(b)) {
            out.push(
                rel.into_iter()
                    .map(|(j, c)| (basis[j].clone(), c))
                    .collect(),
            );
        }
    }
    out
}

/// Solve `f(x) = target` for `x` in the span of `basis`.
pub fn solve_in_span<B: Ord + Clone, K: Ord + Clone>(
    basis: &[B],
    f: impl Fn(&B) -> Chain<K>,
    target: &Chain<K>,
) -> Result<Chain<B>, Chain<K>> {
    let mut e = Eliminator::new();
    for b in basis {
        e.insert_chain(&f(b));
    }
    e.solve(target)
        .map(|x| x.into_iter().map(|(j, c)| (basis[j].clone(), c)).collect())
}

/// `rank ker ∂_d − rank im ∂_{d+1}` for a complex given by bases and a boundary.
pub fn homology_rank<B: Ord + Clone>(
    basis_d: &[B],
    basis_up: &[B],
    boundary: impl Fn(&B) -> Chain<B>,
) -> usize {
    let rank_d = rank_of(&basis_d.iter().map(&boundary).collect::<Vec<_>>());
    let rank_up = rank_of(&basis_up.iter().map(&boundary).collect::<Vec<_>>());
    basis_d.len() - rank_d - rank_up
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn v(entries: &[(u32, i64)]) -> Chain<u32> {
        entries.iter().map(|&(k, c)| (k, qi(c))).collect()
    }

    #[test]
    fn solves_and_detects_dependence() {
        let mut e = Eliminator::new();
        assert!(e.insert_chain(&v(&[(0, 1), (1, 1)])).is_none());
        assert!(e.insert_chain(&v(&[(1, 1), (2, 1)])).is_none());
        let rel = e.insert_chain(&v(&[(0, 1), (2, -1)])).unwrap();
        assert_eq!(rel.get(&0), Some(&qi(-1)));
        assert_eq!(rel.get(&1), Some(&qi(1)));
        assert_eq!(rel.get(&2), Some(&qi(1)));
        let x = e.solve(&v(&[(0, 2), (1, 5), (2, 3)])).unwrap();
        assert_eq!(x.get(&0), Some(&qi(2)));
        assert_eq!(x.get(&1), Some(&qi(3)));
        assert!(e.solve(&v(&[(2, 1), (5, 1)])).is_err());
        assert_eq!(e.rank(), 2);
    }

    #[test]
    fn residue_is_canonical() {
        let mut a = Eliminator::<u32>::without_tracking();
        a.insert_chain(&v(&[(0, 1), (1, 2)]));
        let mut b = Eliminator::<u32>::without_tracking();
        b.insert_chain(&v(&[(0, 3), (1, 6)]));
        let x = v(&[(0, 5), (1, 1), (3, 1)]);
        assert_eq!(a.residue(&x), b.residue(&x));
        assert_eq!(a.residue(&x).coeff(&0), qi(0));
    }

    #[test]
    fn kernel_of_projection() {
        let basis = vec![0u32, 1, 2];
        let ker = kernel(
            &basis,
            |&b| if b == 2 { Chain::zero() } else { v(&[(b, 1)]) },
        );
        assert_eq!(ker, vec![v(&[(2, 1)])]);
    }
}
