//! Cyclic homotopies between diagonals, with coefficients in polynomial forms on `[0,1]`.
//!
//! A term is `T1⊗T2⊗t^k` or `T1⊗T2⊗t^k dt`; the one-form `dt` has degree −1.

use crate::chain::Chain;
use crate::diagonal::{
    corolla_boundary_terms, corolla_pair_c2, invariant_basis, solve_invariant, Diagonal, Flags,
};
use crate::error::{Error, Result};
use crate::linalg::Eliminator;
use crate::rational::{pm, q, Q};
use crate::tensor::{pair_degree, rotate_pair, tensor_boundary, tensor_compose, Pair, PairChain};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// `(T1, T2, power of t, carries dt)`.
pub type FormKey = (crate::PlanarTree, crate::PlanarTree, u32, bool);
pub type FormChain = Chain<FormKey>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub max_arity: usize,
    pub flags: Flags,
    pub start: Diagonal,
    pub end: Diagonal,
    pub entries: BTreeMap<usize, FormChain>,
}

fn key(p: &Pair, k: u32, dt: bool) -> FormKey {
    (p.0.clone(), p.1.clone(), k, dt)
}

/// `x ⊗ t^k` or `x ⊗ t^k dt`.
pub fn lift(x: &PairChain, k: u32, dt: bool) -> FormChain {
    x.iter().map(|(p, c)| (key(p, k, dt), c.clone())).collect()
}

/// Value at `t = s`; `dt` terms vanish.
pub fn evaluate_at(x: &FormChain, s: &Q) -> PairChain {
    let mut out = Chain::zero();
    for ((a, b, k, dt), c) in x.iter() {
        if !dt {
            let mut v = c.clone();
            for _ in 0..*k {
                v *= s;
            }
            out.add_term((a.clone(), b.clone()), v);
        }
    }
    out
}

/// Coefficient of `dt` as a polynomial-valued chain.
pub fn dt_part(x: &FormChain) -> FormChain {
    x.iter()
        .filter(|(k, _)| k.3)
        .map(|(k, c)| (k.clone(), c.clone()))
        .collect()
}

/// `D(x⊗ω) = ∂x⊗ω + (-1)^{|x|} x⊗dω`, with `d(t^k) = k t^{k-1} dt`.
pub fn form_boundary(x: &FormChain) -> FormChain {
    let mut out = Chain::zero();
    for ((a, b, k, dt), c) in x.iter() {
        let p = (a.clone(), b.clone());
        for (w, cw) in tensor_boundary(&Chain::single(p.clone(), c.clone())).iter() {
            out.add_term(key(w, *k, *dt), cw.clone());
        }
        if !dt && *k > 0 {
            let s = Q::from_integer((pm(pair_degree(&p)) as i64 * *k as i64).into());
            out.add_term(key(&p, k - 1, true), c * s);
        }
    }
    out
}

/// `(x⊗ω) ∘_i (y⊗η) = (-1)^{|ω||y|} (x∘_i y) ⊗ ωη`.
pub fn form_compose(x: &FormChain, i: usize, y: &FormChain) -> Result<FormChain> {
    let mut out = Chain::zero();
    for ((a1, a2, k1, e1), c1) in x.iter() {
        for ((b1, b2, k2, e2), c2) in y.iter() {
            if *e1 && *e2 {
                continue;
            }
            let u = Chain::single((a1.clone(), a2.clone()), c1.clone());
            let v = Chain::single((b1.clone(), b2.clone()), c2.clone());
            let s = if *e1 {
                pm(b1.degree() + b2.degree())
            } else {
                1
            };
            for (w, cw) in tensor_compose(&u, i, &v)?.iter() {
                out.add_term(key(w, k1 + k2, *e1 || *e2), cw * Q::from_integer(s.into()));
            }
        }
    }
    Ok(out)
}

/// `(r⊗r)` on the tree factors; the form factor is fixed.
pub fn rotate_forms(x: &FormChain) -> FormChain {
    x.map_signed(|(a, b, k, dt)| {
        let ((ra, rb), s) = rotate_pair(&(a.clone(), b.clone()));
        Some(((ra, rb, *k, *dt), s))
    })
}

/// `h(∂c_n)` from the lower arities.
pub fn homotopy_rhs(n: usize, entries: &BTreeMap<usize, FormChain>) -> Result<FormChain> {
    let mut out = Chain::zero();
    for (j, i, s) in corolla_boundary_terms(n) {
        let a = entries
            .get(&(n - j + 1))
            .ok_or(Error::MissingLowerArity(n - j + 1))?;
        let b = entries.get(&j).ok_or(Error::MissingLowerArity(j))?;
        out.add_scaled(&form_compose(a, i, b)?, &Q::from_integer(s.into()));
    }
    Ok(out)
}

fn average(x: &FormChain, n: usize) -> FormChain {
    let mut acc = Chain::zero();
    let mut cur = x.clone();
    for i in 0..=n {
        acc.add_scaled(&cur, &Q::from_integer(pm(i * n).into()));
        cur = rotate_forms(&cur);
    }
    acc.scaled(&q(1, (n + 1) as i64))
}

/// Invariant `z` of total degree `n-2` with `Dz = r`, polynomial degree at most `bound`.
fn solve_forms(r: &FormChain, n: usize, bound: u32, flags: Flags) -> Option<FormChain> {
    if r.is_zero() {
        return Some(Chain::zero());
    }
    let flat = invariant_basis(n, n - 2, flags);
    let with_dt = invariant_basis(n, n - 1, flags);
    let mut cols = Vec::new();
    for k in 0..=bound {
        cols.extend(flat.iter().map(|o| lift(o, k, false)));
        cols.extend(with_dt.iter().map(|o| lift(o, k, true)));
    }
    let mut elim = Eliminator::new();
    for c in &cols {
        elim.insert_chain(&form_boundary(c));
    }
    let x = elim.solve(r).ok()?;
    let mut out = Chain::zero();
    for (j, c) in x {
        out.add_scaled(&cols[j], &c);
    }
    Some(out)
}

/// Induction: start from `(1-t)Δ₁ + tΔ₂`, solve away the defect, then correct the endpoints by
/// `h'' = h' − [(1−t)∂a + t∂b] − (−1)^n (a−b) dt` and average.
pub fn build_homotopy(start: &Diagonal, end: &Diagonal, max_arity: usize) -> Result<Homotopy> {
    if start.entries.get(&2) != end.entries.get(&2) || start.get(2)? != &corolla_pair_c2() {
        return Err(Error::EndpointMismatch);
    }
    let flags = Flags {
        cyclic: true,
        cocommutative: start.flags.cocommutative && end.flags.cocommutative,
    };
    let mut entries = BTreeMap::new();
    entries.insert(2, lift(&corolla_pair_c2(), 0, false));
    let one_minus_t = |x: &PairChain| &lift(x, 0, false) - &lift(x, 1, false);
    for n in 3..=max_arity {
        let d1 = start.get(n)?;
        let d2 = end.get(n)?;
        let rhs = homotopy_rhs(n, &entries)?;
        let guess = &one_minus_t(d1) + &lift(d2, 1, false);
        let defect = &rhs - &form_boundary(&guess);
        let mut bound = (n - 1) as u32;
        let z = loop {
            if let Some(z) = solve_forms(&defect, n, bound, flags) {
                break z;
            }
            if bound > 4 * n as u32 {
                return Err(Error::NotSolvable {
                    residual_terms: defect.len(),
                });
            }
            bound += 1;
        };
        let h1 = &guess + &z;
        let a = solve_invariant(&(&evaluate_at(&h1, &Q::zero()) - d1), n, n - 1, flags)?;
        let b = solve_invariant(&(&evaluate_at(&h1, &Q::one()) - d2), n, n - 1, flags)?;
        let mut h2 = h1;
        h2 = &h2 - &one_minus_t(&tensor_boundary(&a));
        h2 = &h2 - &lift(&tensor_boundary(&b), 1, false);
        h2.add_scaled(
            &lift(&(&a - &b), 0, true),
            &Q::from_integer((-pm(n)).into()),
        );
        entries.insert(n, average(&h2, n));
    }
    Ok(Homotopy {
        max_arity,
        flags,
        start: start.clone(),
        end: end.clone(),
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct HomotopyReport {
    pub arity: usize,
    pub start: bool,
    pub end: bool,
    pub chain_map: bool,
    pub cyclic: bool,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.start && self.end && self.chain_map && self.cyclic
    }
}

pub fn verify_homotopy(h: &Homotopy) -> Vec<HomotopyReport> {
    let mut out = Vec::new();
    for n in 2..=h.max_arity {
        let Some(x) = h.entries.get(&n) else {
            out.push(HomotopyReport {
                arity: n,
                start: false,
                end: false,
                chain_map: false,
                cyclic: false,
            });
            continue;
        };
        let start = h.start.entries.get(&n) == Some(&evaluate_at(x, &Q::zero()));
        let end = h.end.entries.get(&n) == Some(&evaluate_at(x, &Q::one()));
        let chain_map = homotopy_rhs(n, &h.entries)
            .map(|r| r == form_boundary(x))
            .unwrap_or(false);
        let cyclic = rotate_forms(x) == x.scaled(&Q::from_integer(pm(n).into()));
        out.push(HomotopyReport {
            arity: n,
            start,
            end,
            chain_map,
            cyclic,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagonal::build_diagonal;
    use crate::tree::PlanarTree;

    #[test]
    fn form_boundary_squares_to_zero() {
        let c = PlanarTree::corolla(4);
        let x: FormChain = Chain::single((c.clone(), c, 3, false), Q::one());
        assert!(form_boundary(&form_boundary(&x)).is_zero());
    }

    #[test]
    fn dt_sign_in_composition() {
        let c2 = PlanarTree::corolla(2);
        let c3 = PlanarTree::corolla(3);
        let x: FormChain = Chain::single((c2.clone(), c2.clone(), 0, true), Q::one());
        let x0: FormChain = Chain::single((c2.clone(), c2, 0, false), Q::one());
        let y: FormChain = Chain::single(
            (c3, PlanarTree::parse("((**)*)").unwrap(), 0, false),
            Q::one(),
        );
        // |y| = 1
        let plain = form_compose(&x0, 1, &y).unwrap();
        let with = form_compose(&x, 1, &y).unwrap();
        let (k, c) = plain.iter().next().unwrap();
        assert_eq!(with.coeff(&(k.0.clone(), k.1.clone(), 0, true)), -c.clone());
    }

    #[test]
    fn identical_endpoints_give_constant_homotopy() {
        let d = build_diagonal(4, Flags::CYCLIC).unwrap();
        let h = build_homotopy(&d, &d, 4).unwrap();
        for n in 2..=4 {
            assert_eq!(h.entries[&n], lift(&d.entries[&n], 0, false));
        }
        assert!(verify_homotopy(&h).iter().all(HomotopyReport::passed));
    }
}
