//! Finite linear combinations with exact coefficients over an ordered basis.

use crate::rational::Q;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain<K: Ord> {
    terms: BTreeMap<K, Q>,
}

impl<K: Ord> Default for Chain<K> {
    fn default() -> Self {
        Chain {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Chain<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: Q) -> Self {
        let mut ch = Self::zero();
        ch.add_term(k, c);
        ch
    }

    pub fn add_term(&mut self, k: K, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Chain<K>, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Chain {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, k: &K) -> Q {
        self.terms.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// Apply a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone, F: FnMut(&K) -> Chain<L>>(&self, mut f: F) -> Chain<L> {
        let mut out = Chain::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Apply a signed basis map `k -> ±k'`.
    pub fn map_signed<L: Ord + Clone, F: FnMut(&K) -> Option<(L, i32)>>(
        &self,
        mut f: F,
    ) -> Chain<L> {
        let mut out = Chain::zero();
        for (k, c) in &self.terms {
            if let Some((l, s)) = f(k) {
                if s > 0 {
                    out.add_term(l, c.clone());
                } else {
                    out.add_term(l, -c.clone());
                }
            }
        }
        out
    }
}

impl<K: Ord + Clone> FromIterator<(K, Q)> for Chain<K> {
    fn from_iter<I: IntoIterator<Item = (K, Q)>>(iter: I) -> Self {
        let mut ch = Chain::zero();
        for (k, c) in iter {
            ch.add_term(k, c);
        }
        ch
    }
}

impl<K: Ord + Clone> Add for &Chain<K> {
    type Output = Chain<K>;
    fn add(self, rhs: &Chain<K>) -> Chain<K> {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }
}

impl<K: Ord + Clone> Sub for &Chain<K> {
    type Output = Chain<K>;
    fn sub(self, rhs: &Chain<K>) -> Chain<K> {
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }
}

impl<K: Ord + Clone> Neg for &Chain<K> {
    type Output = Chain<K>;
    fn neg(self) -> Chain<K> {
        Chain {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), -v.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn zero_coefficients_are_pruned() {
        let mut c = Chain::single("a", qi(1));
        c.add_term("a", qi(-1));
        assert!(c.is_zero());
        c.add_term("b", qi(0));
        assert_eq!(c.len(), 0);
    }

    #[test]
    fn arithmetic() {
        let a: Chain<&str> = [("x", q(1, 2)), ("y", qi(1))].into_iter().collect();
        let b: Chain<&str> = [("x", q(1, 2))].into_iter().collect();
        let d = &a - &b;
        assert_eq!(d, Chain::single("y", qi(1)));
        assert_eq!((&a + &(-&a)).len(), 0);
        assert_eq!(a.scaled(&qi(2)).coeff(&"x"), qi(1));
    }
}
