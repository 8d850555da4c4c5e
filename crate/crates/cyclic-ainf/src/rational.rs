//! Exact rationals and their `"p/q"` text form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Q = num_rational::BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn sign_q(s: i32) -> Q {
    if s >= 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `"p/q"` with q > 0 and the fraction reduced; integers keep the `/1`.
pub fn format_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

pub fn is_unit(x: &Q) -> bool {
    x.abs().is_one()
}

pub fn pm(parity: usize) -> i32 {
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign of the permutation taking `from` to `to` (both lists of the same distinct items).
pub fn perm_sign<T: PartialEq>(from: &[T], to: &[T]) -> i32 {
    assert_eq!(from.len(), to.len());
    let pos: Vec<usize> = to
        .iter()
        .map(|x| from.iter().position(|y| y == x).expect("not a permutation"))
        .collect();
    index_perm_sign(&pos)
}

/// Sign of a permutation of `0..n` given as an index vector.
pub fn index_perm_sign(p: &[usize]) -> i32 {
    let mut seen = vec![false; p.len()];
    let mut parity = 0;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        parity += len - 1;
    }
    pm(parity)
}

/// Koszul sign of reordering graded items: `items[i]` is the parity of the
/// item that ends up at position `i`, `order[i]` its original position.
pub fn koszul_sign(parities: &[usize], order: &[usize]) -> i32 {
    let mut parity = 0;
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a] > order[b] {
                parity += parities[order[a]] * parities[order[b]];
            }
        }
    }
    pm(parity)
}
