//! Finite posets given by an order predicate on indices `0..n`.
//!
//! Meets and joins are found by scanning the whole poset. That is quadratic in
//! the worst case but every lattice handled here has at most a few ten thousand
//! elements.

use crate::error::{Error, Result};

/// Greatest lower bound of `a` and `b`, if it exists.
pub fn meet(n: usize, leq: impl Fn(usize, usize) -> bool, a: usize, b: usize) -> Option<usize> {
    let lower: Vec<usize> = (0..n).filter(|&x| leq(x, a) && leq(x, b)).collect();
    greatest(&lower, &leq)
}

/// Least upper bound of `a` and `b`, if it exists.
pub fn join(n: usize, leq: impl Fn(usize, usize) -> bool, a: usize, b: usize) -> Option<usize> {
    let upper: Vec<usize> = (0..n).filter(|&x| leq(a, x) && leq(b, x)).collect();
    greatest(&upper, &|x, y| leq(y, x))
}

fn greatest(set: &[usize], leq: &impl Fn(usize, usize) -> bool) -> Option<usize> {
    let mut candidate = *set.first()?;
    for &x in &set[1..] {
        if leq(candidate, x) {
            candidate = x;
        }
    }
    set.iter().all(|&x| leq(x, candidate)).then_some(candidate)
}

pub fn meet_or_err(n: usize, leq: impl Fn(usize, usize) -> bool, a: usize, b: usize) -> Result<usize> {
    meet(n, leq, a, b).ok_or_else(|| Error::Structural(format!("no meet for {a} and {b}")))
}

pub fn join_or_err(n: usize, leq: impl Fn(usize, usize) -> bool, a: usize, b: usize) -> Result<usize> {
    join(n, leq, a, b).ok_or_else(|| Error::Structural(format!("no join for {a} and {b}")))
}

/// Checks reflexivity, antisymmetry and transitivity.
pub fn is_partial_order(n: usize, leq: impl Fn(usize, usize) -> bool) -> bool {
    let m: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| leq(i, j)).collect()).collect();
    (0..n).all(|i| m[i][i])
        && (0..n).all(|i| (0..n).all(|j| i == j || !(m[i][j] && m[j][i])))
        && (0..n).all(|i| (0..n).all(|j| !m[i][j] || (0..n).all(|k| !m[j][k] || m[i][k])))
}

/// Every pair has a meet and a join.
pub fn is_lattice(n: usize, leq: impl Fn(usize, usize) -> bool) -> bool {
    (0..n).all(|a| (a..n).all(|b| meet(n, &leq, a, b).is_some() && join(n, &leq, a, b).is_some()))
}

/// Cover relations `(x, y)`: `x < y` with nothing strictly between.
pub fn covers(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let lt = |x: usize, y: usize| x != y && leq(x, y);
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Elements of the interval `[lo, hi]`.
pub fn interval(n: usize, leq: impl Fn(usize, usize) -> bool, lo: usize, hi: usize) -> Vec<usize> {
    (0..n).filter(|&x| leq(lo, x) && leq(x, hi)).collect()
}

/// Whether every element of `[lo, hi]` has a complement inside the interval.
pub fn interval_is_complemented(n: usize, leq: impl Fn(usize, usize) -> bool, lo: usize, hi: usize) -> bool {
    let elems = interval(n, &leq, lo, hi);
    let k = elems.len();
    let sub = |i: usize, j: usize| leq(elems[i], elems[j]);
    let bottom = elems.iter().position(|&x| x == lo);
    let top = elems.iter().position(|&x| x == hi);
    let (Some(bottom), Some(top)) = (bottom, top) else {
        return false;
    };
    (0..k).all(|x| {
        (0..k).any(|y| meet(k, sub, x, y) == Some(bottom) && join(k, sub, x, y) == Some(top))
    })
}

/// Length of the longest chain, counted in edges.
pub fn height(n: usize, leq: impl Fn(usize, usize) -> bool) -> usize {
    let cov = covers(n, &leq);
    let mut best = vec![0usize; n];
    // repeated relaxation; the poset is finite and acyclic
    let mut changed = true;
    while changed {
        changed = false;
        for &(x, y) in &cov {
            if best[x] + 1 > best[y] {
                best[y] = best[x] + 1;
                changed = true;
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn divides(i: usize, j: usize) -> bool {
        (j + 1).is_multiple_of(i + 1)
    }

    #[test]
    fn divisors_of_twelve() {
        // indices 0..12 stand for 1..=12; restrict to divisors of 12
        let d = [1usize, 2, 3, 4, 6, 12];
        let leq = |i: usize, j: usize| divides(d[i] - 1, d[j] - 1);
        assert!(is_partial_order(6, leq));
        assert!(is_lattice(6, leq));
        assert_eq!(meet(6, leq, 3, 4), Some(1)); // gcd(4,6) = 2
        assert_eq!(join(6, leq, 3, 4), Some(5)); // lcm(4,6) = 12
        assert_eq!(height(6, leq), 3);
        assert_eq!(covers(6, leq).len(), 7);
        // 2 has no complement in [1,12]
        assert!(!interval_is_complemented(6, leq, 0, 5));
        assert!(interval_is_complemented(6, leq, 0, 4));
    }

    #[test]
    fn two_incomparable_maxima_have_no_join() {
        let leq = |i: usize, j: usize| i == j || i == 0;
        assert_eq!(join(3, leq, 1, 2), None);
        assert_eq!(meet(3, leq, 1, 2), Some(0));
        assert!(!is_lattice(3, leq));
    }
}
