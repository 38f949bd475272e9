//! Reflection factorizations of a Coxeter element and the Hurwitz action.

use std::collections::HashSet;

use crate::cartan::{CartanDatum, RootVector, WeylElement};
use crate::error::{Error, Result};
use crate::par::Execution;

/// Largest rank for which [`enumerate_factorizations`] runs the brute-force search.
pub const MAX_BRUTE_FORCE_RANK: usize = 4;

/// Default bound on the size of a Hurwitz orbit; each element holds `n` full
/// matrices, so larger orbits (E7 has about a million) exhaust memory.
pub const DEFAULT_ORBIT_CAP: usize = 250_000;

/// A tuple of reflections together with their product.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factorization {
    parts: Vec<WeylElement>,
    target: WeylElement,
}

impl Factorization {
    /// Validates that every part is a reflection of `cd` and computes the product.
    pub fn new(cd: &CartanDatum, parts: Vec<WeylElement>) -> Result<Self> {
        let n = cd.rank();
        let mut target = WeylElement::identity(n);
        for p in &parts {
            if p.rank() != n {
                return Err(Error::DimensionMismatch { expected: n, got: p.rank() });
            }
            if !cd.is_reflection(p) {
                return Err(Error::NotAReflection);
            }
            target = target.mul(p);
        }
        Ok(Factorization { parts, target })
    }

    pub fn parts(&self) -> &[WeylElement] {
        &self.parts
    }

    pub fn target(&self) -> &WeylElement {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Positive roots of the parts, in order.
    pub fn roots(&self, cd: &CartanDatum) -> Result<Vec<RootVector>> {
        self.parts.iter().map(|p| cd.root_of_reflection(p)).collect()
    }

    /// Products `x_1 ⋯ x_r` for `r = 0..=len`.
    pub fn prefixes(&self) -> Vec<WeylElement> {
        let n = self.target.rank();
        let mut acc = WeylElement::identity(n);
        let mut out = vec![acc.clone()];
        for p in &self.parts {
            acc = acc.mul(p);
            out.push(acc.clone());
        }
        out
    }
}

/// The braid generator `σ_i` (1-based) or its inverse.
///
/// `σ_i` sends `(x_i, x_{i+1})` to `(x_i x_{i+1} x_i⁻¹, x_i)`; the inverse sends
/// it to `(x_{i+1}, x_{i+1}⁻¹ x_i x_{i+1})`. Reflections are involutions, so
/// inverses are the elements themselves.
pub fn braid_act(f: &Factorization, i: usize, inverse: bool) -> Result<Factorization> {
    let len = f.parts.len();
    if i == 0 || i >= len {
        return Err(Error::BraidIndex { index: i, len });
    }
    let (a, b) = (&f.parts[i - 1], &f.parts[i]);
    let (x, y) = if inverse {
        (b.clone(), b.mul(a).mul(b))
    } else {
        (a.mul(b).mul(a), a.clone())
    };
    let mut parts = f.parts.clone();
    parts[i - 1] = x;
    parts[i] = y;
    Ok(Factorization { parts, target: f.target.clone() })
}

/// Every `n`-tuple of reflections whose product is `c`, sorted.
pub fn enumerate_factorizations(cd: &CartanDatum, c: &WeylElement) -> Result<Vec<Factorization>> {
    enumerate_factorizations_with(cd, c, Execution::default())
}

pub fn enumerate_factorizations_with(
    cd: &CartanDatum,
    c: &WeylElement,
    exec: Execution,
) -> Result<Vec<Factorization>> {
    if !cd.label().is_finite() {
        return Err(Error::InfiniteGroup(cd.label().to_string()));
    }
    let n = cd.rank();
    if n > MAX_BRUTE_FORCE_RANK {
        return Err(Error::ResourceCap(format!(
            "brute-force factorization search is limited to rank {MAX_BRUTE_FORCE_RANK}"
        )));
    }
    let refl: Vec<WeylElement> = cd.reflections(0).into_iter().map(|(_, t)| t).collect();
    let mut out = exec.flat_map(&refl, |first| {
        let mut found = Vec::new();
        let mut stack = vec![first.clone()];
        extend(&refl, n, c, &mut stack, first.clone(), &mut found);
        found
    });
    out.sort();
    Ok(out)
}

fn extend(
    refl: &[WeylElement],
    n: usize,
    c: &WeylElement,
    stack: &mut Vec<WeylElement>,
    prod: WeylElement,
    found: &mut Vec<Factorization>,
) {
    if stack.len() == n {
        if prod == *c {
            found.push(Factorization { parts: stack.clone(), target: c.clone() });
        }
        return;
    }
    for t in refl {
        stack.push(t.clone());
        extend(refl, n, c, stack, prod.mul(t), found);
        stack.pop();
    }
}

/// Closure of `{f}` under all braid generators and their inverses, sorted.
pub fn hurwitz_orbit(f: &Factorization) -> Result<Vec<Factorization>> {
    hurwitz_orbit_with(f, Execution::default(), DEFAULT_ORBIT_CAP)
}

pub fn hurwitz_orbit_with(f: &Factorization, exec: Execution, cap: usize) -> Result<Vec<Factorization>> {
    let len = f.len();
    let mut seen: HashSet<Factorization> = HashSet::from([f.clone()]);
    let mut frontier = vec![f.clone()];
    while !frontier.is_empty() {
        let moved = exec.flat_map(&frontier, |g| {
            (1..len)
                .flat_map(|i| [false, true].map(|inv| braid_act(g, i, inv).expect("index in range")))
                .collect()
        });
        frontier = Vec::new();
        for g in moved {
            if !seen.contains(&g) {
                seen.insert(g.clone());
                frontier.push(g);
            }
        }
        if seen.len() > cap {
            return Err(Error::ResourceCap(format!("Hurwitz orbit exceeds {cap} elements")));
        }
    }
    let mut out: Vec<Factorization> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// `(s_1, …, s_n)`, the factorization of the standard Coxeter element.
pub fn simple_factorization(cd: &CartanDatum) -> Factorization {
    let parts = (0..cd.rank()).map(|i| cd.simple_reflection(i)).collect();
    Factorization::new(cd, parts).expect("simple reflections are reflections")
}
