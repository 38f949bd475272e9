use std::collections::HashMap;

use num_traits::{One, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom, hom_dim, Quiver, Representation};
use crate::cartan::{build_cartan, CartanDatum, RootVector};
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Q};
use crate::par::Execution;

/// One step of the preprojective component: `τ^{-m} P_k` has dimension vector
/// `s_{k_1} ⋯ s_{k_{t-1}}(ε_{k_t})`, reached through the sink sequence `k`.
#[derive(Debug, Clone)]
struct Preprojective {
    /// `sinks[t]` is a sink of `quivers[t]`, and `quivers[t+1]` reverses it.
    sinks: Vec<usize>,
    quivers: Vec<Quiver>,
    /// Positions `t` with positive `β_t`, in sequence order.
    steps: Vec<(usize, RootVector)>,
}

fn preprojective(q: &Quiver, cd: &CartanDatum) -> Result<Preprojective> {
    let n = q.n();
    let mut sinks = Vec::new();
    let mut quivers = vec![q.clone()];
    let mut done = vec![false; n];
    let mut steps = Vec::new();
    let total = cd.positive_roots(0).len();
    // prefix s_{k_1} ⋯ s_{k_{t-1}}
    let mut prefix = crate::cartan::WeylElement::identity(n);
    let cap = n * (total + 2);
    while done.iter().any(|d| !d) {
        if sinks.len() > cap {
            return Err(Error::Structural("preprojective walk did not terminate".into()));
        }
        let cur = quivers.last().expect("nonempty");
        let k = (0..n).find(|&k| cur.is_sink(k)).ok_or_else(|| Error::Structural("quiver has no sink".into()))?;
        let beta = prefix.apply(&RootVector::simple(n, k));
        if !done[k] {
            if beta.is_positive() {
                steps.push((sinks.len(), beta));
            } else {
                done[k] = true;
            }
        }
        prefix = prefix.mul(&cd.simple_reflection(k));
        quivers.push(cur.reflect_at(k));
        sinks.push(k);
    }
    if steps.len() != total {
        return Err(Error::Structural(format!("found {} preprojectives, expected {total}", steps.len())));
    }
    Ok(Preprojective { sinks, quivers, steps })
}

/// `S⁻_k` for a source `k` of `src`: replaces `N_k` by the cokernel of
/// `N_k → ⊕ N_j` and reverses the arrows at `k`.
fn reflect_minus(src: &Quiver, k: usize, rep: &Representation) -> Representation {
    let at_k: Vec<usize> = (0..src.arrows().len()).filter(|&a| src.arrows()[a].0 == k).collect();
    let mut dims = rep.dims().to_vec();
    let mut maps = rep.maps().to_vec();
    let stacked_rows: usize = at_k.iter().map(|&a| rep.dims()[src.arrows()[a].1]).sum();
    let parts: Vec<&QMatrix> = at_k.iter().map(|&a| &rep.maps()[a]).collect();
    let stacked = if parts.is_empty() {
        QMatrix::zeros(0, rep.dims()[k])
    } else {
        QMatrix::vstack(&parts, rep.dims()[k])
    };
    debug_assert_eq!(stacked.rows(), stacked_rows);
    let proj = stacked.left_nullspace();
    dims[k] = proj.rows();
    let mut off = 0;
    for &a in &at_k {
        let dj = rep.dims()[src.arrows()[a].1];
        maps[a] = proj.block(0, proj.rows(), off, off + dj);
        off += dj;
    }
    Representation { dims, maps }
}

fn end_dim(q: &Quiver, m: &Representation) -> usize {
    hom_dim(q, m, m)
}

fn random_candidate(q: &Quiver, alpha: &RootVector, rng: &mut ChaCha8Rng) -> Representation {
    let dims: Vec<usize> = alpha.0.iter().map(|&x| x as usize).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            QMatrix::from_fn(dims[t], dims[s], |_, _| if rng.random_range(0..2) == 1 { Q::one() } else { Q::zero() })
        })
        .collect();
    Representation { dims, maps }
}

fn build(q: &Quiver, pp: &Preprojective, t: usize, alpha: &RootVector) -> Result<Representation> {
    let k = pp.sinks[t];
    let mut rep = pp.quivers[t].simple(k);
    for s in (0..t).rev() {
        // quivers[s + 1] has pp.sinks[s] as a source
        rep = reflect_minus(&pp.quivers[s + 1], pp.sinks[s], &rep);
    }
    if rep.dim_vector() == *alpha && end_dim(q, &rep) == 1 {
        return Ok(rep);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(alpha.0.iter().fold(17u64, |h, &x| h.wrapping_mul(31).wrapping_add(x as u64)));
    for _ in 0..1000 {
        let cand = random_candidate(q, alpha, &mut rng);
        if end_dim(q, &cand) == 1 {
            return Ok(cand);
        }
    }
    Err(Error::Structural(format!("no indecomposable found for {alpha}")))
}

/// A representation with dimension vector `alpha` and scalar endomorphisms.
pub fn indecomposable_for_root(q: &Quiver, alpha: &RootVector) -> Result<Representation> {
    if !q.label().is_finite() {
        return Err(Error::WrongKind(format!("{} has infinitely many indecomposables", q.label())));
    }
    let cd = build_cartan(q.label())?;
    if alpha.len() != q.n() {
        return Err(Error::DimensionMismatch { expected: q.n(), got: alpha.len() });
    }
    let pp = preprojective(q, &cd)?;
    let (t, _) = pp
        .steps
        .iter()
        .find(|(_, b)| b == alpha)
        .ok_or_else(|| Error::NotARealRoot(alpha.to_string()))?;
    build(q, &pp, *t, alpha)
}

/// All indecomposables of a Dynkin quiver with their Hom dimensions.
///
/// Indecomposables are listed in positive-root order.
#[derive(Debug, Clone)]
pub struct Catalog {
    quiver: Quiver,
    roots: Vec<RootVector>,
    reps: Vec<Representation>,
    index: HashMap<RootVector, usize>,
    hom_dims: Vec<Vec<usize>>,
}

impl Catalog {
    pub fn new(q: &Quiver) -> Result<Self> {
        Catalog::with_execution(q, Execution::default())
    }

    pub fn with_execution(q: &Quiver, exec: Execution) -> Result<Self> {
        if !q.label().is_finite() {
            return Err(Error::WrongKind(format!("{} has infinitely many indecomposables", q.label())));
        }
        let cd = build_cartan(q.label())?;
        let pp = preprojective(q, &cd)?;
        let roots = cd.positive_roots(0);
        let by_root: HashMap<&RootVector, usize> = pp.steps.iter().map(|(t, b)| (b, *t)).collect();
        let reps: Vec<Representation> = exec
            .map(&roots, |r| build(q, &pp, by_root[r], r))
            .into_iter()
            .collect::<Result<_>>()?;
        let k = roots.len();
        let hom_dims: Vec<Vec<usize>> =
            exec.map_range(k, |i| (0..k).map(|j| hom_dim(q, &reps[i], &reps[j])).collect());
        let index = roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(Catalog { quiver: q.clone(), roots, reps, index, hom_dims })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn reps(&self) -> &[Representation] {
        &self.reps
    }

    pub fn rep(&self, i: usize) -> &Representation {
        &self.reps[i]
    }

    pub fn index_of(&self, root: &RootVector) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        self.hom_dims[i][j]
    }

    pub fn ext1_dim(&self, i: usize, j: usize) -> usize {
        let e = self.hom_dims[i][j] as i64 - self.quiver.euler(&self.roots[i], &self.roots[j]);
        usize::try_from(e).expect("Ext¹ dimension is nonnegative")
    }

    pub fn hom_basis(&self, i: usize, j: usize) -> Vec<super::Morphism> {
        hom(&self.quiver, &self.reps[i], &self.reps[j]).basis
    }

    pub fn is_projective(&self, i: usize) -> bool {
        (0..self.quiver.n()).any(|v| self.quiver.projective_dim(v) == self.roots[i])
    }

    pub fn is_injective(&self, i: usize) -> bool {
        (0..self.quiver.n()).any(|v| self.quiver.injective_dim(v) == self.roots[i])
    }

    /// Multiplicities of the indecomposables in `m`, from `dim Hom(X, M)` for all `X`.
    pub fn decompose(&self, m: &Representation) -> Result<Vec<usize>> {
        let k = self.len();
        if m.is_zero() {
            return Ok(vec![0; k]);
        }
        let h: Vec<i64> = self.reps.iter().map(|x| hom_dim(&self.quiver, x, m) as i64).collect();
        let mat: Vec<i64> = (0..k * k).map(|e| self.hom_dims[e / k][e % k] as i64).collect();
        let sol = QMatrix::from_i64(k, k, &mat)
            .solve(&QMatrix::from_i64(k, 1, &h))
            .ok_or_else(|| Error::Structural("Hom matrix is singular".into()))?;
        let mut mult = Vec::with_capacity(k);
        for i in 0..k {
            let x = crate::linalg::q_to_i64(&sol[(i, 0)])
                .filter(|&x| x >= 0)
                .ok_or_else(|| Error::Structural("decomposition has a non-natural multiplicity".into()))?;
            mult.push(x as usize);
        }
        let mut total = vec![0i64; self.quiver.n()];
        for (i, &c) in mult.iter().enumerate() {
            for (t, r) in total.iter_mut().zip(&self.roots[i].0) {
                *t += c as i64 * r;
            }
        }
        if RootVector(total) != m.dim_vector() {
            return Err(Error::Structural("decomposition does not add up to the dimension vector".into()));
        }
        Ok(mult)
    }
}
