//! Representations of Dynkin quivers over the rationals.
//!
//! Hom spaces are solved exactly; Ext¹ comes from the Euler form of the
//! hereditary path algebra.

pub mod ar;
mod indec;

pub use ar::{ar_quiver_module_category, RadTable};
pub use indec::{indecomposable_for_root, Catalog};

use num_traits::{One, Zero};

use crate::cartan::{build_cartan, CartanType, RootVector, WeylElement};
use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Q};

/// A quiver whose underlying graph is the Dynkin diagram of its label.
///
/// Vertices are `0..n`; each arrow is `(source, target)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    label: CartanType,
    arrows: Vec<(usize, usize)>,
}

/// A morphism of representations: one matrix per vertex.
pub type Morphism = Vec<QMatrix>;

impl Quiver {
    /// Every edge `{i, j}` with `i < j` oriented `i → j`. KRONECKER gets two arrows `0 → 1`.
    pub fn standard(label: CartanType) -> Result<Self> {
        if label == CartanType::Kronecker {
            return Quiver::with_arrows(label, vec![(0, 1), (0, 1)]);
        }
        Quiver::with_arrows(label, label.dynkin_edges())
    }

    /// A quiver with explicit arrows; the number of arrows between `i` and `j`
    /// must equal `-C_ij` and the label must be simply laced or KRONECKER.
    pub fn with_arrows(label: CartanType, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if !(label.is_simply_laced() || label == CartanType::Kronecker) {
            return Err(Error::WrongKind(format!("{label} is not simply laced")));
        }
        let cd = build_cartan(label)?;
        let n = cd.rank();
        let mut count = vec![0i64; n * n];
        for &(s, t) in &arrows {
            if s >= n || t >= n || s == t {
                return Err(Error::Structural(format!("arrow {s}->{t} is not an edge")));
            }
            count[s * n + t] += 1;
            count[t * n + s] += 1;
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && count[i * n + j] != -cd.entry(i, j) {
                    return Err(Error::Structural("arrows do not match the Dynkin diagram".into()));
                }
            }
        }
        Ok(Quiver { label, arrows })
    }

    pub fn label(&self) -> CartanType {
        self.label
    }

    pub fn n(&self) -> usize {
        self.label.rank()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_sink(&self, k: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != k)
    }

    pub fn is_source(&self, k: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != k)
    }

    /// The quiver with every arrow at `k` reversed.
    pub fn reflect_at(&self, k: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == k || t == k { (t, s) } else { (s, t) })
            .collect();
        Quiver { label: self.label, arrows }
    }

    /// `⟨a, b⟩ = Σ a_i b_i - Σ_{i→j} a_i b_j`.
    pub fn euler(&self, a: &RootVector, b: &RootVector) -> i64 {
        let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
        diag - self.arrows.iter().map(|&(s, t)| a.0[s] * b.0[t]).sum::<i64>()
    }

    /// Row-major matrix `E` with `⟨a, b⟩ = aᵀ E b`.
    pub fn euler_matrix(&self) -> Vec<i64> {
        let n = self.n();
        let mut e = vec![0i64; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        for &(s, t) in &self.arrows {
            e[s * n + t] -= 1;
        }
        e
    }

    /// The Coxeter transformation `Φ = -E⁻¹Eᵀ`, so that `dim τM = Φ(dim M)` for
    /// non-projective indecomposables `M`.
    pub fn coxeter_matrix(&self) -> WeylElement {
        let n = self.n();
        let e = self.euler_matrix();
        let et: Vec<i64> = (0..n * n).map(|k| e[(k % n) * n + k / n]).collect();
        let sol = QMatrix::from_i64(n, n, &e)
            .solve(&QMatrix::from_i64(n, n, &et))
            .expect("Euler matrix is unimodular");
        let entries = sol
            .entries()
            .iter()
            .map(|x| -crate::linalg::q_to_i64(x).expect("integral"))
            .collect();
        WeylElement::from_rows(n, entries)
    }

    /// Vertices reachable from `i` by a path, counted with multiplicity.
    pub fn projective_dim(&self, i: usize) -> RootVector {
        let n = self.n();
        let mut d = vec![0i64; n];
        let mut stack = vec![i];
        while let Some(v) = stack.pop() {
            d[v] += 1;
            for &(s, t) in &self.arrows {
                if s == v {
                    stack.push(t);
                }
            }
        }
        RootVector(d)
    }

    pub fn injective_dim(&self, i: usize) -> RootVector {
        let rev = Quiver { label: self.label, arrows: self.arrows.iter().map(|&(s, t)| (t, s)).collect() };
        rev.projective_dim(i)
    }

    pub fn simple(&self, i: usize) -> Representation {
        let mut dims = vec![0; self.n()];
        dims[i] = 1;
        Representation::zero_maps(self, dims)
    }
}

/// A representation: a vector space per vertex and a matrix per arrow.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<QMatrix>,
}

impl Representation {
    pub fn new(q: &Quiver, dims: Vec<usize>, maps: Vec<QMatrix>) -> Result<Self> {
        if dims.len() != q.n() {
            return Err(Error::DimensionMismatch { expected: q.n(), got: dims.len() });
        }
        if maps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch { expected: q.arrows().len(), got: maps.len() });
        }
        for (m, &(s, t)) in maps.iter().zip(q.arrows()) {
            if m.rows() != dims[t] || m.cols() != dims[s] {
                return Err(Error::Structural("arrow matrix shape does not match dimensions".into()));
            }
        }
        Ok(Representation { dims, maps })
    }

    pub fn zero_maps(q: &Quiver, dims: Vec<usize>) -> Self {
        let maps = q.arrows().iter().map(|&(s, t)| QMatrix::zeros(dims[t], dims[s])).collect();
        Representation { dims, maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[QMatrix] {
        &self.maps
    }

    pub fn dim_vector(&self) -> RootVector {
        RootVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn direct_sum(&self, q: &Quiver, other: &Representation) -> Representation {
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = QMatrix::zeros(dims[t], dims[s]);
                let (x, y) = (&self.maps[a], &other.maps[a]);
                for r in 0..x.rows() {
                    for c in 0..x.cols() {
                        m[(r, c)] = x[(r, c)].clone();
                    }
                }
                for r in 0..y.rows() {
                    for c in 0..y.cols() {
                        m[(x.rows() + r, x.cols() + c)] = y[(r, c)].clone();
                    }
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    pub fn identity(&self) -> Morphism {
        self.dims.iter().map(|&d| QMatrix::identity(d)).collect()
    }
}

/// A basis of `Hom(M, N)`.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub basis: Vec<Morphism>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Solves `f_t M_a = N_a f_s` for every arrow `a: s → t`.
pub fn hom(q: &Quiver, m: &Representation, n: &Representation) -> HomSpace {
    let nv = q.n();
    let mut offset = vec![0usize; nv + 1];
    for v in 0..nv {
        offset[v + 1] = offset[v] + n.dims[v] * m.dims[v];
    }
    let unknowns = offset[nv];
    let var = |v: usize, r: usize, c: usize| offset[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<(usize, Q)>> = Vec::new();
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        let (ma, na) = (&m.maps[a], &n.maps[a]);
        for i in 0..n.dims[t] {
            for j in 0..m.dims[s] {
                let mut row = Vec::new();
                for k in 0..m.dims[t] {
                    if !ma[(k, j)].is_zero() {
                        row.push((var(t, i, k), ma[(k, j)].clone()));
                    }
                }
                for k in 0..n.dims[s] {
                    if !na[(i, k)].is_zero() {
                        row.push((var(s, k, j), -na[(i, k)].clone()));
                    }
                }
                rows.push(row);
            }
        }
    }
    let mut sys = QMatrix::zeros(rows.len(), unknowns);
    for (r, row) in rows.iter().enumerate() {
        for (c, x) in row {
            sys[(r, *c)] += x.clone();
        }
    }
    let null = sys.nullspace();
    let basis = (0..null.cols())
        .map(|k| {
            (0..nv)
                .map(|v| QMatrix::from_fn(n.dims[v], m.dims[v], |r, c| null[(var(v, r, c), k)].clone()))
                .collect()
        })
        .collect();
    HomSpace { basis }
}

pub fn hom_dim(q: &Quiver, m: &Representation, n: &Representation) -> usize {
    hom(q, m, n).dim()
}

/// Whether `f` commutes with every arrow.
pub fn is_morphism(q: &Quiver, m: &Representation, n: &Representation, f: &Morphism) -> bool {
    f.len() == q.n()
        && (0..q.n()).all(|v| f[v].rows() == n.dims[v] && f[v].cols() == m.dims[v])
        && q
            .arrows()
            .iter()
            .enumerate()
            .all(|(a, &(s, t))| f[t].mul(&m.maps[a]) == n.maps[a].mul(&f[s]))
}

/// `g ∘ f`.
pub fn compose(f: &Morphism, g: &Morphism) -> Morphism {
    f.iter().zip(g).map(|(fv, gv)| gv.mul(fv)).collect()
}

/// Linear combination `Σ c_k f_k` of morphisms between the same pair.
pub fn combine(coeffs: &[Q], fs: &[Morphism], m: &Representation, n: &Representation) -> Morphism {
    let mut out: Morphism = (0..m.dims.len()).map(|v| QMatrix::zeros(n.dims[v], m.dims[v])).collect();
    for (c, f) in coeffs.iter().zip(fs) {
        for (o, fv) in out.iter_mut().zip(f) {
            *o = o.add(&fv.scale(c));
        }
    }
    out
}

/// `dim Hom(M, N) - ⟨dim M, dim N⟩`.
pub fn ext1_dim(q: &Quiver, m: &Representation, n: &Representation) -> Result<usize> {
    let h = hom_dim(q, m, n) as i64;
    let e = h - q.euler(&m.dim_vector(), &n.dim_vector());
    usize::try_from(e).map_err(|_| Error::Structural(format!("negative Ext¹ dimension {e}")))
}

/// Kernel of `f: M → N` as a representation.
pub fn kernel(q: &Quiver, m: &Representation, f: &Morphism) -> Representation {
    let basis: Vec<QMatrix> = f.iter().map(QMatrix::nullspace).collect();
    let dims: Vec<usize> = basis.iter().map(QMatrix::cols).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            basis[t]
                .solve(&m.maps[a].mul(&basis[s]))
                .expect("kernel is a subrepresentation")
        })
        .collect();
    Representation { dims, maps }
}

/// Cokernel of `f: M → N` as a representation.
pub fn cokernel(q: &Quiver, n: &Representation, f: &Morphism) -> Representation {
    let proj: Vec<QMatrix> = f.iter().map(QMatrix::left_nullspace).collect();
    let dims: Vec<usize> = proj.iter().map(QMatrix::rows).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let rhs = proj[t].mul(&n.maps[a]).transpose();
            proj[s].transpose().solve(&rhs).expect("cokernel maps are well defined").transpose()
        })
        .collect();
    Representation { dims, maps }
}

/// Middle term of the extension `0 → Y → E → X → 0` whose arrow matrices are
/// `[[Y_a, φ_a], [0, X_a]]`.
pub fn extension(q: &Quiver, x: &Representation, y: &Representation, phi: &[QMatrix]) -> Representation {
    let dims: Vec<usize> = y.dims.iter().zip(&x.dims).map(|(a, b)| a + b).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let top = QMatrix::hstack(&[&y.maps[a], &phi[a]], y.dims[t]);
            let bottom = QMatrix::hstack(&[&QMatrix::zeros(x.dims[t], y.dims[s]), &x.maps[a]], x.dims[t]);
            QMatrix::vstack(&[&top, &bottom], dims[s])
        })
        .collect();
    Representation { dims, maps }
}

/// Basis of the space of extension data `⊕_a Hom_k(X_{s(a)}, Y_{t(a)})`.
pub fn extension_data_basis(q: &Quiver, x: &Representation, y: &Representation) -> Vec<Vec<QMatrix>> {
    let zero: Vec<QMatrix> = q.arrows().iter().map(|&(s, t)| QMatrix::zeros(y.dims[t], x.dims[s])).collect();
    let mut out = Vec::new();
    for (a, &(s, t)) in q.arrows().iter().enumerate() {
        for r in 0..y.dims[t] {
            for c in 0..x.dims[s] {
                let mut phi = zero.clone();
                phi[a][(r, c)] = Q::one();
                out.push(phi);
            }
        }
    }
    out
}

/// `Hom(X_j, X_i) = 0 = Ext¹(X_j, X_i)` for `i < j`, and each `X_i` rigid.
pub fn is_exceptional_sequence(q: &Quiver, seq: &[Representation]) -> Result<bool> {
    for (j, xj) in seq.iter().enumerate() {
        if ext1_dim(q, xj, xj)? != 0 {
            return Ok(false);
        }
        for xi in &seq[..j] {
            if hom_dim(q, xj, xi) != 0 || ext1_dim(q, xj, xi)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A representation from integer arrow matrices given row by row.
pub fn rep_from_ints(q: &Quiver, dims: Vec<usize>, maps: &[Vec<i64>]) -> Result<Representation> {
    let mats = q
        .arrows()
        .iter()
        .zip(maps)
        .map(|(&(s, t), m)| QMatrix::from_fn(dims[t], dims[s], |r, c| q_of(m[r * dims[s] + c])))
        .collect();
    Representation::new(q, dims, mats)
}

fn q_of(v: i64) -> Q {
    q(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: usize) -> Quiver {
        Quiver::standard(CartanType::A(n)).unwrap()
    }

    fn p1_a2(q: &Quiver) -> Representation {
        rep_from_ints(q, vec![1, 1], &[vec![1]]).unwrap()
    }

    #[test]
    fn a2_hom_examples() {
        let q = a(2);
        let p1 = p1_a2(&q);
        let (s1, s2) = (q.simple(0), q.simple(1));
        assert_eq!(hom_dim(&q, &p1, &s1), 1);
        assert_eq!(hom_dim(&q, &s1, &p1), 0);
        assert_eq!(hom_dim(&q, &s2, &p1), 1);
        let h = hom(&q, &p1, &p1);
        assert_eq!(h.dim(), 1);
        assert!(is_morphism(&q, &p1, &p1, &p1.identity()));
        for f in &h.basis {
            assert!(is_morphism(&q, &p1, &p1, f));
        }
    }

    #[test]
    fn a2_ext_examples() {
        let q = a(2);
        let (s1, s2) = (q.simple(0), q.simple(1));
        assert_eq!(ext1_dim(&q, &s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&q, &s2, &s1).unwrap(), 0);
        assert!(is_exceptional_sequence(&q, &[s1.clone(), s2.clone()]).unwrap());
        assert!(!is_exceptional_sequence(&q, &[s2, s1]).unwrap());
        assert!(is_exceptional_sequence(&q, &[]).unwrap());
    }

    #[test]
    fn cartan_entries_from_ext_groups() {
        for label in [CartanType::A(2), CartanType::A(3), CartanType::D(4), CartanType::Kronecker] {
            let q = Quiver::standard(label).unwrap();
            let cd = build_cartan(label).unwrap();
            for i in 0..q.n() {
                for j in 0..q.n() {
                    if i == j {
                        continue;
                    }
                    let e = ext1_dim(&q, &q.simple(i), &q.simple(j)).unwrap()
                        + ext1_dim(&q, &q.simple(j), &q.simple(i)).unwrap();
                    assert_eq!(-(e as i64), cd.entry(i, j), "{label} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn kernel_cokernel_extension() {
        let q = a(2);
        let p1 = p1_a2(&q);
        let (s1, s2) = (q.simple(0), q.simple(1));
        // the surjection P_1 → S_1 has kernel S_2
        let f = hom(&q, &p1, &s1).basis.remove(0);
        let k = kernel(&q, &p1, &f);
        assert_eq!(k.dim_vector(), s2.dim_vector());
        assert!(cokernel(&q, &s1, &f).is_zero());
        // the inclusion S_2 → P_1 has cokernel S_1
        let g = hom(&q, &s2, &p1).basis.remove(0);
        assert_eq!(cokernel(&q, &p1, &g).dim_vector(), s1.dim_vector());
        // non-split extension of S_1 by S_2 is P_1
        let data = extension_data_basis(&q, &s1, &s2);
        assert_eq!(data.len(), 1);
        let e = extension(&q, &s1, &s2, &data[0]);
        assert_eq!(hom_dim(&q, &e, &e), 1);
        let split = extension(&q, &s1, &s2, &[QMatrix::zeros(1, 1)]);
        assert_eq!(hom_dim(&q, &split, &split), 2);
        assert_eq!(split, s2.direct_sum(&q, &s1));
    }

    #[test]
    fn orientation_checks() {
        assert!(matches!(Quiver::standard(CartanType::B(2)), Err(Error::WrongKind(_))));
        assert!(Quiver::with_arrows(CartanType::A(3), vec![(0, 1), (0, 2)]).is_err());
        let q = Quiver::with_arrows(CartanType::A(3), vec![(1, 0), (1, 2)]).unwrap();
        assert!(q.is_source(1) && q.is_sink(0) && q.is_sink(2));
        assert_eq!(q.projective_dim(1), RootVector(vec![1, 1, 1]));
        assert_eq!(a(3).injective_dim(2), RootVector(vec![1, 1, 1]));
        assert_eq!(a(3).reflect_at(2).arrows(), &[(0, 1), (2, 1)]);
    }

    #[test]
    fn coxeter_transformation_in_a2() {
        let q = a(2);
        let phi = q.coxeter_matrix();
        assert_eq!(phi.apply(&RootVector(vec![1, 0])), RootVector(vec![0, 1]));
        assert!(phi.apply(&RootVector(vec![1, 1])).is_negative());
        assert_eq!(phi.rows(), vec![vec![0, -1], vec![1, -1]]);
    }
}
