//! Cartan data, root-lattice arithmetic and Weyl group elements.
//!
//! Matrices of Weyl group elements act on column vectors in the basis
//! `ε_1, …, ε_n` of the root lattice: column `j` holds the image of `ε_j`.
//! Composition is the matrix product, so `s_1 s_2` means "apply `s_2`, then `s_1`".

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{int_det, int_rank, primitive_integer, QMatrix};

/// Largest Weyl group that [`CartanDatum::weyl_group`] will materialize by default.
pub const DEFAULT_GROUP_CAP: u128 = 10_000_000;

/// Supported Dynkin labels plus the rank-2 affine Kronecker datum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E6,
    E7,
    E8,
    F4,
    G2,
    Kronecker,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) => n,
            CartanType::E6 => 6,
            CartanType::E7 => 7,
            CartanType::E8 => 8,
            CartanType::F4 => 4,
            CartanType::G2 | CartanType::Kronecker => 2,
        }
    }

    pub fn is_finite(self) -> bool {
        self != CartanType::Kronecker
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(
            self,
            CartanType::A(_) | CartanType::D(_) | CartanType::E6 | CartanType::E7 | CartanType::E8
        )
    }

    /// Edges of the Dynkin diagram, 0-based, Bourbaki numbering, each as `(i, j)` with `i < j`.
    pub fn dynkin_edges(self) -> Vec<(usize, usize)> {
        let chain = |n: usize| (1..n).map(|i| (i - 1, i)).collect::<Vec<_>>();
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) => chain(n),
            CartanType::D(n) => {
                let mut e = chain(n - 1);
                e.push((n - 3, n - 1));
                e
            }
            CartanType::E6 | CartanType::E7 | CartanType::E8 => {
                let n = self.rank();
                let mut e = vec![(0, 2), (1, 3), (2, 3)];
                e.extend((3..n - 1).map(|i| (i, i + 1)));
                e
            }
            CartanType::F4 => chain(4),
            CartanType::G2 | CartanType::Kronecker => vec![(0, 1)],
        }
    }

    /// Order of the Weyl group, `None` for the infinite Kronecker group.
    pub fn weyl_order(self) -> Option<u128> {
        let fact = |n: usize| (1..=n as u128).product::<u128>();
        Some(match self {
            CartanType::A(n) => fact(n + 1),
            CartanType::B(n) | CartanType::C(n) => (1u128 << n) * fact(n),
            CartanType::D(n) => (1u128 << (n - 1)) * fact(n),
            CartanType::E6 => 51_840,
            CartanType::E7 => 2_903_040,
            CartanType::E8 => 696_729_600,
            CartanType::F4 => 1_152,
            CartanType::G2 => 12,
            CartanType::Kronecker => return None,
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E6 => f.write_str("E6"),
            CartanType::E7 => f.write_str("E7"),
            CartanType::E8 => f.write_str("E8"),
            CartanType::F4 => f.write_str("F4"),
            CartanType::G2 => f.write_str("G2"),
            CartanType::Kronecker => f.write_str("KRONECKER"),
        }
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unsupported = || Error::UnsupportedLabel(s.to_string());
        let upper = s.trim().to_ascii_uppercase();
        match upper.as_str() {
            "E6" => return Ok(CartanType::E6),
            "E7" => return Ok(CartanType::E7),
            "E8" => return Ok(CartanType::E8),
            "F4" => return Ok(CartanType::F4),
            "G2" => return Ok(CartanType::G2),
            "KRONECKER" => return Ok(CartanType::Kronecker),
            _ => {}
        }
        let (head, digits) = upper.split_at(1.min(upper.len()));
        let n: usize = digits.parse().map_err(|_| unsupported())?;
        let t = match (head, n) {
            ("A", n) if n >= 1 => CartanType::A(n),
            ("B", n) if n >= 2 => CartanType::B(n),
            ("C", n) if n >= 2 => CartanType::C(n),
            ("D", n) if n >= 4 => CartanType::D(n),
            _ => return Err(unsupported()),
        };
        // Beyond this the integer matrices of long NC computations stop being desk scale.
        if n > 16 {
            return Err(unsupported());
        }
        Ok(t)
    }
}

/// A vector of the root lattice `Z^n` in the basis of simple roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    pub fn zero(n: usize) -> Self {
        RootVector(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && self.0.iter().any(|&x| x > 0)
    }

    pub fn is_negative(&self) -> bool {
        self.neg().is_positive()
    }

    pub fn neg(&self) -> Self {
        RootVector(self.0.iter().map(|x| -x).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: i64) -> Self {
        RootVector(self.0.iter().map(|x| k * x).collect())
    }

    /// Sort key placing roots by height, then by coordinates with `ε_1` first.
    pub fn order_key(&self) -> (i64, std::cmp::Reverse<Vec<i64>>) {
        (self.height(), std::cmp::Reverse(self.0.clone()))
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RootVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// An element of the Weyl group as an integer matrix on the root lattice.
///
/// Equality, hashing and ordering are on the matrix entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    n: usize,
    entries: Vec<i64>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        WeylElement { n, entries }
    }

    /// Builds an element from row-major entries.
    pub fn from_rows(n: usize, entries: Vec<i64>) -> Self {
        assert_eq!(entries.len(), n * n, "entry count does not match rank");
        WeylElement { n, entries }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).map(<[i64]>::to_vec).take(self.n).collect()
    }

    pub fn mul(&self, rhs: &WeylElement) -> WeylElement {
        assert_eq!(self.n, rhs.n, "rank mismatch in product");
        let n = self.n;
        let mut out = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        WeylElement { n, entries: out }
    }

    pub fn apply(&self, v: &RootVector) -> RootVector {
        let n = self.n;
        RootVector((0..n).map(|i| (0..n).map(|j| self.entries[i * n + j] * v.0[j]).sum()).collect())
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylElement::identity(self.n)
    }

    pub fn det(&self) -> i64 {
        int_det(self.n, &self.entries)
    }

    /// Matrix inverse; Weyl group elements are unimodular so the result is integral.
    pub fn inverse(&self) -> WeylElement {
        let n = self.n;
        let m = QMatrix::from_i64(n, n, &self.entries);
        let inv = m
            .solve(&QMatrix::identity(n))
            .expect("Weyl group element is invertible");
        let entries = inv
            .entries()
            .iter()
            .map(|x| crate::linalg::q_to_i64(x).expect("inverse of a Weyl group element is integral"))
            .collect();
        WeylElement { n, entries }
    }

    /// Rank of `self - other`; equals the absolute length of `other⁻¹ self` in finite type.
    pub fn rank_of_difference(&self, other: &WeylElement) -> usize {
        let diff: Vec<i64> = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        int_rank(self.n, self.n, &diff)
    }

    /// Codimension of the fixed space, `rank(w - id)`.
    pub fn fixed_codim(&self) -> usize {
        self.rank_of_difference(&WeylElement::identity(self.n))
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl Serialize for WeylElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

/// A symmetrizable generalized Cartan matrix with its minimal symmetrizer.
///
/// Entries satisfy `d_i C_ij = (ε_i, ε_j)`, so `s_i(ε_j) = ε_j - C_ij ε_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    label: CartanType,
    matrix: Vec<i64>,
    symmetrizer: Vec<i64>,
}

/// Standard Cartan matrix and minimal symmetrizer for a label.
pub fn build_cartan(label: CartanType) -> Result<CartanDatum> {
    let n = label.rank();
    let mut sym = vec![1i64; n];
    // Off-diagonal Gram entries (ε_i, ε_j) on the Dynkin edges; default is the
    // simply-laced value -1.
    let mut gram_edge: HashMap<(usize, usize), i64> = HashMap::new();
    match label {
        CartanType::B(n) => {
            sym = vec![2; n];
            sym[n - 1] = 1;
            gram_edge.insert((n - 2, n - 1), -2);
            for i in 0..n.saturating_sub(2) {
                gram_edge.insert((i, i + 1), -2);
            }
        }
        CartanType::C(n) => {
            sym[n - 1] = 2;
            gram_edge.insert((n - 2, n - 1), -2);
        }
        CartanType::F4 => {
            sym = vec![2, 2, 1, 1];
            gram_edge.insert((0, 1), -2);
            gram_edge.insert((1, 2), -2);
        }
        CartanType::G2 => {
            sym = vec![1, 3];
            gram_edge.insert((0, 1), -3);
        }
        CartanType::Kronecker => {
            gram_edge.insert((0, 1), -2);
        }
        _ => {}
    }
    let mut gram = vec![0i64; n * n];
    for i in 0..n {
        gram[i * n + i] = 2 * sym[i];
    }
    for (i, j) in label.dynkin_edges() {
        let g = gram_edge.get(&(i, j)).copied().unwrap_or(-1);
        gram[i * n + j] = g;
        gram[j * n + i] = g;
    }
    let mut matrix = vec![0i64; n * n];
    for i in 0..n {
        for j in 0..n {
            let g = gram[i * n + j];
            if g % sym[i] != 0 {
                return Err(Error::Structural(format!("Gram entry {g} not divisible by d_{i}")));
            }
            matrix[i * n + j] = g / sym[i];
        }
    }
    Ok(CartanDatum { label, matrix, symmetrizer: sym })
}

impl CartanDatum {
    pub fn label(&self) -> CartanType {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.label.rank()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.matrix[i * self.rank() + j]
    }

    pub fn matrix_rows(&self) -> Vec<Vec<i64>> {
        self.matrix.chunks(self.rank()).map(<[i64]>::to_vec).collect()
    }

    pub fn symmetrizer(&self) -> &[i64] {
        &self.symmetrizer
    }

    fn check_len(&self, v: &RootVector) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), got: v.len() });
        }
        Ok(())
    }

    /// The bilinear form `Σ α_i β_j d_i C_ij`.
    pub fn form(&self, a: &RootVector, b: &RootVector) -> Result<i64> {
        self.check_len(a)?;
        self.check_len(b)?;
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a.0[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a.0[i] * b.0[j] * self.symmetrizer[i] * self.matrix[i * n + j];
            }
        }
        Ok(s)
    }

    /// `ξ - 2(ξ,α)/(α,α) α`, with the division checked to be exact.
    pub fn reflect(&self, alpha: &RootVector, xi: &RootVector) -> Result<RootVector> {
        let aa = self.form(alpha, alpha)?;
        if aa == 0 {
            return Err(Error::Isotropic(alpha.to_string()));
        }
        let num = 2 * self.form(xi, alpha)?;
        if num % aa != 0 {
            return Err(Error::NotIntegral { alpha: alpha.to_string(), xi: xi.to_string() });
        }
        Ok(xi.add(&alpha.scaled(-(num / aa))))
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        let n = self.rank();
        let mut entries = WeylElement::identity(n).entries;
        // column j = s_i(ε_j) = ε_j - C_ij ε_i
        for j in 0..n {
            entries[i * n + j] -= self.matrix[i * n + j];
        }
        WeylElement { n, entries }
    }

    pub fn is_real_root(&self, alpha: &RootVector) -> bool {
        if alpha.len() != self.rank() {
            return false;
        }
        match self.label {
            CartanType::Kronecker => {
                let (p, q) = (alpha.0[0], alpha.0[1]);
                (p - q).abs() == 1 && ((p >= 0 && q >= 0) || (p <= 0 && q <= 0))
            }
            _ => {
                let pos = if alpha.is_negative() { alpha.neg() } else { alpha.clone() };
                self.positive_roots(0).contains(&pos)
            }
        }
    }

    /// Matrix of `s_α` for a real root `α`.
    pub fn reflection_element(&self, alpha: &RootVector) -> Result<WeylElement> {
        self.check_len(alpha)?;
        if !self.is_real_root(alpha) {
            return Err(Error::NotARealRoot(alpha.to_string()));
        }
        let n = self.rank();
        let mut entries = vec![0; n * n];
        for j in 0..n {
            let img = self.reflect(alpha, &RootVector::simple(n, j))?;
            for i in 0..n {
                entries[i * n + j] = img.0[i];
            }
        }
        Ok(WeylElement { n, entries })
    }

    /// Positive real roots in [`RootVector::order_key`] order.
    ///
    /// For finite labels `bound` is ignored; for KRONECKER it caps `p + q ≤ 2·bound + 1`.
    pub fn positive_roots(&self, bound: usize) -> Vec<RootVector> {
        let n = self.rank();
        let mut roots: Vec<RootVector> = match self.label {
            CartanType::Kronecker => {
                let top = 2 * bound as i64 + 1;
                let mut v = Vec::new();
                for s in (1..=top).step_by(2) {
                    let lo = (s - 1) / 2;
                    v.push(RootVector(vec![lo + 1, lo]));
                    v.push(RootVector(vec![lo, lo + 1]));
                }
                v
            }
            _ => {
                let mut seen: HashSet<RootVector> = (0..n).map(|i| RootVector::simple(n, i)).collect();
                let mut queue: VecDeque<RootVector> = seen.iter().cloned().collect();
                while let Some(r) = queue.pop_front() {
                    for i in 0..n {
                        let s = self
                            .reflect(&RootVector::simple(n, i), &r)
                            .expect("simple reflections are integral");
                        if !seen.contains(&s) {
                            seen.insert(s.clone());
                            queue.push_back(s);
                        }
                    }
                }
                seen.into_iter().filter(RootVector::is_positive).collect()
            }
        };
        roots.sort_by_key(RootVector::order_key);
        roots
    }

    /// All real roots (positive roots followed by their negatives).
    pub fn real_roots(&self, bound: usize) -> Vec<RootVector> {
        let pos = self.positive_roots(bound);
        let neg: Vec<RootVector> = pos.iter().map(RootVector::neg).collect();
        pos.into_iter().chain(neg).collect()
    }

    /// Reflections paired with their positive roots, in root order.
    pub fn reflections(&self, bound: usize) -> Vec<(RootVector, WeylElement)> {
        self.positive_roots(bound)
            .into_iter()
            .map(|a| {
                let s = self.reflection_element(&a).expect("positive roots are real");
                (a, s)
            })
            .collect()
    }

    /// The whole Weyl group, sorted by matrix entries.
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        self.weyl_group_capped(DEFAULT_GROUP_CAP)
    }

    pub fn weyl_group_capped(&self, cap: u128) -> Result<Vec<WeylElement>> {
        let order = self
            .label
            .weyl_order()
            .ok_or_else(|| Error::InfiniteGroup(self.label.to_string()))?;
        if order > cap {
            return Err(Error::ResourceCap(format!(
                "|W({})| = {order} exceeds the cap {cap}",
                self.label
            )));
        }
        let n = self.rank();
        let gens: Vec<WeylElement> = (0..n).map(|i| self.simple_reflection(i)).collect();
        let id = WeylElement::identity(n);
        let mut seen: HashSet<WeylElement> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for g in &gens {
                let x = w.mul(g);
                if seen.insert(x.clone()) {
                    queue.push_back(x);
                }
            }
        }
        let mut out: Vec<WeylElement> = seen.into_iter().collect();
        out.sort();
        if out.len() as u128 != order {
            return Err(Error::Structural(format!(
                "closure produced {} elements, expected {order}",
                out.len()
            )));
        }
        Ok(out)
    }

    /// Minimal number of reflections whose product is `w`.
    ///
    /// Finite types use the codimension of the fixed space. In the rank-2 affine
    /// KRONECKER group every non-identity element is a reflection (determinant -1)
    /// or a product of two.
    pub fn absolute_length(&self, w: &WeylElement) -> usize {
        match self.label {
            CartanType::Kronecker => {
                if w.is_identity() {
                    0
                } else if w.det() == -1 {
                    1
                } else {
                    2
                }
            }
            _ => w.fixed_codim(),
        }
    }

    /// `ℓ(u⁻¹ v)` without forming the inverse.
    pub fn quotient_length(&self, u: &WeylElement, v: &WeylElement) -> usize {
        match self.label {
            CartanType::Kronecker => {
                if u == v {
                    0
                } else if u.det() * v.det() == -1 {
                    1
                } else {
                    2
                }
            }
            // u⁻¹v - id = u⁻¹(v - u)
            _ => v.rank_of_difference(u),
        }
    }

    /// Absolute order: `u ≤ v` iff `ℓ(u) + ℓ(u⁻¹v) = ℓ(v)`.
    pub fn abs_leq(&self, u: &WeylElement, v: &WeylElement) -> bool {
        self.absolute_length(u) + self.quotient_length(u, v) == self.absolute_length(v)
    }

    /// `s_{perm(1)} ⋯ s_{perm(n)}` for a 1-based permutation.
    pub fn coxeter_element(&self, perm: &[usize]) -> Result<WeylElement> {
        let n = self.rank();
        let mut seen = vec![false; n];
        let valid = perm.len() == n
            && perm.iter().all(|&p| {
                if p == 0 || p > n || seen[p - 1] {
                    false
                } else {
                    seen[p - 1] = true;
                    true
                }
            });
        if !valid {
            return Err(Error::InvalidPermutation(perm.to_vec()));
        }
        Ok(perm
            .iter()
            .fold(WeylElement::identity(n), |acc, &p| acc.mul(&self.simple_reflection(p - 1))))
    }

    /// `c = s_1 s_2 ⋯ s_n`.
    pub fn standard_coxeter(&self) -> WeylElement {
        let perm: Vec<usize> = (1..=self.rank()).collect();
        self.coxeter_element(&perm).expect("identity permutation is valid")
    }

    /// Whether `w` is a reflection of this (finite or Kronecker) group.
    pub fn is_reflection(&self, w: &WeylElement) -> bool {
        w.mul(w).is_identity() && w.det() == -1 && self.absolute_length(w) == 1
    }

    /// Breadth-first distances from the identity in the Cayley graph on all reflections.
    ///
    /// Reflections are produced as conjugates `w s_i w⁻¹`, not from roots, so this
    /// table is an independent check on [`CartanDatum::absolute_length`].
    pub fn reflection_length_table(&self) -> Result<HashMap<WeylElement, usize>> {
        let group = self.weyl_group()?;
        let n = self.rank();
        let mut refl: HashSet<WeylElement> = HashSet::new();
        for w in &group {
            let winv = w.inverse();
            for i in 0..n {
                refl.insert(w.mul(&self.simple_reflection(i)).mul(&winv));
            }
        }
        let mut refl: Vec<WeylElement> = refl.into_iter().collect();
        refl.sort();
        let id = WeylElement::identity(n);
        let mut dist = HashMap::from([(id.clone(), 0usize)]);
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            let d = dist[&w];
            for t in &refl {
                let x = w.mul(t);
                if !dist.contains_key(&x) {
                    dist.insert(x.clone(), d + 1);
                    queue.push_back(x);
                }
            }
        }
        Ok(dist)
    }

    /// Positive root of a reflection: the non-negative primitive vector with `s(α) = -α`.
    pub fn root_of_reflection(&self, s: &WeylElement) -> Result<RootVector> {
        if !self.is_reflection(s) {
            return Err(Error::NotAReflection);
        }
        let n = self.rank();
        let plus_id: Vec<i64> = s
            .entries()
            .iter()
            .enumerate()
            .map(|(k, &x)| if k / n == k % n { x + 1 } else { x })
            .collect();
        let kernel = QMatrix::from_i64(n, n, &plus_id).nullspace();
        if kernel.cols() != 1 {
            return Err(Error::NotAReflection);
        }
        let col: Vec<_> = (0..n).map(|i| kernel[(i, 0)].clone()).collect();
        let mut alpha = RootVector(primitive_integer(&col));
        if alpha.is_negative() {
            alpha = alpha.neg();
        }
        if !alpha.is_positive() || self.reflection_element(&alpha)? != *s {
            return Err(Error::Structural(format!("kernel vector {alpha} does not recover the reflection")));
        }
        Ok(alpha)
    }
}
