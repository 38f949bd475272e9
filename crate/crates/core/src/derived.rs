//! The repetition `ZΔ` as a model of the bounded derived category of a Dynkin
//! quiver, with Hom hammocks knitted from the mesh relations.
//!
//! `Δ` is the opposite of the module quiver, so that the projective `P_i`
//! sits at `(0, i)` and `τ^{-m} P_i` at `(m, i)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde_json::{json, Value};

use crate::cartan::{RootVector, WeylElement};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::repcat::{Catalog, Quiver};
use crate::translation::{Arrow, TranslationQuiver};

/// Default number of levels a hammock may span before knitting gives up.
pub const DEFAULT_LEVEL_CAP: usize = 64;

/// A vertex `(level, node)` of `ZΔ`; `node` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivedVertex {
    pub level: i64,
    pub node: usize,
}

impl DerivedVertex {
    pub fn new(level: i64, node: usize) -> Self {
        DerivedVertex { level, node }
    }

    /// `τ(n, x) = (n - 1, x)`.
    pub fn tau(self) -> Self {
        DerivedVertex { level: self.level - 1, node: self.node }
    }

    pub fn tau_inv(self) -> Self {
        DerivedVertex { level: self.level + 1, node: self.node }
    }

    fn shifted(self, by: i64) -> Self {
        DerivedVertex { level: self.level + by, node: self.node }
    }
}

impl fmt::Display for DerivedVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.level, self.node + 1)
    }
}

/// `ZΔ` for `Δ = Γ^op`.
#[derive(Debug, Clone)]
pub struct Repetition {
    gamma: Quiver,
    delta: Vec<(usize, usize)>,
    topo: Vec<usize>,
}

impl Repetition {
    pub fn new(gamma: &Quiver) -> Self {
        let delta: Vec<(usize, usize)> = gamma.arrows().iter().map(|&(s, t)| (t, s)).collect();
        let n = gamma.n();
        let mut indeg = vec![0usize; n];
        for &(_, t) in &delta {
            indeg[t] += 1;
        }
        let mut topo = Vec::with_capacity(n);
        let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        while let Some(v) = ready.iter().copied().min() {
            ready.retain(|&x| x != v);
            topo.push(v);
            for &(s, t) in &delta {
                if s == v {
                    indeg[t] -= 1;
                    if indeg[t] == 0 {
                        ready.push(t);
                    }
                }
            }
        }
        assert_eq!(topo.len(), n, "Dynkin quivers have no oriented cycles");
        Repetition { gamma: gamma.clone(), delta, topo }
    }

    pub fn gamma(&self) -> &Quiver {
        &self.gamma
    }

    pub fn n(&self) -> usize {
        self.gamma.n()
    }

    /// Sources of the arrows into `z`: `(n, w)` for `w → x` and `(n-1, y)` for `x → y` in `Δ`.
    pub fn predecessors(&self, z: DerivedVertex) -> Vec<DerivedVertex> {
        let mut out = Vec::new();
        for &(s, t) in &self.delta {
            if t == z.node {
                out.push(DerivedVertex::new(z.level, s));
            }
            if s == z.node {
                out.push(DerivedVertex::new(z.level - 1, t));
            }
        }
        out
    }

    pub fn successors(&self, z: DerivedVertex) -> Vec<DerivedVertex> {
        let mut out = Vec::new();
        for &(s, t) in &self.delta {
            if s == z.node {
                out.push(DerivedVertex::new(z.level, t));
            }
            if t == z.node {
                out.push(DerivedVertex::new(z.level + 1, s));
            }
        }
        out
    }

    pub fn is_arrow(&self, u: DerivedVertex, v: DerivedVertex) -> bool {
        self.successors(u).contains(&v)
    }

    /// The window `lo..=hi` of the repetition, vertices ordered by level then node.
    pub fn build_zdelta(&self, lo: i64, hi: i64) -> Result<TranslationQuiver<DerivedVertex>> {
        if lo > hi {
            return Err(Error::InvalidWindow(format!("{lo}:{hi}")));
        }
        let n = self.n();
        let vertices: Vec<DerivedVertex> =
            (lo..=hi).flat_map(|l| (0..n).map(move |x| DerivedVertex::new(l, x))).collect();
        let pos = |v: DerivedVertex| ((v.level - lo) as usize) * n + v.node;
        let mut arrows = Vec::new();
        for &v in &vertices {
            for w in self.successors(v) {
                if w.level <= hi {
                    arrows.push(Arrow { src: pos(v), dst: pos(w), valuation: (1, 1) });
                }
            }
        }
        let tau = vertices.iter().map(|v| (v.level > lo).then(|| pos(v.tau()))).collect();
        Ok(TranslationQuiver::new(vertices, arrows, tau))
    }

    /// Hom hammock of `x`: `dim Hom(x, z)` for every `z`.
    ///
    /// The mesh recursion `h(z) = Σ_{y→z} h(y) - h(τz) + [z = x]` first turns
    /// negative, with value `-1`, exactly at `z = Σx`; that entry is corrected
    /// to `0` and recorded as the suspension.
    pub fn knit_hammock(&self, x: DerivedVertex, level_cap: usize) -> Result<Hammock> {
        let mut values: HashMap<DerivedVertex, i64> = HashMap::new();
        let mut sigma = None;
        let last = x.level + level_cap as i64;
        for level in x.level..=last {
            let mut all_zero = true;
            for &node in &self.topo {
                let z = DerivedVertex::new(level, node);
                let get = |v: &DerivedVertex| values.get(v).copied().unwrap_or(0);
                let mut raw: i64 = self.predecessors(z).iter().map(get).sum();
                raw -= get(&z.tau());
                if z == x {
                    raw += 1;
                }
                let val = match raw {
                    -1 if sigma.is_none() => {
                        sigma = Some(z);
                        0
                    }
                    r if r < 0 => {
                        return Err(Error::Structural(format!("hammock of {x} is {r} at {z}")));
                    }
                    r => r,
                };
                if val != 0 {
                    values.insert(z, val);
                    all_zero = false;
                }
            }
            if all_zero && level > x.level {
                return match sigma {
                    Some(s) => Ok(Hammock {
                        source: x,
                        values: values.into_iter().map(|(k, v)| (k, v as u64)).collect(),
                        sigma: s,
                    }),
                    None => Err(Error::Structural(format!("hammock of {x} died before reaching its suspension"))),
                };
            }
        }
        Err(Error::Window(last))
    }

    /// Knits inside `lo..=hi`; fails with a window error if the hammock leaves it.
    pub fn knit_in_window(&self, x: DerivedVertex, lo: i64, hi: i64, auto_extend: bool) -> Result<Hammock> {
        if x.level < lo || x.level > hi {
            return Err(Error::InvalidWindow(format!("{x} is outside {lo}:{hi}")));
        }
        if auto_extend {
            return self.knit_hammock(x, DEFAULT_LEVEL_CAP);
        }
        let h = self.knit_hammock(x, (hi - x.level).max(0) as usize + 1)?;
        match h.values.keys().chain([&h.sigma]).map(|v| v.level).max() {
            Some(l) if l > hi => Err(Error::Window(hi)),
            _ => Ok(h),
        }
    }
}

/// `dim Hom(source, -)` on `ZΔ`, nonzero entries only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hammock {
    pub source: DerivedVertex,
    pub values: BTreeMap<DerivedVertex, u64>,
    pub sigma: DerivedVertex,
}

impl Hammock {
    pub fn value(&self, z: DerivedVertex) -> u64 {
        self.values.get(&z).copied().unwrap_or(0)
    }
}

/// One hammock per node at level 0; all others follow by translation.
#[derive(Debug, Clone)]
pub struct HammockTable {
    rep: Repetition,
    base: Vec<Hammock>,
}

impl HammockTable {
    pub fn new(rep: &Repetition) -> Result<Self> {
        HammockTable::with_execution(rep, Execution::default())
    }

    pub fn with_execution(rep: &Repetition, exec: Execution) -> Result<Self> {
        let base = exec
            .map_range(rep.n(), |i| rep.knit_hammock(DerivedVertex::new(0, i), DEFAULT_LEVEL_CAP))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Ok(HammockTable { rep: rep.clone(), base })
    }

    pub fn repetition(&self) -> &Repetition {
        &self.rep
    }

    pub fn base(&self) -> &[Hammock] {
        &self.base
    }

    pub fn hom(&self, x: DerivedVertex, y: DerivedVertex) -> u64 {
        self.base[x.node].value(y.shifted(-x.level))
    }

    pub fn hammock(&self, x: DerivedVertex) -> Hammock {
        let h = &self.base[x.node];
        Hammock {
            source: x,
            values: h.values.iter().map(|(k, &v)| (k.shifted(x.level), v)).collect(),
            sigma: h.sigma.shifted(x.level),
        }
    }

    pub fn suspension(&self, x: DerivedVertex) -> DerivedVertex {
        self.base[x.node].sigma.shifted(x.level)
    }

    pub fn desuspension(&self, x: DerivedVertex) -> DerivedVertex {
        let (i, h) = self
            .base
            .iter()
            .enumerate()
            .find(|(_, h)| h.sigma.node == x.node)
            .expect("suspension permutes the nodes");
        DerivedVertex::new(x.level - h.sigma.level, i)
    }

    /// `N = Σ ∘ τ`.
    pub fn serre(&self, x: DerivedVertex) -> DerivedVertex {
        self.suspension(x.tau())
    }

    /// `ℓ(x) = Σ_C dim Hom(C, x)` over all vertices `C`.
    pub fn ell(&self, x: DerivedVertex) -> u64 {
        self.base.iter().flat_map(|h| h.values.iter()).filter(|(k, _)| k.node == x.node).map(|(_, v)| v).sum()
    }

    /// Checks `ℓ(Z) = ℓ(τZ)` and `2ℓ(Z) = 2 + Σ_{Y→Z} δ ℓ(Y)` on `lo..=hi`.
    pub fn verify_mesh(&self, lo: i64, hi: i64) -> Result<MeshReport> {
        let window = self.rep.build_zdelta(lo, hi)?;
        let mut report = MeshReport::default();
        for (zi, &z) in window.vertices().iter().enumerate() {
            let Some(tzi) = window.tau(zi) else { continue };
            report.checked += 1;
            let (lz, ltz) = (self.ell(z), self.ell(window.vertices()[tzi]));
            let sum: u64 = window
                .arrows_into(zi)
                .map(|a| a.valuation.0 as u64 * self.ell(window.vertices()[a.src]))
                .sum();
            if lz != ltz {
                report.violations.push(format!("ℓ{z} = {lz} but ℓ(τ{z}) = {ltz}"));
            }
            if 2 * lz != 2 + sum {
                report.violations.push(format!("2ℓ{z} = {} but 2 + Σℓ(Y) = {}", 2 * lz, 2 + sum));
            }
        }
        Ok(report)
    }

    pub fn to_json(&self, lo: i64, hi: i64) -> Value {
        let n = self.rep.n();
        let sources: Vec<Value> = (lo..=hi)
            .flat_map(|l| (0..n).map(move |x| DerivedVertex::new(l, x)))
            .map(|x| {
                let h = self.hammock(x);
                json!({
                    "source": [x.level, x.node + 1],
                    "sigma": [h.sigma.level, h.sigma.node + 1],
                    "ell": self.ell(x),
                    "values": h.values.iter().map(|(k, v)| json!([k.level, k.node + 1, v])).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "type": self.rep.gamma().label().to_string(),
            "window": [lo, hi],
            "hammocks": sources,
        })
    }
}

/// Outcome of [`HammockTable::verify_mesh`].
#[derive(Debug, Clone, Default)]
pub struct MeshReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl MeshReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Hom in the derived category between stalk complexes `M[m]` and `N[n]` of a
/// hereditary algebra.
pub fn derived_hom(cat: &Catalog, (m, sm): (usize, i64), (n, sn): (usize, i64)) -> usize {
    match sn - sm {
        0 => cat.hom_dim(m, n),
        1 => cat.ext1_dim(m, n),
        _ => 0,
    }
}

/// The repetition together with the module category it models.
///
/// A module `τ^{-m} P_i` is placed at `(m, i)`; its shifts `M[s]` at `Σ^s(m, i)`.
#[derive(Debug, Clone)]
pub struct DerivedModel {
    catalog: Catalog,
    table: HammockTable,
    slice: HashMap<DerivedVertex, usize>,
    position: Vec<DerivedVertex>,
}

impl DerivedModel {
    pub fn new(gamma: &Quiver) -> Result<Self> {
        DerivedModel::with_execution(gamma, Execution::default())
    }

    pub fn with_execution(gamma: &Quiver, exec: Execution) -> Result<Self> {
        let catalog = Catalog::with_execution(gamma, exec)?;
        let table = HammockTable::with_execution(&Repetition::new(gamma), exec)?;
        let phi_inv: WeylElement = gamma.coxeter_matrix().inverse();
        let mut slice = HashMap::new();
        let mut position = vec![DerivedVertex::new(0, 0); catalog.len()];
        for i in 0..gamma.n() {
            let mut d: RootVector = gamma.projective_dim(i);
            let mut m = 0;
            while d.is_positive() {
                let idx = catalog
                    .index_of(&d)
                    .ok_or_else(|| Error::Structural(format!("{d} is not a module")))?;
                let v = DerivedVertex::new(m, i);
                slice.insert(v, idx);
                position[idx] = v;
                d = phi_inv.apply(&d);
                m += 1;
            }
        }
        if slice.len() != catalog.len() {
            return Err(Error::Structural("module slice does not cover every indecomposable".into()));
        }
        Ok(DerivedModel { catalog, table, slice, position })
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn table(&self) -> &HammockTable {
        &self.table
    }

    pub fn repetition(&self) -> &Repetition {
        self.table.repetition()
    }

    /// Vertex of the shifted module `M[s]`.
    pub fn vertex_of(&self, module: usize, shift: i64) -> DerivedVertex {
        let mut v = self.position[module];
        for _ in 0..shift.max(0) {
            v = self.table.suspension(v);
        }
        for _ in 0..(-shift).max(0) {
            v = self.table.desuspension(v);
        }
        v
    }

    /// `(module, shift)` with `v = Σ^shift(module)`.
    pub fn identify(&self, v: DerivedVertex) -> Result<(usize, i64)> {
        let (mut down, mut up) = (v, v);
        for s in 0..=DEFAULT_LEVEL_CAP as i64 {
            if let Some(&m) = self.slice.get(&down) {
                return Ok((m, s));
            }
            if let Some(&m) = self.slice.get(&up) {
                return Ok((m, -s));
            }
            down = self.table.desuspension(down);
            up = self.table.suspension(up);
        }
        Err(Error::Window(v.level))
    }

    /// Whether the module AR quiver maps into `ZΔ` preserving arrows and `τ`.
    pub fn embeds(&self, ar: &TranslationQuiver<RootVector>) -> bool {
        let pos = |i: usize| self.catalog.index_of(&ar.vertices()[i]).map(|m| self.position[m]);
        let arrows_ok = ar.arrows().iter().all(|a| match (pos(a.src), pos(a.dst)) {
            (Some(u), Some(v)) => self.repetition().is_arrow(u, v),
            _ => false,
        });
        let tau_ok = (0..ar.len()).all(|z| match ar.tau(z) {
            Some(t) => pos(t).zip(pos(z)).is_some_and(|(pt, pz)| pt == pz.tau()),
            None => pos(z).is_some_and(|pz| pz.level == 0),
        });
        arrows_ok && tau_ok
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::CartanType;

    fn model(label: CartanType) -> DerivedModel {
        DerivedModel::new(&Quiver::standard(label).unwrap()).unwrap()
    }

    fn v(l: i64, node1: usize) -> DerivedVertex {
        DerivedVertex::new(l, node1 - 1)
    }

    #[test]
    fn window_shapes() {
        let a1 = Repetition::new(&Quiver::standard(CartanType::A(1)).unwrap());
        let w = a1.build_zdelta(-2, 2).unwrap();
        assert_eq!((w.len(), w.arrows().len()), (5, 0));
        let a2 = Repetition::new(&Quiver::standard(CartanType::A(2)).unwrap());
        let w = a2.build_zdelta(0, 1).unwrap();
        assert_eq!((w.len(), w.arrows().len()), (4, 3));
        for (i, x) in w.vertices().iter().enumerate() {
            match w.tau(i) {
                Some(t) => assert_eq!(w.vertices()[t], x.tau()),
                None => assert_eq!(x.level, 0),
            }
        }
        assert!(w.mesh_violations().is_empty());
        assert!(matches!(a2.build_zdelta(1, 0), Err(Error::InvalidWindow(_))));
    }

    #[test]
    fn a2_slice_and_hammocks() {
        let m = model(CartanType::A(2));
        let cat = m.catalog();
        let s1 = cat.index_of(&RootVector(vec![1, 0])).unwrap();
        let s2 = cat.index_of(&RootVector(vec![0, 1])).unwrap();
        let p1 = cat.index_of(&RootVector(vec![1, 1])).unwrap();
        assert_eq!(m.vertex_of(s2, 0), v(0, 2));
        assert_eq!(m.vertex_of(p1, 0), v(0, 1));
        assert_eq!(m.vertex_of(s1, 0), v(1, 2));
        assert_eq!(m.vertex_of(s2, 1), v(1, 1));
        let t = m.table();
        assert_eq!(t.hom(m.vertex_of(s1, 0), m.vertex_of(s2, 1)), 1);
        assert_eq!(t.hom(m.vertex_of(p1, 0), m.vertex_of(s2, 1)), 0);
        assert_eq!(t.hom(v(0, 1), v(0, 1)), 1);
        assert_eq!(t.ell(m.vertex_of(s1, 0)), 2);
        assert_eq!(t.ell(m.vertex_of(s2, 0)), 2);
        assert_eq!(t.ell(m.vertex_of(p1, 0)), 2);
        let n_s1 = t.serre(m.vertex_of(s1, 0));
        assert_eq!(n_s1, m.vertex_of(s2, 1));
        assert_eq!(t.hom(m.vertex_of(s1, 0), n_s1), 1);
        assert_eq!(m.identify(v(1, 1)).unwrap(), (s2, 1));
        assert_eq!(m.identify(v(-1, 1)).unwrap(), (s1, -1));
    }

    #[test]
    fn a1_suspension_is_inverse_translation() {
        let m = model(CartanType::A(1));
        let t = m.table();
        for l in -3..3 {
            let x = DerivedVertex::new(l, 0);
            assert_eq!(t.suspension(x), x.tau_inv());
            assert_eq!(t.ell(x), 1);
            for k in -3..3 {
                // semisimple: Hom(X, Σ^k X) vanishes unless k = 0
                assert_eq!(t.hom(x, DerivedVertex::new(l + k, 0)), u64::from(k == 0));
            }
        }
        assert!(t.verify_mesh(-2, 2).unwrap().is_clean());
    }

    #[test]
    fn suspension_commutes_with_tau() {
        for label in [CartanType::A(3), CartanType::D(4)] {
            let m = model(label);
            let t = m.table();
            for l in -2..3 {
                for x in 0..label.rank() {
                    let z = DerivedVertex::new(l, x);
                    assert_eq!(t.suspension(z.tau()), t.suspension(z).tau());
                    assert_eq!(t.desuspension(t.suspension(z)), z);
                }
            }
        }
    }

    #[test]
    fn mesh_reports_are_clean() {
        for label in [CartanType::A(2), CartanType::A(3), CartanType::D(4), CartanType::E6] {
            let m = model(label);
            let r = m.table().verify_mesh(-3, 3).unwrap();
            assert!(r.is_clean(), "{label}: {:?}", r.violations);
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn window_errors() {
        let rep = Repetition::new(&Quiver::standard(CartanType::A(3)).unwrap());
        assert!(matches!(rep.knit_hammock(v(0, 1), 1), Err(Error::Window(_))));
        assert!(matches!(rep.knit_in_window(v(0, 1), 0, 1, false), Err(Error::Window(_))));
        assert!(rep.knit_in_window(v(0, 1), 0, 1, true).is_ok());
    }

    #[test]
    fn hereditary_bridge_vanishes_beyond_one() {
        let m = model(CartanType::A(2));
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(derived_hom(m.catalog(), (a, 0), (b, 2)), 0);
                assert_eq!(derived_hom(m.catalog(), (a, 1), (b, 0)), 0);
            }
        }
    }
}
