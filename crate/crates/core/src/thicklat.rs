//! Thick subcategories of the derived category of a Dynkin quiver, identified
//! with elements of `NC(W, c)` through the product of the reflections of a
//! generating exceptional sequence.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::cartan::{CartanDatum, RootVector, WeylElement};
use crate::error::{Error, Result};
use crate::linalg::{q, Q};
use crate::noncrossing::{enumerate_nc_with, nc_kronecker, NCLattice, NcOptions};
use crate::par::Execution;
use crate::poset;
use crate::repcat::{
    cokernel, combine, extension, extension_data_basis, hom, is_exceptional_sequence, kernel, Catalog, Morphism,
    Quiver, Representation,
};

/// Positive root of a reflection.
pub fn root_of_reflection(cd: &CartanDatum, s: &WeylElement) -> Result<RootVector> {
    cd.root_of_reflection(s)
}

/// A thick subcategory: an element of `NC(W, c)` certified by a generating
/// sequence of positive roots. Equality compares the NC element only.
#[derive(Debug, Clone)]
pub struct ThickSubcategory {
    nc_element: WeylElement,
    generators: Vec<RootVector>,
}

impl PartialEq for ThickSubcategory {
    fn eq(&self, other: &Self) -> bool {
        self.nc_element == other.nc_element
    }
}

impl Eq for ThickSubcategory {}

impl ThickSubcategory {
    pub fn nc_element(&self) -> &WeylElement {
        &self.nc_element
    }

    pub fn generators(&self) -> &[RootVector] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }
}

/// Shared data for thick-subcategory computations of one Dynkin label.
///
/// For simply-laced labels the module catalog of the quiver with arrows
/// `i → j` (`i < j`) is attached, and generator sequences are checked to be
/// exceptional.
#[derive(Debug, Clone)]
pub struct ThickContext {
    cartan: CartanDatum,
    coxeter: WeylElement,
    reflections: Vec<(RootVector, WeylElement)>,
    catalog: Option<Catalog>,
}

impl ThickContext {
    pub fn new(cd: &CartanDatum) -> Result<Self> {
        ThickContext::with_execution(cd, Execution::default())
    }

    pub fn with_execution(cd: &CartanDatum, exec: Execution) -> Result<Self> {
        if !cd.label().is_finite() {
            return Err(Error::WrongKind(format!("{} (use kronecker_lattice)", cd.label())));
        }
        let catalog = if cd.label().is_simply_laced() {
            Some(Catalog::with_execution(&Quiver::standard(cd.label())?, exec)?)
        } else {
            None
        };
        Ok(ThickContext {
            cartan: cd.clone(),
            coxeter: cd.standard_coxeter(),
            reflections: cd.reflections(0),
            catalog,
        })
    }

    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn coxeter(&self) -> &WeylElement {
        &self.coxeter
    }

    pub fn catalog(&self) -> Option<&Catalog> {
        self.catalog.as_ref()
    }

    /// Ordered product of the generator reflections; must lie below `c`.
    pub fn cox(&self, generators: &[RootVector]) -> Result<WeylElement> {
        let n = self.cartan.rank();
        let mut w = WeylElement::identity(n);
        for g in generators {
            w = w.mul(&self.cartan.reflection_element(g)?);
        }
        if self.cartan.absolute_length(&w) != generators.len() || !self.cartan.abs_leq(&w, &self.coxeter) {
            return Err(Error::Structural("generator product is not below the Coxeter element".into()));
        }
        Ok(w)
    }

    pub fn from_generators(&self, generators: Vec<RootVector>) -> Result<ThickSubcategory> {
        let nc_element = self.cox(&generators)?;
        Ok(ThickSubcategory { nc_element, generators })
    }

    /// Greedy factorization `w = x_1 ⋯ x_r`, choosing the first reflection in
    /// root order that lowers the length by one.
    fn factor(&self, w: &WeylElement) -> Result<Vec<RootVector>> {
        let mut rest = w.clone();
        let mut k = self.cartan.absolute_length(w);
        let mut out = Vec::with_capacity(k);
        while k > 0 {
            let (root, t) = self
                .reflections
                .iter()
                .find(|(_, t)| self.cartan.absolute_length(&t.mul(&rest)) == k - 1)
                .ok_or_else(|| Error::Structural("no reflection shortens the element".into()))?;
            out.push(root.clone());
            rest = t.mul(&rest);
            k -= 1;
        }
        Ok(out)
    }

    /// The thick subcategory with `cox = w`, generated by the first `ℓ(w)`
    /// terms of a factorization of `c` that starts with a factorization of `w`.
    pub fn thick_from_nc(&self, w: &WeylElement) -> Result<ThickSubcategory> {
        if !self.cartan.abs_leq(w, &self.coxeter) {
            return Err(Error::NotInLattice);
        }
        let generators = self.factor(w)?;
        let rest = self.factor(&w.inverse().mul(&self.coxeter))?;
        if let Some(cat) = &self.catalog {
            let seq: Vec<Representation> = generators
                .iter()
                .chain(&rest)
                .map(|r| cat.index_of(r).map(|i| cat.rep(i).clone()))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::Structural("generator root has no module".into()))?;
            if !is_exceptional_sequence(cat.quiver(), &seq)? {
                return Err(Error::Structural("completed factorization is not exceptional".into()));
            }
        }
        let u = ThickSubcategory { nc_element: w.clone(), generators };
        debug_assert_eq!(self.cox(&u.generators).ok().as_ref(), Some(w));
        Ok(u)
    }

    /// `⊥U`, with `cox(⊥U) = cox(U)⁻¹ c`.
    pub fn left_perp(&self, u: &ThickSubcategory) -> Result<ThickSubcategory> {
        self.thick_from_nc(&u.nc_element.inverse().mul(&self.coxeter))
    }

    /// `U⊥`, with `cox(U⊥) = c cox(U)⁻¹`.
    pub fn right_perp(&self, u: &ThickSubcategory) -> Result<ThickSubcategory> {
        self.thick_from_nc(&self.coxeter.mul(&u.nc_element.inverse()))
    }

    /// Whether `Hom(Y, X[k]) = 0` for all generators `Y` of `left`, `X` of
    /// `right` and all `k`; only available with a module catalog.
    pub fn hom_orthogonal(&self, left: &ThickSubcategory, right: &ThickSubcategory) -> Option<bool> {
        let cat = self.catalog.as_ref()?;
        let idx = |r: &RootVector| cat.index_of(r).expect("generator root has a module");
        Some(left.generators.iter().all(|y| {
            right.generators.iter().all(|x| {
                let (a, b) = (idx(y), idx(x));
                cat.hom_dim(a, b) == 0 && cat.ext1_dim(a, b) == 0
            })
        }))
    }
}

/// `NC(W, c)` with every element materialized as a thick subcategory.
#[derive(Debug, Clone)]
pub struct ThickLattice {
    nc: NCLattice,
    subcategories: Vec<ThickSubcategory>,
}

pub fn thick_lattice(ctx: &ThickContext) -> Result<ThickLattice> {
    thick_lattice_with(ctx, Execution::default())
}

pub fn thick_lattice_with(ctx: &ThickContext, exec: Execution) -> Result<ThickLattice> {
    let nc = enumerate_nc_with(ctx.cartan(), ctx.coxeter(), &NcOptions { execution: exec, reflection_order: None })?;
    let subcategories =
        exec.map(nc.elements(), |w| ctx.thick_from_nc(w)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ThickLattice { nc, subcategories })
}

impl ThickLattice {
    pub fn nc(&self) -> &NCLattice {
        &self.nc
    }

    pub fn subcategories(&self) -> &[ThickSubcategory] {
        &self.subcategories
    }

    pub fn len(&self) -> usize {
        self.subcategories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subcategories.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.nc.leq(i, j)
    }

    pub fn to_json(&self, ctx: &ThickContext) -> Result<Value> {
        let elements: Vec<Value> = self
            .subcategories
            .iter()
            .enumerate()
            .map(|(i, u)| json!({ "nc_id": i, "rank": u.rank(), "generator_roots": u.generators() }))
            .collect();
        let perp_pairs = self
            .subcategories
            .iter()
            .enumerate()
            .map(|(i, u)| Ok([i, self.nc.index_of(ctx.left_perp(u)?.nc_element())?]))
            .collect::<Result<Vec<_>>>()?;
        Ok(json!({
            "type": ctx.cartan().label().to_string(),
            "elements": elements,
            "hasse": self.nc.hasse().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
            "perp_pairs": perp_pairs,
        }))
    }
}

/// Largest number of indecomposables for which the oracle enumerates subsets.
pub const ORACLE_CAP: usize = 12;

/// A closure requirement: if every module of `premise` is in a wide
/// subcategory, so is every module of `required`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Obligation {
    premise: u32,
    required: u32,
}

fn summand_mask(cat: &Catalog, m: &Representation) -> Result<u32> {
    Ok(cat.decompose(m)?.iter().enumerate().filter(|(_, &c)| c > 0).fold(0, |acc, (i, _)| acc | (1 << i)))
}

fn sample_maps(basis: &[Morphism], m: &Representation, n: &Representation, rng: &mut ChaCha8Rng) -> Vec<Morphism> {
    let mut out: Vec<Morphism> = basis.to_vec();
    if basis.len() > 1 {
        let ones: Vec<Q> = vec![q(1); basis.len()];
        out.push(combine(&ones, basis, m, n));
        for _ in 0..2 {
            let coeffs: Vec<Q> = (0..basis.len()).map(|_| q(rng.random_range(1..6))).collect();
            out.push(combine(&coeffs, basis, m, n));
        }
    }
    out
}

fn map_obligations(
    cat: &Catalog,
    src: &Representation,
    dst: &Representation,
    premise: u32,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Obligation>> {
    let quiver = cat.quiver();
    let basis = hom(quiver, src, dst).basis;
    let mut out = Vec::new();
    for f in sample_maps(&basis, src, dst, rng) {
        let required = summand_mask(cat, &kernel(quiver, src, &f))? | summand_mask(cat, &cokernel(quiver, dst, &f))?;
        out.push(Obligation { premise, required });
    }
    Ok(out)
}

fn extension_obligations(cat: &Catalog, i: usize, j: usize, rng: &mut ChaCha8Rng) -> Result<Vec<Obligation>> {
    if cat.ext1_dim(i, j) == 0 {
        return Ok(Vec::new());
    }
    let quiver = cat.quiver();
    let (x, y) = (cat.rep(i), cat.rep(j));
    let data = extension_data_basis(quiver, x, y);
    let mut samples = data.clone();
    for _ in 0..3 {
        let mut phi: Vec<crate::linalg::QMatrix> = data[0].iter().map(|m| m.scale(&Q::zero())).collect();
        for d in &data {
            let c = q(rng.random_range(0..4));
            for (p, m) in phi.iter_mut().zip(d) {
                *p = p.add(&m.scale(&c));
            }
        }
        samples.push(phi);
    }
    let premise = (1 << i) | (1 << j);
    samples
        .iter()
        .map(|phi| Ok(Obligation { premise, required: summand_mask(cat, &extension(quiver, x, y, phi))? }))
        .collect()
}

/// All wide subcategories of the module category, as sets of indecomposable
/// indices of the catalog, found by testing every subset for closure under
/// kernels, cokernels and extensions.
pub fn wide_subcategory_oracle(cat: &Catalog) -> Result<Vec<Vec<usize>>> {
    wide_subcategory_oracle_with(cat, Execution::default())
}

pub fn wide_subcategory_oracle_with(cat: &Catalog, exec: Execution) -> Result<Vec<Vec<usize>>> {
    let k = cat.len();
    if k > ORACLE_CAP {
        return Err(Error::ResourceCap(format!("{k} indecomposables exceed the oracle cap {ORACLE_CAP}")));
    }
    let quiver = cat.quiver();
    let singles = exec.map_range(k * k, |p| -> Result<Vec<Obligation>> {
        let (i, j) = (p / k, p % k);
        let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
        let mut out = map_obligations(cat, cat.rep(i), cat.rep(j), (1 << i) | (1 << j), &mut rng)?;
        out.extend(extension_obligations(cat, i, j, &mut rng)?);
        Ok(out)
    });
    let sums = exec.map_range(k * k * k, |p| -> Result<Vec<Obligation>> {
        let (i, i2, j) = (p / (k * k), (p / k) % k, p % k);
        if i2 < i {
            return Ok(Vec::new());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(1_000_003 + p as u64);
        let premise = (1 << i) | (1 << i2) | (1 << j);
        let pair = cat.rep(i).direct_sum(quiver, cat.rep(i2));
        let mut out = map_obligations(cat, &pair, cat.rep(j), premise, &mut rng)?;
        out.extend(map_obligations(cat, cat.rep(j), &pair, premise, &mut rng)?);
        Ok(out)
    });
    let mut obligations: BTreeSet<Obligation> = BTreeSet::new();
    for batch in singles.into_iter().chain(sums) {
        for o in batch? {
            if o.required & !o.premise != 0 {
                obligations.insert(o);
            }
        }
    }
    let obligations: Vec<Obligation> = obligations.into_iter().collect();
    let wide: Vec<u32> = (0u32..(1 << k))
        .filter(|&s| obligations.iter().all(|o| o.premise & !s != 0 || o.required & !s == 0))
        .collect();
    Ok(wide.into_iter().map(|s| (0..k).filter(|&i| s & (1 << i) != 0).collect()).collect())
}

/// Smallest wide subcategory containing the given indecomposables.
pub fn wide_closure(wide: &[Vec<usize>], gens: &[usize]) -> Option<Vec<usize>> {
    wide.iter().filter(|w| gens.iter().all(|g| w.contains(g))).min_by_key(|w| w.len()).cloned()
}

/// An element of the Kronecker lattice.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KroneckerElement {
    Bottom,
    /// Thick subcategory generated by one exceptional module with this root.
    Exceptional(RootVector),
    /// Thick subcategory generated by the tubes at these points.
    Tubes(Vec<usize>),
    Top,
}

/// `NC(W, c)` of the Kronecker datum glued along bottom and top to the
/// power set of a finite point set with an extra top added.
#[derive(Debug, Clone)]
pub struct KroneckerLattice {
    nc: NCLattice,
    points: Vec<String>,
    elements: Vec<KroneckerElement>,
}

pub fn kronecker_lattice(bound: usize, points: &[String]) -> Result<KroneckerLattice> {
    if points.len() > 16 {
        return Err(Error::ResourceCap("at most 16 tube points".into()));
    }
    let uniq: BTreeSet<&String> = points.iter().collect();
    if uniq.len() != points.len() {
        return Err(Error::Structural("tube point labels must be distinct".into()));
    }
    let nc = nc_kronecker(bound);
    let mut elements = vec![KroneckerElement::Bottom];
    elements.extend(nc.reflections().iter().map(|(r, _)| KroneckerElement::Exceptional(r.clone())));
    let p = points.len();
    let mut subsets: Vec<Vec<usize>> =
        (1u32..(1 << p)).map(|s| (0..p).filter(|&i| s & (1 << i) != 0).collect()).collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    elements.extend(subsets.into_iter().map(KroneckerElement::Tubes));
    elements.push(KroneckerElement::Top);
    Ok(KroneckerLattice { nc, points: points.to_vec(), elements })
}

impl KroneckerLattice {
    pub fn nc(&self) -> &NCLattice {
        &self.nc
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn elements(&self) -> &[KroneckerElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        use KroneckerElement::*;
        match (&self.elements[i], &self.elements[j]) {
            (Bottom, _) | (_, Top) => true,
            (Exceptional(a), Exceptional(b)) => a == b,
            (Tubes(a), Tubes(b)) => a.iter().all(|x| b.contains(x)),
            _ => false,
        }
    }

    pub fn meet(&self, i: usize, j: usize) -> Result<usize> {
        poset::meet_or_err(self.len(), |a, b| self.leq(a, b), i, j)
    }

    pub fn join(&self, i: usize, j: usize) -> Result<usize> {
        poset::join_or_err(self.len(), |a, b| self.leq(a, b), i, j)
    }

    pub fn hasse(&self) -> Vec<(usize, usize)> {
        poset::covers(self.len(), |a, b| self.leq(a, b))
    }

    pub fn label(&self, i: usize) -> String {
        match &self.elements[i] {
            KroneckerElement::Bottom => "0".into(),
            KroneckerElement::Top => "D".into(),
            KroneckerElement::Exceptional(r) => format!("s{r}"),
            KroneckerElement::Tubes(s) => {
                let names: Vec<&str> = s.iter().map(|&k| self.points[k].as_str()).collect();
                format!("{{{}}}", names.join(","))
            }
        }
    }

    /// Hasse diagram with the exceptional part on the left and the tube part on the right.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph Kronecker {\n  rankdir=BT;\n  node [shape=box];\n");
        s.push_str("  subgraph cluster_nc {\n    label=\"NC\";\n");
        for (i, e) in self.elements.iter().enumerate() {
            if matches!(e, KroneckerElement::Exceptional(_)) {
                let _ = writeln!(s, "    k{i};");
            }
        }
        s.push_str("  }\n  subgraph cluster_tubes {\n    label=\"tubes\";\n");
        for (i, e) in self.elements.iter().enumerate() {
            if matches!(e, KroneckerElement::Tubes(_)) {
                let _ = writeln!(s, "    k{i};");
            }
        }
        s.push_str("  }\n");
        for i in 0..self.len() {
            let _ = writeln!(s, "  k{i} [label=\"{}\"];", self.label(i));
        }
        for (a, b) in self.hasse() {
            let _ = writeln!(s, "  k{a} -> k{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> Value {
        let elements: Vec<Value> = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let (part, payload) = match e {
                    KroneckerElement::Bottom => ("bottom", Value::Null),
                    KroneckerElement::Top => ("top", Value::Null),
                    KroneckerElement::Exceptional(r) => ("nc", json!(r)),
                    KroneckerElement::Tubes(s) => {
                        ("tubes", json!(s.iter().map(|&k| self.points[k].clone()).collect::<Vec<_>>()))
                    }
                };
                json!({ "id": i, "part": part, "label": self.label(i), "data": payload })
            })
            .collect();
        json!({
            "type": "KRONECKER",
            "bound": self.nc.truncation_bound(),
            "points": self.points,
            "elements": elements,
            "hasse": self.hasse().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::build_cartan;

    fn ctx(s: &str) -> ThickContext {
        ThickContext::new(&build_cartan(s.parse().unwrap()).unwrap()).unwrap()
    }

    fn rv(v: &[i64]) -> RootVector {
        RootVector(v.to_vec())
    }

    #[test]
    fn a2_examples() {
        let c = ctx("A2");
        let cd = c.cartan().clone();
        let s1 = cd.simple_reflection(0);
        assert_eq!(root_of_reflection(&cd, &s1).unwrap(), rv(&[1, 0]));
        let t = s1.mul(&cd.simple_reflection(1)).mul(&s1);
        assert_eq!(root_of_reflection(&cd, &t).unwrap(), rv(&[1, 1]));
        assert_eq!(c.cox(&[rv(&[1, 0])]).unwrap(), s1);
        assert_eq!(&c.cox(&[rv(&[1, 0]), rv(&[0, 1])]).unwrap(), c.coxeter());
        assert_eq!(c.cox(&[]).unwrap(), WeylElement::identity(2));
        assert!(matches!(c.cox(&[rv(&[0, 1]), rv(&[0, 1])]), Err(Error::Structural(_))));

        let u = c.thick_from_nc(&s1).unwrap();
        assert_eq!(u.generators(), &[rv(&[1, 0])]);
        let whole = c.thick_from_nc(c.coxeter()).unwrap();
        assert_eq!(whole.generators(), &[rv(&[1, 0]), rv(&[0, 1])]);
        assert!(c.thick_from_nc(&WeylElement::identity(2)).unwrap().generators().is_empty());

        let lp = c.left_perp(&u).unwrap();
        assert_eq!(lp.nc_element(), &cd.simple_reflection(1));
        assert_eq!(c.hom_orthogonal(&lp, &u), Some(true));
        assert_eq!(c.right_perp(&lp).unwrap(), u);
        let zero = c.thick_from_nc(&WeylElement::identity(2)).unwrap();
        assert_eq!(c.left_perp(&zero).unwrap().nc_element(), c.coxeter());
        assert!(matches!(c.thick_from_nc(&c.coxeter().mul(c.coxeter())), Err(Error::NotInLattice)));
    }

    #[test]
    fn lattice_counts() {
        for (s, want) in [("A1", 2), ("A2", 5), ("A3", 14), ("B2", 6)] {
            let c = ctx(s);
            let l = thick_lattice(&c).unwrap();
            assert_eq!(l.len(), want, "{s}");
            for u in l.subcategories() {
                assert_eq!(&c.cox(u.generators()).unwrap(), u.nc_element());
            }
        }
    }

    #[test]
    fn oracle_counts() {
        for (label, want) in [("A1", 2), ("A2", 5), ("A3", 14)] {
            let c = ctx(label);
            let wide = wide_subcategory_oracle(c.catalog().unwrap()).unwrap();
            assert_eq!(wide.len(), want, "{label}");
        }
        let c = ctx("A2");
        let cat = c.catalog().unwrap();
        let wide = wide_subcategory_oracle(cat).unwrap();
        let names: Vec<Vec<RootVector>> =
            wide.iter().map(|w| w.iter().map(|&i| cat.roots()[i].clone()).collect()).collect();
        assert!(names.contains(&vec![]));
        assert!(names.contains(&vec![rv(&[1, 0])]));
        assert!(names.contains(&vec![rv(&[0, 1])]));
        assert!(names.contains(&vec![rv(&[1, 1])]));
        assert!(names.iter().any(|w| w.len() == 3));
    }

    #[test]
    fn kronecker_examples() {
        let pts: Vec<String> = vec!["p".into(), "q".into()];
        let k = kronecker_lattice(0, &pts).unwrap();
        assert_eq!(k.len(), 7);
        let refl = 1;
        let single = k.elements().iter().position(|e| matches!(e, KroneckerElement::Tubes(s) if s.len() == 1)).unwrap();
        assert_eq!(k.meet(refl, single).unwrap(), k.bottom());
        assert_eq!(k.join(refl, single).unwrap(), k.top());
        assert!(poset::is_lattice(k.len(), |a, b| k.leq(a, b)));
        let pts3: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let k = kronecker_lattice(2, &pts3).unwrap();
        assert_eq!(k.len(), 8 + 8 + 1 - 2);
        assert_eq!(k.to_dot().matches("->").count(), k.hasse().len());
    }
}
