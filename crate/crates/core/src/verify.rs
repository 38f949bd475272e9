//! Named invariant checks, grouped into suites, each reporting pass or fail.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{braid_act, enumerate_factorizations_with, hurwitz_orbit_with, simple_factorization, DEFAULT_ORBIT_CAP};
use crate::cartan::{build_cartan, CartanDatum, CartanType, RootVector, WeylElement};
use crate::derived::{derived_hom, DerivedModel, DerivedVertex, DEFAULT_LEVEL_CAP};
use crate::error::Error;
use crate::noncrossing::{enumerate_nc_with, nc_bruteforce, nc_kronecker, NCLattice, NcOptions};
use crate::par::Execution;
use crate::poset;
use crate::repcat::ar::{ar_quiver_module_category, RadTable};
use crate::repcat::{is_exceptional_sequence, is_morphism, Catalog, Quiver};
use crate::thicklat::{
    kronecker_lattice, root_of_reflection, thick_lattice_with, wide_closure, wide_subcategory_oracle_with,
    KroneckerElement, ThickContext,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    All,
    Nc,
    Braid,
    Arq,
    Thick,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "all" => Ok(Suite::All),
            "nc" => Ok(Suite::Nc),
            "braid" => Ok(Suite::Braid),
            "arq" => Ok(Suite::Arq),
            "thick" => Ok(Suite::Thick),
            other => Err(Error::UnsupportedLabel(format!("suite {other}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Nc => "nc",
            Suite::Braid => "braid",
            Suite::Arq => "arq",
            Suite::Thick => "thick",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {}.{}", self.suite, self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

type Outcome = std::result::Result<String, String>;

fn run(suite: &'static str, name: &'static str, body: impl FnOnce() -> Outcome) -> Check {
    match body() {
        Ok(detail) => Check { suite, name, passed: true, detail },
        Err(detail) => Check { suite, name, passed: false, detail },
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn datum(s: &str) -> std::result::Result<CartanDatum, String> {
    let label: CartanType = s.parse().map_err(err)?;
    build_cartan(label).map_err(err)
}

fn lattice(cd: &CartanDatum, exec: Execution) -> std::result::Result<NCLattice, String> {
    enumerate_nc_with(cd, &cd.standard_coxeter(), &NcOptions { execution: exec, reflection_order: None }).map_err(err)
}

/// Runs one suite, or all of them, in a fixed order.
pub fn run_suite(suite: Suite, exec: Execution) -> Vec<Check> {
    match suite {
        Suite::Nc => nc_checks(exec),
        Suite::Braid => braid_checks(exec),
        Suite::Arq => arq_checks(exec),
        Suite::Thick => thick_checks(exec),
        Suite::All => {
            let mut out = nc_checks(exec);
            out.extend(braid_checks(exec));
            out.extend(arq_checks(exec));
            out.extend(thick_checks(exec));
            out
        }
    }
}

fn test_vectors(n: usize) -> Vec<RootVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    (0..6).map(|_| RootVector((0..n).map(|_| rng.random_range(-4..5)).collect())).collect()
}

pub fn nc_checks(exec: Execution) -> Vec<Check> {
    const S: &str = "nc";
    let small = ["A2", "A3", "B2", "G2"];
    vec![
        run(S, "form_invariance", || {
            for s in ["A2", "A3", "B2", "G2", "B3"] {
                let cd = datum(s)?;
                let vs = test_vectors(cd.rank());
                for w in cd.weyl_group().map_err(err)? {
                    for a in &vs {
                        for b in &vs {
                            let lhs = cd.form(&w.apply(a), &w.apply(b)).map_err(err)?;
                            ensure(lhs == cd.form(a, b).map_err(err)?, || format!("{s}: form not preserved"))?;
                        }
                    }
                }
            }
            Ok(String::new())
        }),
        run(S, "reflection_involutivity", || {
            let mut count = 0;
            for s in ["A1", "A4", "B3", "C3", "D4", "G2", "F4", "E6"] {
                let cd = datum(s)?;
                for r in cd.real_roots(0) {
                    let t = cd.reflection_element(&r).map_err(err)?;
                    ensure(t.mul(&t).is_identity(), || format!("{s}: s_{r} is not an involution"))?;
                    count += 1;
                }
            }
            Ok(format!("{count} roots"))
        }),
        run(S, "length_oracle", || {
            for s in small {
                let cd = datum(s)?;
                let table = cd.reflection_length_table().map_err(err)?;
                for (w, &d) in &table {
                    ensure(cd.absolute_length(w) == d, || format!("{s}: fast length disagrees with BFS"))?;
                }
            }
            Ok(String::new())
        }),
        run(S, "prefix_property", || {
            for s in ["A2", "A3"] {
                let cd = datum(s)?;
                let c = cd.standard_coxeter();
                for f in enumerate_factorizations_with(&cd, &c, exec).map_err(err)? {
                    for (r, p) in f.prefixes().iter().enumerate() {
                        ensure(cd.absolute_length(p) == r && cd.abs_leq(p, &c), || {
                            format!("{s}: prefix {r} has wrong length or is not below c")
                        })?;
                    }
                }
            }
            Ok(String::new())
        }),
        run(S, "conjugation_invariance", || {
            for s in ["A2", "B2"] {
                let cd = datum(s)?;
                let w = cd.weyl_group().map_err(err)?;
                for g in &w {
                    for x in &w {
                        let y = g.mul(x).mul(&g.inverse());
                        ensure(cd.absolute_length(&y) == cd.absolute_length(x), || format!("{s}: length changed"))?;
                    }
                }
            }
            Ok(String::new())
        }),
        run(S, "root_count", || {
            for n in 1..=4usize {
                let cd = datum(&format!("A{n}"))?;
                let roots: HashSet<RootVector> = cd.real_roots(0).into_iter().collect();
                let mut orbit = HashSet::new();
                for w in cd.weyl_group().map_err(err)? {
                    for i in 0..n {
                        orbit.insert(w.apply(&RootVector::simple(n, i)));
                    }
                }
                ensure(roots.len() == n * (n + 1) && roots == orbit, || format!("A{n}: root count or orbit mismatch"))?;
            }
            Ok(String::new())
        }),
        run(S, "counts_vs_bruteforce", || {
            let mut parts = Vec::new();
            for s in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "D4", "G2", "F4"] {
                let cd = datum(s)?;
                let l = lattice(&cd, exec)?;
                let brute = nc_bruteforce(&cd, &cd.standard_coxeter()).map_err(err)?;
                ensure(l.len() == brute.len(), || format!("{s}: {} vs {}", l.len(), brute.len()))?;
                ensure(brute.iter().all(|w| l.contains(w)), || format!("{s}: element sets differ"))?;
                parts.push(format!("{s}={}", l.len()));
            }
            Ok(parts.join(" "))
        }),
        run(S, "kreweras_self_duality", || {
            for s in small {
                let cd = datum(s)?;
                let l = lattice(&cd, exec)?;
                let n = cd.rank();
                let k: Vec<usize> = l
                    .elements()
                    .iter()
                    .map(|w| l.index_of(&l.kreweras(w)?))
                    .collect::<crate::Result<_>>()
                    .map_err(err)?;
                let image: HashSet<usize> = k.iter().copied().collect();
                ensure(image.len() == l.len(), || format!("{s}: not a bijection"))?;
                for (i, &ki) in k.iter().enumerate() {
                    ensure(l.rank_of(ki) == n - l.rank_of(i), || format!("{s}: rank not complemented"))?;
                    let back = l.index_of(&l.co_kreweras(&l.elements()[ki]).map_err(err)?).map_err(err)?;
                    ensure(back == i, || format!("{s}: co-Kreweras does not invert Kreweras"))?;
                    for (j, &kj) in k.iter().enumerate() {
                        if l.leq(i, j) {
                            ensure(l.leq(kj, ki), || format!("{s}: not order-reversing"))?;
                        }
                    }
                }
            }
            Ok(String::new())
        }),
        run(S, "complementation", || {
            let cd = datum("A3")?;
            let l = lattice(&cd, exec)?;
            let c = cd.standard_coxeter();
            for w in l.elements() {
                let k = l.co_kreweras(w).map_err(err)?;
                ensure(l.meet(w, &k).map_err(err)?.is_identity(), || "meet is not id".into())?;
                ensure(l.join(w, &k).map_err(err)? == c, || "join is not c".into())?;
            }
            Ok(format!("{} elements", l.len()))
        }),
        run(S, "interval_property", || {
            let cd = datum("A3")?;
            let l = lattice(&cd, exec)?;
            let leq = |a, b| l.leq(a, b);
            ensure(poset::is_lattice(l.len(), leq), || "not a lattice".into())?;
            let mut intervals = 0;
            for u in 0..l.len() {
                for v in 0..l.len() {
                    if l.leq(u, v) {
                        intervals += 1;
                        ensure(poset::interval_is_complemented(l.len(), leq, u, v), || {
                            format!("[{u},{v}] is not complemented")
                        })?;
                    }
                }
            }
            Ok(format!("{intervals} intervals"))
        }),
        run(S, "kronecker_height", || {
            for bound in 0..=3 {
                let l = nc_kronecker(bound);
                let leq = |a, b| l.leq(a, b);
                ensure(poset::height(l.len(), leq) == 2, || format!("bound {bound}: height is not 2"))?;
                let atoms: Vec<usize> = (0..l.len()).filter(|&i| l.rank_of(i) == 1).collect();
                for &a in &atoms {
                    for &b in &atoms {
                        ensure(a == b || !l.leq(a, b), || format!("bound {bound}: comparable atoms"))?;
                    }
                }
            }
            Ok(String::new())
        }),
    ]
}

pub fn braid_checks(exec: Execution) -> Vec<Check> {
    const S: &str = "braid";
    vec![
        run(S, "transitivity", || {
            let mut parts = Vec::new();
            for s in ["A2", "A3", "B2", "G2"] {
                let cd = datum(s)?;
                let all = enumerate_factorizations_with(&cd, &cd.standard_coxeter(), exec).map_err(err)?;
                let orbit = hurwitz_orbit_with(&simple_factorization(&cd), exec, DEFAULT_ORBIT_CAP).map_err(err)?;
                let a: HashSet<_> = all.iter().collect();
                let b: HashSet<_> = orbit.iter().collect();
                ensure(a == b, || format!("{s}: orbit {} vs factorizations {}", b.len(), a.len()))?;
                parts.push(format!("{s}={}", a.len()));
            }
            Ok(parts.join(" "))
        }),
        run(S, "braid_relation", || {
            let cd = datum("A3")?;
            for f in enumerate_factorizations_with(&cd, &cd.standard_coxeter(), exec).map_err(err)? {
                let act = |g: &crate::Factorization, i| braid_act(g, i, false).map_err(err);
                let lhs = act(&act(&act(&f, 1)?, 2)?, 1)?;
                let rhs = act(&act(&act(&f, 2)?, 1)?, 2)?;
                ensure(lhs == rhs, || "braid relation fails".into())?;
                for i in 1..=2 {
                    ensure(braid_act(&act(&f, i)?, i, true).map_err(err)? == f, || "σ⁻¹σ ≠ id".into())?;
                }
            }
            Ok(String::new())
        }),
        run(S, "prefix_ranks", || {
            for s in ["A2", "A3", "B2", "G2", "B3"] {
                let cd = datum(s)?;
                for f in enumerate_factorizations_with(&cd, &cd.standard_coxeter(), exec).map_err(err)? {
                    for (r, p) in f.prefixes().iter().enumerate() {
                        ensure(cd.absolute_length(p) == r, || format!("{s}: prefix length"))?;
                    }
                }
            }
            Ok(String::new())
        }),
        run(S, "factorization_counts", || {
            for (s, want) in [("A2", 3), ("A3", 16), ("B2", 4), ("G2", 6), ("B3", 27)] {
                let cd = datum(s)?;
                let got = enumerate_factorizations_with(&cd, &cd.standard_coxeter(), exec).map_err(err)?.len();
                ensure(got == want, || format!("{s}: {got} != {want}"))?;
            }
            Ok(String::new())
        }),
    ]
}

fn catalog(s: &str, exec: Execution) -> std::result::Result<Catalog, String> {
    let q = Quiver::standard(s.parse().map_err(err)?).map_err(err)?;
    Catalog::with_execution(&q, exec).map_err(err)
}

fn model(s: &str, exec: Execution) -> std::result::Result<DerivedModel, String> {
    let q = Quiver::standard(s.parse().map_err(err)?).map_err(err)?;
    DerivedModel::with_execution(&q, exec).map_err(err)
}

/// Levels spanning two suspension periods from level 0.
fn two_periods(m: &DerivedModel) -> i64 {
    let t = m.table();
    let per = (0..m.repetition().n())
        .map(|i| t.suspension(DerivedVertex::new(0, i)).level)
        .max()
        .unwrap_or(1)
        .max(1);
    2 * per
}

fn window(m: &DerivedModel, lo: i64, hi: i64) -> Vec<DerivedVertex> {
    (lo..=hi).flat_map(|l| (0..m.repetition().n()).map(move |i| DerivedVertex::new(l, i))).collect()
}

pub fn arq_checks(exec: Execution) -> Vec<Check> {
    const S: &str = "arq";
    vec![
        run(S, "intertwining_soundness", || {
            let mut count = 0;
            for s in ["A3", "D4"] {
                let cat = catalog(s, exec)?;
                for i in 0..cat.len() {
                    for j in 0..cat.len() {
                        for f in cat.hom_basis(i, j) {
                            ensure(is_morphism(cat.quiver(), cat.rep(i), cat.rep(j), &f), || {
                                format!("{s}: basis element {i}→{j} does not intertwine")
                            })?;
                            count += 1;
                        }
                    }
                }
            }
            Ok(format!("{count} basis morphisms"))
        }),
        run(S, "root_module_bijection", || {
            for (s, want) in [("A2", 3), ("A3", 6), ("D4", 12)] {
                let cat = catalog(s, exec)?;
                let cd = datum(s)?;
                let dims: HashSet<RootVector> = cat.reps().iter().map(|r| r.dim_vector()).collect();
                let roots: HashSet<RootVector> = cd.positive_roots(0).into_iter().collect();
                ensure(cat.len() == want && dims == roots, || format!("{s}: modules do not match roots"))?;
                ensure((0..cat.len()).all(|i| cat.hom_dim(i, i) == 1), || format!("{s}: End ≠ k"))?;
            }
            Ok(String::new())
        }),
        run(S, "euler_consistency", || {
            let cat = catalog("A3", exec)?;
            let q = cat.quiver();
            for i in 0..cat.len() {
                for j in 0..cat.len() {
                    let lhs = cat.hom_dim(i, j) as i64 - cat.ext1_dim(i, j) as i64;
                    ensure(lhs == q.euler(&cat.roots()[i], &cat.roots()[j]), || format!("pair {i},{j}"))?;
                }
            }
            Ok(String::new())
        }),
        run(S, "valuation_symmetry", || {
            let mut arrows = 0;
            for s in ["A3", "D4"] {
                let cat = catalog(s, exec)?;
                let ar = ar_quiver_module_category(&cat, &RadTable::with_execution(&cat, exec));
                for a in ar.arrows() {
                    if let Some(ty) = ar.tau(a.dst) {
                        let back = ar.arrow(ty, a.src).ok_or_else(|| format!("{s}: missing mesh arrow"))?;
                        ensure(back.valuation.1 == a.valuation.0, || format!("{s}: δ′ ≠ δ"))?;
                    }
                    arrows += 1;
                }
                ensure(ar.mesh_violations().is_empty(), || format!("{s}: module AR quiver mesh"))?;
            }
            Ok(format!("{arrows} arrows"))
        }),
        run(S, "exceptional_count_a2", || {
            let cat = catalog("A2", exec)?;
            let mut count = 0;
            for i in 0..cat.len() {
                for j in 0..cat.len() {
                    let seq = [cat.rep(i).clone(), cat.rep(j).clone()];
                    if is_exceptional_sequence(cat.quiver(), &seq).map_err(err)? {
                        count += 1;
                    }
                }
            }
            let cd = datum("A2")?;
            let f = enumerate_factorizations_with(&cd, &cd.standard_coxeter(), exec).map_err(err)?.len();
            ensure(count == 3 && f == 3, || format!("{count} sequences, {f} factorizations"))?;
            Ok(String::new())
        }),
        run(S, "oracle_equivalence", || {
            let mut pairs = 0;
            for s in ["A2", "A3"] {
                let m = model(s, exec)?;
                let vs = window(&m, 0, two_periods(&m));
                let ids = vs.iter().map(|&v| m.identify(v)).collect::<crate::Result<Vec<_>>>().map_err(err)?;
                for (x, &ix) in vs.iter().zip(&ids) {
                    for (y, &iy) in vs.iter().zip(&ids) {
                        let want = derived_hom(m.catalog(), ix, iy) as u64;
                        ensure(m.table().hom(*x, *y) == want, || format!("{s}: Hom({x},{y})"))?;
                        pairs += 1;
                    }
                }
            }
            Ok(format!("{pairs} pairs"))
        }),
        run(S, "hammock_finiteness", || {
            for s in ["A1", "A2", "A3", "A4", "D4", "D5", "E6"] {
                let m = model(s, exec)?;
                for (i, h) in m.table().base().iter().enumerate() {
                    let again = m.repetition().knit_hammock(DerivedVertex::new(0, i), DEFAULT_LEVEL_CAP).map_err(err)?;
                    ensure(&again == h && !h.values.is_empty(), || format!("{s}: hammock {i}"))?;
                    ensure(h.values.keys().all(|z| z.level < h.sigma.level + 1), || format!("{s}: support past Σ"))?;
                }
            }
            Ok(String::new())
        }),
        run(S, "serre_duality", || {
            let m = model("A3", exec)?;
            let t = m.table();
            let vs = window(&m, -2, two_periods(&m));
            for &x in &vs {
                for &y in &vs {
                    ensure(t.hom(x, y) == t.hom(y, t.serre(x)), || format!("Hom({x},{y})"))?;
                }
            }
            Ok(format!("{} pairs", vs.len() * vs.len()))
        }),
        run(S, "mesh_identities", || {
            let mut checked = 0;
            for s in ["A2", "A3", "D4"] {
                let m = model(s, exec)?;
                let report = m.table().verify_mesh(-3, 6).map_err(err)?;
                ensure(report.is_clean(), || format!("{s}: {}", report.violations.join("; ")))?;
                checked += report.checked;
            }
            Ok(format!("{checked} meshes"))
        }),
        run(S, "ar_shape_embedding", || {
            for s in ["A2", "A3", "D4"] {
                let m = model(s, exec)?;
                let ar = ar_quiver_module_category(m.catalog(), &RadTable::with_execution(m.catalog(), exec));
                ensure(m.embeds(&ar), || format!("{s}: module AR quiver does not embed"))?;
            }
            Ok(String::new())
        }),
        run(S, "path_witness", || {
            let m = model("A3", exec)?;
            let hi = two_periods(&m);
            let zd = m.repetition().build_zdelta(0, hi).map_err(err)?;
            let vs = window(&m, 0, hi);
            let mut witnessed = 0;
            for &x in &vs {
                for &y in &vs {
                    let d = derived_hom(m.catalog(), m.identify(x).map_err(err)?, m.identify(y).map_err(err)?);
                    if d > 0 {
                        let (a, b) = (zd.index_of(&x).unwrap(), zd.index_of(&y).unwrap());
                        ensure(zd.has_path(a, b), || format!("no path {x} → {y}"))?;
                        witnessed += 1;
                    }
                }
            }
            Ok(format!("{witnessed} paths"))
        }),
    ]
}

pub fn thick_checks(exec: Execution) -> Vec<Check> {
    const S: &str = "thick";
    let ctx = |s: &str| -> std::result::Result<ThickContext, String> {
        ThickContext::with_execution(&datum(s)?, exec).map_err(err)
    };
    vec![
        run(S, "cox_well_defined", || {
            let mut compared = 0;
            for s in ["A2", "A3"] {
                let c = ctx(s)?;
                let cat = c.catalog().ok_or("no catalog")?;
                let wide = wide_subcategory_oracle_with(cat, exec).map_err(err)?;
                let mut rng = ChaCha8Rng::seed_from_u64(7);
                let mut f = simple_factorization(c.cartan());
                let mut seen: BTreeMap<Vec<usize>, WeylElement> = BTreeMap::new();
                for _ in 0..200 {
                    let i = rng.random_range(1..f.len());
                    f = braid_act(&f, i, rng.random_bool(0.5)).map_err(err)?;
                    let roots = f.roots(c.cartan()).map_err(err)?;
                    for r in 0..=roots.len() {
                        let gens: Vec<usize> = roots[..r].iter().map(|x| cat.index_of(x).unwrap()).collect();
                        let closure = wide_closure(&wide, &gens).ok_or("no wide closure")?;
                        let cox = c.cox(&roots[..r]).map_err(err)?;
                        if let Some(prev) = seen.get(&closure) {
                            ensure(prev == &cox, || format!("{s}: two cox values for one subcategory"))?;
                            compared += 1;
                        } else {
                            seen.insert(closure, cox);
                        }
                    }
                }
            }
            Ok(format!("{compared} comparisons"))
        }),
        run(S, "bijectivity", || {
            let c = ctx("A3")?;
            let l = thick_lattice_with(&c, exec).map_err(err)?;
            for (w, u) in l.nc().elements().iter().zip(l.subcategories()) {
                ensure(&c.cox(u.generators()).map_err(err)? == w, || "cox ∘ thick_from_nc ≠ id".into())?;
                let again = c.from_generators(u.generators().to_vec()).map_err(err)?;
                ensure(&c.thick_from_nc(again.nc_element()).map_err(err)? == u, || "thick_from_nc ∘ cox ≠ id".into())?;
            }
            Ok(format!("{} elements", l.len()))
        }),
        run(S, "order_preservation", || {
            let c = ctx("A3")?;
            let cat = c.catalog().ok_or("no catalog")?;
            let l = thick_lattice_with(&c, exec).map_err(err)?;
            let mut pairs = 0;
            for (i, u) in l.subcategories().iter().enumerate() {
                for (j, v) in l.subcategories().iter().enumerate() {
                    if !l.leq(i, j) {
                        continue;
                    }
                    let mid = c.thick_from_nc(&u.nc_element().inverse().mul(v.nc_element())).map_err(err)?;
                    let rest = c.left_perp(v).map_err(err)?;
                    let roots: Vec<RootVector> =
                        u.generators().iter().chain(mid.generators()).chain(rest.generators()).cloned().collect();
                    ensure(&c.cox(&roots).map_err(err)? == c.coxeter(), || "nested prefixes do not factor c".into())?;
                    ensure(&c.cox(&roots[..u.rank()]).map_err(err)? == u.nc_element(), || "prefix for u".into())?;
                    ensure(&c.cox(&roots[..v.rank()]).map_err(err)? == v.nc_element(), || "prefix for v".into())?;
                    let seq: Vec<_> = roots.iter().map(|r| cat.rep(cat.index_of(r).unwrap()).clone()).collect();
                    ensure(is_exceptional_sequence(cat.quiver(), &seq).map_err(err)?, || "not exceptional".into())?;
                    pairs += 1;
                }
            }
            Ok(format!("{pairs} comparable pairs"))
        }),
        run(S, "biperp_identity", || {
            let c = ctx("A3")?;
            let l = thick_lattice_with(&c, exec).map_err(err)?;
            for u in l.subcategories() {
                let rp = c.right_perp(u).map_err(err)?;
                let lp = c.left_perp(u).map_err(err)?;
                ensure(&c.left_perp(&rp).map_err(err)? == u, || "⊥(U⊥) ≠ U".into())?;
                ensure(&c.right_perp(&lp).map_err(err)? == u, || "(⊥U)⊥ ≠ U".into())?;
                ensure(c.hom_orthogonal(&lp, u) == Some(true), || "⊥U has maps into U".into())?;
                ensure(c.hom_orthogonal(u, &rp) == Some(true), || "U has maps into U⊥".into())?;
            }
            Ok(String::new())
        }),
        run(S, "complementation", || {
            for s in ["A2", "A3", "B2", "G2"] {
                let c = ctx(s)?;
                let l = thick_lattice_with(&c, exec).map_err(err)?;
                let nc = l.nc();
                for u in l.subcategories() {
                    for perp in [c.right_perp(u).map_err(err)?, c.left_perp(u).map_err(err)?] {
                        let (a, b) = (u.nc_element(), perp.nc_element());
                        ensure(nc.meet(a, b).map_err(err)?.is_identity(), || format!("{s}: U ∧ perp ≠ 0"))?;
                        ensure(&nc.join(a, b).map_err(err)? == c.coxeter(), || format!("{s}: U ∨ perp ≠ T"))?;
                    }
                }
            }
            Ok(String::new())
        }),
        run(S, "oracle_agreement", || {
            let mut parts = Vec::new();
            for s in ["A1", "A2", "A3"] {
                let c = ctx(s)?;
                let l = thick_lattice_with(&c, exec).map_err(err)?;
                let wide = wide_subcategory_oracle_with(c.catalog().ok_or("no catalog")?, exec).map_err(err)?;
                ensure(l.len() == wide.len(), || format!("{s}: {} thick vs {} wide", l.len(), wide.len()))?;
                parts.push(format!("{s}={}", l.len()));
            }
            Ok(parts.join(" "))
        }),
        run(S, "root_of_reflection_bijection", || {
            for s in ["A1", "A3", "B3", "C3", "D4", "G2", "F4"] {
                let cd = datum(s)?;
                let refl = cd.reflections(0);
                let roots: HashSet<RootVector> = refl
                    .iter()
                    .map(|(_, t)| root_of_reflection(&cd, t))
                    .collect::<crate::Result<_>>()
                    .map_err(err)?;
                let positive: HashSet<RootVector> = cd.positive_roots(0).into_iter().collect();
                ensure(roots == positive && roots.len() == refl.len(), || format!("{s}: not a bijection"))?;
                for (r, t) in &refl {
                    ensure(&cd.reflection_element(r).map_err(err)? == t, || format!("{s}: round trip"))?;
                }
            }
            Ok(String::new())
        }),
        run(S, "exceptional_correspondence", || {
            let c = ctx("A3")?;
            let cat = c.catalog().ok_or("no catalog")?;
            let facts = enumerate_factorizations_with(c.cartan(), c.coxeter(), exec).map_err(err)?;
            for f in &facts {
                let seq: Vec<_> = f
                    .roots(c.cartan())
                    .map_err(err)?
                    .iter()
                    .map(|r| cat.rep(cat.index_of(r).unwrap()).clone())
                    .collect();
                ensure(is_exceptional_sequence(cat.quiver(), &seq).map_err(err)?, || "factorization not exceptional".into())?;
            }
            let k = cat.len();
            let mut complete = 0;
            for t in 0..k * k * k {
                let seq = [cat.rep(t / (k * k)).clone(), cat.rep((t / k) % k).clone(), cat.rep(t % k).clone()];
                if is_exceptional_sequence(cat.quiver(), &seq).map_err(err)? {
                    complete += 1;
                }
            }
            ensure(complete == facts.len() && complete == 16, || format!("{complete} sequences, {} factorizations", facts.len()))?;
            Ok(format!("{complete} sequences"))
        }),
        run(S, "kronecker_lattice", || {
            let pts: Vec<String> = ["p", "q", "r"].iter().map(|s| s.to_string()).collect();
            let k = kronecker_lattice(2, &pts).map_err(err)?;
            let leq = |a, b| k.leq(a, b);
            ensure(poset::is_partial_order(k.len(), leq) && poset::is_lattice(k.len(), leq), || "not a lattice".into())?;
            ensure(k.len() == k.nc().len() + (1 << pts.len()) - 1, || format!("{} elements", k.len()))?;
            let els = k.elements();
            let nc_part: Vec<usize> = (0..k.len()).filter(|&i| matches!(els[i], KroneckerElement::Exceptional(_))).collect();
            let tubes: Vec<usize> = (0..k.len()).filter(|&i| matches!(els[i], KroneckerElement::Tubes(_))).collect();
            for &a in &nc_part {
                for &b in &nc_part {
                    ensure(a == b || !k.leq(a, b), || "comparable atoms".into())?;
                }
                for &t in &tubes {
                    ensure(k.meet(a, t).map_err(err)? == k.bottom(), || "cross meet".into())?;
                    ensure(k.join(a, t).map_err(err)? == k.top(), || "cross join".into())?;
                }
            }
            for &a in &tubes {
                for &b in &tubes {
                    let (KroneckerElement::Tubes(x), KroneckerElement::Tubes(y)) = (&els[a], &els[b]) else { unreachable!() };
                    let union: BTreeSet<usize> = x.iter().chain(y).copied().collect();
                    let j = k.join(a, b).map_err(err)?;
                    let KroneckerElement::Tubes(z) = &els[j] else { return Err("tube join left the Boolean part".into()) };
                    ensure(z.iter().copied().collect::<BTreeSet<_>>() == union, || "tube join is not union".into())?;
                }
            }
            ensure(poset::height(k.len(), leq) == 1 + pts.len(), || "height".into())?;
            Ok(format!("{} elements", k.len()))
        }),
    ]
}
