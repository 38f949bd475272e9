//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ncthick::braid::{enumerate_factorizations, hurwitz_orbit, simple_factorization};
use ncthick::derived::{derived_hom, DerivedModel, DerivedVertex};
use ncthick::noncrossing::nc_bruteforce;
use ncthick::poset;
use ncthick::repcat::ar::{ar_quiver_module_category, RadTable};
use ncthick::repcat::{is_exceptional_sequence, Catalog};
use ncthick::thicklat::{kronecker_lattice, thick_lattice, wide_subcategory_oracle, KroneckerElement, ThickContext};
use ncthick::translation::TranslationQuiver;
use ncthick::{build_cartan, enumerate_nc, enumerate_nc_with, CartanDatum, Execution, NcOptions, Quiver};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn datum(s: &str) -> CartanDatum {
    build_cartan(s.parse().unwrap()).unwrap()
}

fn model(s: &str) -> DerivedModel {
    DerivedModel::new(&Quiver::standard(s.parse().unwrap()).unwrap()).unwrap()
}

/// All vertices of levels `0..=2p`, where `p` is the largest suspension step.
fn two_period_window(m: &DerivedModel) -> Vec<DerivedVertex> {
    let n = m.repetition().n();
    let p = (0..n).map(|i| m.table().suspension(DerivedVertex::new(0, i)).level).max().unwrap();
    (0..=2 * p).flat_map(|l| (0..n).map(move |i| DerivedVertex::new(l, i))).collect()
}

fn nc_counts() -> Outcome {
    let mut parts = Vec::new();
    for (s, want) in [("A2", 5), ("A3", 14), ("B2", 6), ("G2", 8)] {
        let cd = datum(s);
        let c = cd.standard_coxeter();
        let fast = enumerate_nc(&cd, &c).map_err(|e| e.to_string())?;
        let brute = nc_bruteforce(&cd, &c).map_err(|e| e.to_string())?;
        let same: bool = brute.iter().all(|w| fast.contains(w));
        ensure(fast.len() == want && brute.len() == want && same, || {
            format!("{s}: fast {} brute {} want {want}", fast.len(), brute.len())
        })?;
        parts.push(format!("{s}={want}"));
    }
    Ok(parts.join(" "))
}

fn e6_self_consistency() -> Outcome {
    let cd = datum("E6");
    let c = cd.standard_coxeter();
    let start = Instant::now();
    let first = enumerate_nc(&cd, &c).map_err(|e| e.to_string())?;
    let k = cd.reflections(0).len();
    let reversed = NcOptions { execution: Execution::default(), reflection_order: Some((0..k).rev().collect()) };
    let second = enumerate_nc_with(&cd, &c, &reversed).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(first.len() == second.len(), || format!("{} vs {}", first.len(), second.len()))?;
    ensure(first.elements() == second.elements(), || "element lists differ".into())?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("|NC(E6)| = {} in {:.2?}", first.len(), elapsed))
}

fn hurwitz_transitivity() -> Outcome {
    let mut parts = Vec::new();
    for s in ["A2", "A3", "B2", "G2"] {
        let cd = datum(s);
        let all: HashSet<_> =
            enumerate_factorizations(&cd, &cd.standard_coxeter()).map_err(|e| e.to_string())?.into_iter().collect();
        let orbit: HashSet<_> = hurwitz_orbit(&simple_factorization(&cd)).map_err(|e| e.to_string())?.into_iter().collect();
        ensure(all == orbit, || format!("{s}: orbit {} of {}", orbit.len(), all.len()))?;
        parts.push(format!("{s}={}", all.len()));
    }
    ensure(parts[0] == "A2=3" && parts[1] == "A3=16", || parts.join(" "))?;
    Ok(parts.join(" "))
}

fn kreweras_duality() -> Outcome {
    let cd = datum("A3");
    let c = cd.standard_coxeter();
    let l = enumerate_nc(&cd, &c).map_err(|e| e.to_string())?;
    let idx = |w| l.index_of(&w).map_err(|e| e.to_string());
    let mut violations = 0;
    for (i, w) in l.elements().iter().enumerate() {
        let k = idx(l.kreweras(w).map_err(|e| e.to_string())?)?;
        let ck = l.co_kreweras(w).map_err(|e| e.to_string())?;
        if idx(l.co_kreweras(&l.elements()[k]).map_err(|e| e.to_string())?)? != i {
            violations += 1;
        }
        if l.rank_of(k) + l.rank_of(i) != 3 {
            violations += 1;
        }
        if !l.meet(w, &ck).map_err(|e| e.to_string())?.is_identity() || l.join(w, &ck).map_err(|e| e.to_string())? != c {
            violations += 1;
        }
        for (j, v) in l.elements().iter().enumerate() {
            if l.leq(i, j) && !l.leq(idx(l.kreweras(v).map_err(|e| e.to_string())?)?, k) {
                violations += 1;
            }
        }
    }
    ensure(violations == 0 && l.len() == 14, || format!("{violations} violations"))?;
    Ok("14 elements, 0 violations".into())
}

fn thick_bijection() -> Outcome {
    let mut parts = Vec::new();
    for (s, want) in [("A2", 5), ("A3", 14)] {
        let ctx = ThickContext::new(&datum(s)).map_err(|e| e.to_string())?;
        let l = thick_lattice(&ctx).map_err(|e| e.to_string())?;
        let wide = wide_subcategory_oracle(ctx.catalog().unwrap()).map_err(|e| e.to_string())?;
        ensure(l.len() == want && wide.len() == want, || format!("{s}: thick {} wide {}", l.len(), wide.len()))?;
        for (w, u) in l.nc().elements().iter().zip(l.subcategories()) {
            ensure(&ctx.cox(u.generators()).map_err(|e| e.to_string())? == w, || format!("{s}: cox ∘ thick_from_nc"))?;
        }
        parts.push(format!("{s}={want}"));
    }
    Ok(parts.join(" "))
}

fn exceptional_correspondence() -> Outcome {
    let cd = datum("A3");
    let cat = Catalog::new(&Quiver::standard(cd.label()).unwrap()).map_err(|e| e.to_string())?;
    let facts = enumerate_factorizations(&cd, &cd.standard_coxeter()).map_err(|e| e.to_string())?;
    for f in &facts {
        let seq: Vec<_> =
            f.roots(&cd).unwrap().iter().map(|r| cat.rep(cat.index_of(r).unwrap()).clone()).collect();
        ensure(is_exceptional_sequence(cat.quiver(), &seq).unwrap(), || "factorization not exceptional".into())?;
    }
    let k = cat.len();
    let mut brute = 0;
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let seq = [cat.rep(a).clone(), cat.rep(b).clone(), cat.rep(c).clone()];
                if is_exceptional_sequence(cat.quiver(), &seq).unwrap() {
                    brute += 1;
                }
            }
        }
    }
    ensure(k == 6 && brute == 16 && facts.len() == 16, || format!("{brute} sequences, {} factorizations", facts.len()))?;
    Ok("16 factorizations exceptional, 16 sequences by brute force".into())
}

fn mesh_identity() -> Outcome {
    let mut parts = Vec::new();
    for s in ["A2", "A3", "D4"] {
        let m = model(s);
        let report = m.table().verify_mesh(-3, 6).map_err(|e| e.to_string())?;
        ensure(report.is_clean() && report.checked > 0, || format!("{s}: {:?}", report.violations))?;
        parts.push(format!("{s}:{} meshes", report.checked));
    }
    Ok(parts.join(" "))
}

fn hammock_oracle() -> Outcome {
    let m = model("A3");
    let vs = two_period_window(&m);
    let mut pairs = 0;
    for &x in &vs {
        for &y in &vs {
            let want = derived_hom(m.catalog(), m.identify(x).unwrap(), m.identify(y).unwrap()) as u64;
            let got = m.repetition().knit_hammock(x, 64).map_err(|e| e.to_string())?.value(y);
            ensure(got == want, || format!("Hom({x},{y}): knit {got}, modules {want}"))?;
            pairs += 1;
        }
    }
    ensure(pairs >= 144, || format!("only {pairs} pairs"))?;
    Ok(format!("{pairs} pairs"))
}

fn serre_duality() -> Outcome {
    let m = model("A3");
    let t = m.table();
    let vs = two_period_window(&m);
    for &x in &vs {
        for &y in &vs {
            ensure(t.hom(x, y) == t.hom(y, t.serre(x)), || format!("Hom({x},{y})"))?;
        }
    }
    Ok(format!("{} pairs", vs.len() * vs.len()))
}

fn symmetric_valuations<V: Clone + Eq + std::hash::Hash>(q: &TranslationQuiver<V>) -> Result<usize, String> {
    let mut checked = 0;
    for a in q.arrows() {
        if let Some(ty) = q.tau(a.dst) {
            let back = q.arrow(ty, a.src).ok_or("missing mesh arrow")?;
            ensure(back.valuation.1 == a.valuation.0, || "δ′ ≠ δ".into())?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn valuation_symmetry() -> Outcome {
    let mut checked = 0;
    for s in ["A3", "D4"] {
        let m = model(s);
        let ar = ar_quiver_module_category(m.catalog(), &RadTable::new(m.catalog()));
        checked += symmetric_valuations(&ar)?;
        checked += symmetric_valuations(&m.repetition().build_zdelta(-3, 6).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{checked} arrows"))
}

fn kronecker_shape() -> Outcome {
    let pts: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    let k = kronecker_lattice(2, &pts).map_err(|e| e.to_string())?;
    let n = k.len();
    let leq = |a, b| k.leq(a, b);
    ensure(n <= 20, || format!("{n} elements"))?;
    ensure(poset::is_partial_order(n, leq) && poset::is_lattice(n, leq), || "lattice axioms".into())?;
    let els = k.elements();
    let part = |f: fn(&KroneckerElement) -> bool| (0..n).filter(|&i| f(&els[i])).collect::<Vec<_>>();
    let atoms = part(|e| matches!(e, KroneckerElement::Exceptional(_)));
    let tubes = part(|e| matches!(e, KroneckerElement::Tubes(_)));
    // the NC part on its own: bottom, atoms, top
    let nc = k.nc();
    ensure(poset::height(nc.len(), |a, b| nc.leq(a, b)) == 2, || "NC part height".into())?;
    for &a in &atoms {
        for &b in &atoms {
            ensure(a == b || !k.leq(a, b), || "comparable atoms".into())?;
        }
        for &t in &tubes {
            ensure(k.meet(a, t).unwrap() == k.bottom() && k.join(a, t).unwrap() == k.top(), || "cross part".into())?;
        }
    }
    for &a in &tubes {
        for &b in &tubes {
            let set = |i: usize| match &els[i] {
                KroneckerElement::Tubes(s) => s.iter().copied().collect::<BTreeSet<_>>(),
                _ => BTreeSet::new(),
            };
            let (sa, sb) = (set(a), set(b));
            ensure(k.leq(a, b) == sa.is_subset(&sb), || "tube order".into())?;
            ensure(set(k.join(a, b).unwrap()) == &sa | &sb, || "tube join".into())?;
            let m = k.meet(a, b).unwrap();
            let inter = &sa & &sb;
            ensure(if inter.is_empty() { m == k.bottom() } else { set(m) == inter }, || "tube meet".into())?;
        }
    }
    ensure(tubes.len() == 7, || format!("{} tube elements", tubes.len()))?;
    Ok(format!("{n} elements, {} atoms, {} tube sets", atoms.len(), tubes.len()))
}

fn verify_all() -> Outcome {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_ncthick"))
        .args(["verify", "--suite", "all"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    ensure(out.status.success(), || format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)))?;
    ensure(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}"))?;
    let suites: BTreeSet<&str> = text
        .lines()
        .filter_map(|l| l.strip_prefix("PASS "))
        .filter_map(|l| l.split('.').next())
        .collect();
    ensure(suites.len() == 4, || format!("suites seen: {suites:?}"))?;
    let checks = text.lines().filter(|l| l.starts_with("PASS ")).count();
    Ok(format!("{checks} checks in {elapsed:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("NC counts against brute force", nc_counts),
        ("NC(E6) self-consistency", e6_self_consistency),
        ("Hurwitz transitivity", hurwitz_transitivity),
        ("Kreweras duality on A3", kreweras_duality),
        ("thick lattice bijection", thick_bijection),
        ("exceptional sequence correspondence", exceptional_correspondence),
        ("mesh identity", mesh_identity),
        ("hammock and module oracle agree", hammock_oracle),
        ("Serre duality", serre_duality),
        ("valuation symmetry", valuation_symmetry),
        ("Kronecker lattice shape", kronecker_shape),
        ("verify --suite all", verify_all),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} ({name}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}): {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
