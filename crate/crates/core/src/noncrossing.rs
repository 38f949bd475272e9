//! The interval `NC(W, c) = [id, c]` of the absolute order.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::cartan::{CartanDatum, CartanType, RootVector, WeylElement};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::poset;

/// The non-crossing partition lattice of a Coxeter element.
///
/// Elements are sorted by rank, then by matrix entries. For KRONECKER only the
/// reflections whose roots satisfy `p + q ≤ 2·bound + 1` are kept.
#[derive(Debug, Clone)]
pub struct NCLattice {
    cartan: CartanDatum,
    coxeter: WeylElement,
    elements: Vec<WeylElement>,
    ranks: Vec<usize>,
    index: HashMap<WeylElement, usize>,
    hasse: Vec<(usize, usize)>,
    reflections: Vec<(RootVector, WeylElement)>,
    truncation_bound: Option<usize>,
}

/// Options for [`enumerate_nc_with`].
#[derive(Debug, Clone, Default)]
pub struct NcOptions {
    pub execution: Execution,
    /// Order in which reflections are tried during prefix growth, as a
    /// permutation of the positive-root order. `None` keeps root order.
    pub reflection_order: Option<Vec<usize>>,
}

/// `NC(W, c)` for a finite label, grown level by level from the identity.
pub fn enumerate_nc(cd: &CartanDatum, c: &WeylElement) -> Result<NCLattice> {
    enumerate_nc_with(cd, c, &NcOptions::default())
}

pub fn enumerate_nc_with(cd: &CartanDatum, c: &WeylElement, opts: &NcOptions) -> Result<NCLattice> {
    if !cd.label().is_finite() {
        return Err(Error::WrongKind(format!("{} (use nc_kronecker)", cd.label())));
    }
    let n = cd.rank();
    if c.rank() != n {
        return Err(Error::DimensionMismatch { expected: n, got: c.rank() });
    }
    if cd.absolute_length(c) != n {
        return Err(Error::WrongKind("element is not a Coxeter element".into()));
    }
    let reflections = cd.reflections(0);
    let order: Vec<usize> = match &opts.reflection_order {
        None => (0..reflections.len()).collect(),
        Some(p) => {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != (0..reflections.len()).collect::<Vec<_>>() {
                return Err(Error::InvalidPermutation(p.clone()));
            }
            p.clone()
        }
    };
    let tried: Vec<&WeylElement> = order.iter().map(|&k| &reflections[k].1).collect();

    let mut levels: Vec<Vec<WeylElement>> = vec![vec![WeylElement::identity(n)]];
    for k in 0..n {
        let frontier = &levels[k];
        let grown = opts.execution.flat_map(frontier, |w| {
            tried
                .iter()
                .filter_map(|t| {
                    let x = w.mul(t);
                    // ℓ(x) = k + 1 and ℓ(x⁻¹c) = n - k - 1
                    (x.fixed_codim() == k + 1 && c.rank_of_difference(&x) == n - k - 1).then_some(x)
                })
                .collect()
        });
        let mut next: Vec<WeylElement> = grown.into_iter().collect::<HashSet<_>>().into_iter().collect();
        next.sort();
        levels.push(next);
    }
    if levels[n] != [c.clone()] {
        return Err(Error::Structural("prefix growth did not end at the Coxeter element".into()));
    }

    let mut elements = Vec::new();
    let mut ranks = Vec::new();
    for (k, level) in levels.into_iter().enumerate() {
        ranks.extend(std::iter::repeat_n(k, level.len()));
        elements.extend(level);
    }
    let index: HashMap<WeylElement, usize> =
        elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let refl_elems: Vec<&WeylElement> = reflections.iter().map(|(_, t)| t).collect();
    let mut hasse: Vec<(usize, usize)> = opts
        .execution
        .map_range(elements.len(), |i| {
            refl_elems
                .iter()
                .filter_map(|t| {
                    let j = *index.get(&elements[i].mul(t))?;
                    (ranks[j] == ranks[i] + 1).then_some((i, j))
                })
                .collect::<Vec<_>>()
        })
        .into_iter()
        .flatten()
        .collect();
    hasse.sort_unstable();
    Ok(NCLattice {
        cartan: cd.clone(),
        coxeter: c.clone(),
        elements,
        ranks,
        index,
        hasse,
        reflections,
        truncation_bound: None,
    })
}

/// Truncated `NC(W, c)` of the Kronecker datum with `c = s_1 s_2`.
pub fn nc_kronecker(bound: usize) -> NCLattice {
    let cd = crate::cartan::build_cartan(CartanType::Kronecker).expect("KRONECKER is supported");
    let c = cd.standard_coxeter();
    let reflections = cd.reflections(bound);
    let mut elements = vec![WeylElement::identity(2)];
    elements.extend(reflections.iter().map(|(_, t)| t.clone()));
    elements.push(c.clone());
    let r = reflections.len();
    let mut ranks = vec![0];
    ranks.extend(std::iter::repeat_n(1, r));
    ranks.push(2);
    let top = r + 1;
    let mut hasse: Vec<(usize, usize)> = (1..=r).map(|i| (0, i)).collect();
    hasse.extend((1..=r).map(|i| (i, top)));
    let index = elements.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    NCLattice {
        cartan: cd,
        coxeter: c,
        elements,
        ranks,
        index,
        hasse,
        reflections,
        truncation_bound: Some(bound),
    }
}

/// `NC(W, c)` by filtering the whole group, with lengths from the reflection
/// Cayley graph rather than from fixed spaces. Only for small groups.
pub fn nc_bruteforce(cd: &CartanDatum, c: &WeylElement) -> Result<Vec<WeylElement>> {
    let dist = cd.reflection_length_table()?;
    let lc = dist[c];
    let mut out: Vec<WeylElement> = dist
        .iter()
        .filter(|(w, &lw)| lw + dist[&w.inverse().mul(c)] == lc)
        .map(|(w, _)| w.clone())
        .collect();
    out.sort_by(|a, b| dist[a].cmp(&dist[b]).then_with(|| a.cmp(b)));
    Ok(out)
}

#[derive(Serialize)]
struct ElementJson<'a> {
    id: usize,
    rank: usize,
    label: String,
    matrix: &'a WeylElement,
}

#[derive(Serialize)]
struct LatticeJson<'a> {
    #[serde(rename = "type")]
    label: String,
    coxeter_word: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    truncation_bound: Option<usize>,
    elements: Vec<ElementJson<'a>>,
    hasse: Vec<[usize; 2]>,
}

impl NCLattice {
    pub fn cartan(&self) -> &CartanDatum {
        &self.cartan
    }

    pub fn coxeter(&self) -> &WeylElement {
        &self.coxeter
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn rank_of(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn truncation_bound(&self) -> Option<usize> {
        self.truncation_bound
    }

    /// Reflections available to this lattice, paired with their positive roots.
    pub fn reflections(&self) -> &[(RootVector, WeylElement)] {
        &self.reflections
    }

    pub fn index_of(&self, w: &WeylElement) -> Result<usize> {
        self.index.get(w).copied().ok_or(Error::NotInLattice)
    }

    pub fn contains(&self, w: &WeylElement) -> bool {
        self.index.contains_key(w)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    /// Absolute order between two lattice elements, by index.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        let (ri, rj) = (self.ranks[i], self.ranks[j]);
        if i == j {
            return true;
        }
        if ri >= rj {
            return false;
        }
        ri + self.cartan.quotient_length(&self.elements[i], &self.elements[j]) == rj
    }

    pub fn meet_idx(&self, i: usize, j: usize) -> Result<usize> {
        poset::meet_or_err(self.len(), |a, b| self.leq(a, b), i, j)
    }

    pub fn join_idx(&self, i: usize, j: usize) -> Result<usize> {
        poset::join_or_err(self.len(), |a, b| self.leq(a, b), i, j)
    }

    pub fn meet(&self, u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
        let k = self.meet_idx(self.index_of(u)?, self.index_of(v)?)?;
        Ok(self.elements[k].clone())
    }

    pub fn join(&self, u: &WeylElement, v: &WeylElement) -> Result<WeylElement> {
        let k = self.join_idx(self.index_of(u)?, self.index_of(v)?)?;
        Ok(self.elements[k].clone())
    }

    /// `w⁻¹ c`.
    pub fn kreweras(&self, w: &WeylElement) -> Result<WeylElement> {
        self.index_of(w)?;
        let x = w.inverse().mul(&self.coxeter);
        if !self.contains(&x) {
            return Err(Error::NotInLattice);
        }
        Ok(x)
    }

    /// `c w⁻¹`, inverse to [`NCLattice::kreweras`].
    pub fn co_kreweras(&self, w: &WeylElement) -> Result<WeylElement> {
        self.index_of(w)?;
        let x = self.coxeter.mul(&w.inverse());
        if !self.contains(&x) {
            return Err(Error::NotInLattice);
        }
        Ok(x)
    }

    /// Lexicographically least shortest word in the lattice's reflections,
    /// reflections ordered by their roots.
    pub fn word(&self, w: &WeylElement) -> Vec<usize> {
        let k = self.cartan.absolute_length(w);
        let mut out = Vec::with_capacity(k);
        assert!(self.word_rec(w, k, &mut out), "element has no word in the available reflections");
        out
    }

    fn word_rec(&self, w: &WeylElement, k: usize, out: &mut Vec<usize>) -> bool {
        if k == 0 {
            return w.is_identity();
        }
        for (idx, (_, t)) in self.reflections.iter().enumerate() {
            let rest = t.mul(w);
            if self.cartan.absolute_length(&rest) == k - 1 {
                out.push(idx);
                if self.word_rec(&rest, k - 1, out) {
                    return true;
                }
                out.pop();
            }
        }
        false
    }

    /// Canonical label such as `s(1,0)s(0,1)`; the identity is `id`.
    pub fn label(&self, w: &WeylElement) -> String {
        let word = self.word(w);
        if word.is_empty() {
            return "id".into();
        }
        word.iter().map(|&i| format!("s{}", self.reflections[i].0)).collect()
    }

    /// Rank-layered Graphviz digraph of the Hasse diagram.
    pub fn hasse_dot(&self) -> String {
        let mut s = String::from("digraph NC {\n  rankdir=BT;\n  node [shape=box];\n");
        let max_rank = self.ranks.iter().copied().max().unwrap_or(0);
        for r in 0..=max_rank {
            let ids: Vec<String> =
                (0..self.len()).filter(|&i| self.ranks[i] == r).map(|i| format!("n{i}")).collect();
            let _ = writeln!(s, "  {{ rank=same; {}; }}", ids.join("; "));
        }
        for (i, w) in self.elements.iter().enumerate() {
            let _ = writeln!(s, "  n{i} [label=\"{}\"];", self.label(w));
        }
        for (a, b) in &self.hasse {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = LatticeJson {
            label: self.cartan.label().to_string(),
            coxeter_word: self.label(&self.coxeter),
            truncation_bound: self.truncation_bound,
            elements: self
                .elements
                .iter()
                .enumerate()
                .map(|(i, w)| ElementJson { id: i, rank: self.ranks[i], label: self.label(w), matrix: w })
                .collect(),
            hasse: self.hasse.iter().map(|&(a, b)| [a, b]).collect(),
        };
        serde_json::to_value(doc).expect("lattice serializes")
    }
}
