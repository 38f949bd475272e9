//! Translation quivers: vertices, valued arrows and a partial translation `τ`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;
use std::hash::Hash;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub src: usize,
    pub dst: usize,
    /// `(δ, δ′)`.
    pub valuation: (u32, u32),
}

#[derive(Debug, Clone)]
pub struct TranslationQuiver<V> {
    vertices: Vec<V>,
    arrows: Vec<Arrow>,
    tau: Vec<Option<usize>>,
    index: HashMap<V, usize>,
}

impl<V: Clone + Eq + Hash> TranslationQuiver<V> {
    pub fn new(vertices: Vec<V>, mut arrows: Vec<Arrow>, tau: Vec<Option<usize>>) -> Self {
        assert_eq!(vertices.len(), tau.len(), "one τ entry per vertex");
        arrows.sort_unstable();
        let index = vertices.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        TranslationQuiver { vertices, arrows, tau, index }
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, v: &V) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn tau(&self, i: usize) -> Option<usize> {
        self.tau[i]
    }

    /// The vertex `j` with `τ j = i`, if any.
    pub fn tau_inverse(&self, i: usize) -> Option<usize> {
        self.tau.iter().position(|&t| t == Some(i))
    }

    pub fn arrows_into(&self, i: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.dst == i)
    }

    pub fn arrows_out(&self, i: usize) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.src == i)
    }

    pub fn arrow(&self, src: usize, dst: usize) -> Option<&Arrow> {
        self.arrows.iter().find(|a| a.src == src && a.dst == dst)
    }

    /// Vertices violating the mesh condition: where `τZ` is defined, the
    /// sources of arrows into `Z` must be the targets of arrows out of `τZ`.
    pub fn mesh_violations(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&z| {
                let Some(tz) = self.tau[z] else { return false };
                let mut into: Vec<usize> = self.arrows_into(z).map(|a| a.src).collect();
                let mut out: Vec<usize> = self.arrows_out(tz).map(|a| a.dst).collect();
                into.sort_unstable();
                out.sort_unstable();
                into != out
            })
            .collect()
    }

    /// Whether a directed path leads from `a` to `b`.
    pub fn has_path(&self, a: usize, b: usize) -> bool {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([a]);
        seen[a] = true;
        while let Some(v) = queue.pop_front() {
            if v == b {
                return true;
            }
            for arr in self.arrows_out(v) {
                if !seen[arr.dst] {
                    seen[arr.dst] = true;
                    queue.push_back(arr.dst);
                }
            }
        }
        false
    }

    /// Graphviz output with `τ` drawn as dashed back-edges.
    pub fn to_dot(&self, name: &str, label: impl Fn(&V) -> String) -> String {
        let mut s = format!("digraph {name} {{\n  rankdir=LR;\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{}\"];", label(v));
        }
        for a in &self.arrows {
            if a.valuation == (1, 1) {
                let _ = writeln!(s, "  v{} -> v{};", a.src, a.dst);
            } else {
                let _ = writeln!(s, "  v{} -> v{} [label=\"({},{})\"];", a.src, a.dst, a.valuation.0, a.valuation.1);
            }
        }
        for (z, t) in self.tau.iter().enumerate() {
            if let Some(t) = t {
                let _ = writeln!(s, "  v{z} -> v{t} [style=dashed, constraint=false];");
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a_single_mesh() {
        // x -> y -> z with τ z = x
        let arrows = vec![
            Arrow { src: 0, dst: 1, valuation: (1, 1) },
            Arrow { src: 1, dst: 2, valuation: (1, 1) },
        ];
        let t = TranslationQuiver::new(vec!['x', 'y', 'z'], arrows, vec![None, None, Some(0)]);
        assert!(t.mesh_violations().is_empty());
        assert!(t.has_path(0, 2));
        assert!(!t.has_path(2, 0));
        assert_eq!(t.tau_inverse(0), Some(2));
        let dot = t.to_dot("T", |c| c.to_string());
        assert_eq!(dot.matches("style=dashed").count(), 1);
        let broken = TranslationQuiver::new(vec!['x', 'y', 'z'], vec![], vec![None, None, Some(0)]);
        assert!(broken.mesh_violations().is_empty());
        let bad = TranslationQuiver::new(
            vec!['x', 'y', 'z'],
            vec![Arrow { src: 1, dst: 2, valuation: (1, 1) }],
            vec![None, None, Some(0)],
        );
        assert_eq!(bad.mesh_violations(), vec![2]);
    }
}
