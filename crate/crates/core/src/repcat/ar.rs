use serde_json::{json, Value};

use super::{compose, Catalog};
use crate::cartan::RootVector;
use crate::linalg::span_rank;
use crate::par::Execution;
use crate::translation::{Arrow, TranslationQuiver};

/// Dimensions of `Rad`, `Rad²` and `Irr = Rad/Rad²` between indecomposables.
#[derive(Debug, Clone)]
pub struct RadTable {
    rad: Vec<Vec<usize>>,
    rad2: Vec<Vec<usize>>,
}

impl RadTable {
    /// `Rad(X, X) = 0` because every endomorphism ring is the ground field;
    /// this is asserted on the catalog rather than assumed.
    pub fn new(cat: &Catalog) -> Self {
        RadTable::with_execution(cat, Execution::default())
    }

    pub fn with_execution(cat: &Catalog, exec: Execution) -> Self {
        let k = cat.len();
        for i in 0..k {
            assert_eq!(cat.hom_dim(i, i), 1, "endomorphism ring is not the ground field");
        }
        let bases: Vec<Vec<Vec<super::Morphism>>> =
            exec.map_range(k, |i| (0..k).map(|j| if i == j { Vec::new() } else { cat.hom_basis(i, j) }).collect());
        let rad: Vec<Vec<usize>> = bases.iter().map(|row| row.iter().map(Vec::len).collect()).collect();
        let rad2 = exec.map_range(k, |x| {
            (0..k)
                .map(|y| {
                    let mut composites = Vec::new();
                    for (to_z, from_z) in bases[x].iter().zip(&bases) {
                        for f in to_z {
                            for g in &from_z[y] {
                                let gf = compose(f, g);
                                composites.push(gf.iter().flat_map(|m| m.flatten()).collect());
                            }
                        }
                    }
                    span_rank(&composites)
                })
                .collect()
        });
        RadTable { rad, rad2 }
    }

    pub fn rad_dim(&self, x: usize, y: usize) -> usize {
        self.rad[x][y]
    }

    pub fn rad2_dim(&self, x: usize, y: usize) -> usize {
        self.rad2[x][y]
    }

    pub fn irr_dim(&self, x: usize, y: usize) -> usize {
        self.rad[x][y] - self.rad2[x][y]
    }
}

/// AR quiver of the module category: arrows where `Irr ≠ 0`, valued
/// `(dim Irr, dim Irr)`, and `τZ` read off the mesh
/// `dim τZ = Σ_{Y→Z} δ·dim Y - dim Z` for non-projective `Z`.
pub fn ar_quiver_module_category(cat: &Catalog, rad: &RadTable) -> TranslationQuiver<RootVector> {
    let k = cat.len();
    let mut arrows = Vec::new();
    for x in 0..k {
        for y in 0..k {
            let d = rad.irr_dim(x, y) as u32;
            if d > 0 {
                arrows.push(Arrow { src: x, dst: y, valuation: (d, d) });
            }
        }
    }
    let n = cat.quiver().n();
    let tau = (0..k)
        .map(|z| {
            if cat.is_projective(z) {
                return None;
            }
            let mut v = cat.roots()[z].neg();
            for a in arrows.iter().filter(|a| a.dst == z) {
                v = v.add(&cat.roots()[a.src].scaled(a.valuation.0 as i64));
            }
            debug_assert_eq!(v.len(), n);
            cat.index_of(&v)
        })
        .collect();
    TranslationQuiver::new(cat.roots().to_vec(), arrows, tau)
}

impl Catalog {
    /// Hom and Ext¹ dimension tables keyed by root labels.
    pub fn tables_json(&self) -> Value {
        let labels: Vec<String> = self.roots().iter().map(|r| r.to_string()).collect();
        let k = self.len();
        let hom: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| self.hom_dim(i, j)).collect()).collect();
        let ext: Vec<Vec<usize>> = (0..k).map(|i| (0..k).map(|j| self.ext1_dim(i, j)).collect()).collect();
        json!({
            "type": self.quiver().label().to_string(),
            "arrows": self.quiver().arrows(),
            "modules": labels,
            "hom": hom,
            "ext1": ext,
        })
    }
}
