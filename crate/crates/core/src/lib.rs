//! Exact computations around non-crossing partitions of Weyl groups and the
//! thick subcategories of derived categories of Dynkin quivers.

pub mod braid;
pub mod cartan;
pub mod derived;
pub mod error;
pub mod linalg;
pub mod noncrossing;
pub mod par;
pub mod poset;
pub mod repcat;
pub mod thicklat;
pub mod translation;
pub mod verify;

pub use cartan::{build_cartan, CartanDatum, CartanType, RootVector, WeylElement};
pub use error::{Error, Result};
pub use par::Execution;
pub use noncrossing::{enumerate_nc, enumerate_nc_with, nc_kronecker, NCLattice, NcOptions};
pub use braid::{braid_act, enumerate_factorizations, hurwitz_orbit, Factorization};
pub use repcat::{Catalog, Quiver, Representation};
pub use translation::TranslationQuiver;
pub use derived::{DerivedModel, DerivedVertex, HammockTable, Repetition};
pub use thicklat::{kronecker_lattice, thick_lattice, wide_subcategory_oracle, KroneckerElement, KroneckerLattice, ThickContext, ThickLattice, ThickSubcategory};
