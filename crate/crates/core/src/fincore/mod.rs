//! Finite sets, finite categories, functors and presheaves, together with the
//! small limit/colimit calculus the rest of the crate is built on.
//!
//! Sets are index ranges `0..n` carrying display labels. Every equality in
//! this crate is index equality; labels only matter for rendering witnesses.

mod category;
mod colimit;
mod limit;
mod presheaf;
mod set;

pub use category::{Arrow, FinCategory, FinFunctor};
pub use colimit::{coequalizer, coproduct, quotient, UnionFind};
pub use limit::{finite_limit, LimitCone, LimitDiagram, LimitShape};
pub use presheaf::{
    check_presheaf_laws, presheaf_colimit_pointwise, ColimitRequest, FinPresheaf, PresheafColimit,
    PresheafMap,
};
pub use set::{FinMap, FinSet};
