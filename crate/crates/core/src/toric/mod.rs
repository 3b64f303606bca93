//! Toric geometry: lattice polytopes, complete simplicial fans, divisor
//! oracles and the total index of toric Fano varieties.

pub mod catalog;
pub mod fan;
pub mod index;
pub mod polytope;
pub mod variety;

pub use fan::{Fan, Wall};
pub use polytope::{minkowski_sum, scaled_sum, Facet, LatticePolytope};
pub use variety::{DivisorOracles, ToricDivisor, ToricVariety};
pub use catalog::{normal_form, reflexive_polygons, threefolds, Threefold};
pub use index::{
    cube_bound_check, facet_bound_check, fujita_check, is_cube_fan, is_product_of_simplices, tau_toric,
    CubeBoundReport, FacetBoundReport, FujitaReport, MinkowskiDecomposition, ToricTau,
};
