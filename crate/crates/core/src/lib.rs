//! Exact dimension computations for spline spaces on generalized oranges.
//!
//! A `(k, i)`-orange is a pure `k`-dimensional simplicial complex whose
//! maximal faces all contain one common `(k - i)`-simplex, the medial
//! simplex. Projecting along the medial simplex gives an `i`-dimensional
//! vertex star `C`, and the dimension of `S^r_d` on the orange is a weighted
//! sum of dimensions on `C`. This crate computes both sides exactly: the
//! left from the cofactor criterion, the right through the projection.

pub mod bernstein;
pub mod catalog;
pub mod complex;
pub mod error;
pub mod exactmath;
pub mod formula;
pub mod io;
pub mod projection;
pub mod splinedim;
pub mod sweep;

pub use bernstein::{
    compute_mds, layer_decomposition, lift_mds, DomainPoint, LayerDecomposition, LiftedMds, MinimalDeterminingSet,
};
pub use complex::{AdjacentPair, OrangeProfile, Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use exactmath::{binom, monomials_upto, Point, Polynomial, Rational, RationalMatrix};
pub use formula::{hilbert_prefix, orange_dim_formula, verify_hilbert_identity, verify_standard_orange, HilbertPrefix};
pub use io::{load_complex, parse_complex};
pub use projection::{
    adapt_coordinates, project, standard_orange, AdaptedFrame, Orange, ProjectedOrange, StandardOrange,
};
pub use splinedim::{spline_basis, spline_dim, CofactorSystem, Spline, SplineSpaceBasis};
pub use sweep::{run_sweep, SweepReport};
