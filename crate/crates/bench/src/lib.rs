//! Fixtures shared by the benchmarks.

use orange_core::catalog;
use orange_core::SimplicialComplex;

/// Catalog complexes paired with a degree that keeps one iteration short.
pub fn fixtures() -> Vec<(&'static str, SimplicialComplex, u32)> {
    vec![
        ("two-tetrahedra", catalog::two_tetrahedra(), 5),
        ("tetrahedral-fan", catalog::tetrahedral_fan(), 4),
        ("vertex-star-3d", catalog::vertex_star_3d(), 4),
        ("orange-4-2", catalog::orange_4_2(), 3),
    ]
}
