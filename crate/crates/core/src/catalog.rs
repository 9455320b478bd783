//! Built-in oranges used by the sweeps and tests.

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::exactmath::{rat, Point, Rational};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub complex: SimplicialComplex,
    pub k: usize,
    pub i: usize,
    pub medial: Vec<usize>,
    pub notes: &'static str,
}

fn pts(raw: &[&[i64]]) -> Vec<Point> {
    raw.iter().map(|p| p.iter().map(|&v| rat(v)).collect()).collect()
}

fn build(dim: usize, raw: &[&[i64]], faces: &[&[usize]]) -> SimplicialComplex {
    SimplicialComplex::new(dim, pts(raw), faces.iter().map(|f| f.to_vec()).collect())
        .expect("catalog complex is well formed")
}

fn affine(p: &Point, linear: &[&[i64]], shift: &[i64]) -> Point {
    linear
        .iter()
        .zip(shift)
        .map(|(row, t)| row.iter().zip(p).map(|(a, x)| rat(*a) * x).sum::<Rational>() + rat(*t))
        .collect()
}

/// Standard `k`-simplex translated by `(1, 2, ..., k)`.
pub fn simplex(k: usize) -> SimplicialComplex {
    let mut vertices = Vec::with_capacity(k + 1);
    for v in 0..=k {
        vertices.push((0..k).map(|c| rat((c + 1) as i64 + i64::from(v == c + 1))).collect());
    }
    SimplicialComplex::new(k, vertices, vec![(0..=k).collect()]).expect("simplex is well formed")
}

/// Two triangles over `[-1,0] ∪ [0,1]` sharing the vertical unit edge.
pub fn two_triangles() -> SimplicialComplex {
    build(2, &[&[0, 0], &[0, 1], &[-1, 0], &[1, 0]], &[&[0, 1, 2], &[0, 1, 3]])
}

/// Two triangles sharing the edge `(1,1)-(2,3)`.
pub fn two_triangles_skew() -> SimplicialComplex {
    build(2, &[&[1, 1], &[2, 3], &[0, 3], &[4, 1]], &[&[0, 1, 2], &[0, 1, 3]])
}

/// Four triangles around the origin cut by the two axes.
pub fn planar_star() -> SimplicialComplex {
    build(2, &[&[0, 0], &[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[&[0, 1, 2], &[0, 2, 3], &[0, 3, 4], &[0, 4, 1]])
}

/// Two tetrahedra sharing the triangle `{0, e2, e3}`, over `[-1,0] ∪ [0,1]`.
pub fn two_tetrahedra() -> SimplicialComplex {
    build(3, &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, 0, 0], &[1, 0, 0]], &[&[0, 1, 2, 3], &[0, 1, 2, 4]])
}

/// Four tetrahedra around the skew interior edge `(0,0,0)-(1,1,3)`.
pub fn tetrahedral_fan() -> SimplicialComplex {
    build(
        3,
        &[&[0, 0, 0], &[1, 1, 3], &[2, 0, 1], &[0, 2, 1], &[-2, 0, 1], &[0, -2, 1]],
        &[&[0, 1, 2, 3], &[0, 1, 3, 4], &[0, 1, 4, 5], &[0, 1, 5, 2]],
    )
}

/// Tetrahedron split at an interior point into four (the star of that point).
pub fn vertex_star_3d() -> SimplicialComplex {
    build(
        3,
        &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]],
        &[&[0, 1, 2, 3], &[0, 1, 2, 4], &[0, 1, 3, 4], &[0, 2, 3, 4]],
    )
}

/// A (4,2)-orange: a closed fan of three triangles joined with a medial
/// triangle, then moved by a fixed invertible affine map.
pub fn orange_4_2() -> SimplicialComplex {
    let standard = pts(&[&[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1], &[1, 0, 0, 0], &[0, 1, 0, 0], &[-1, -1, 0, 0]]);
    let linear: &[&[i64]] = &[&[2, 1, 0, 1], &[0, 1, 1, 0], &[1, 0, 1, 0], &[0, 1, 0, 1]];
    let shift = [1, -1, 0, 2];
    let vertices = standard.iter().map(|p| affine(p, linear, &shift)).collect();
    SimplicialComplex::new(4, vertices, vec![vec![0, 1, 2, 3, 4], vec![0, 1, 2, 4, 5], vec![0, 1, 2, 5, 3]])
        .expect("catalog complex is well formed")
}

pub fn catalog() -> Vec<CatalogEntry> {
    let mut out = vec![
        CatalogEntry {
            name: "two-triangles",
            complex: two_triangles(),
            k: 2,
            i: 1,
            medial: vec![0, 1],
            notes: "(2,1)-orange over [-1,0] u [0,1], already in standard position",
        },
        CatalogEntry {
            name: "two-triangles-skew",
            complex: two_triangles_skew(),
            k: 2,
            i: 1,
            medial: vec![0, 1],
            notes: "(2,1)-orange with a skew medial edge",
        },
        CatalogEntry {
            name: "planar-star",
            complex: planar_star(),
            k: 2,
            i: 2,
            medial: vec![0],
            notes: "(2,2)-orange: interior vertex star of four triangles",
        },
        CatalogEntry {
            name: "two-tetrahedra",
            complex: two_tetrahedra(),
            k: 3,
            i: 1,
            medial: vec![0, 1, 2],
            notes: "(3,1)-orange: two tetrahedra over [-1,0] u [0,1]",
        },
        CatalogEntry {
            name: "tetrahedral-fan",
            complex: tetrahedral_fan(),
            k: 3,
            i: 2,
            medial: vec![0, 1],
            notes: "(3,2)-orange: four tetrahedra around an interior edge",
        },
        CatalogEntry {
            name: "vertex-star-3d",
            complex: vertex_star_3d(),
            k: 3,
            i: 3,
            medial: vec![0],
            notes: "(3,3)-orange: tetrahedron split at an interior point",
        },
        CatalogEntry {
            name: "orange-4-2",
            complex: orange_4_2(),
            k: 4,
            i: 2,
            medial: vec![0, 1, 2],
            notes: "(4,2)-orange: three-triangle fan joined with a triangle, affinely moved",
        },
    ];
    for (k, name) in [(1, "simplex-1"), (2, "simplex-2"), (3, "simplex-3"), (4, "simplex-4")] {
        out.push(CatalogEntry {
            name,
            complex: simplex(k),
            k,
            i: 0,
            medial: (0..=k).collect(),
            notes: "single simplex, (k,0)-orange",
        });
    }
    out
}

pub fn entry(name: &str) -> Result<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name).ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_validates_with_stated_profile() {
        for e in catalog() {
            e.complex.validate().unwrap_or_else(|err| panic!("{}: {err}", e.name));
            let p = e.complex.detect_orange().unwrap();
            assert_eq!((p.k, p.i), (e.k, e.i), "{}", e.name);
            assert_eq!(p.medial.vertices(), e.medial.as_slice(), "{}", e.name);
            for s in e.complex.maximal_faces() {
                assert!(s.contains(&p.medial));
            }
        }
    }

    #[test]
    fn unknown_entry() {
        assert!(matches!(entry("nope"), Err(Error::UnknownCatalogEntry(_))));
    }
}
