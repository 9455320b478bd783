//! Geometric simplicial complexes with rational vertices, and recognition of
//! generalized oranges.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::matrix::{dense_rank, solve_unique};
use crate::exactmath::{Point, Rational};

/// A simplex as a sorted set of vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<usize>);

impl Simplex {
    /// Sorts the ids; `None` if an id repeats.
    pub fn new(mut ids: Vec<usize>) -> Option<Self> {
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Simplex(ids))
    }

    pub fn empty() -> Self {
        Simplex(Vec::new())
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|vertices| - 1`; the empty simplex has dimension -1.
    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn contains(&self, other: &Simplex) -> bool {
        other.0.iter().all(|v| self.contains_vertex(*v))
    }

    pub fn intersection(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| other.contains_vertex(*v)).collect())
    }

    pub fn union(&self, other: &Simplex) -> Simplex {
        let set: BTreeSet<usize> = self.0.iter().chain(&other.0).copied().collect();
        Simplex(set.into_iter().collect())
    }

    pub fn difference(&self, other: &Simplex) -> Simplex {
        Simplex(self.0.iter().copied().filter(|v| !other.contains_vertex(*v)).collect())
    }

    /// All nonempty faces, including the simplex itself.
    pub fn faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        (1u64..(1 << n))
            .map(|mask| Simplex((0..n).filter(|b| mask >> b & 1 == 1).map(|b| self.0[b]).collect()))
            .collect()
    }
}

/// One pair of maximal faces sharing a codimension-one face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjacentPair {
    pub first: usize,
    pub second: usize,
    pub shared: Simplex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub pure: bool,
    /// Largest maximal-face dimension.
    pub dim: usize,
    pub face_dims: Vec<usize>,
}

/// Recognized `(k, i)`-orange: every maximal face contains the medial simplex
/// of dimension `k - i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrangeProfile {
    pub k: usize,
    pub i: usize,
    pub medial: Simplex,
    pub n: usize,
}

#[derive(Debug)]
pub struct SimplicialComplex {
    ambient_dim: usize,
    vertices: Vec<Point>,
    maximal_faces: Vec<Simplex>,
    adjacency: OnceLock<Vec<AdjacentPair>>,
}

impl Clone for SimplicialComplex {
    fn clone(&self) -> Self {
        SimplicialComplex {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
            maximal_faces: self.maximal_faces.clone(),
            adjacency: self.adjacency.clone(),
        }
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim
            && self.vertices == other.vertices
            && self.maximal_faces == other.maximal_faces
    }
}

impl SimplicialComplex {
    /// Builds a complex after structural checks: coordinate lengths, vertex
    /// ids in range, no repeated or nested maximal faces. Geometry is checked
    /// by [`SimplicialComplex::validate`].
    pub fn new(ambient_dim: usize, vertices: Vec<Point>, faces: Vec<Vec<usize>>) -> Result<Self> {
        for (v, p) in vertices.iter().enumerate() {
            if p.len() != ambient_dim {
                return Err(Error::CoordinateLength { vertex: v, expected: ambient_dim, found: p.len() });
            }
        }
        let mut maximal_faces = Vec::with_capacity(faces.len());
        for (f, ids) in faces.into_iter().enumerate() {
            if ids.is_empty() {
                return Err(Error::EmptyFace(f));
            }
            if let Some(&bad) = ids.iter().find(|&&v| v >= vertices.len()) {
                return Err(Error::VertexIndexOutOfRange { face: f, index: bad, count: vertices.len() });
            }
            maximal_faces.push(Simplex::new(ids).ok_or(Error::RepeatedVertex(f))?);
        }
        for a in 0..maximal_faces.len() {
            for b in 0..maximal_faces.len() {
                if a == b {
                    continue;
                }
                if maximal_faces[a] == maximal_faces[b] {
                    return Err(Error::DuplicateFace { first: a.min(b), second: a.max(b) });
                }
                if maximal_faces[b].contains(&maximal_faces[a]) {
                    return Err(Error::NestedFace { inner: a, outer: b });
                }
            }
        }
        Ok(SimplicialComplex { ambient_dim, vertices, maximal_faces, adjacency: OnceLock::new() })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Point {
        &self.vertices[v]
    }

    pub fn maximal_faces(&self) -> &[Simplex] {
        &self.maximal_faces
    }

    pub fn points_of(&self, s: &Simplex) -> Vec<Point> {
        s.vertices().iter().map(|&v| self.vertices[v].clone()).collect()
    }

    pub fn is_pure(&self) -> bool {
        self.maximal_faces.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Dimension of the (pure) complex.
    pub fn pure_dim(&self) -> Result<usize> {
        if !self.is_pure() || self.maximal_faces.is_empty() {
            return Err(Error::NotPure);
        }
        Ok(self.maximal_faces[0].len() - 1)
    }

    /// Pure and of the same dimension as the ambient space.
    pub fn require_full_dimensional(&self) -> Result<usize> {
        let k = self.pure_dim()?;
        if k != self.ambient_dim {
            return Err(Error::NotFullDimensional { dim: k, ambient: self.ambient_dim });
        }
        Ok(k)
    }

    /// Every face of the complex (the closure of the maximal faces).
    pub fn faces(&self) -> BTreeSet<Simplex> {
        self.maximal_faces.iter().flat_map(Simplex::faces).collect()
    }

    pub fn is_affinely_independent(&self, s: &Simplex) -> bool {
        affinely_independent(&self.points_of(s))
    }

    /// Geometric validation: every maximal face is affinely independent and
    /// any two maximal faces meet exactly in the hull of their common vertices.
    pub fn validate(&self) -> Result<ValidationReport> {
        for (f, s) in self.maximal_faces.iter().enumerate() {
            if !self.is_affinely_independent(s) {
                return Err(Error::AffinelyDependent(f));
            }
        }
        for a in 0..self.maximal_faces.len() {
            for b in a + 1..self.maximal_faces.len() {
                if !self.meet_properly(&self.maximal_faces[a], &self.maximal_faces[b]) {
                    return Err(Error::NotSimplicial { first: a, second: b });
                }
            }
        }
        let face_dims: Vec<usize> = self.maximal_faces.iter().map(|s| s.len() - 1).collect();
        Ok(ValidationReport { pure: self.is_pure(), dim: face_dims.iter().copied().max().unwrap_or(0), face_dims })
    }

    /// `conv(s) ∩ conv(t) = conv(s ∩ t)` holds iff no two vertex-disjoint
    /// subsets `P ⊆ s`, `Q ⊆ t` have intersecting hulls. A witness with
    /// minimal support is a basic solution of the coupling system, so it is
    /// enough to try supports whose columns are linearly independent.
    fn meet_properly(&self, s: &Simplex, t: &Simplex) -> bool {
        let union = s.union(t);
        let ids = union.vertices();
        let max_support = self.ambient_dim + 2;
        // 0 = unused, 1 = in P (from s), 2 = in Q (from t)
        let mut assign = vec![0u8; ids.len()];
        loop {
            let mut carry = true;
            for slot in assign.iter_mut() {
                if !carry {
                    break;
                }
                *slot += 1;
                if *slot == 3 {
                    *slot = 0;
                } else {
                    carry = false;
                }
            }
            if carry {
                return true;
            }
            let ok = assign.iter().zip(ids).all(|(&a, v)| match a {
                1 => s.contains_vertex(*v),
                2 => t.contains_vertex(*v),
                _ => true,
            });
            let np = assign.iter().filter(|&&a| a == 1).count();
            let nq = assign.iter().filter(|&&a| a == 2).count();
            if !ok || np == 0 || nq == 0 || np + nq > max_support {
                continue;
            }
            let p: Vec<&Point> =
                assign.iter().zip(ids).filter(|(a, _)| **a == 1).map(|(_, v)| &self.vertices[*v]).collect();
            let q: Vec<&Point> =
                assign.iter().zip(ids).filter(|(a, _)| **a == 2).map(|(_, v)| &self.vertices[*v]).collect();
            if hulls_meet_with_full_support(&p, &q, self.ambient_dim) {
                return false;
            }
        }
    }

    /// Pairs of maximal faces sharing a face of dimension `k - 1`, in
    /// lexicographic order of `(first, second)`.
    pub fn adjacent_pairs(&self) -> &[AdjacentPair] {
        self.adjacency.get_or_init(|| {
            let mut out = Vec::new();
            for a in 0..self.maximal_faces.len() {
                for b in a + 1..self.maximal_faces.len() {
                    let (sa, sb) = (&self.maximal_faces[a], &self.maximal_faces[b]);
                    if sa.len() != sb.len() {
                        continue;
                    }
                    let shared = sa.intersection(sb);
                    if shared.len() + 1 == sa.len() {
                        out.push(AdjacentPair { first: a, second: b, shared });
                    }
                }
            }
            out
        })
    }

    /// Recognizes a generalized orange: the medial simplex is the common
    /// intersection of all maximal faces.
    pub fn detect_orange(&self) -> Result<OrangeProfile> {
        let k = self.pure_dim()?;
        let medial =
            self.maximal_faces.iter().skip(1).fold(self.maximal_faces[0].clone(), |acc, s| acc.intersection(s));
        if medial.is_empty() {
            return Err(Error::EmptyMedialFace);
        }
        let i = k - medial.dim() as usize;
        Ok(OrangeProfile { k, i, medial, n: self.maximal_faces.len() })
    }

    /// Every maximal face contains vertex `v`, so the complex is the closure
    /// of the star of `v`.
    pub fn is_star_closure_of(&self, v: usize) -> bool {
        self.maximal_faces.iter().all(|s| s.contains_vertex(v))
    }

    /// Join of two vertex-disjoint simplices whose union is affinely independent.
    pub fn join(&self, a: &Simplex, b: &Simplex) -> Result<Simplex> {
        if !a.intersection(b).is_empty() {
            return Err(Error::NotDisjoint);
        }
        let u = a.union(b);
        if !self.is_affinely_independent(&u) {
            return Err(Error::DegenerateJoin);
        }
        Ok(u)
    }

    /// Applies `x -> linear * x + shift` to every vertex.
    pub fn map_vertices<F: Fn(&Point) -> Point>(&self, f: F) -> SimplicialComplex {
        let vertices: Vec<Point> = self.vertices.iter().map(f).collect();
        let ambient = vertices.first().map_or(self.ambient_dim, Vec::len);
        SimplicialComplex {
            ambient_dim: ambient,
            vertices,
            maximal_faces: self.maximal_faces.clone(),
            adjacency: OnceLock::new(),
        }
    }

    /// Same complex with vertex ids renamed by `perm` (old id -> new id) and
    /// maximal faces listed in `face_order`.
    pub fn relabeled(&self, perm: &[usize], face_order: &[usize]) -> Result<SimplicialComplex> {
        let mut vertices = vec![Vec::new(); self.vertices.len()];
        for (old, &new) in perm.iter().enumerate() {
            vertices[new] = self.vertices[old].clone();
        }
        let faces =
            face_order.iter().map(|&f| self.maximal_faces[f].vertices().iter().map(|&v| perm[v]).collect()).collect();
        SimplicialComplex::new(self.ambient_dim, vertices, faces)
    }
}

pub fn affinely_independent(points: &[Point]) -> bool {
    let Some((p0, rest)) = points.split_first() else {
        return true;
    };
    let edges: Vec<Vec<Rational>> = rest.iter().map(|p| p.iter().zip(p0).map(|(a, b)| a - b).collect()).collect();
    edges.is_empty() || dense_rank(&edges) == edges.len()
}

/// Solves `Σ λ p - Σ μ q = 0`, `Σ λ = 1`, `Σ μ = 1` on the given support when
/// its columns are independent, and reports a strictly positive solution.
fn hulls_meet_with_full_support(p: &[&Point], q: &[&Point], dim: usize) -> bool {
    let n = p.len() + q.len();
    let mut rows: Vec<Vec<Rational>> = vec![Vec::with_capacity(n); dim + 2];
    for pt in p {
        for c in 0..dim {
            rows[c].push(pt[c].clone());
        }
        rows[dim].push(Rational::from_integer(1.into()));
        rows[dim + 1].push(Rational::zero());
    }
    for pt in q {
        for c in 0..dim {
            rows[c].push(-pt[c].clone());
        }
        rows[dim].push(Rational::zero());
        rows[dim + 1].push(Rational::from_integer(1.into()));
    }
    let mut rhs = vec![Rational::zero(); dim + 2];
    rhs[dim] = Rational::from_integer(1.into());
    rhs[dim + 1] = Rational::from_integer(1.into());
    match solve_unique(&rows, &rhs) {
        Some(x) => x.iter().all(|v| v.is_positive()),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn pts(raw: &[&[i64]]) -> Vec<Point> {
        raw.iter().map(|p| p.iter().map(|&v| rat(v)).collect()).collect()
    }

    fn complex(dim: usize, raw: &[&[i64]], faces: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new(dim, pts(raw), faces.iter().map(|f| f.to_vec()).collect()).unwrap()
    }

    #[test]
    fn unit_tetrahedron_validates() {
        let c = complex(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2, 3]]);
        let rep = c.validate().unwrap();
        assert!(rep.pure);
        assert_eq!(rep.dim, 3);
    }

    #[test]
    fn triangles_sharing_edge_validate() {
        let c = complex(2, &[&[0, 0], &[1, 0], &[0, 1], &[-1, 0]], &[&[0, 1, 2], &[0, 2, 3]]);
        c.validate().unwrap();
        assert_eq!(c.adjacent_pairs().len(), 1);
    }

    #[test]
    fn crossing_segments_rejected() {
        let c = complex(2, &[&[-1, 0], &[1, 0], &[0, -1], &[0, 1]], &[&[0, 1], &[2, 3]]);
        assert!(matches!(c.validate(), Err(Error::NotSimplicial { first: 0, second: 1 })));
    }

    #[test]
    fn overlapping_triangles_rejected() {
        // share an edge but lie on the same side of it
        let c = complex(2, &[&[0, 0], &[2, 0], &[0, 2], &[1, 1]], &[&[0, 1, 2], &[0, 1, 3]]);
        assert!(matches!(c.validate(), Err(Error::NotSimplicial { .. })));
    }

    #[test]
    fn triangle_touching_edge_interior_rejected() {
        // vertex 3 lies in the middle of edge (0,1) of the first triangle
        let c = complex(2, &[&[0, 0], &[2, 0], &[1, 2], &[1, 0], &[1, -2]], &[&[0, 1, 2], &[0, 3, 4]]);
        assert!(matches!(c.validate(), Err(Error::NotSimplicial { .. })));
    }

    #[test]
    fn coincident_vertices_rejected() {
        let c = complex(1, &[&[0], &[1], &[1], &[2]], &[&[0, 1], &[2, 3]]);
        assert!(c.validate().is_err());
    }

    #[test]
    fn degenerate_face_rejected() {
        let c = complex(2, &[&[0, 0], &[1, 1], &[2, 2]], &[&[0, 1, 2]]);
        assert!(matches!(c.validate(), Err(Error::AffinelyDependent(0))));
    }

    #[test]
    fn structural_errors() {
        let v = pts(&[&[0], &[1]]);
        assert!(matches!(
            SimplicialComplex::new(1, v.clone(), vec![vec![0, 1], vec![1, 0]]),
            Err(Error::DuplicateFace { .. })
        ));
        assert!(matches!(
            SimplicialComplex::new(1, v.clone(), vec![vec![0, 1], vec![1]]),
            Err(Error::NestedFace { inner: 1, outer: 0 })
        ));
        assert!(matches!(
            SimplicialComplex::new(1, v.clone(), vec![vec![0, 2]]),
            Err(Error::VertexIndexOutOfRange { .. })
        ));
        assert!(matches!(SimplicialComplex::new(2, v, vec![vec![0, 1]]), Err(Error::CoordinateLength { .. })));
    }

    #[test]
    fn detect_single_tetrahedron() {
        let c = complex(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], &[&[0, 1, 2, 3]]);
        let p = c.detect_orange().unwrap();
        assert_eq!((p.k, p.i, p.n), (3, 0, 1));
        assert_eq!(p.medial.vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn detect_vertex_star() {
        let c = complex(2, &[&[0, 0], &[1, 0], &[1, 1], &[-1, 0], &[-1, -1]], &[&[0, 1, 2], &[0, 3, 4]]);
        c.validate().unwrap();
        let p = c.detect_orange().unwrap();
        assert_eq!((p.k, p.i), (2, 2));
        assert_eq!(p.medial.vertices(), &[0]);
        assert!(c.adjacent_pairs().is_empty());
    }

    #[test]
    fn detect_errors() {
        let c = complex(2, &[&[0, 0], &[1, 0], &[0, 1], &[5, 5], &[6, 5]], &[&[0, 1, 2], &[3, 4]]);
        assert!(matches!(c.detect_orange(), Err(Error::NotPure)));
        let c = complex(1, &[&[0], &[1], &[2], &[3]], &[&[0, 1], &[2, 3]]);
        assert!(matches!(c.detect_orange(), Err(Error::EmptyMedialFace)));
    }

    #[test]
    fn joins() {
        let c = complex(2, &[&[0, 0], &[1, 0], &[0, 1], &[2, 0]], &[&[0, 1, 2]]);
        let a = Simplex::new(vec![0]).unwrap();
        let b = Simplex::new(vec![1]).unwrap();
        assert_eq!(c.join(&a, &b).unwrap().vertices(), &[0, 1]);
        let seg = Simplex::new(vec![0, 1]).unwrap();
        let apex = Simplex::new(vec![2]).unwrap();
        assert_eq!(c.join(&seg, &apex).unwrap().dim(), 2);
        let collinear = Simplex::new(vec![3]).unwrap();
        assert!(matches!(c.join(&seg, &collinear), Err(Error::DegenerateJoin)));
        assert!(matches!(c.join(&seg, &a), Err(Error::NotDisjoint)));
    }
}
