//! Projection of an orange along its medial simplex.
//!
//! Coordinates are first adapted so that the medial simplex lies in the
//! subspace `x1 = ... = xi = 0` with its first vertex at the origin; the
//! projection then keeps the first `i` coordinates.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::complex::{OrangeProfile, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactmath::matrix::{dense_rank, invert};
use crate::exactmath::{Point, Rational};

/// Exact affine map `x -> linear * (x - origin)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedFrame {
    /// Row-major `k x k` invertible matrix.
    pub linear: Vec<Vec<Rational>>,
    /// Preimage of the origin: the first medial vertex.
    pub origin: Point,
}

impl AdaptedFrame {
    pub fn apply(&self, p: &[Rational]) -> Point {
        let shifted: Vec<Rational> = p.iter().zip(&self.origin).map(|(a, b)| a - b).collect();
        self.linear.iter().map(|row| row.iter().zip(&shifted).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.origin.iter().all(Zero::is_zero)
            && self
                .linear
                .iter()
                .enumerate()
                .all(|(r, row)| row.iter().enumerate().all(|(c, v)| if r == c { v.is_one() } else { v.is_zero() }))
    }

    pub fn transform(&self, complex: &SimplicialComplex) -> SimplicialComplex {
        complex.map_vertices(|p| self.apply(p))
    }
}

/// Builds the adapted frame of a full-dimensional orange.
///
/// When the medial directions already span the last `k - i` coordinate
/// axes the linear part is the identity (only the translation remains).
/// Otherwise the medial edge vectors are completed to a basis with the
/// lowest-index standard vectors that keep independence, the completion
/// occupies coordinates `1..i` and the edges `i+1..k`, and the frame is the
/// inverse of that basis matrix.
pub fn adapt_coordinates(complex: &SimplicialComplex, profile: &OrangeProfile) -> Result<AdaptedFrame> {
    let k = complex.require_full_dimensional()?;
    let i = profile.i;
    let medial = complex.points_of(&profile.medial);
    let origin = medial[0].clone();
    let edges: Vec<Vec<Rational>> =
        medial[1..].iter().map(|p| p.iter().zip(&origin).map(|(a, b)| a - b).collect()).collect();
    if !edges.is_empty() && dense_rank(&edges) != edges.len() {
        return Err(Error::AffinelyDependent(0));
    }
    let identity: Vec<Vec<Rational>> = (0..k).map(|r| unit(k, r)).collect();
    let already_adapted = edges.iter().all(|e| e[..i].iter().all(Zero::is_zero));
    if already_adapted {
        return Ok(AdaptedFrame { linear: identity, origin });
    }
    let mut completion: Vec<Vec<Rational>> = Vec::with_capacity(i);
    for e in &identity {
        if completion.len() == i {
            break;
        }
        let mut trial: Vec<Vec<Rational>> = edges.clone();
        trial.extend(completion.iter().cloned());
        trial.push(e.clone());
        if dense_rank(&trial) == trial.len() {
            completion.push(e.clone());
        }
    }
    // basis vectors as columns: completion first, then medial edges
    let columns: Vec<&Vec<Rational>> = completion.iter().chain(edges.iter()).collect();
    let basis: Vec<Vec<Rational>> = (0..k).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
    let linear = invert(&basis).ok_or(Error::AffinelyDependent(0))?;
    Ok(AdaptedFrame { linear, origin })
}

fn unit(k: usize, r: usize) -> Vec<Rational> {
    (0..k).map(|c| if c == r { Rational::one() } else { Rational::zero() }).collect()
}

/// The image of an orange under the projection, as a complex in `R^i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectedOrange {
    pub complex: SimplicialComplex,
    /// Vertex id of the image of the medial simplex (the origin).
    pub central_vertex: usize,
    /// Maximal face of the orange -> maximal face of the projection.
    pub face_map: Vec<usize>,
    /// Vertex of the orange -> vertex of the projection.
    pub vertex_map: Vec<Option<usize>>,
}

impl ProjectedOrange {
    pub fn dim(&self) -> usize {
        self.complex.ambient_dim()
    }

    /// Vertex set of `pi(face)`.
    pub fn image_of(&self, face: &Simplex) -> Simplex {
        let ids: std::collections::BTreeSet<usize> =
            face.vertices().iter().filter_map(|&v| self.vertex_map[v]).collect();
        Simplex::new(ids.into_iter().collect()).expect("set has distinct ids")
    }
}

/// Projects an orange that is already expressed in adapted coordinates
/// (after [`AdaptedFrame::transform`]).
pub fn project(adapted: &SimplicialComplex, profile: &OrangeProfile) -> Result<ProjectedOrange> {
    let i = profile.i;
    let mut ids: BTreeMap<Point, usize> = BTreeMap::new();
    let mut vertices: Vec<Point> = Vec::new();
    let mut vertex_map = vec![None; adapted.vertices().len()];
    let mut faces: Vec<Vec<usize>> = Vec::with_capacity(adapted.maximal_faces().len());
    for s in adapted.maximal_faces() {
        let mut face = Vec::with_capacity(i + 1);
        for &v in s.vertices() {
            let image: Point = adapted.vertex(v)[..i].to_vec();
            let id = *ids.entry(image.clone()).or_insert_with(|| {
                vertices.push(image);
                vertices.len() - 1
            });
            vertex_map[v] = Some(id);
            if !face.contains(&id) {
                face.push(id);
            }
        }
        faces.push(face);
    }
    let central_vertex = vertex_map[profile.medial.vertices()[0]].expect("medial vertex is used");
    let complex = SimplicialComplex::new(i, vertices, faces)?;
    let face_map = (0..complex.maximal_faces().len()).collect();
    Ok(ProjectedOrange { complex, central_vertex, face_map, vertex_map })
}

/// An orange together with its profile, adapted frame and projection.
#[derive(Clone, Debug)]
pub struct Orange {
    pub complex: SimplicialComplex,
    pub profile: OrangeProfile,
    pub frame: AdaptedFrame,
    pub adapted: SimplicialComplex,
    pub projected: ProjectedOrange,
}

impl Orange {
    pub fn analyze(complex: &SimplicialComplex) -> Result<Self> {
        let profile = complex.detect_orange()?;
        let frame = adapt_coordinates(complex, &profile)?;
        let adapted = frame.transform(complex);
        let projected = project(&adapted, &profile)?;
        Ok(Orange { complex: complex.clone(), profile, frame, adapted, projected })
    }

    pub fn k(&self) -> usize {
        self.profile.k
    }

    pub fn i(&self) -> usize {
        self.profile.i
    }

    /// Medial vertices in adapted coordinates, first vertex at the origin.
    pub fn adapted_medial(&self) -> Vec<Point> {
        self.adapted.points_of(&self.profile.medial)
    }

    pub fn standard(&self) -> Result<StandardOrange> {
        standard_orange(&self.projected, &self.adapted_medial())
    }
}

/// `C * tau`: the standard orange built from a projected orange and a medial
/// simplex in the complementary coordinates.
#[derive(Clone, Debug)]
pub struct StandardOrange {
    pub complex: SimplicialComplex,
    pub projected: ProjectedOrange,
    /// Medial vertices in `R^k`; the first is the origin.
    pub medial: Vec<Point>,
}

impl StandardOrange {
    pub fn k(&self) -> usize {
        self.complex.ambient_dim()
    }

    pub fn i(&self) -> usize {
        self.projected.dim()
    }
}

/// Vertex layout: ids `0..=k-i` are the medial vertices (id 0 is the origin,
/// shared with the central vertex of `C`), followed by the remaining vertices
/// of `C` in their own id order, embedded as `(x, 0, ..., 0)`.
pub fn standard_orange(c: &ProjectedOrange, medial: &[Point]) -> Result<StandardOrange> {
    let i = c.dim();
    let Some(first) = medial.first() else {
        return Err(Error::InvalidStandardInput("medial simplex has no vertices".into()));
    };
    let k = first.len();
    if medial.len() != k - i + 1 || k < i {
        return Err(Error::InvalidStandardInput(format!(
            "medial simplex has {} vertices, expected {}",
            medial.len(),
            k + 1 - i
        )));
    }
    if !first.iter().all(Zero::is_zero) {
        return Err(Error::InvalidStandardInput("first medial vertex is not the origin".into()));
    }
    if medial.iter().any(|p| p.len() != k || !p[..i].iter().all(Zero::is_zero)) {
        return Err(Error::InvalidStandardInput("medial simplex leaves x1 = ... = xi = 0".into()));
    }
    let central = c.complex.vertex(c.central_vertex);
    if !central.iter().all(Zero::is_zero) {
        return Err(Error::InvalidStandardInput("central vertex of C is not the origin".into()));
    }

    let mut vertices: Vec<Point> = medial.to_vec();
    let mut lift = vec![0usize; c.complex.vertices().len()];
    for (v, p) in c.complex.vertices().iter().enumerate() {
        if v == c.central_vertex {
            lift[v] = 0;
            continue;
        }
        let mut q = p.clone();
        q.resize(k, Rational::zero());
        lift[v] = vertices.len();
        vertices.push(q);
    }
    let faces: Vec<Vec<usize>> = c
        .complex
        .maximal_faces()
        .iter()
        .map(|w| {
            let mut f: Vec<usize> = w.vertices().iter().map(|&v| lift[v]).collect();
            f.extend(1..medial.len());
            f
        })
        .collect();
    let complex = SimplicialComplex::new(k, vertices, faces)?;
    for (f, s) in complex.maximal_faces().iter().enumerate() {
        if !complex.is_affinely_independent(s) {
            return Err(Error::AffinelyDependent(f));
        }
    }
    Ok(StandardOrange { complex, projected: c.clone(), medial: medial.to_vec() })
}
