//! Bernstein–Bézier machinery: domain points, conversion between monomial
//! and BB coefficients, the layer structure of a standard orange, and
//! minimal determining sets.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::exactmath::matrix::invert;
use crate::exactmath::rational::format_point;
use crate::exactmath::{monomials_of_degree, monomials_upto, Point, Polynomial, Rational, RationalMatrix, RowEchelon};
use crate::formula::{orange_dim_formula, series_weight};
use crate::projection::{Orange, StandardOrange};
use crate::splinedim::{spline_basis, spline_dim, SplineSpaceBasis};

/// `Σ weights[l] * points[l] / d`; the zero vector when `d = 0`.
fn lattice_point(weights: &[u32], points: &[Point], d: u32, dim: usize) -> Point {
    let mut out = vec![Rational::zero(); dim];
    if d == 0 {
        return out;
    }
    let scale = Rational::new(BigInt::one(), BigInt::from(d));
    for (w, p) in weights.iter().zip(points) {
        if *w == 0 {
            continue;
        }
        let f = &scale * Rational::from_integer(BigInt::from(*w));
        for (o, x) in out.iter_mut().zip(p) {
            *o += &f * x;
        }
    }
    out
}

/// A domain point of one simplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomainPoint {
    #[serde(with = "crate::exactmath::rational::serde_point")]
    pub coords: Point,
    pub host: usize,
    pub multi_index: Vec<u32>,
}

/// Degree-`d` lattice of a simplex: multi-indices of length `m + 1` summing
/// to `d`, lex-descending. For `d = 0` the single point sits at the first
/// vertex.
pub fn simplex_domain_points(vertices: &[Point], d: u32) -> Vec<(Vec<u32>, Point)> {
    let dim = vertices.first().map_or(0, Vec::len);
    monomials_of_degree(vertices.len(), d)
        .into_iter()
        .map(|alpha| {
            let p = if d == 0 { vertices[0].clone() } else { lattice_point(&alpha, vertices, d, dim) };
            (alpha, p)
        })
        .collect()
}

/// Domain points of maximal face `face`.
pub fn domain_points(complex: &SimplicialComplex, face: usize, d: u32) -> Vec<DomainPoint> {
    let verts = complex.points_of(&complex.maximal_faces()[face]);
    simplex_domain_points(&verts, d)
        .into_iter()
        .map(|(multi_index, coords)| DomainPoint { coords, host: face, multi_index })
        .collect()
}

/// Domain points of a complex with points shared between simplices
/// identified by exact coordinates. Hosts are listed in face order.
#[derive(Clone, Debug)]
pub struct DomainPointSet {
    pub d: u32,
    pub points: BTreeMap<Point, Vec<(usize, Vec<u32>)>>,
}

impl DomainPointSet {
    pub fn of(complex: &SimplicialComplex, d: u32) -> Self {
        let mut points: BTreeMap<Point, Vec<(usize, Vec<u32>)>> = BTreeMap::new();
        for f in 0..complex.maximal_faces().len() {
            for p in domain_points(complex, f, d) {
                points.entry(p.coords).or_default().push((f, p.multi_index));
            }
        }
        DomainPointSet { d, points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The point with its first host.
    pub fn primary(&self, coords: &Point) -> Option<DomainPoint> {
        self.points.get(coords).map(|hosts| DomainPoint {
            coords: coords.clone(),
            host: hosts[0].0,
            multi_index: hosts[0].1.clone(),
        })
    }

    pub fn coordinate_set(&self) -> BTreeSet<Point> {
        self.points.keys().cloned().collect()
    }
}

fn multinomial(alpha: &[u32]) -> BigInt {
    let fact = |n: u32| (1..=n).fold(BigInt::one(), |acc, t| acc * BigInt::from(t));
    let total: u32 = alpha.iter().sum();
    alpha.iter().fold(fact(total), |acc, &a| acc / fact(a))
}

/// Converts between monomial coefficients and degree-`d` BB coefficients on
/// one simplex. Monomial images are cached, so converting many polynomials
/// on the same simplex is cheap.
#[derive(Clone, Debug)]
pub struct BernsteinConverter {
    vertices: Vec<Point>,
    d: u32,
    multi_indices: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    monomial_images: HashMap<Vec<u32>, Vec<Rational>>,
}

impl BernsteinConverter {
    pub fn new(vertices: &[Point], d: u32) -> Self {
        let multi_indices = monomials_of_degree(vertices.len(), d);
        let index = multi_indices.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        BernsteinConverter { vertices: vertices.to_vec(), d, multi_indices, index, monomial_images: HashMap::new() }
    }

    pub fn multi_indices(&self) -> &[Vec<u32>] {
        &self.multi_indices
    }

    pub fn index_of(&self, alpha: &[u32]) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    fn nvars(&self) -> usize {
        self.vertices.first().map_or(0, Vec::len)
    }

    /// Precomputes the BB images of all monomials up to degree `d`.
    pub fn warm(&mut self) {
        for e in monomials_upto(self.nvars(), self.d) {
            self.monomial_image(&e);
        }
    }

    /// BB coefficients of `x^e`: substitute `x = Σ λ_l v_l`, homogenize with
    /// `1 = Σ λ_l`, and divide each coefficient by its multinomial.
    fn monomial_image(&mut self, e: &[u32]) -> &[Rational] {
        if !self.monomial_images.contains_key(e) {
            let nl = self.vertices.len();
            let zero = Rational::zero();
            let coordinate_forms: Vec<Polynomial> = (0..self.nvars())
                .map(|c| Polynomial::linear(&self.vertices.iter().map(|v| v[c].clone()).collect::<Vec<_>>(), &zero))
                .collect();
            let sum = Polynomial::linear(&vec![Rational::one(); nl], &zero);
            let deg: u32 = e.iter().sum();
            let mut h = sum.pow(self.d - deg);
            for (c, &p) in e.iter().enumerate() {
                if p > 0 {
                    h = &h * &coordinate_forms[c].pow(p);
                }
            }
            let coeffs =
                self.multi_indices.iter().map(|a| h.coeff(a) / Rational::from_integer(multinomial(a))).collect();
            self.monomial_images.insert(e.to_vec(), coeffs);
        }
        &self.monomial_images[e]
    }

    pub fn to_bb(&mut self, poly: &Polynomial) -> Result<Vec<Rational>> {
        if let Some(deg) = poly.degree() {
            if deg > self.d {
                return Err(Error::DegreeOverflow { degree: deg, max: self.d });
            }
        }
        let mut out = vec![Rational::zero(); self.multi_indices.len()];
        for (m, c) in poly.terms() {
            let image = self.monomial_image(m.exponents());
            for (o, v) in out.iter_mut().zip(image) {
                if !v.is_zero() {
                    *o += c * v;
                }
            }
        }
        Ok(out)
    }

    /// Inverse conversion; the simplex must be full-dimensional.
    pub fn from_bb(&self, coeffs: &[Rational]) -> Result<Polynomial> {
        let n = self.nvars();
        if self.vertices.len() != n + 1 {
            return Err(Error::NotFullDimensional { dim: self.vertices.len() - 1, ambient: n });
        }
        let v0 = &self.vertices[0];
        // columns v_l - v_0
        let basis: Vec<Vec<Rational>> =
            (0..n).map(|c| (1..=n).map(|l| &self.vertices[l][c] - &v0[c]).collect()).collect();
        let inv = invert(&basis).ok_or(Error::AffinelyDependent(0))?;
        let shift: Vec<Rational> = v0.iter().map(|x| -x.clone()).collect();
        let mut lambdas: Vec<Polynomial> = Vec::with_capacity(n + 1);
        let mut rest = Polynomial::one(n);
        for row in &inv {
            let constant: Rational = row.iter().zip(&shift).map(|(a, b)| a * b).sum();
            let mu = Polynomial::linear(row, &constant);
            rest = &rest - &mu;
            lambdas.push(mu);
        }
        lambdas.insert(0, rest);
        let h = Polynomial::from_terms(
            n + 1,
            self.multi_indices.iter().zip(coeffs).map(|(a, c)| (a.clone(), c * Rational::from_integer(multinomial(a)))),
        );
        Ok(h.compose(&lambdas))
    }
}

pub fn monomial_to_bb(poly: &Polynomial, vertices: &[Point], d: u32) -> Result<Vec<Rational>> {
    BernsteinConverter::new(vertices, d).to_bb(poly)
}

pub fn bb_to_monomial(coeffs: &[Rational], vertices: &[Point], d: u32) -> Result<Polynomial> {
    BernsteinConverter::new(vertices, d).from_bb(coeffs)
}

/// BB coefficients of every basis spline on every maximal face.
pub struct BbTable {
    converters: Vec<BernsteinConverter>,
    /// `[face][spline][multi-index position]`
    coeffs: Vec<Vec<Vec<Rational>>>,
}

impl BbTable {
    pub fn new(complex: &SimplicialComplex, basis: &SplineSpaceBasis) -> Result<Self> {
        let mut converters = Vec::new();
        let mut coeffs = Vec::new();
        for (f, s) in complex.maximal_faces().iter().enumerate() {
            let mut conv = BernsteinConverter::new(&complex.points_of(s), basis.d);
            conv.warm();
            let per_spline = basis.splines.iter().map(|sp| conv.to_bb(&sp.pieces[f])).collect::<Result<Vec<_>>>()?;
            converters.push(conv);
            coeffs.push(per_spline);
        }
        Ok(BbTable { converters, coeffs })
    }

    /// The functional "BB coefficient at this domain point" as a row over the basis.
    pub fn row(&self, point: &DomainPoint) -> Vec<(usize, Rational)> {
        let pos = self.converters[point.host].index_of(&point.multi_index).expect("multi-index of this degree");
        self.coeffs[point.host]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c[pos].is_zero())
            .map(|(s, c)| (s, c[pos].clone()))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalDeterminingSet {
    pub r: u32,
    pub d: u32,
    pub points: Vec<DomainPoint>,
}

impl MinimalDeterminingSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Domain points ordered by distance layer from `center` (`d` minus the
/// barycentric index at the center), then by coordinates.
pub fn ordered_domain_points(complex: &SimplicialComplex, center: Option<usize>, d: u32) -> Vec<DomainPoint> {
    let set = DomainPointSet::of(complex, d);
    let mut keyed: Vec<(u32, DomainPoint)> = set
        .points
        .keys()
        .map(|coords| {
            let p = set.primary(coords).expect("present");
            let layer = center
                .and_then(|c| {
                    let face = &complex.maximal_faces()[p.host];
                    face.vertices().iter().position(|&v| v == c).map(|pos| d - p.multi_index[pos])
                })
                .unwrap_or(d);
            (layer, p)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.coords.cmp(&b.1.coords)));
    keyed.into_iter().map(|(_, p)| p).collect()
}

/// Greedy rank selection of domain points whose BB functionals are
/// independent on `S^r_d`, until they determine the whole space.
pub fn compute_mds_with_center(
    complex: &SimplicialComplex,
    center: Option<usize>,
    r: u32,
    d: u32,
) -> Result<MinimalDeterminingSet> {
    let basis = spline_basis(complex, r, d)?;
    let table = BbTable::new(complex, &basis)?;
    let mut ech = RowEchelon::new(basis.dim());
    let mut chosen = Vec::with_capacity(basis.dim());
    for p in ordered_domain_points(complex, center, d) {
        if ech.rank() == basis.dim() {
            break;
        }
        if ech.insert(&table.row(&p)) {
            chosen.push(p);
        }
    }
    Ok(MinimalDeterminingSet { r, d, points: chosen })
}

/// [`compute_mds_with_center`] centered on the first medial vertex when the
/// complex is an orange.
pub fn compute_mds(complex: &SimplicialComplex, r: u32, d: u32) -> Result<MinimalDeterminingSet> {
    let center = complex.detect_orange().ok().map(|p| p.medial.vertices()[0]);
    compute_mds_with_center(complex, center, r, d)
}

#[derive(Clone, Debug, Serialize)]
pub struct Shift {
    /// `(j, j_1, ..., j_{k-i})`
    pub index: Vec<u32>,
    #[serde(with = "crate::exactmath::rational::serde_point")]
    pub vector: Point,
}

#[derive(Clone, Debug, Serialize)]
pub struct Layer {
    pub j: u32,
    /// `(j/d) C` lattice in `R^i`.
    #[serde(with = "crate::exactmath::rational::serde_points")]
    pub lattice: Vec<Point>,
    pub shifts: Vec<Shift>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LayerDecomposition {
    pub d: u32,
    pub k: usize,
    pub i: usize,
    pub levels: Vec<Layer>,
    pub total_points: usize,
}

/// Domain points of the medial simplex with first index `j`.
fn medial_shifts(standard: &StandardOrange, d: u32, j: u32) -> Vec<Shift> {
    let k = standard.k();
    let tail = &standard.medial[1..];
    monomials_of_degree(tail.len(), d - j)
        .into_iter()
        .map(|rest| {
            let vector = lattice_point(&rest, tail, d, k);
            let mut index = vec![j];
            index.extend(rest);
            Shift { index, vector }
        })
        .collect()
}

/// `(j/d) C` lattice: points `Σ ℓ_l u_l / d` over every maximal face of `C`.
fn scaled_lattice(standard: &StandardOrange, d: u32, j: u32) -> Vec<Point> {
    let c = &standard.projected.complex;
    let i = standard.i();
    let mut set = BTreeSet::new();
    for s in c.maximal_faces() {
        let verts = c.points_of(s);
        for l in monomials_of_degree(verts.len(), j) {
            set.insert(lattice_point(&l, &verts, d, i));
        }
    }
    set.into_iter().collect()
}

fn lift_point(p: &[Rational], shift: &[Rational]) -> Point {
    let mut q: Point = shift.to_vec();
    for (a, b) in q.iter_mut().zip(p) {
        *a += b;
    }
    q
}

/// Splits the domain points of a standard orange into shifted copies of the
/// scaled projected orange and verifies the split is an exact partition.
pub fn layer_decomposition(standard: &StandardOrange, d: u32) -> Result<LayerDecomposition> {
    let all = DomainPointSet::of(&standard.complex, d).coordinate_set();
    let m = standard.k() - standard.i();
    let mut union = BTreeSet::new();
    let mut levels = Vec::with_capacity(d as usize + 1);
    for j in 0..=d {
        let lattice = scaled_lattice(standard, d, j);
        let shifts = medial_shifts(standard, d, j);
        if shifts.len() as u64 != series_weight(d - j, m) {
            return Err(Error::SetMismatch(format!("level {j} has {} shifts", shifts.len())));
        }
        for s in &shifts {
            for p in &lattice {
                let q = lift_point(p, &s.vector);
                if !union.insert(q.clone()) {
                    return Err(Error::SetMismatch(format!("point {} covered twice", format_point(&q))));
                }
            }
        }
        levels.push(Layer { j, lattice, shifts });
    }
    if union != all {
        let extra = union.difference(&all).next().map(|p| format_point(p));
        let missing = all.difference(&union).next().map(|p| format_point(p));
        return Err(Error::SetMismatch(format!("extra {extra:?}, missing {missing:?}")));
    }
    Ok(LayerDecomposition { d, k: standard.k(), i: standard.i(), levels, total_points: union.len() })
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftedPoint {
    #[serde(with = "crate::exactmath::rational::serde_point")]
    pub coords: Point,
    pub level: u32,
    pub shift: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftedMds {
    pub r: u32,
    pub d: u32,
    pub points: Vec<LiftedPoint>,
    /// `|M_j|` for `j = 0..=d`.
    pub level_sizes: Vec<usize>,
    /// `Σ_j binom(d+k-j-i-1, k-i-1) |M_j|`.
    pub weighted_cardinality: u64,
    pub formula: u64,
}

/// Lifts minimal determining sets of `S^r_j(C)` for `j = 0..=d` to the
/// standard orange: `M' = ⋃_j {M_j + ξ : ξ ∈ D^τ with first index j}`.
/// Level 0 is the single origin point, so `C` must be facet-connected.
pub fn lift_mds(standard: &StandardOrange, r: u32, d: u32) -> Result<LiftedMds> {
    let c = &standard.projected;
    let (k, i) = (standard.k(), standard.i());
    // level 0 is a single point only when constants are the whole of S^r_0(C)
    let constants = spline_dim(&c.complex, r, 0)?;
    if constants != 1 {
        return Err(Error::NotFacetConnected(constants));
    }
    let mut points = Vec::new();
    let mut level_sizes = Vec::with_capacity(d as usize + 1);
    let mut seen = BTreeSet::new();
    for j in 0..=d {
        let base: Vec<Point> = if j == 0 {
            vec![vec![Rational::zero(); i]]
        } else {
            let scale = Rational::new(BigInt::from(j), BigInt::from(d));
            compute_mds_with_center(&c.complex, Some(c.central_vertex), r, j)?
                .points
                .into_iter()
                .map(|p| p.coords.iter().map(|x| x * &scale).collect())
                .collect()
        };
        level_sizes.push(base.len());
        for s in medial_shifts(standard, d, j) {
            for p in &base {
                let coords = lift_point(p, &s.vector);
                if !seen.insert(coords.clone()) {
                    return Err(Error::SetMismatch(format!("lifted point {} repeats", format_point(&coords))));
                }
                points.push(LiftedPoint { coords, level: j, shift: s.index.clone() });
            }
        }
    }
    let weighted: u64 =
        level_sizes.iter().enumerate().map(|(j, &n)| series_weight(d - j as u32, k - i) * n as u64).sum();
    if weighted != points.len() as u64 {
        return Err(Error::CardinalityMismatch { lifted: points.len(), expected: weighted as usize });
    }
    let formula = orange_dim_formula(&Orange::analyze(&standard.complex)?, r, d)?;
    if formula != weighted {
        return Err(Error::CardinalityMismatch { lifted: points.len(), expected: formula as usize });
    }
    Ok(LiftedMds { r, d, points, level_sizes, weighted_cardinality: weighted, formula })
}

#[derive(Clone, Debug, Serialize)]
pub struct SelectionCheck {
    pub points: usize,
    pub dim: usize,
    pub rank: usize,
    pub invertible: bool,
}

/// Rank test: the BB functionals at `points` restricted to a basis of
/// `S^r_d` form a square invertible matrix.
pub fn check_determining_set(complex: &SimplicialComplex, r: u32, d: u32, points: &[Point]) -> Result<SelectionCheck> {
    let basis = spline_basis(complex, r, d)?;
    let table = BbTable::new(complex, &basis)?;
    let set = DomainPointSet::of(complex, d);
    let mut m = RationalMatrix::with_cols(basis.dim());
    for p in points {
        let dp = set.primary(p).ok_or_else(|| Error::UnknownDomainPoint(format_point(p)))?;
        m.push_row(table.row(&dp));
    }
    let rank = m.rank();
    debug_assert_eq!(basis.dim(), spline_dim(complex, r, d)?);
    Ok(SelectionCheck {
        points: points.len(),
        dim: basis.dim(),
        rank,
        invertible: points.len() == basis.dim() && rank == basis.dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};

    fn pts(raw: &[&[i64]]) -> Vec<Point> {
        raw.iter().map(|p| p.iter().map(|&v| rat(v)).collect()).collect()
    }

    #[test]
    fn interval_points() {
        let got: Vec<Point> = simplex_domain_points(&pts(&[&[0], &[1]]), 2).into_iter().map(|(_, p)| p).collect();
        assert_eq!(got, vec![vec![rat(0)], vec![ratio(1, 2)], vec![rat(1)]]);
    }

    #[test]
    fn triangle_degree_one_is_vertices() {
        let v = pts(&[&[0, 0], &[1, 0], &[0, 1]]);
        let got: BTreeSet<Point> = simplex_domain_points(&v, 1).into_iter().map(|(_, p)| p).collect();
        assert_eq!(got, v.into_iter().collect());
    }

    #[test]
    fn lattice_counts() {
        let tet = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        for d in 0..6 {
            assert_eq!(simplex_domain_points(&tet, d).len() as u64, crate::exactmath::binom(d as u64 + 3, 3));
        }
    }

    #[test]
    fn bb_examples() {
        let unit = pts(&[&[0], &[1]]);
        assert_eq!(monomial_to_bb(&Polynomial::one(1), &unit, 3).unwrap(), vec![rat(1); 4]);
        // multi-index (1,0) is the point 0, (0,1) the point 1
        assert_eq!(monomial_to_bb(&Polynomial::var(1, 0), &unit, 1).unwrap(), vec![rat(0), rat(1)]);
        assert_eq!(monomial_to_bb(&Polynomial::var(1, 0).pow(2), &unit, 2).unwrap(), vec![rat(0), rat(0), rat(1)]);
        assert!(matches!(
            monomial_to_bb(&Polynomial::var(1, 0).pow(3), &unit, 2),
            Err(Error::DegreeOverflow { degree: 3, max: 2 })
        ));
    }

    #[test]
    fn bb_roundtrip_triangle() {
        let tri = vec![vec![ratio(1, 2), rat(0)], vec![rat(3), rat(1)], vec![rat(-1), rat(2)]];
        let p = Polynomial::from_terms(2, [(vec![2, 0], rat(3)), (vec![0, 1], ratio(-1, 3)), (vec![0, 0], rat(5))]);
        let bb = monomial_to_bb(&p, &tri, 3).unwrap();
        assert_eq!(bb_to_monomial(&bb, &tri, 3).unwrap(), p);
    }

    #[test]
    fn lifting_needs_a_facet_connected_projection() {
        // two tetrahedra over a bowtie: they share only the medial edge
        let c = SimplicialComplex::new(
            3,
            pts(&[&[0, 0, 0], &[0, 0, 1], &[1, 0, 0], &[0, 1, 0], &[-1, 0, 0], &[0, -1, 0]]),
            vec![vec![0, 1, 2, 3], vec![0, 1, 4, 5]],
        )
        .unwrap();
        let standard = Orange::analyze(&c).unwrap().standard().unwrap();
        assert!(matches!(lift_mds(&standard, 0, 2), Err(Error::NotFacetConnected(2))));
        assert_eq!(layer_decomposition(&standard, 2).unwrap().total_points, 17);
    }
}
