//! Spline dimension by the cofactor criterion.
//!
//! A spline of degree `d` and smoothness `r` is one polynomial `f_σ` per
//! maximal face such that for every facet-adjacent pair sharing `ε`,
//! `f_σ - f_σ' = c_ε ℓ_ε^{r+1}` for some polynomial `c_ε`. Both the `f` and
//! the `c` coefficients are unknowns of one linear system. The map
//! `(f, c) -> f` is injective (no zero divisors), so the nullity of the
//! system is the spline dimension.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::complex::{AdjacentPair, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::exactmath::matrix::solve_unique;
use crate::exactmath::{monomials_upto, Monomial, Polynomial, Rational, RationalMatrix};

/// Linear form vanishing on a facet, normalized so its first nonzero
/// coefficient (in the order `x1, ..., xk, constant`) is one.
pub fn facet_linear_form(complex: &SimplicialComplex, facet: &Simplex) -> Result<Polynomial> {
    let k = complex.ambient_dim();
    if facet.len() != k {
        return Err(Error::NotAFacet);
    }
    // unknowns (a_1..a_k, b): a . v + b = 0 for each facet vertex
    let rows: Vec<Vec<Rational>> = facet
        .vertices()
        .iter()
        .map(|&v| {
            let mut row = complex.vertex(v).clone();
            row.push(Rational::one());
            row
        })
        .collect();
    let m = RationalMatrix::from_dense(k + 1, rows);
    let ns = m.nullspace();
    if ns.len() != 1 {
        return Err(Error::AffinelyDependent(0));
    }
    let v = &ns[0];
    let lead = v.iter().find(|c| !c.is_zero()).expect("nullspace vector is nonzero").clone();
    let v: Vec<Rational> = v.iter().map(|c| c / &lead).collect();
    let form = Polynomial::linear(&v[..k], &v[k]);
    if form.degree() != Some(1) {
        return Err(Error::AffinelyDependent(0));
    }
    Ok(form)
}

/// Column layout and constraint matrix of the cofactor system.
#[derive(Clone, Debug)]
pub struct CofactorSystem {
    pub r: u32,
    pub d: u32,
    pub nvars: usize,
    pub faces: usize,
    pub pairs: Vec<AdjacentPair>,
    /// Basis of polynomials of degree `<= d`, graded order.
    pub monomials: Vec<Vec<u32>>,
    /// Basis of cofactors, degree `<= d - r - 1` (empty when `d <= r`).
    pub cofactor_monomials: Vec<Vec<u32>>,
    pub matrix: RationalMatrix,
}

impl CofactorSystem {
    /// Columns: the `f_σ` blocks in face order, then one cofactor block per
    /// adjacent pair. Rows: adjacent pairs in order, then monomials.
    pub fn assemble(complex: &SimplicialComplex, r: u32, d: u32) -> Result<Self> {
        let k = complex.require_full_dimensional()?;
        let monomials = monomials_upto(k, d);
        let index: HashMap<&[u32], usize> = monomials.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let cofactor_monomials = if d > r { monomials_upto(k, d - r - 1) } else { Vec::new() };
        let faces = complex.maximal_faces().len();
        let pairs = complex.adjacent_pairs().to_vec();
        let nm = monomials.len();
        let nc = cofactor_monomials.len();
        let cols = faces * nm + pairs.len() * nc;
        let mut matrix = RationalMatrix::with_cols(cols);
        for (p, pair) in pairs.iter().enumerate() {
            let ell = facet_linear_form(complex, &pair.shared)?;
            let power = ell.linear_power(r + 1)?;
            let mut rows: Vec<Vec<(usize, Rational)>> = (0..nm)
                .map(|m| vec![(pair.first * nm + m, Rational::one()), (pair.second * nm + m, -Rational::one())])
                .collect();
            let cof_base = faces * nm + p * nc;
            for (b, beta) in cofactor_monomials.iter().enumerate() {
                let shift = Monomial(beta.clone());
                for (m, c) in power.terms() {
                    let target = m.mul(&shift);
                    let row = index[target.exponents()];
                    rows[row].push((cof_base + b, -c.clone()));
                }
            }
            for row in rows {
                matrix.push_row(row);
            }
        }
        Ok(CofactorSystem { r, d, nvars: k, faces, pairs, monomials, cofactor_monomials, matrix })
    }

    pub fn f_columns(&self) -> usize {
        self.faces * self.monomials.len()
    }

    pub fn nullity(&self) -> usize {
        self.matrix.nullity()
    }

    /// Splits a solution vector into per-face polynomials.
    fn spline_from(&self, v: &[Rational]) -> Spline {
        let nm = self.monomials.len();
        let pieces = (0..self.faces)
            .map(|f| {
                Polynomial::from_terms(
                    self.nvars,
                    self.monomials
                        .iter()
                        .enumerate()
                        .map(|(m, e)| (e.clone(), v[f * nm + m].clone()))
                        .filter(|(_, c)| !c.is_zero()),
                )
            })
            .collect();
        Spline { pieces }
    }
}

/// `dim S^r_d` of a pure full-dimensional complex.
pub fn spline_dim(complex: &SimplicialComplex, r: u32, d: u32) -> Result<usize> {
    Ok(CofactorSystem::assemble(complex, r, d)?.nullity())
}

/// One polynomial per maximal face.
#[derive(Clone, Debug, PartialEq)]
pub struct Spline {
    pub pieces: Vec<Polynomial>,
}

impl Spline {
    /// Checks `ℓ_ε^{r+1} | f_σ - f_σ'` by exact division for every adjacent
    /// pair, and that each cofactor has degree `<= d - r - 1`.
    pub fn satisfies_cofactor_conditions(&self, complex: &SimplicialComplex, r: u32, d: u32) -> Result<bool> {
        for pair in complex.adjacent_pairs() {
            let ell = facet_linear_form(complex, &pair.shared)?;
            let diff = &self.pieces[pair.first] - &self.pieces[pair.second];
            let Some(cof) = diff.div_exact(&ell.linear_power(r + 1)?) else {
                return Ok(false);
            };
            if let Some(deg) = cof.degree() {
                if deg + r + 1 > d {
                    return Ok(false);
                }
            }
        }
        Ok(self.pieces.iter().all(|p| p.degree().is_none_or(|g| g <= d)))
    }

    pub fn eval_on(&self, face: usize, point: &[Rational]) -> Rational {
        self.pieces[face].eval(point)
    }
}

#[derive(Clone, Debug)]
pub struct SplineSpaceBasis {
    pub r: u32,
    pub d: u32,
    pub splines: Vec<Spline>,
}

impl SplineSpaceBasis {
    pub fn dim(&self) -> usize {
        self.splines.len()
    }
}

/// Exact basis of `S^r_d`: the nullspace of the cofactor system restricted
/// to the `f` blocks. Every member is re-verified by exact division.
pub fn spline_basis(complex: &SimplicialComplex, r: u32, d: u32) -> Result<SplineSpaceBasis> {
    let system = CofactorSystem::assemble(complex, r, d)?;
    let splines: Vec<Spline> = system.matrix.nullspace().iter().map(|v| system.spline_from(v)).collect();
    for s in &splines {
        assert!(s.satisfies_cofactor_conditions(complex, r, d)?, "nullspace vector violates a cofactor condition");
    }
    Ok(SplineSpaceBasis { r, d, splines })
}

/// Coordinates of `spline` in `basis`, if it lies in the span.
pub fn coordinates_in(basis: &SplineSpaceBasis, spline: &Spline, monomials: &[Vec<u32>]) -> Option<Vec<Rational>> {
    let faces = spline.pieces.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for f in 0..faces {
        for m in monomials {
            rows.push(basis.splines.iter().map(|s| s.pieces[f].coeff(m)).collect());
            rhs.push(spline.pieces[f].coeff(m));
        }
    }
    solve_unique(&rows, &rhs)
}
