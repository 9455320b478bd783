//! Independent spline-dimension oracle and the expected values frozen from it.
//!
//! The oracle never introduces cofactor unknowns. For each adjacent pair it
//! changes variables so that the facet form becomes a coordinate `y`, and
//! requires every coefficient of `f_σ - f_σ'` with `y`-degree `<= r` to
//! vanish. Ranks come from a plain dense Gauss-Jordan elimination written
//! here, not from the crate's elimination engine.

use num_traits::Zero;
use orange_core::catalog;
use orange_core::exactmath::{monomials_upto, rat, Point, Polynomial, Rational};
use orange_core::{spline_dim, SimplicialComplex};

fn dense_rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let f = &row[c] / &pivot[c];
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Hyperplane `a . x + b = 0` through the given `k` points in `R^k`.
fn hyperplane(points: &[Point]) -> (Vec<Rational>, Rational) {
    let k = points[0].len();
    // reduce [p | 1] to find a kernel vector
    let mut m: Vec<Vec<Rational>> = points
        .iter()
        .map(|p| {
            let mut row = p.clone();
            row.push(rat(1));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..=k {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free = (0..=k).find(|c| !pivots.contains(c)).expect("facet spans a hyperplane");
    let mut v = vec![rat(0); k + 1];
    v[free] = rat(1);
    for (row, &pc) in pivots.iter().enumerate() {
        v[pc] = -m[row][free].clone();
    }
    let b = v.pop().unwrap();
    (v, b)
}

pub fn remainder_oracle(complex: &SimplicialComplex, r: u32, d: u32) -> usize {
    let k = complex.ambient_dim();
    let monos = monomials_upto(k, d);
    let nm = monos.len();
    let faces = complex.maximal_faces();
    let cols = faces.len() * nm;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for a in 0..faces.len() {
        for b in a + 1..faces.len() {
            let shared = faces[a].intersection(&faces[b]);
            if shared.len() != k {
                continue;
            }
            let (coef, cst) = hyperplane(&complex.points_of(&shared));
            let p = coef.iter().position(|c| !c.is_zero()).unwrap();
            // x_p = (y - Σ_{m != p} a_m x_m - b) / a_p, with y stored in slot p
            let images: Vec<Polynomial> = (0..k)
                .map(|m| {
                    if m != p {
                        return Polynomial::var(k, m);
                    }
                    let mut lin: Vec<Rational> = coef.iter().map(|c| -c / &coef[p]).collect();
                    lin[p] = coef[p].recip();
                    Polynomial::linear(&lin, &(-&cst / &coef[p]))
                })
                .collect();
            let transformed: Vec<Polynomial> =
                monos.iter().map(|e| Polynomial::monomial(k, e.clone(), rat(1)).compose(&images)).collect();
            for target in monos.iter().filter(|mu| mu[p] <= r) {
                let mut row = vec![rat(0); cols];
                for (j, t) in transformed.iter().enumerate() {
                    let c = t.coeff(target);
                    if !c.is_zero() {
                        row[a * nm + j] += c.clone();
                        row[b * nm + j] -= c;
                    }
                }
                rows.push(row);
            }
        }
    }
    cols - dense_rank(rows)
}

fn intervals() -> SimplicialComplex {
    SimplicialComplex::new(1, vec![vec![rat(-1)], vec![rat(0)], vec![rat(1)]], vec![vec![0, 1], vec![1, 2]]).unwrap()
}

fn unit_interval() -> SimplicialComplex {
    SimplicialComplex::new(1, vec![vec![rat(0)], vec![rat(1)]], vec![vec![0, 1]]).unwrap()
}

#[test]
fn oracle_frozen_values() {
    // values computed by the remainder oracle, then frozen below
    assert_eq!(remainder_oracle(&catalog::two_triangles(), 1, 2), 7);
    let univariate: Vec<usize> = (0..=3).map(|d| remainder_oracle(&intervals(), 1, d)).collect();
    assert_eq!(univariate, vec![1, 2, 4, 6]);
    let c0: Vec<usize> = (0..=3).map(|d| remainder_oracle(&intervals(), 0, d)).collect();
    assert_eq!(c0, vec![1, 3, 5, 7]);
    assert_eq!(remainder_oracle(&catalog::two_triangles(), 1, 3), 13);
    assert_eq!(remainder_oracle(&catalog::two_tetrahedra(), 0, 3), 30);
}

#[test]
fn cofactor_system_matches_frozen_values() {
    assert_eq!(spline_dim(&catalog::two_triangles(), 1, 2).unwrap(), 7);
    let univariate: Vec<usize> = (0..=3).map(|d| spline_dim(&intervals(), 1, d).unwrap()).collect();
    assert_eq!(univariate, vec![1, 2, 4, 6]);
    let c0: Vec<usize> = (0..=3).map(|d| spline_dim(&intervals(), 0, d).unwrap()).collect();
    assert_eq!(c0, vec![1, 3, 5, 7]);
    let single: Vec<usize> = (0..=3).map(|d| spline_dim(&unit_interval(), 0, d).unwrap()).collect();
    assert_eq!(single, vec![1, 2, 3, 4]);
    assert_eq!(spline_dim(&catalog::two_triangles(), 1, 3).unwrap(), 13);
    assert_eq!(spline_dim(&catalog::two_tetrahedra(), 0, 3).unwrap(), 30);
}

#[test]
fn cofactor_system_agrees_with_oracle_on_catalog() {
    for entry in catalog::catalog() {
        let dmax = if entry.k >= 4 { 2 } else { 3 };
        for r in 0..=2 {
            for d in 0..=dmax {
                assert_eq!(
                    spline_dim(&entry.complex, r, d).unwrap(),
                    remainder_oracle(&entry.complex, r, d),
                    "{} r={r} d={d}",
                    entry.name
                );
            }
        }
    }
}
