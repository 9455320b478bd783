//! Exact rank, nullity and nullspace over `Q`.
//!
//! Rows are cleared of denominators and eliminated over `Z`. The main engine
//! ([`RowEchelon`]) works on sparse rows and keeps every stored row primitive
//! (content divided out), which bounds coefficient growth the same way the
//! Bareiss division does for dense matrices. [`RationalMatrix::rank_bareiss`]
//! is an independent dense route kept for cross-checking.

use std::collections::BTreeMap;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{format_rational, Rational};

/// Sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow<T> = Vec<(usize, T)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow<Rational>>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].push((i, Rational::one()));
        }
        m
    }

    pub fn with_cols(cols: usize) -> Self {
        Self::zeros(0, cols)
    }

    pub fn from_dense(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let mut m = Self::with_cols(cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length");
            m.push_row(r.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect());
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_dense(
            cols,
            rows.iter().map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect()).collect(),
        )
    }

    /// Appends a sparse row. Entries may arrive in any order; duplicates are summed.
    pub fn push_row(&mut self, mut entries: SparseRow<Rational>) {
        entries.sort_by_key(|(c, _)| *c);
        let mut row: SparseRow<Rational> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.cols, "column {c} out of range");
            match row.last_mut() {
                Some((lc, lv)) if *lc == c => *lv += v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|(_, v)| !v.is_zero());
        self.data.push(row);
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, Rational)] {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r]
            .binary_search_by_key(&c, |(k, _)| *k)
            .map(|i| self.data[r][i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data
            .iter()
            .map(|row| {
                let mut dense = vec![Rational::zero(); self.cols];
                for (c, v) in row {
                    dense[*c] = v.clone();
                }
                dense
            })
            .collect()
    }

    fn echelon(&self) -> RowEchelon {
        let mut ech = RowEchelon::new(self.cols);
        for row in &self.data {
            ech.insert(row);
        }
        ech
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Basis of `{x : M x = 0}`, one dense vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.echelon().nullspace()
    }

    /// Rank by dense fraction-free (Bareiss) elimination.
    pub fn rank_bareiss(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = self
            .data
            .iter()
            .map(|row| {
                let ints = clear_denominators(row);
                let mut dense = vec![BigInt::zero(); self.cols];
                for (c, v) in ints {
                    dense[c] = v;
                }
                dense
            })
            .collect();
        let rows = m.len();
        let mut prev = BigInt::one();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows {
                break;
            }
            let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let (top, rest) = m.split_at_mut(rank + 1);
            let pivot_row = &top[rank];
            let pivot = pivot_row[col].clone();
            for row in rest.iter_mut() {
                let factor = row[col].clone();
                for j in col + 1..self.cols {
                    let v = &pivot * &row[j] - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[col] = BigInt::zero();
            }
            prev = pivot;
            rank += 1;
        }
        rank
    }

    /// Writes `rows cols` on the first line, then one line per row of
    /// space-separated `p/q` entries.
    pub fn write_text<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "{} {}", self.rows, self.cols)?;
        for row in &self.data {
            let mut it = row.iter().peekable();
            let mut line = String::new();
            for c in 0..self.cols {
                if c > 0 {
                    line.push(' ');
                }
                match it.peek() {
                    Some((k, v)) if *k == c => {
                        line.push_str(&format_rational(v));
                        it.next();
                    }
                    _ => line.push('0'),
                }
            }
            writeln!(w, "{line}")?;
        }
        Ok(())
    }
}

/// Scales a rational row by the lcm of its denominators and returns the
/// primitive integer row.
pub fn clear_denominators(row: &[(usize, Rational)]) -> SparseRow<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut ints: SparseRow<BigInt> = row.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect();
    make_primitive(&mut ints);
    ints
}

fn make_primitive(row: &mut SparseRow<BigInt>) {
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a * x - b * y` on sparse integer rows.
fn combine(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> SparseRow<BigInt> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let cx = x.get(i).map_or(usize::MAX, |e| e.0);
        let cy = y.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if cx < cy {
            i += 1;
            (cx, a * &x[i - 1].1)
        } else if cy < cx {
            j += 1;
            (cy, -(b * &y[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (cx, a * &x[i - 1].1 - b * &y[j - 1].1)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    out
}

/// Incremental row-echelon form over `Z`, keyed by leading column.
///
/// Rows can be fed one at a time; [`RowEchelon::insert`] reports whether the
/// row was independent of everything inserted so far, which is what greedy
/// point selection needs.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    cols: usize,
    pivots: BTreeMap<usize, SparseRow<BigInt>>,
}

impl RowEchelon {
    pub fn new(cols: usize) -> Self {
        RowEchelon { cols, pivots: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduces `row` against the current pivots and stores the remainder if it
    /// is nonzero. Returns `true` when the rank grew.
    pub fn insert(&mut self, row: &[(usize, Rational)]) -> bool {
        let mut cur = clear_denominators(row);
        while let Some((lead, lv)) = cur.first() {
            let Some(pivot) = self.pivots.get(lead) else {
                let lead = *lead;
                self.pivots.insert(lead, cur);
                return true;
            };
            let pv = &pivot[0].1;
            let g = pv.gcd(lv);
            let (a, b) = (pv / &g, lv / &g);
            cur = combine(&a, &cur, &b, pivot);
            make_primitive(&mut cur);
        }
        false
    }

    /// Back-substitutes so that every pivot column is zero outside its own
    /// pivot row.
    fn reduce_fully(&mut self) {
        let leads: Vec<usize> = self.pivots.keys().rev().copied().collect();
        for &lead in &leads {
            let pivot = self.pivots[&lead].clone();
            let pv = &pivot[0].1;
            for (_, row) in self.pivots.range_mut(..lead) {
                let Ok(pos) = row.binary_search_by_key(&lead, |e| e.0) else {
                    continue;
                };
                let rv = row[pos].1.clone();
                let g = pv.gcd(&rv);
                let (a, b) = (pv / &g, &rv / &g);
                *row = combine(&a, row, &b, &pivot);
                make_primitive(row);
            }
        }
    }

    pub fn nullspace(mut self) -> Vec<Vec<Rational>> {
        self.reduce_fully();
        let free: Vec<usize> = (0..self.cols).filter(|c| !self.pivots.contains_key(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.cols];
            v[f] = Rational::one();
            for (&lead, row) in &self.pivots {
                if let Ok(pos) = row.binary_search_by_key(&f, |e| e.0) {
                    v[lead] = -Rational::new(row[pos].1.clone(), row[0].1.clone());
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Solves `a x = b` for `x` when `a` has full column rank and the system is
/// consistent; `None` otherwise.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        let p = (r..rows).find(|&i| !m[i][c].is_zero())?;
        m.swap(r, p);
        let inv = m[r][c].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some(m[..cols].iter().map(|row| row[cols].clone()).collect())
}

/// Rank of a small dense rational matrix.
pub fn dense_rank(rows: &[Vec<Rational>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    RationalMatrix::from_dense(cols, rows.to_vec()).rank()
}

/// Inverse of a square matrix, or `None` if singular.
pub fn invert(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rational> = (0..n).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect();
        cols.push(solve_unique(a, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}
