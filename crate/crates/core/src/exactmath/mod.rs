//! Exact scalars, polynomials and linear algebra.

pub mod matrix;
pub mod polynomial;
pub mod rational;

pub use matrix::{RationalMatrix, RowEchelon};
pub use polynomial::{Monomial, Polynomial};
pub use rational::{format_rational, parse_rational, rat, ratio, Point, Rational};

/// Binomial coefficient; zero when `k < 0` or `k > n`.
pub fn binom(n: u64, k: i64) -> u64 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as u128 / (t + 1) as u128;
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Exponent vectors of total degree exactly `d` in `nvars` variables, in
/// lexicographically descending order (`x1^d` first).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(prefix: &mut Vec<u32>, left: usize, rem: u32, out: &mut Vec<Vec<u32>>) {
        if left == 1 {
            prefix.push(rem);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=rem).rev() {
            prefix.push(e);
            rec(prefix, left - 1, rem - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(&mut Vec::with_capacity(nvars), nvars, d, &mut out);
    out
}

/// All exponent vectors of total degree at most `d`, graded: degree ascending,
/// and within a degree `x1` before `x2` before ... (lex descending).
pub fn monomials_upto(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    (0..=d).flat_map(|deg| monomials_of_degree(nvars, deg)).collect()
}
