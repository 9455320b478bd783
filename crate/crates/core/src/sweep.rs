//! Formula-versus-oracle sweeps over `(r, d)` grids.

use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::SimplicialComplex;
use crate::error::Result;
use crate::formula::orange_dim_formula;
use crate::projection::Orange;
use crate::splinedim::spline_dim;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepCell {
    pub r: u32,
    pub d: u32,
    pub formula: u64,
    pub oracle: u64,
    pub matches: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub name: String,
    pub k: usize,
    pub i: usize,
    pub cells: Vec<SweepCell>,
    pub mismatches: usize,
}

impl SweepReport {
    pub fn all_match(&self) -> bool {
        self.mismatches == 0
    }

    pub fn cell(&self, r: u32, d: u32) -> Option<&SweepCell> {
        self.cells.iter().find(|c| c.r == r && c.d == d)
    }
}

/// Evaluates both sides of the orange dimension formula on every cell.
/// Cells run in parallel; the report is ordered by `(r, d)`. Timings are
/// recorded only on request so that the default report is reproducible.
pub fn run_sweep(
    name: &str,
    complex: &SimplicialComplex,
    r_range: RangeInclusive<u32>,
    d_range: RangeInclusive<u32>,
    timings: bool,
) -> Result<SweepReport> {
    let orange = Orange::analyze(complex)?;
    let grid: Vec<(u32, u32)> = r_range.flat_map(|r| d_range.clone().map(move |d| (r, d))).collect();
    let cells = grid
        .par_iter()
        .map(|&(r, d)| {
            let start = Instant::now();
            let formula = orange_dim_formula(&orange, r, d)?;
            let oracle = spline_dim(complex, r, d)? as u64;
            Ok(SweepCell {
                r,
                d,
                formula,
                oracle,
                matches: formula == oracle,
                elapsed_ms: timings.then(|| start.elapsed().as_millis() as u64),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mismatches = cells.iter().filter(|c| !c.matches).count();
    Ok(SweepReport { name: name.to_string(), k: orange.k(), i: orange.i(), cells, mismatches })
}
