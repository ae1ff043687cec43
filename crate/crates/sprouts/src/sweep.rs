//! Brute force versus closed form over a grid of four-spot positions.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use sprouts_core::formulas::cs4_nimber_formula;
use sprouts_core::{grundy, CircularState, NimberTable};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepCell {
    pub p: u32,
    pub q: u32,
    pub formula: u64,
    pub oracle: u64,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub max_q: u32,
    pub cells: Vec<SweepCell>,
    pub pass: bool,
    /// Not serialized.
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SweepReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &SweepCell> {
        self.cells.iter().filter(|c| !c.matches)
    }
}

/// Compares the searched nimber of `[p,1,q,1]` with the closed form for every
/// `0 <= p <= q <= max_q`. Cells are evaluated in parallel on a shared table
/// and reported in `(q, p)` order.
pub fn verify_cs4<T: NimberTable + Sync + ?Sized>(max_q: u32, table: &T) -> SweepReport {
    let start = Instant::now();
    let grid: Vec<(u32, u32)> = (0..=max_q).flat_map(|q| (0..=q).map(move |p| (p, q))).collect();
    let mut cells: Vec<SweepCell> = grid
        .par_iter()
        .map(|&(p, q)| {
            let state = CircularState::cs4(p, q).expect("grid stays within supported tip counts");
            let oracle = grundy(&state, table).0;
            let formula = cs4_nimber_formula(p.into(), q.into()).0;
            SweepCell { p, q, formula, oracle, matches: formula == oracle }
        })
        .collect();
    cells.sort_by_key(|c| (c.q, c.p));
    let pass = cells.iter().all(|c| c.matches);
    SweepReport { max_q, cells, pass, wall_time: start.elapsed() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::SharedTable;

    #[test]
    fn small_sweeps_pass() {
        let table = SharedTable::new();
        let r = verify_cs4(0, &table);
        assert_eq!(r.cells, vec![SweepCell { p: 0, q: 0, formula: 1, oracle: 1, matches: true }]);
        let r = verify_cs4(6, &table);
        assert!(r.pass);
        assert_eq!(r.cells.len(), 28);
        assert_eq!(r.mismatches().count(), 0);
    }
}
