//! Seeded batches of sphere playouts.

use std::collections::BTreeMap;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sprouts_core::playout::{euler_check, random_playout};

/// One finished playout, emitted as a JSON line by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlayoutRecord {
    pub seed: u64,
    pub tips: Vec<u32>,
    pub move_count: u32,
    pub region_count: usize,
    pub euler_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PlayoutReport {
    pub tips: Vec<u32>,
    pub trials: u32,
    pub seed: u64,
    /// `(n - 2) + sum(t)`, when non-negative.
    pub expected_moves: Option<u32>,
    pub histogram: BTreeMap<u32, u32>,
    pub euler_pass_rate: f64,
    pub records: Vec<PlayoutRecord>,
}

impl PlayoutReport {
    /// Every playout had the predicted length and passed the Euler check.
    pub fn pass(&self) -> bool {
        self.histogram.len() == 1
            && self.expected_moves.is_some_and(|e| self.histogram.contains_key(&e))
            && self.euler_pass_rate == 1.0
    }
}

pub fn single_playout(tips: &[u32], seed: u64) -> PlayoutRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (move_count, end) = random_playout(tips, &mut rng);
    let euler_ok = euler_check(&end, tips, move_count).unwrap_or(false);
    PlayoutRecord { seed, tips: tips.to_vec(), move_count, region_count: end.regions.len(), euler_ok }
}

/// Runs `trials` playouts; trial `k` uses seed `seed + k`.
pub fn run_playouts(tips: &[u32], trials: u32, seed: u64) -> PlayoutReport {
    let records: Vec<PlayoutRecord> =
        (0..trials).map(|k| single_playout(tips, seed.wrapping_add(u64::from(k)))).collect();
    let mut histogram = BTreeMap::new();
    for r in &records {
        *histogram.entry(r.move_count).or_insert(0) += 1;
    }
    let passed = records.iter().filter(|r| r.euler_ok).count();
    let euler_pass_rate = if records.is_empty() { 1.0 } else { passed as f64 / records.len() as f64 };
    let expected = tips.len() as i64 - 2 + tips.iter().map(|&t| i64::from(t)).sum::<i64>();
    PlayoutReport {
        tips: tips.to_vec(),
        trials,
        seed,
        expected_moves: u32::try_from(expected).ok(),
        histogram,
        euler_pass_rate,
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_single_bar() {
        let r = run_playouts(&[3], 10, 0);
        assert_eq!(r.histogram, BTreeMap::from([(2, 10)]));
        assert!(r.pass());
        let r = run_playouts(&[5, 3, 4], 100, 42);
        assert_eq!(r.expected_moves, Some(13));
        assert!(r.pass());
    }

    #[test]
    fn same_seed_same_record() {
        assert_eq!(single_playout(&[4, 4, 2], 99), single_playout(&[4, 4, 2], 99));
    }
}
