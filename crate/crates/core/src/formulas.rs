//! Closed forms for move counts, winners and four-spot circular nimbers.
//!
//! Each evaluator checks the hypotheses its closed form needs and refuses
//! inputs outside them instead of extrapolating.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use thiserror::Error;

use crate::grundy::Nimber;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("a game needs at least one spot")]
    NoSpots,
    #[error("{n} spots declared but {len} tip counts given")]
    TipCountMismatch { n: usize, len: usize },
    #[error("girth bound must be at least 3, got {0}")]
    GirthTooSmall(u32),
    #[error("the move-count bounds need at least 2 spots, got {0}")]
    BoundsNeedTwoSpots(usize),
    #[error("the move-count bounds need every spot to carry at least 3 tips; spot {spot} has {tips}")]
    BoundsNeedThreeTips { spot: usize, tips: u32 },
    #[error("degenerate game: the move count formula gives {0}")]
    NegativeMoveCount(i64),
    #[error("tip counts must be non-negative, got {0}")]
    NegativeTips(i64),
}

/// Starting configuration of a generalized Brussels sprout game.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameSpec {
    pub tips: Vec<u32>,
    /// Genus of the surface: handles when orientable, crosscaps otherwise.
    pub genus: u32,
    /// Girth lower bound of the graph family, when one applies.
    pub girth: Option<u32>,
}

impl GameSpec {
    pub fn new(tips: Vec<u32>) -> Result<Self, FormulaError> {
        if tips.is_empty() {
            return Err(FormulaError::NoSpots);
        }
        Ok(GameSpec { tips, genus: 0, girth: None })
    }

    /// Builds a spec from an explicit spot count, checking it against `tips`.
    pub fn with_spots(n: usize, tips: Vec<u32>) -> Result<Self, FormulaError> {
        if n == 0 {
            return Err(FormulaError::NoSpots);
        }
        if tips.len() != n {
            return Err(FormulaError::TipCountMismatch { n, len: tips.len() });
        }
        Self::new(tips)
    }

    pub fn genus(mut self, k: u32) -> Self {
        self.genus = k;
        self
    }

    pub fn girth(mut self, g: u32) -> Result<Self, FormulaError> {
        if g < 3 {
            return Err(FormulaError::GirthTooSmall(g));
        }
        self.girth = Some(g);
        Ok(self)
    }

    pub fn spots(&self) -> usize {
        self.tips.len()
    }

    pub fn total_tips(&self) -> u64 {
        self.tips.iter().map(|&t| u64::from(t)).sum()
    }

    fn base_count(&self) -> i64 {
        self.spots() as i64 - 2 + self.total_tips() as i64
    }
}

/// Sorted set of possible total move counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveCountSet(pub BTreeSet<u64>);

impl MoveCountSet {
    pub fn values(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().copied()
    }

    pub fn min(&self) -> u64 {
        *self.0.first().expect("move count sets are never empty")
    }

    pub fn max(&self) -> u64 {
        *self.0.last().expect("move count sets are never empty")
    }

    pub fn single_parity(&self) -> bool {
        let mut parities = self.0.iter().map(|v| v % 2);
        let first = parities.next();
        parities.all(|p| Some(p) == first)
    }
}

impl core::fmt::Display for MoveCountSet {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("{")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Moves in the game restricted to forests: every play builds a spanning
/// tree on the spots.
pub fn forest_moves(spec: &GameSpec) -> u64 {
    spec.spots() as u64 - 1
}

fn move_counts(spec: &GameSpec, step: i64) -> Result<MoveCountSet, FormulaError> {
    let base = spec.base_count();
    if base < 0 {
        return Err(FormulaError::NegativeMoveCount(base));
    }
    let values = (0..=i64::from(spec.genus)).map(|j| (base + step * j) as u64).collect();
    Ok(MoveCountSet(values))
}

/// Possible move counts on the orientable surface of genus `spec.genus`:
/// `(n - 2) + 2j + sum(t)` for `j = 0..=k`.
pub fn orientable_moves(spec: &GameSpec) -> Result<MoveCountSet, FormulaError> {
    move_counts(spec, 2)
}

/// Possible move counts on the non-orientable surface with `spec.genus`
/// crosscaps: `(n - 2) + j + sum(t)` for `j = 0..=k`.
pub fn nonorientable_moves(spec: &GameSpec) -> Result<MoveCountSet, FormulaError> {
    move_counts(spec, 1)
}

/// Winner on the sphere, and on any orientable surface, where every move
/// count shares one parity: the first player wins iff `n + sum(t)` is odd.
pub fn first_player_wins_planar(spec: &GameSpec) -> bool {
    (spec.spots() as u64 + spec.total_tips()) % 2 == 1
}

/// Whether girth at least `g` forces the final graph to be a tree, in which
/// case the game lasts exactly `n - 1` moves.
pub fn girth_forces_tree(n: usize, g: u32) -> Result<bool, FormulaError> {
    if g < 3 {
        return Err(FormulaError::GirthTooSmall(g));
    }
    Ok(u64::from(g) >= 2 * n as u64 + 1)
}

/// Move count range for the triangle-free planar game with at least two
/// spots of at least three tips each: `(4 + n, (n - 2) + sum(t))`.
pub fn bs_p4_move_bounds(spec: &GameSpec) -> Result<(u64, u64), FormulaError> {
    let n = spec.spots();
    if n < 2 {
        return Err(FormulaError::BoundsNeedTwoSpots(n));
    }
    if let Some((spot, &tips)) = spec.tips.iter().enumerate().find(|(_, &t)| t < 3) {
        return Err(FormulaError::BoundsNeedThreeTips { spot: spot + 1, tips });
    }
    Ok((4 + n as u64, spec.base_count() as u64))
}

/// Which branch of the four-spot nimber closed form applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cs4Case {
    Equal,
    Middle { residue: u64 },
    Saturated,
}

/// `q`-threshold above which `[p,1,q,1]` saturates at nimber `2p`.
fn saturation_threshold(p: u64) -> i64 {
    2 * p as i64 - (p as i64 - 2).abs() / 2
}

pub fn cs4_case(p: u64, q: u64) -> Cs4Case {
    let (p, q) = if p <= q { (p, q) } else { (q, p) };
    if p == q {
        Cs4Case::Equal
    } else if q as i64 >= saturation_threshold(p) {
        Cs4Case::Saturated
    } else {
        // representatives 1..=5, with 5 standing for 0
        Cs4Case::Middle { residue: (p + q + 4) % 5 + 1 }
    }
}

/// Closed-form nimber of the circular position `[p, 1, q, 1]`.
pub fn cs4_nimber_formula(p: u64, q: u64) -> Nimber {
    let lo = p.min(q);
    let value = match cs4_case(p, q) {
        Cs4Case::Equal => 1,
        Cs4Case::Saturated => 2 * lo,
        Cs4Case::Middle { residue } => 4 * (p + q - residue) / 5 + 2 * (residue / 4),
    };
    Nimber(value)
}

/// Signed entry point for untrusted input.
pub fn cs4_nimber_formula_checked(p: i64, q: i64) -> Result<Nimber, FormulaError> {
    for v in [p, q] {
        if v < 0 {
            return Err(FormulaError::NegativeTips(v));
        }
    }
    Ok(cs4_nimber_formula(p as u64, q as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn spec(tips: &[u32]) -> GameSpec {
        GameSpec::new(tips.to_vec()).unwrap()
    }

    fn set(v: &[u64]) -> MoveCountSet {
        MoveCountSet(v.iter().copied().collect())
    }

    #[test]
    fn forest() {
        assert_eq!(forest_moves(&spec(&[0; 5])), 4);
        assert_eq!(forest_moves(&spec(&[3])), 0);
        assert_eq!(forest_moves(&spec(&[1, 1])), 1);
    }

    #[test]
    fn orientable() {
        assert_eq!(orientable_moves(&spec(&[4, 4])).unwrap(), set(&[8]));
        assert_eq!(orientable_moves(&spec(&[4, 4]).genus(1)).unwrap(), set(&[8, 10]));
        assert_eq!(orientable_moves(&spec(&[4])).unwrap(), set(&[3]));
        assert_eq!(orientable_moves(&spec(&[0])), Err(FormulaError::NegativeMoveCount(-1)));
    }

    #[test]
    fn nonorientable() {
        assert_eq!(nonorientable_moves(&spec(&[4, 4]).genus(2)).unwrap(), set(&[8, 9, 10]));
        assert_eq!(nonorientable_moves(&spec(&[4])).unwrap(), set(&[3]));
        assert_eq!(nonorientable_moves(&spec(&[0])), Err(FormulaError::NegativeMoveCount(-1)));
    }

    #[test]
    fn parity_structure() {
        for k in 0..6 {
            for tips in [vec![4, 4], vec![3], vec![3, 5, 2]] {
                let s = spec(&tips).genus(k);
                let o = orientable_moves(&s).unwrap();
                assert!(o.single_parity());
                // the orientable winner never depends on the genus
                assert_eq!(o.min() % 2 == 1, first_player_wins_planar(&s));
                let no = nonorientable_moves(&s).unwrap();
                assert_eq!(no.single_parity(), k == 0);
            }
        }
    }

    #[test]
    fn planar_winner() {
        assert!(first_player_wins_planar(&spec(&[4])));
        assert!(!first_player_wins_planar(&spec(&[4, 4])));
        assert!(first_player_wins_planar(&spec(&[3, 4]).genus(3)));
    }

    #[test]
    fn girth_threshold() {
        assert_eq!(girth_forces_tree(3, 7), Ok(true));
        assert_eq!(girth_forces_tree(3, 6), Ok(false));
        assert_eq!(girth_forces_tree(1, 3), Ok(true));
        assert_eq!(girth_forces_tree(2, 2), Err(FormulaError::GirthTooSmall(2)));
        assert!(spec(&[1]).girth(2).is_err());
    }

    #[test]
    fn p4_bounds() {
        assert_eq!(bs_p4_move_bounds(&spec(&[3, 3])), Ok((6, 6)));
        assert_eq!(bs_p4_move_bounds(&spec(&[4, 5])), Ok((6, 9)));
        assert_eq!(bs_p4_move_bounds(&spec(&[3, 3, 3])), Ok((7, 10)));
        assert_eq!(bs_p4_move_bounds(&spec(&[5])), Err(FormulaError::BoundsNeedTwoSpots(1)));
        assert_eq!(
            bs_p4_move_bounds(&spec(&[3, 2])),
            Err(FormulaError::BoundsNeedThreeTips { spot: 2, tips: 2 })
        );
    }

    #[test]
    fn spec_validation() {
        assert_eq!(GameSpec::new(vec![]), Err(FormulaError::NoSpots));
        assert_eq!(
            GameSpec::with_spots(2, vec![1]),
            Err(FormulaError::TipCountMismatch { n: 2, len: 1 })
        );
    }

    #[test]
    fn cs4_examples() {
        let f = |p, q| cs4_nimber_formula(p, q).0;
        assert_eq!(f(3, 3), 1);
        assert_eq!(f(3, 4), 4);
        assert_eq!(f(3, 6), 6);
        assert_eq!(f(0, 7), 0);
        assert_eq!(f(1, 1), 1);
        assert_eq!(f(1, 9), 2);
        assert_eq!(f(2, 3), 2);
        assert_eq!(f(0, 0), 1);
        assert_eq!(cs4_nimber_formula_checked(-1, 3), Err(FormulaError::NegativeTips(-1)));
    }

    #[test]
    fn cs4_structure() {
        for p in 0..40u64 {
            for q in 0..40u64 {
                let v = cs4_nimber_formula(p, q);
                assert_eq!(v, cs4_nimber_formula(q, p));
                assert_eq!(v.0.is_multiple_of(2), p != q, "({p},{q})");
                if let Cs4Case::Middle { residue } = cs4_case(p, q) {
                    assert!((1..=5).contains(&residue));
                    assert_eq!((p + q - residue) % 5, 0);
                }
            }
        }
    }

    #[test]
    fn cs4_cases_partition() {
        for p in 0..40u64 {
            for q in p..60u64 {
                let thr = saturation_threshold(p);
                let equal = p == q;
                let middle = p < q && (q as i64) < thr;
                let saturated = !equal && q as i64 >= thr;
                assert_eq!([equal, middle, saturated].iter().filter(|b| **b).count(), 1);
                let case = cs4_case(p, q);
                assert_eq!(matches!(case, Cs4Case::Equal), equal);
                assert_eq!(matches!(case, Cs4Case::Middle { .. }), middle);
                assert_eq!(matches!(case, Cs4Case::Saturated), saturated);
            }
        }
    }
}
