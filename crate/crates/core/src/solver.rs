//! Memoized Sprague–Grundy evaluation of circular positions and sums.

use alloc::vec::Vec;

use crate::circular::{canonical_key, for_each_move, split, CircularState, GameSum, MoveDescriptor, StateKey};
use crate::grundy::{Nimber, NimberSet};
pub use crate::table::Evaluation;
use crate::table::NimberTable;

/// Nimber and play-length range of `state`, filling `table` on the way.
pub fn evaluate<T: NimberTable + ?Sized>(state: &CircularState, table: &T) -> Evaluation {
    evaluate_key(state.key(), table)
}

pub fn grundy<T: NimberTable + ?Sized>(state: &CircularState, table: &T) -> Nimber {
    evaluate(state, table).nimber
}

/// `(min, max)` number of moves over all playouts of `state`.
pub fn play_length_bounds<T: NimberTable + ?Sized>(state: &CircularState, table: &T) -> (u32, u32) {
    let e = evaluate(state, table);
    (e.min_len, e.max_len)
}

/// Canonical daughter pairs of every move, deduplicated.
pub(crate) fn child_pairs(tips: &[u8]) -> Vec<(StateKey, StateKey)> {
    let mut pairs = Vec::new();
    for_each_move(tips, |m| {
        let (first, second) = split(tips, m.i, m.j, m.a as u8, m.b as u8);
        let k1 = canonical_key(first.as_slice());
        let k2 = canonical_key(second.as_slice());
        pairs.push(if k1 <= k2 { (k1, k2) } else { (k2, k1) });
    });
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

pub(crate) fn evaluate_key<T: NimberTable + ?Sized>(key: StateKey, table: &T) -> Evaluation {
    if let Some(hit) = table.get(key) {
        return hit;
    }
    let spots = key.spots();
    let pairs = child_pairs(spots.as_slice());
    let result = if pairs.is_empty() {
        Evaluation::TERMINAL
    } else {
        let mut seen = NimberSet::new();
        let mut min_len = u32::MAX;
        let mut max_len = 0;
        for (k1, k2) in pairs {
            let e1 = evaluate_key(k1, table);
            let e2 = evaluate_key(k2, table);
            seen.insert(e1.nimber ^ e2.nimber);
            min_len = min_len.min(1 + e1.min_len + e2.min_len);
            max_len = max_len.max(1 + e1.max_len + e2.max_len);
        }
        Evaluation { nimber: seen.mex(), min_len, max_len }
    };
    table.insert(key, result);
    result
}

/// Nimber of a disjunctive sum of circular positions.
pub fn sum_grundy<T: NimberTable + ?Sized>(sum: &GameSum, table: &T) -> Nimber {
    sum.components.iter().map(|c| grundy(c, table)).sum()
}

/// Nimber of the sum left behind by playing `m` in `state`.
pub fn move_result_nimber<T: NimberTable + ?Sized>(
    state: &CircularState,
    m: &MoveDescriptor,
    table: &T,
) -> Option<Nimber> {
    let (s1, s2) = state.apply_move(m).ok()?;
    Some(grundy(&s1, table) ^ grundy(&s2, table))
}

/// A move in one component of a sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SumMove {
    pub component: usize,
    pub mv: MoveDescriptor,
    /// `true` when the move leaves the whole sum at nimber 0.
    pub winning: bool,
}

/// Optimal move in `sum` under normal play.
///
/// From a nonzero position this returns the lexicographically least
/// `(component, i, j, a, b)` that leaves the sum at `*0`. From a zero
/// position no such move exists and the least legal move is returned with
/// `winning = false`. Terminal sums yield `None`.
pub fn best_move<T: NimberTable + ?Sized>(sum: &GameSum, table: &T) -> Option<SumMove> {
    let nimbers: Vec<Nimber> = sum.components.iter().map(|c| grundy(c, table)).collect();
    let total: Nimber = nimbers.iter().copied().sum();
    if !total.is_zero() {
        for (component, state) in sum.components.iter().enumerate() {
            let target = nimbers[component] ^ total;
            // a move can only reach a lower nimber
            if target >= nimbers[component] {
                continue;
            }
            for mv in state.legal_moves() {
                if move_result_nimber(state, &mv, table) == Some(target) {
                    return Some(SumMove { component, mv, winning: true });
                }
            }
            unreachable!("mex guarantees a child of every smaller nimber");
        }
        unreachable!("some component carries the leading bit of a nonzero sum");
    }
    sum.components.iter().enumerate().find_map(|(component, state)| {
        state
            .legal_moves()
            .first()
            .map(|&mv| SumMove { component, mv, winning: false })
    })
}
