//! The girth-4 Brussels sprout game on two spots `x` (p tips) and `y`
//! (q tips), p, q >= 3.
//!
//! The first move is forced up to renaming tips: it joins `x_1` to `y_1`.
//! The reply must join some `x_i` to some `y_j` with `i, j >= 2`, which closes
//! two 4-cycles and leaves the circular sum
//! `[i-2, 1, j-2, 1] + [p-i, 1, q-j, 1]`. From there on the game is played
//! by the circular engine.

use alloc::vec::Vec;

use thiserror::Error;

use crate::circular::{CircularState, GameSum, MoveError};
use crate::grundy::{Nimber, NimberSet};
use crate::position::{ComponentMove, Position, PositionMove};
use crate::solver::{evaluate, sum_grundy};
use crate::table::NimberTable;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Bs2Error {
    #[error("spot {spot} needs at least 3 tips, got {tips}")]
    TooFewTips { spot: char, tips: u32 },
    #[error("spot {spot} has {tips} tips; at most 257 are supported")]
    TooManyTips { spot: char, tips: u32 },
    #[error("the reply must join x_i to y_j with 2 <= i <= {p} and 2 <= j <= {q}, got i = {i}, j = {j}")]
    SecondMoveOutOfRange { p: u32, q: u32, i: u32, j: u32 },
    #[error("it is not the second player's turn in the opening")]
    NotSecondPlayersTurn,
    #[error("the position has nimber 0: the player to move has no winning move")]
    NoWinningMove,
    #[error(transparent)]
    Move(#[from] MoveError),
}

pub fn check_params(p: u32, q: u32) -> Result<(), Bs2Error> {
    for (spot, tips) in [('x', p), ('y', q)] {
        if tips < 3 {
            return Err(Bs2Error::TooFewTips { spot, tips });
        }
        // components carry p - 2 and q - 2 tips on one spot
        if tips > 257 {
            return Err(Bs2Error::TooManyTips { spot, tips });
        }
    }
    Ok(())
}

/// The circular sum left after the reply joining `x_i` to `y_j`.
pub fn second_move_sum(p: u32, q: u32, i: u32, j: u32) -> Result<GameSum, Bs2Error> {
    check_params(p, q)?;
    if !(2..=p).contains(&i) || !(2..=q).contains(&j) {
        return Err(Bs2Error::SecondMoveOutOfRange { p, q, i, j });
    }
    let first = CircularState::cs4(i - 2, j - 2).expect("tip counts checked");
    let second = CircularState::cs4(p - i, q - j).expect("tip counts checked");
    Ok(GameSum::new(alloc::vec![first, second]))
}

/// Every reply `(i, j)` with its resulting sum, in increasing `(i, j)` order,
/// keeping only the first reply of each distinct sum.
pub fn distinct_replies(p: u32, q: u32) -> Result<Vec<((u32, u32), GameSum)>, Bs2Error> {
    check_params(p, q)?;
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for i in 2..=p {
        for j in 2..=q {
            let sum = second_move_sum(p, q, i, j)?;
            let keys = sum.canonical_keys();
            if !seen.contains(&keys) {
                seen.push(keys);
                out.push(((i, j), sum));
            }
        }
    }
    Ok(out)
}

/// Sums reachable by the reply to the forced opening, deduplicated as
/// multisets of canonical components.
pub fn bs2_children_after_forced_move(p: u32, q: u32) -> Result<Vec<GameSum>, Bs2Error> {
    Ok(distinct_replies(p, q)?.into_iter().map(|(_, sum)| sum).collect())
}

/// Nimber of the position after the forced opening.
pub fn after_forced_nimber<T: NimberTable + ?Sized>(p: u32, q: u32, table: &T) -> Result<Nimber, Bs2Error> {
    let seen: NimberSet = bs2_children_after_forced_move(p, q)?
        .iter()
        .map(|sum| sum_grundy(sum, table))
        .collect();
    Ok(seen.mex())
}

/// Nimber of the starting position. The root has the forced opening as its
/// only child.
pub fn bs2_nimber<T: NimberTable + ?Sized>(p: u32, q: u32, table: &T) -> Result<Nimber, Bs2Error> {
    let child = after_forced_nimber(p, q, table)?;
    Ok(crate::grundy::mex([child]))
}

/// `(min, max)` total moves over all playouts from the start.
pub fn bs2_play_length_bounds<T: NimberTable + ?Sized>(p: u32, q: u32, table: &T) -> Result<(u32, u32), Bs2Error> {
    let mut min = u32::MAX;
    let mut max = 0;
    for sum in bs2_children_after_forced_move(p, q)? {
        let (lo, hi) = sum.components.iter().fold((0, 0), |(lo, hi), c| {
            let e = evaluate(c, table);
            (lo + e.min_len, hi + e.max_len)
        });
        min = min.min(2 + lo);
        max = max.max(2 + hi);
    }
    Ok((min, max))
}

/// Where a two-spot game currently stands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bs2Position {
    Start { p: u32, q: u32 },
    AfterForcedMove { p: u32, q: u32 },
    Decomposed { p: u32, q: u32, sum: GameSum },
}

impl Bs2Position {
    pub fn start(p: u32, q: u32) -> Result<Self, Bs2Error> {
        check_params(p, q)?;
        Ok(Bs2Position::Start { p, q })
    }

    pub fn params(&self) -> (u32, u32) {
        match self {
            Bs2Position::Start { p, q }
            | Bs2Position::AfterForcedMove { p, q }
            | Bs2Position::Decomposed { p, q, .. } => (*p, *q),
        }
    }

    pub fn to_position(&self) -> Position {
        match self {
            Bs2Position::Start { p, q } => Position::bs2_start(*p, *q),
            Bs2Position::AfterForcedMove { p, q } => Position::bs2_after_forced(*p, *q),
            Bs2Position::Decomposed { sum, .. } => Position::from(sum.clone()),
        }
    }

    pub fn forced_move(&self) -> Result<Bs2Position, Bs2Error> {
        match self {
            Bs2Position::Start { p, q } => Ok(Bs2Position::AfterForcedMove { p: *p, q: *q }),
            _ => Err(Bs2Error::NotSecondPlayersTurn),
        }
    }

    pub fn second_move(&self, i: u32, j: u32) -> Result<Bs2Position, Bs2Error> {
        match self {
            Bs2Position::AfterForcedMove { p, q } => Ok(Bs2Position::Decomposed {
                p: *p,
                q: *q,
                sum: second_move_sum(*p, *q, i, j)?,
            }),
            _ => Err(Bs2Error::NotSecondPlayersTurn),
        }
    }
}

/// Winning reply for the player to move in a two-spot game.
///
/// Right after the forced opening this is the least `(i, j)` whose sum has
/// nimber 0; afterwards it is [`Position::best_move`] on the circular sum.
/// Errors when the mover has no winning move.
pub fn bs2_second_player_strategy<T: NimberTable + ?Sized>(
    position: &Bs2Position,
    table: &T,
) -> Result<PositionMove, Bs2Error> {
    if matches!(position, Bs2Position::Start { .. }) {
        return Err(Bs2Error::NotSecondPlayersTurn);
    }
    let reply = position
        .to_position()
        .best_move(table)
        .filter(|m| m.winning)
        .ok_or(Bs2Error::NoWinningMove)?;
    debug_assert!(
        !matches!(position, Bs2Position::AfterForcedMove { .. })
            || matches!(reply.mv.action, ComponentMove::Second { .. })
    );
    Ok(reply.mv)
}
