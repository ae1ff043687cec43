use serde::Serialize;
use sprouts_core::bs2::bs2_play_length_bounds;
use sprouts_core::solver::evaluate;
use sprouts_core::{Component, NimberTable, Position};

use crate::session::WireMove;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Analysis {
    pub state: String,
    pub nimber: u64,
    pub component_nimbers: Vec<u64>,
    pub terminal: bool,
    /// Winner under normal play with the player to move called "first".
    pub winner: &'static str,
    pub min_moves: u32,
    pub max_moves: u32,
    pub legal_moves: usize,
    pub best_move: Option<WireMove>,
    pub best_move_text: Option<String>,
    /// Whether `best_move` leaves the sum at nimber 0.
    pub winning: bool,
}

/// `(min, max)` remaining moves over all playouts of one component.
pub fn component_play_lengths<T: NimberTable + ?Sized>(c: &Component, table: &T) -> (u32, u32) {
    match c {
        Component::Circular(s) => {
            let e = evaluate(s, table);
            (e.min_len, e.max_len)
        }
        Component::Bs2Start { p, q } => bs2_play_length_bounds(*p, *q, table).expect("checked on construction"),
        Component::Bs2AfterForced { p, q } => {
            let (lo, hi) = bs2_play_length_bounds(*p, *q, table).expect("checked on construction");
            (lo - 1, hi - 1)
        }
    }
}

pub fn analyze<T: NimberTable + ?Sized>(position: &Position, table: &T) -> Analysis {
    let component_nimbers: Vec<u64> = position.component_nimbers(table).iter().map(|n| n.0).collect();
    let nimber = component_nimbers.iter().fold(0, |acc, n| acc ^ n);
    let (min_moves, max_moves) = position.components.iter().fold((0, 0), |(lo, hi), c| {
        let (a, b) = component_play_lengths(c, table);
        (lo + a, hi + b)
    });
    let best = position.best_move(table);
    Analysis {
        state: position.to_string(),
        nimber,
        component_nimbers,
        terminal: position.is_terminal(),
        winner: if nimber == 0 { "second player" } else { "first player" },
        min_moves,
        max_moves,
        legal_moves: position.legal_moves().len(),
        best_move: best.map(|b| b.mv.into()),
        best_move_text: best.map(|b| b.mv.to_string()),
        winning: best.is_some_and(|b| b.winning),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::parse_position;
    use sprouts_core::LocalTable;

    fn run(s: &str) -> Analysis {
        analyze(&parse_position(s).unwrap(), &LocalTable::new())
    }

    #[test]
    fn examples() {
        let a = run("CS[3,1,4,1]");
        assert_eq!(a.nimber, 4);
        assert!(a.winning);
        let a = run("BS2[3,3]");
        assert_eq!(a.nimber, 0);
        assert_eq!(a.winner, "second player");
        assert_eq!((a.min_moves, a.max_moves), (6, 6));
        assert_eq!(a.legal_moves, 1);
        let a = run("CS[0,0,9,0]");
        assert_eq!(a.nimber, 0);
        assert!(a.terminal);
        assert_eq!(a.best_move, None);
        let a = run("BS2'[4,6]");
        assert_eq!((a.min_moves, a.max_moves), (5, 9));
    }
}
