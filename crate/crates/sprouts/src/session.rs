//! Play sessions: a position, its move history and whose turn it is.
//!
//! Player 1 moves first and the player left without a move loses. Wire
//! indices (components, spots) are 1-based.

use serde::{Deserialize, Serialize};
use sprouts_core::position::ComponentMove;
use sprouts_core::{CircularState, Component, MoveDescriptor, NimberTable, Position, PositionMove};
use thiserror::Error;

use crate::notation::{parse_position, ParseError};

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("the game is over")]
    Finished,
    #[error("it is player {to_move}'s turn")]
    WrongTurn { to_move: u8 },
    #[error("illegal move: {0}")]
    IllegalMove(String),
}

/// Request body for creating a session.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GameRequest {
    Cs4 { p: i64, q: i64 },
    Circular { state: String },
    Bs2 { p: i64, q: i64 },
}

fn tip_param(name: &str, v: i64) -> Result<u32, SessionError> {
    u32::try_from(v).map_err(|_| SessionError::InvalidParams(format!("{name} must be a non-negative tip count, got {v}")))
}

impl GameRequest {
    pub fn initial_position(&self) -> Result<Position, SessionError> {
        match self {
            GameRequest::Cs4 { p, q } => {
                let state = CircularState::cs4(tip_param("p", *p)?, tip_param("q", *q)?)
                    .map_err(|e| SessionError::InvalidParams(e.to_string()))?;
                Ok(Position::from(state))
            }
            GameRequest::Circular { state } => Ok(parse_position(state)?),
            GameRequest::Bs2 { p, q } => {
                let c = Component::bs2(tip_param("p", *p)?, tip_param("q", *q)?)
                    .map_err(|e| SessionError::InvalidParams(e.to_string()))?;
                Ok(Position::new(vec![c]))
            }
        }
    }
}

/// A move as it travels over the wire.
#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WireMove {
    /// Join spot `i` to spot `j` of a circular component; `a` and `b` tips of
    /// the two spots stay on the side of the arc `i -> j`.
    Join { component: usize, i: usize, j: usize, a: u32, b: u32 },
    Forced { component: usize },
    Second { component: usize, i: u32, j: u32 },
}

impl WireMove {
    pub fn to_move(self) -> Result<PositionMove, SessionError> {
        let one_based = |name: &str, v: usize| {
            v.checked_sub(1)
                .ok_or_else(|| SessionError::IllegalMove(format!("{name} numbers start at 1")))
        };
        Ok(match self {
            WireMove::Join { component, i, j, a, b } => PositionMove {
                component: one_based("component", component)?,
                action: ComponentMove::Join(MoveDescriptor::new(one_based("spot", i)?, one_based("spot", j)?, a, b)),
            },
            WireMove::Forced { component } => {
                PositionMove { component: one_based("component", component)?, action: ComponentMove::Forced }
            }
            WireMove::Second { component, i, j } => PositionMove {
                component: one_based("component", component)?,
                action: ComponentMove::Second { i, j },
            },
        })
    }
}

impl From<PositionMove> for WireMove {
    fn from(m: PositionMove) -> Self {
        let component = m.component + 1;
        match m.action {
            ComponentMove::Join(d) => WireMove::Join { component, i: d.i + 1, j: d.j + 1, a: d.a, b: d.b },
            ComponentMove::Forced => WireMove::Forced { component },
            ComponentMove::Second { i, j } => WireMove::Second { component, i, j },
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HistoryEntry {
    pub player: u8,
    #[serde(rename = "move")]
    pub mv: WireMove,
    pub by_engine: bool,
    pub state_after: String,
}

#[derive(Clone, Debug)]
pub struct Session {
    pub id: String,
    pub request: GameRequest,
    /// `None` when the engine plays both seats.
    pub human_player: Option<u8>,
    pub initial: Position,
    pub position: Position,
    pub history: Vec<HistoryEntry>,
}

impl Session {
    pub fn new(id: String, request: GameRequest, human_player: Option<u8>) -> Result<Self, SessionError> {
        if let Some(p) = human_player {
            if p != 1 && p != 2 {
                return Err(SessionError::InvalidParams(format!("human_player must be 1 or 2, got {p}")));
            }
        }
        let initial = request.initial_position()?;
        Ok(Session { id, request, human_player, position: initial.clone(), initial, history: Vec::new() })
    }

    pub fn to_move(&self) -> u8 {
        if self.history.len().is_multiple_of(2) {
            1
        } else {
            2
        }
    }

    pub fn is_finished(&self) -> bool {
        self.position.is_terminal()
    }

    /// The player who made the last move, once nobody can move.
    pub fn winner(&self) -> Option<u8> {
        self.is_finished().then(|| 3 - self.to_move())
    }

    pub fn engine_to_move(&self) -> bool {
        self.human_player != Some(self.to_move())
    }

    fn play(&mut self, m: PositionMove, by_engine: bool) -> Result<(), SessionError> {
        let next = self.position.apply(&m).map_err(|e| SessionError::IllegalMove(e.to_string()))?;
        self.history.push(HistoryEntry {
            player: self.to_move(),
            mv: m.into(),
            by_engine,
            state_after: next.to_string(),
        });
        self.position = next;
        Ok(())
    }

    pub fn submit(&mut self, m: WireMove) -> Result<(), SessionError> {
        if self.is_finished() {
            return Err(SessionError::Finished);
        }
        if self.engine_to_move() {
            return Err(SessionError::WrongTurn { to_move: self.to_move() });
        }
        self.play(m.to_move()?, false)
    }

    /// Lets the engine move; returns the move and whether it wins.
    pub fn engine_move<T: NimberTable + ?Sized>(&mut self, table: &T) -> Result<(PositionMove, bool), SessionError> {
        if self.is_finished() {
            return Err(SessionError::Finished);
        }
        if !self.engine_to_move() {
            return Err(SessionError::WrongTurn { to_move: self.to_move() });
        }
        let best = self.position.best_move(table).ok_or(SessionError::Finished)?;
        self.play(best.mv, true)?;
        Ok((best.mv, best.winning))
    }

    /// Rebuilds the current position from the initial one and the history.
    pub fn replay(&self) -> Result<Position, SessionError> {
        let mut pos = self.request.initial_position()?;
        for entry in &self.history {
            pos = pos
                .apply(&entry.mv.to_move()?)
                .map_err(|e| SessionError::IllegalMove(e.to_string()))?;
        }
        Ok(pos)
    }
}
