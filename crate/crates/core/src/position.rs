//! Disjunctive sums mixing circular positions with two-spot games that have
//! not decomposed yet. This is the position type the CLI and the play
//! service hand around.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::bs2::{self, Bs2Error};
use crate::circular::{CircularState, GameSum, MoveDescriptor, MoveError};
use crate::grundy::Nimber;
use crate::solver::grundy;
use crate::table::NimberTable;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Circular(CircularState),
    /// Two-spot game before the forced opening.
    Bs2Start { p: u32, q: u32 },
    /// Two-spot game after `x_1`–`y_1`, waiting for the reply.
    Bs2AfterForced { p: u32, q: u32 },
}

impl Component {
    pub fn bs2(p: u32, q: u32) -> Result<Self, Bs2Error> {
        bs2::check_params(p, q)?;
        Ok(Component::Bs2Start { p, q })
    }

    pub fn bs2_after_forced(p: u32, q: u32) -> Result<Self, Bs2Error> {
        bs2::check_params(p, q)?;
        Ok(Component::Bs2AfterForced { p, q })
    }

    pub fn is_terminal(&self) -> bool {
        match self {
            Component::Circular(s) => s.is_terminal(),
            _ => false,
        }
    }

    pub fn legal_moves(&self) -> Vec<ComponentMove> {
        match self {
            Component::Circular(s) => s.legal_moves().into_iter().map(ComponentMove::Join).collect(),
            Component::Bs2Start { .. } => alloc::vec![ComponentMove::Forced],
            Component::Bs2AfterForced { p, q } => (2..=*p)
                .flat_map(|i| (2..=*q).map(move |j| ComponentMove::Second { i, j }))
                .collect(),
        }
    }

    /// Components that replace this one after `action`.
    pub fn apply(&self, action: &ComponentMove) -> Result<Vec<Component>, PositionError> {
        match (self, action) {
            (Component::Circular(s), ComponentMove::Join(m)) => {
                let (a, b) = s.apply_move(m)?;
                Ok(alloc::vec![Component::Circular(a), Component::Circular(b)])
            }
            (Component::Bs2Start { p, q }, ComponentMove::Forced) => {
                Ok(alloc::vec![Component::Bs2AfterForced { p: *p, q: *q }])
            }
            (Component::Bs2AfterForced { p, q }, ComponentMove::Second { i, j }) => {
                let sum = bs2::second_move_sum(*p, *q, *i, *j)?;
                Ok(sum.components.into_iter().map(Component::Circular).collect())
            }
            (component, action) => Err(PositionError::WrongMoveKind {
                expected: component.move_kind(),
                got: action.kind(),
            }),
        }
    }

    fn move_kind(&self) -> &'static str {
        match self {
            Component::Circular(_) => "join",
            Component::Bs2Start { .. } => "forced",
            Component::Bs2AfterForced { .. } => "second",
        }
    }

    pub fn nimber<T: NimberTable + ?Sized>(&self, table: &T) -> Nimber {
        match self {
            Component::Circular(s) => grundy(s, table),
            Component::Bs2Start { p, q } => bs2::bs2_nimber(*p, *q, table).expect("checked on construction"),
            Component::Bs2AfterForced { p, q } => {
                bs2::after_forced_nimber(*p, *q, table).expect("checked on construction")
            }
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Circular(s) => write!(f, "{s}"),
            Component::Bs2Start { p, q } => write!(f, "BS2[{p},{q}]"),
            Component::Bs2AfterForced { p, q } => write!(f, "BS2'[{p},{q}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComponentMove {
    Join(MoveDescriptor),
    /// The opening `x_1`–`y_1` of a two-spot game.
    Forced,
    /// The reply joining `x_i` to `y_j`.
    Second { i: u32, j: u32 },
}

impl ComponentMove {
    fn kind(&self) -> &'static str {
        match self {
            ComponentMove::Join(_) => "join",
            ComponentMove::Forced => "forced",
            ComponentMove::Second { .. } => "second",
        }
    }
}

impl fmt::Display for ComponentMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentMove::Join(m) => write!(f, "join{m}"),
            ComponentMove::Forced => f.write_str("forced(x1,y1)"),
            ComponentMove::Second { i, j } => write!(f, "second(x{i},y{j})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositionMove {
    pub component: usize,
    pub action: ComponentMove,
}

impl fmt::Display for PositionMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{} {}", self.component + 1, self.action)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BestMove {
    pub mv: PositionMove,
    /// `true` when the move leaves the whole sum at nimber 0.
    pub winning: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PositionError {
    #[error("component {index} does not exist (sum has {len} components)")]
    ComponentOutOfRange { index: usize, len: usize },
    #[error("this component takes a {expected} move, got a {got} move")]
    WrongMoveKind { expected: &'static str, got: &'static str },
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error(transparent)]
    Bs2(#[from] Bs2Error),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Position {
    pub components: Vec<Component>,
}

impl Position {
    pub fn new(components: Vec<Component>) -> Self {
        Position { components }
    }

    pub fn bs2_start(p: u32, q: u32) -> Self {
        Position::new(alloc::vec![Component::Bs2Start { p, q }])
    }

    pub fn bs2_after_forced(p: u32, q: u32) -> Self {
        Position::new(alloc::vec![Component::Bs2AfterForced { p, q }])
    }

    pub fn is_terminal(&self) -> bool {
        self.components.iter().all(Component::is_terminal)
    }

    /// Every legal move, ordered by component and then by move.
    pub fn legal_moves(&self) -> Vec<PositionMove> {
        self.components
            .iter()
            .enumerate()
            .flat_map(|(component, c)| {
                c.legal_moves()
                    .into_iter()
                    .map(move |action| PositionMove { component, action })
            })
            .collect()
    }

    pub fn apply(&self, m: &PositionMove) -> Result<Position, PositionError> {
        let len = self.components.len();
        let target = self
            .components
            .get(m.component)
            .ok_or(PositionError::ComponentOutOfRange { index: m.component, len })?;
        let replacement = target.apply(&m.action)?;
        let mut components = Vec::with_capacity(len + replacement.len());
        components.extend_from_slice(&self.components[..m.component]);
        components.extend(replacement);
        components.extend_from_slice(&self.components[m.component + 1..]);
        Ok(Position { components })
    }

    pub fn component_nimbers<T: NimberTable + ?Sized>(&self, table: &T) -> Vec<Nimber> {
        self.components.iter().map(|c| c.nimber(table)).collect()
    }

    pub fn nimber<T: NimberTable + ?Sized>(&self, table: &T) -> Nimber {
        self.components.iter().map(|c| c.nimber(table)).sum()
    }

    /// Nimber of the whole sum after `m`.
    pub fn result_nimber<T: NimberTable + ?Sized>(
        &self,
        m: &PositionMove,
        table: &T,
    ) -> Result<Nimber, PositionError> {
        Ok(self.apply(m)?.nimber(table))
    }

    /// Optimal move under normal play; same contract as
    /// [`crate::solver::best_move`], extended to two-spot components.
    pub fn best_move<T: NimberTable + ?Sized>(&self, table: &T) -> Option<BestMove> {
        let nimbers = self.component_nimbers(table);
        let total: Nimber = nimbers.iter().copied().sum();
        if !total.is_zero() {
            for (component, c) in self.components.iter().enumerate() {
                let target = nimbers[component] ^ total;
                if target >= nimbers[component] {
                    continue;
                }
                for action in c.legal_moves() {
                    let after: Nimber = c
                        .apply(&action)
                        .expect("generated moves are legal")
                        .iter()
                        .map(|d| d.nimber(table))
                        .sum();
                    if after == target {
                        return Some(BestMove { mv: PositionMove { component, action }, winning: true });
                    }
                }
                unreachable!("mex guarantees a child of every smaller nimber");
            }
            unreachable!("some component carries the leading bit of a nonzero sum");
        }
        self.legal_moves().first().map(|&mv| BestMove { mv, winning: false })
    }
}

impl From<GameSum> for Position {
    fn from(sum: GameSum) -> Self {
        Position::new(sum.components.into_iter().map(Component::Circular).collect())
    }
}

impl From<CircularState> for Position {
    fn from(s: CircularState) -> Self {
        Position::new(alloc::vec![Component::Circular(s)])
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::{best_move, SumMove};
    use crate::table::LocalTable;
    use alloc::vec;

    fn cs(t: &[u32]) -> CircularState {
        CircularState::new(t.iter().copied()).unwrap()
    }

    #[test]
    fn matches_circular_best_move() {
        let t = LocalTable::new();
        let sums = [
            GameSum::new(vec![cs(&[1, 1, 2, 1]), cs(&[2, 1, 4, 1])]),
            GameSum::new(vec![cs(&[3, 1, 4, 1])]),
            GameSum::new(vec![cs(&[1, 1, 1, 1]), cs(&[1, 1, 1, 1])]),
            GameSum::new(vec![cs(&[0, 0, 4, 0])]),
        ];
        for sum in sums {
            let pos = Position::from(sum.clone());
            let via_sum = best_move(&sum, &t);
            let via_pos = pos.best_move(&t);
            assert_eq!(
                via_sum.map(|SumMove { component, mv, winning }| (component, ComponentMove::Join(mv), winning)),
                via_pos.map(|b| (b.mv.component, b.mv.action, b.winning)),
                "{sum}"
            );
        }
    }

    #[test]
    fn bs2_components_play_through() {
        let t = LocalTable::new();
        let mut pos = Position::new(vec![Component::bs2(3, 4).unwrap()]);
        assert_eq!(pos.legal_moves().len(), 1);
        assert_eq!(pos.nimber(&t), Nimber(0));
        let forced = pos.legal_moves()[0];
        assert_eq!(forced.action, ComponentMove::Forced);
        pos = pos.apply(&forced).unwrap();
        assert_eq!(pos.to_string(), "BS2'[3,4]");
        assert_eq!(pos.legal_moves().len(), 2 * 3);
        assert!(!pos.nimber(&t).is_zero());
        let reply = pos.best_move(&t).unwrap();
        assert!(reply.winning);
        pos = pos.apply(&reply.mv).unwrap();
        assert!(pos.nimber(&t).is_zero());
        assert_eq!(pos.components.len(), 2);
    }

    #[test]
    fn wrong_move_kinds_rejected() {
        let pos = Position::new(vec![Component::bs2(3, 3).unwrap(), Component::Circular(cs(&[1, 1, 1, 1]))]);
        let bad = PositionMove { component: 0, action: ComponentMove::Second { i: 2, j: 2 } };
        assert_eq!(
            pos.apply(&bad),
            Err(PositionError::WrongMoveKind { expected: "forced", got: "second" })
        );
        let bad = PositionMove { component: 1, action: ComponentMove::Forced };
        assert!(matches!(pos.apply(&bad), Err(PositionError::WrongMoveKind { .. })));
        let bad = PositionMove { component: 5, action: ComponentMove::Forced };
        assert_eq!(pos.apply(&bad), Err(PositionError::ComponentOutOfRange { index: 5, len: 2 }));
        let after = Position::bs2_after_forced(3, 3);
        let bad = PositionMove { component: 0, action: ComponentMove::Second { i: 1, j: 3 } };
        assert!(matches!(after.apply(&bad), Err(PositionError::Bs2(Bs2Error::SecondMoveOutOfRange { .. }))));
    }

    #[test]
    fn mixed_sum_nimber_is_xor() {
        let t = LocalTable::new();
        let pos = Position::new(vec![
            Component::bs2_after_forced(4, 6).unwrap(),
            Component::Circular(cs(&[3, 1, 4, 1])),
        ]);
        let parts = pos.component_nimbers(&t);
        assert_eq!(parts[1], Nimber(4));
        assert_eq!(pos.nimber(&t), parts[0] ^ parts[1]);
        if let Some(b) = pos.best_move(&t) {
            assert_eq!(b.winning, !pos.nimber(&t).is_zero());
            if b.winning {
                assert!(pos.result_nimber(&b.mv, &t).unwrap().is_zero());
            }
        }
    }
}
