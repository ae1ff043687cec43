//! Memo tables for solved positions.

use core::cell::RefCell;

use hashbrown::HashMap;

use crate::circular::StateKey;
use crate::grundy::Nimber;

/// Everything the solver knows about a canonical position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Evaluation {
    pub nimber: Nimber,
    /// Fewest moves any playout of the position can take.
    pub min_len: u32,
    /// Most moves any playout of the position can take.
    pub max_len: u32,
}

impl Evaluation {
    pub const TERMINAL: Evaluation = Evaluation { nimber: Nimber::ZERO, min_len: 0, max_len: 0 };
}

/// Storage for solved positions keyed by canonical form.
///
/// Methods take `&self` so that implementations can be shared between
/// threads. Values are a pure function of the key, so concurrent inserts of
/// the same key always agree and last-writer-wins is fine.
pub trait NimberTable {
    fn get(&self, key: StateKey) -> Option<Evaluation>;
    fn insert(&self, key: StateKey, value: Evaluation);
    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl<T: NimberTable + ?Sized> NimberTable for &T {
    fn get(&self, key: StateKey) -> Option<Evaluation> {
        (**self).get(key)
    }

    fn insert(&self, key: StateKey, value: Evaluation) {
        (**self).insert(key, value)
    }

    fn len(&self) -> usize {
        (**self).len()
    }
}

/// Single-threaded table.
#[derive(Debug, Default)]
pub struct LocalTable {
    entries: RefCell<HashMap<StateKey, Evaluation>>,
}

impl LocalTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Snapshot of every stored entry, in no particular order.
    pub fn entries(&self) -> alloc::vec::Vec<(StateKey, Evaluation)> {
        self.entries.borrow().iter().map(|(k, v)| (*k, *v)).collect()
    }
}

impl NimberTable for LocalTable {
    fn get(&self, key: StateKey) -> Option<Evaluation> {
        self.entries.borrow().get(&key).copied()
    }

    fn insert(&self, key: StateKey, value: Evaluation) {
        self.entries.borrow_mut().insert(key, value);
    }

    fn len(&self) -> usize {
        self.entries.borrow().len()
    }
}
