//! Circular sprout positions.
//!
//! A position is the boundary cycle of one region: spots in clockwise order,
//! each carrying the number of open tips pointing into the region.
//! Consecutive spots on the cycle are adjacent in the drawn graph, so a curve
//! may only join two spots at cyclic distance at least 2; anything closer
//! would close a 2-cycle or a triangle.
//!
//! Joining spot `i` to spot `j` with a crossbar cuts the region in two. The
//! first daughter is bounded by the arc `i -> j` (increasing cyclic order),
//! the second by the arc `j -> i`. Spot `i` keeps `a` of its remaining tips
//! on the first side and spot `j` keeps `b`; the crossbar contributes one new
//! tip to each side.

use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// Largest supported boundary cycle. Canonical keys pack one byte per spot
/// plus a length byte into a `u128`.
pub const MAX_SPOTS: usize = 15;
/// Largest supported tip count on a single spot.
pub const MAX_TIPS_PER_SPOT: u32 = u8::MAX as u32;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum StateError {
    #[error("a boundary cycle needs at least 3 spots, got {0}")]
    TooFewSpots(usize),
    #[error("at most {MAX_SPOTS} spots are supported, got {0}")]
    TooManySpots(usize),
    #[error("spot {spot} has {tips} tips, at most {MAX_TIPS_PER_SPOT} are supported")]
    TooManyTips { spot: usize, tips: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("spot {spot} does not exist (position has {spots} spots)")]
    SpotOutOfRange { spot: usize, spots: usize },
    #[error("joining spot {spot} to itself would create a 2-cycle (girth < 4)")]
    SameSpot { spot: usize },
    #[error("joining adjacent spots {i} and {j} would create a triangle (girth < 4)")]
    AdjacentSpots { i: usize, j: usize },
    #[error("spot order must be increasing, got {i} before {j}")]
    NotNormalized { i: usize, j: usize },
    #[error("spot {spot} has no open tip")]
    NoOpenTip { spot: usize },
    #[error("spot {spot} has {tips} tips; {split} of the remaining {rest} cannot go on one side", rest = tips - 1)]
    SplitOutOfRange { spot: usize, split: u32, tips: u32 },
    #[error("component {index} does not exist (sum has {len} components)")]
    ComponentOutOfRange { index: usize, len: usize },
}

/// Cyclic sequence of open-tip counts around a region boundary.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CircularState {
    tips: Vec<u8>,
}

impl CircularState {
    pub fn new<I>(tips: I) -> Result<Self, StateError>
    where
        I: IntoIterator<Item = u32>,
    {
        let raw: Vec<u32> = tips.into_iter().collect();
        if raw.len() < 3 {
            return Err(StateError::TooFewSpots(raw.len()));
        }
        if raw.len() > MAX_SPOTS {
            return Err(StateError::TooManySpots(raw.len()));
        }
        let mut out = Vec::with_capacity(raw.len());
        for (spot, &t) in raw.iter().enumerate() {
            if t > MAX_TIPS_PER_SPOT {
                return Err(StateError::TooManyTips { spot: spot + 1, tips: t });
            }
            out.push(t as u8);
        }
        Ok(CircularState { tips: out })
    }

    /// The four-spot position `[p, 1, q, 1]`.
    pub fn cs4(p: u32, q: u32) -> Result<Self, StateError> {
        Self::new([p, 1, q, 1])
    }

    pub(crate) fn from_spots(spots: &Spots) -> Self {
        CircularState { tips: spots.as_slice().to_vec() }
    }

    pub fn len(&self) -> usize {
        self.tips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tips.is_empty()
    }

    pub fn tips(&self) -> impl ExactSizeIterator<Item = u32> + '_ {
        self.tips.iter().map(|&t| t as u32)
    }

    pub fn tip(&self, spot: usize) -> u32 {
        self.tips[spot] as u32
    }

    pub fn total_tips(&self) -> u32 {
        self.tips().sum()
    }

    pub fn key(&self) -> StateKey {
        canonical_key(&self.tips)
    }

    /// Lexicographically least image under the dihedral group of the cycle.
    pub fn canonicalize(&self) -> CircularState {
        self.key().to_state()
    }

    pub fn reversed(&self) -> CircularState {
        let mut tips = self.tips.clone();
        tips.reverse();
        CircularState { tips }
    }

    pub fn rotated(&self, k: usize) -> CircularState {
        let mut tips = self.tips.clone();
        let n = tips.len();
        tips.rotate_left(k % n);
        CircularState { tips }
    }

    pub fn is_terminal(&self) -> bool {
        !has_move(&self.tips)
    }

    /// Every legal move, ordered lexicographically by `(i, j, a, b)`.
    pub fn legal_moves(&self) -> Vec<MoveDescriptor> {
        let mut moves = Vec::new();
        for_each_move(&self.tips, |m| moves.push(m));
        moves
    }

    pub fn check_move(&self, m: &MoveDescriptor) -> Result<(), MoveError> {
        let n = self.tips.len();
        for spot in [m.i, m.j] {
            if spot >= n {
                return Err(MoveError::SpotOutOfRange { spot: spot + 1, spots: n });
            }
        }
        if m.i == m.j {
            return Err(MoveError::SameSpot { spot: m.i + 1 });
        }
        if cyclic_distance(m.i, m.j, n) < 2 {
            return Err(MoveError::AdjacentSpots { i: m.i + 1, j: m.j + 1 });
        }
        if m.i > m.j {
            return Err(MoveError::NotNormalized { i: m.i + 1, j: m.j + 1 });
        }
        for (spot, split) in [(m.i, m.a), (m.j, m.b)] {
            let tips = self.tip(spot);
            if tips == 0 {
                return Err(MoveError::NoOpenTip { spot: spot + 1 });
            }
            if split >= tips {
                return Err(MoveError::SplitOutOfRange { spot: spot + 1, split, tips });
            }
        }
        Ok(())
    }

    /// Plays `m` and returns the two daughter positions whose sum replaces
    /// this one.
    pub fn apply_move(
        &self,
        m: &MoveDescriptor,
    ) -> Result<(CircularState, CircularState), MoveError> {
        self.check_move(m)?;
        let (first, second) = split(&self.tips, m.i, m.j, m.a as u8, m.b as u8);
        Ok((CircularState::from_spots(&first), CircularState::from_spots(&second)))
    }
}

impl fmt::Debug for CircularState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CircularState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("CS[")?;
        for (k, t) in self.tips.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("]")
    }
}

pub fn cyclic_distance(i: usize, j: usize, n: usize) -> usize {
    let d = i.abs_diff(j) % n;
    d.min(n - d)
}

/// A tip-joining move on a [`CircularState`].
///
/// Spot indices are zero-based with `i < j`. `a` and `b` are the numbers of
/// the remaining tips of spots `i` and `j` that end up on the side bounded by
/// the arc `i -> j`. Textual forms number spots from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MoveDescriptor {
    pub i: usize,
    pub j: usize,
    pub a: u32,
    pub b: u32,
}

impl MoveDescriptor {
    pub fn new(i: usize, j: usize, a: u32, b: u32) -> Self {
        MoveDescriptor { i, j, a, b }
    }
}

impl fmt::Display for MoveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.i + 1, self.j + 1, self.a, self.b)
    }
}

/// Canonical encoding of a position up to rotation and reflection.
///
/// Spot `k` of the canonical sequence sits in byte `15 - k` and the spot
/// count in the low byte, so for a fixed spot count the numeric order of keys
/// is the lexicographic order of sequences.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateKey(pub u128);

impl StateKey {
    pub fn spot_count(self) -> usize {
        (self.0 & 0xff) as usize
    }

    pub(crate) fn spots(self) -> Spots {
        let len = self.spot_count().min(MAX_SPOTS);
        let mut spots = Spots::new();
        for k in 0..len {
            spots.push((self.0 >> (8 * (15 - k))) as u8);
        }
        spots
    }

    pub fn to_state(self) -> CircularState {
        CircularState::from_spots(&self.spots())
    }

    /// Rebuilds a key read back from storage, rejecting encodings that no
    /// position produces.
    pub fn from_raw(raw: u128) -> Option<StateKey> {
        let key = StateKey(raw);
        let n = key.spot_count();
        if !(3..=MAX_SPOTS).contains(&n) {
            return None;
        }
        let unused_mask = ((1u128 << (8 * (16 - n))) - 1) & !0xff;
        if raw & unused_mask != 0 {
            return None;
        }
        let spots = key.spots();
        (canonical_key(spots.as_slice()) == key).then_some(key)
    }
}

/// Fixed-capacity spot buffer used on the solver's hot path.
#[derive(Clone, Copy)]
pub(crate) struct Spots {
    data: [u8; MAX_SPOTS],
    len: usize,
}

impl Spots {
    pub(crate) fn new() -> Self {
        Spots { data: [0; MAX_SPOTS], len: 0 }
    }

    pub(crate) fn push(&mut self, v: u8) {
        self.data[self.len] = v;
        self.len += 1;
    }

    pub(crate) fn as_slice(&self) -> &[u8] {
        &self.data[..self.len]
    }
}

fn pack<I: Iterator<Item = u8>>(n: usize, it: I) -> u128 {
    let mut v = n as u128;
    for (k, t) in it.enumerate() {
        v |= (t as u128) << (8 * (15 - k));
    }
    v
}

pub(crate) fn canonical_key(tips: &[u8]) -> StateKey {
    let n = tips.len();
    let mut best = u128::MAX;
    for r in 0..n {
        let fwd = pack(n, (0..n).map(|k| tips[(r + k) % n]));
        let bwd = pack(n, (0..n).map(|k| tips[(r + n - k) % n]));
        best = best.min(fwd).min(bwd);
    }
    StateKey(best)
}

fn has_move(tips: &[u8]) -> bool {
    let n = tips.len();
    (0..n).any(|i| {
        tips[i] > 0 && (i + 2..n).any(|j| tips[j] > 0 && cyclic_distance(i, j, n) >= 2)
    })
}

pub(crate) fn for_each_move<F: FnMut(MoveDescriptor)>(tips: &[u8], mut f: F) {
    let n = tips.len();
    for i in 0..n {
        if tips[i] == 0 {
            continue;
        }
        for j in i + 2..n {
            if tips[j] == 0 || cyclic_distance(i, j, n) < 2 {
                continue;
            }
            for a in 0..tips[i] as u32 {
                for b in 0..tips[j] as u32 {
                    f(MoveDescriptor { i, j, a, b });
                }
            }
        }
    }
}

/// Daughter cycles of joining `i < j`. Assumes the move is legal.
pub(crate) fn split(tips: &[u8], i: usize, j: usize, a: u8, b: u8) -> (Spots, Spots) {
    let mut first = Spots::new();
    first.push(a);
    for &t in &tips[i + 1..j] {
        first.push(t);
    }
    first.push(b);
    first.push(1);

    let mut second = Spots::new();
    second.push(tips[j] - 1 - b);
    for &t in tips[j + 1..].iter().chain(&tips[..i]) {
        second.push(t);
    }
    second.push(tips[i] - 1 - a);
    second.push(1);
    (first, second)
}

/// Disjunctive sum of circular positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GameSum {
    pub components: Vec<CircularState>,
}

impl GameSum {
    pub fn new(components: Vec<CircularState>) -> Self {
        GameSum { components }
    }

    pub fn is_terminal(&self) -> bool {
        self.components.iter().all(CircularState::is_terminal)
    }

    /// Plays `m` in component `index`; the daughters take its slot, in order.
    pub fn apply(&self, index: usize, m: &MoveDescriptor) -> Result<GameSum, MoveError> {
        let len = self.components.len();
        let target = self
            .components
            .get(index)
            .ok_or(MoveError::ComponentOutOfRange { index, len })?;
        let (first, second) = target.apply_move(m)?;
        let mut components = Vec::with_capacity(len + 1);
        components.extend_from_slice(&self.components[..index]);
        components.push(first);
        components.push(second);
        components.extend_from_slice(&self.components[index + 1..]);
        Ok(GameSum { components })
    }

    /// Components as a sorted multiset of canonical keys.
    pub fn canonical_keys(&self) -> Vec<StateKey> {
        let mut keys: Vec<StateKey> = self.components.iter().map(CircularState::key).collect();
        keys.sort_unstable();
        keys
    }
}

impl From<CircularState> for GameSum {
    fn from(s: CircularState) -> Self {
        GameSum { components: alloc::vec![s] }
    }
}

impl fmt::Display for GameSum {
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
