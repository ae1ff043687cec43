//! Sprague–Grundy engine for Circular sprout positions and the girth-4
//! two-spot Brussels sprout game built on top of them.
//!
//! The crate is `no_std` and only needs `alloc`. Everything that touches the
//! file system, the network or the command line lives in the `sprouts`
//! companion crate.
//!
//! The pieces, bottom-up:
//!
//! - [`grundy`]: mex, nim-sum and the [`Nimber`] newtype.
//! - [`circular`]: [`CircularState`], move generation, the split rule and
//!   dihedral canonicalization.
//! - [`table`] and [`solver`]: memoized nimber / play-length evaluation and
//!   optimal move selection on disjunctive sums.
//! - [`bs2`]: the two-spot Brussels sprout game decomposed into circular sums.
//! - [`position`]: mixed sums of circular and two-spot components, the type
//!   the CLI and the play service work with.
//! - [`formulas`]: closed forms for move counts, winners and the four-spot
//!   circular nimber.
//! - [`playout`]: an unconstrained planar playout simulator on the sphere.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bs2;
pub mod circular;
pub mod formulas;
pub mod grundy;
pub mod playout;
pub mod position;
pub mod solver;
pub mod table;

pub use bs2::Bs2Position;
pub use circular::{CircularState, GameSum, MoveDescriptor, MoveError, StateError, StateKey};
pub use grundy::{mex, nim_sum, sum_nimber, Nimber, NimberSet};
pub use position::{Component, Position, PositionMove};
pub use solver::{best_move, grundy, play_length_bounds, Evaluation, SumMove};
pub use table::{LocalTable, NimberTable};
