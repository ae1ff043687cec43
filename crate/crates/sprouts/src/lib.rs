//! Std companion to `sprouts-core`: state notation, the on-disk memo cache,
//! verification sweeps, playout batches and the HTTP play service. The
//! `sprouts` binary wraps all of it.

pub mod analysis;
pub mod notation;
pub mod playouts;
pub mod service;
pub mod session;
pub mod sweep;
pub mod table;

pub use notation::{format_position, parse_position, ParseError};
pub use table::SharedTable;
