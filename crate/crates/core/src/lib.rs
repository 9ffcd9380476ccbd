//! Computational workbench for finite loops: Cayley tables, the
//! group-to-loop constructions and their round trips, exhaustive
//! variety checkers, structure theory and equational model search.

pub mod error;
pub mod construct;
pub mod groups;
pub mod ident;
pub mod perm;
pub mod search;
pub mod report;
pub mod structure;
pub mod table;
pub mod varieties;

pub use error::{Error, Result};
pub use report::Report;
pub use table::{CayleyTable, LoopTable};
