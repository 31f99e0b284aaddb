//! Formulas, frame semantics, bounded countermodel search and explicit fixed
//! points for the sublogics of IL built from J1, J2+, J4+ and J5.

#![allow(clippy::needless_range_loop)]

pub mod closure;
pub mod corpus;
pub mod families;
pub mod fixpoint;
pub mod formula;
pub mod frame;
pub mod io;
pub mod logic;
pub mod parser;
pub mod search;
pub mod semantics;
pub mod suite;

pub use formula::Formula;
pub use frame::{Frame, FrameProperty, Model};
pub use logic::{lookup, Logic};
pub use parser::{parse, ParseError};
pub use search::{find_countermodel, search, Engine, Report, SearchBudget, Status, Witness};
