//! Expression language, evaluation, JSON documents and the command line.

pub mod cli;
pub mod eval;
pub mod json;
pub mod parse;

pub use eval::{evaluate, AlgebraKind, SessionConfig, Value};
pub use parse::{parse, Expression, Generator};
