//! Formulas of propositional, first-order and set-theoretic logic.

pub mod axioms;
pub mod classify;
pub mod coding;
mod formula;
mod parser;
mod render;
mod transform;

pub use classify::{classify, is_delta0, FormulaClass};
pub use formula::*;
pub use parser::{parse, parse_any};
pub use render::{render, render_term};
pub use transform::{eliminate_function_symbols, relativize_e, Signature};
