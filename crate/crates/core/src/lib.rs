//! Kripke semantics for intuitionistic propositional, first-order and set
//! theoretic logic, with finite hereditarily-finite set models.

pub mod cli;
pub mod dejongh;
pub mod engine;
pub mod error;
pub mod fo;
pub mod frames;
pub mod hf;
pub mod prop;
pub mod set_model;
pub mod syntax;
pub mod table;

pub use error::{Error, Result};
