use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::formula::{Formula, Language};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FormulaClass {
    Delta0,
    SigmaN(u32),
    Unclassified,
}

impl fmt::Display for FormulaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormulaClass::Delta0 => f.write_str("Delta0"),
            FormulaClass::SigmaN(n) => write!(f, "Sigma{n}"),
            FormulaClass::Unclassified => f.write_str("Unclassified"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Level {
    D0,
    Sigma(u32),
    Pi(u32),
}

impl Level {
    fn sigma_rank(self) -> u32 {
        match self {
            Level::D0 => 0,
            Level::Sigma(n) => n,
            Level::Pi(n) => n + 1,
        }
    }

    fn pi_rank(self) -> u32 {
        match self {
            Level::D0 => 0,
            Level::Sigma(n) => n + 1,
            Level::Pi(n) => n,
        }
    }
}

fn level(f: &Formula) -> Option<Level> {
    use Level::*;
    Some(match f {
        Formula::Bot
        | Formula::Letter(_)
        | Formula::Pred(..)
        | Formula::Eq(..)
        | Formula::Mem(..) => D0,
        Formula::BExists(_, _, b) | Formula::BForall(_, _, b) => match level(b)? {
            D0 => D0,
            _ => return None,
        },
        Formula::Exists(_, b) => Sigma(level(b)?.sigma_rank().max(1)),
        Formula::Forall(_, b) => Pi(level(b)?.pi_rank().max(1)),
        Formula::And(a, b) => match (level(a)?, level(b)?) {
            (D0, D0) => D0,
            (x, y) if matches!((x, y), (Pi(_), Pi(_)) | (Pi(_), D0) | (D0, Pi(_))) => {
                Pi(x.pi_rank().max(y.pi_rank()))
            }
            (x, y) => Sigma(x.sigma_rank().max(y.sigma_rank())),
        },
        Formula::Or(a, b) => match (level(a)?, level(b)?) {
            (D0, D0) => D0,
            (x @ (Sigma(_) | D0), y @ (Sigma(_) | D0)) => Sigma(x.sigma_rank().max(y.sigma_rank())),
            _ => return None,
        },
        Formula::Impl(a, b) => match (level(a)?, level(b)?) {
            (D0, D0) => D0,
            (x @ (Sigma(_) | D0), y @ (Pi(_) | D0)) => Pi(x.sigma_rank().max(y.pi_rank())),
            _ => return None,
        },
    })
}

/// Delta0 when every quantifier is bounded; otherwise the least n with the
/// formula in a displayed Sigma_n shape. A Pi_n shape is reported as
/// Sigma_{n+1}.
pub fn classify(f: &Formula) -> Result<FormulaClass> {
    f.check_language(Language::Set)?;
    let f = f.normalize();
    Ok(match level(&f) {
        Some(Level::D0) => FormulaClass::Delta0,
        Some(Level::Sigma(n)) => FormulaClass::SigmaN(n),
        Some(Level::Pi(n)) => FormulaClass::SigmaN(n + 1),
        None => FormulaClass::Unclassified,
    })
}

pub fn is_delta0(f: &Formula) -> bool {
    !f.has_unbounded_quantifier()
}
