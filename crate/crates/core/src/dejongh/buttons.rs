//! Button sentences and the realization of monotone codes.
//!
//! Button `i` is the sentence `∃x B_i(x)` where `B_i(x)` says that `x` is a
//! pair `(M, (bin(i), h))` for the marker `M = {{{∅}}}`, the set of ordinals
//! `bin(i)` at the set bits of `i`, and any `h`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::defs::{num, ordinal_set, singleton_of, unpack};
use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::hf::{HfSet, Universe};
use crate::set_model::SetKripkeModel;
use crate::syntax::{and, exists, Formula};

pub fn marker() -> HfSet {
    HfSet::singleton(HfSet::singleton(HfSet::ordinal(1)))
}

fn bits(i: u64) -> Vec<u64> {
    (0..64).filter(|b| i >> b & 1 == 1).collect()
}

pub fn bin(i: u64) -> HfSet {
    HfSet::from_members(bits(i).into_iter().map(|b| HfSet::ordinal(b as usize)))
}

/// A witness for button `i` with filler `h`.
pub fn button_witness(i: u64, h: HfSet) -> HfSet {
    HfSet::pair(marker(), HfSet::pair(bin(i), h))
}

/// The button index of `x`, if it is a witness.
pub fn button_index(x: HfSet) -> Option<u64> {
    let (m, q) = x.unpair()?;
    if m != marker() {
        return None;
    }
    let (b, _) = q.unpair()?;
    let mut i = 0u64;
    for o in b.members() {
        let k = o.as_ordinal().filter(|&k| k < 64)?;
        i |= 1 << k;
    }
    Some(i)
}

/// `x` is a pair whose first component is the marker.
pub fn is_marked_pair(x: HfSet) -> bool {
    x.unpair().is_some_and(|(m, _)| m == marker())
}

pub(crate) fn is_marker(m: &str) -> Formula {
    singleton_of(m, &|y| singleton_of(y, &|z| num(1, z)))
}

/// `B_i(x)`, a bounded formula.
pub fn button_matrix(i: u64, x: &str) -> Formula {
    let ks = bits(i);
    unpack(x, &|m, q| {
        and(is_marker(m), unpack(q, &|b, _| ordinal_set(&ks, b)))
    })
}

/// `ψ_i`.
pub fn button_sentence(i: u64) -> Formula {
    exists("x", button_matrix(i, "x"))
}

/// Node name to the buttons pressed there.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneCode(pub BTreeMap<String, BTreeSet<u64>>);

impl MonotoneCode {
    pub fn at(&self, v: &str) -> BTreeSet<u64> {
        self.0.get(v).cloned().unwrap_or_default()
    }

    /// Errors on unknown nodes and on `v ≤ w` with `f(v) ⊄ f(w)`.
    pub fn check(&self, fr: &Frame) -> Result<()> {
        for v in self.0.keys() {
            fr.index_of(v)?;
        }
        for v in 0..fr.len() {
            let fv = self.at(fr.name(v));
            for &w in fr.up(v) {
                let fw = self.at(fr.name(w));
                if let Some(i) = fv.iter().find(|i| !fw.contains(i)) {
                    return Err(Error::InvalidModel(format!(
                        "code not monotone: {i} at {} but not at {}",
                        fr.name(v),
                        fr.name(w)
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The model with `ℳ_v = tc(base ∪ {W_i : i ∈ f(v)})`, which forces `ψ_i`
/// at `v` exactly when `i ∈ f(v)`.
pub fn realize_code(fr: &Frame, code: &MonotoneCode, base: &Universe) -> Result<SetKripkeModel> {
    code.check(fr)?;
    if let Some(x) = base.elements().iter().find(|&&x| is_marked_pair(x)) {
        return Err(Error::InvalidModel(format!(
            "base contains the button-like set {x}"
        )));
    }
    let universes = (0..fr.len())
        .map(|v| {
            let ws = code
                .at(fr.name(v))
                .into_iter()
                .map(|i| button_witness(i, HfSet::EMPTY));
            Universe::from_seed(base.elements().iter().copied().chain(ws))
        })
        .collect();
    SetKripkeModel::from_universes(fr.clone(), universes)
}
