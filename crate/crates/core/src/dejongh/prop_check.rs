//! Propositional letters as buttons.

use std::collections::BTreeMap;

use super::buttons::{button_sentence, realize_code, MonotoneCode};
use super::report::{EquivReport, EquivRow};
use super::translation::{Translation, TranslationKind};
use crate::engine::Evaluator;
use crate::error::Result;
use crate::hf::Universe;
use crate::prop::{force_prop, PropModel};
use crate::syntax::{render, Formula, Language};

/// `p ↦ ψ_i` where `p` is the `i`-th letter of `phi` in sorted order.
pub fn prop_translation(phi: &Formula) -> Result<Translation> {
    let mut t = Translation::new(TranslationKind::Prop);
    for (i, p) in phi.letters().into_iter().enumerate() {
        t.insert(&p, vec![], button_sentence(i as u64))?;
    }
    Ok(t)
}

/// The code `f(v) = {i : v ⊩ p_i}`.
pub fn prop_code(pm: &PropModel, phi: &Formula) -> Result<MonotoneCode> {
    let letters: Vec<String> = phi.letters().into_iter().collect();
    let mut code = BTreeMap::new();
    for v in pm.frame.nodes() {
        let mut on = std::collections::BTreeSet::new();
        for (i, p) in letters.iter().enumerate() {
            if force_prop(pm, v, &Formula::Letter(p.clone()))? {
                on.insert(i as u64);
            }
        }
        code.insert(v.clone(), on);
    }
    Ok(MonotoneCode(code))
}

/// Realize the valuation by buttons over `base` and compare every
/// subformula of `phi` with its translation at every node.
pub fn dejongh_prop_check(pm: &PropModel, phi: &Formula, base: &Universe) -> Result<EquivReport> {
    phi.check_language(Language::Prop)?;
    let t = prop_translation(phi)?;
    let model = realize_code(&pm.frame, &prop_code(pm, phi)?, base)?;
    let none = BTreeMap::new();
    let mut rows = Vec::new();
    let mut subs = phi.subformulas();
    subs.dedup();
    let mut seen = std::collections::BTreeSet::new();
    for chi in subs.into_iter().filter(|c| seen.insert(c.clone())) {
        let mut ev = Evaluator::new(&model, &t.apply(&chi)?)?;
        for (v, name) in pm.frame.nodes().iter().enumerate() {
            rows.push(EquivRow {
                node: name.clone(),
                formula: render(&chi),
                params: BTreeMap::new(),
                source: force_prop(pm, name, &chi)?,
                target: ev.force(v, &none)?,
            });
        }
    }
    let phi_text = render(phi);
    let top: Vec<&EquivRow> = rows.iter().filter(|r| r.formula == phi_text).collect();
    let refuted_at: Vec<String> = top
        .iter()
        .filter(|r| !r.source)
        .map(|r| r.node.clone())
        .collect();
    let translation_refuted = top.iter().filter(|r| !r.source).all(|r| !r.target);
    let mut report = EquivReport {
        kind: "prop".into(),
        formula: phi_text,
        translated: render(&t.apply(phi)?),
        model_hash: model.fingerprint(),
        rows,
        mismatches: 0,
        refuted_at,
        translation_refuted,
        notes: Vec::new(),
    };
    report.finish();
    Ok(report)
}
