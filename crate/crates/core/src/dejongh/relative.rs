//! First-order models as button codes, and the relative translation.

use std::collections::{BTreeMap, BTreeSet};

use super::buttons::{button_sentence, realize_code, MonotoneCode};
use super::defs::num;
use super::report::{EquivReport, EquivRow};
use super::translation::{params, Translation, TranslationKind};
use crate::engine::Evaluator;
use crate::error::{Error, Result};
use crate::fo::{force_fo, tuples_over, Assignment, FoModel};
use crate::hf::{HfSet, Universe};
use crate::syntax::coding::code_seq_u64;
use crate::syntax::{and, conj, disj, fresh_name, relativize_e, render, Formula, Language};

fn code(s: &[u64]) -> Result<u64> {
    code_seq_u64(s).ok_or_else(|| Error::Overflow(format!("sequence {s:?}")))
}

/// Relation symbols in index order: the model's relations together with the
/// predicates and letters of `extra`, sorted by name.
pub fn symbol_table(m: &FoModel, extra: Option<&Formula>) -> Result<Vec<(String, usize)>> {
    let mut all: BTreeMap<String, usize> = m.relations().into_iter().collect();
    if let Some(f) = extra {
        for p in f.letters() {
            all.entry(p).or_insert(0);
        }
        for (p, ars) in f.predicates() {
            for a in ars {
                if let Some(&have) = all.get(&p) {
                    if have != a {
                        return Err(Error::Arity {
                            symbol: p,
                            expected: have,
                            found: a,
                        });
                    }
                }
                all.insert(p.clone(), a);
            }
        }
    }
    Ok(all.into_iter().collect())
}

/// `f(v)` holds `⟨0, j⟩` for `j ∈ D_v` and `⟨1, i, j̄⟩` when the `i`-th
/// symbol holds of `j̄` at `v`.
pub fn fo_code_with(m: &FoModel, symbols: &[(String, usize)]) -> Result<MonotoneCode> {
    if m.has_equality() {
        return Err(Error::Unsupported(
            "button codes need an equality-free model".into(),
        ));
    }
    let fr = m.frame();
    let mut out = BTreeMap::new();
    for v in 0..fr.len() {
        let mut set = BTreeSet::new();
        for &j in m.domain_of(v) {
            set.insert(code(&[0, j as u64])?);
        }
        for (i, (r, _)) in symbols.iter().enumerate() {
            for t in m.tuples(r, v) {
                let mut s = vec![1, i as u64];
                s.extend(t.iter().map(|&x| x as u64));
                set.insert(code(&s)?);
            }
        }
        out.insert(fr.name(v).to_string(), set);
    }
    Ok(MonotoneCode(out))
}

pub fn fo_code(m: &FoModel) -> Result<MonotoneCode> {
    fo_code_with(m, &symbol_table(m, None)?)
}

/// `E(t) ↦ ⋁_j (t = ō_j ∧ ψ_⟨0,j⟩)` and
/// `R_i(t̄) ↦ ⋁_j̄ (t̄ = ō_j̄ ∧ ψ_⟨1,i,j̄⟩)`, with `j` ranging over `elements`.
pub fn relative_translation(
    e: &str,
    symbols: &[(String, usize)],
    elements: &[u32],
) -> Result<Translation> {
    let mut t = Translation::new(TranslationKind::Relative);
    let ex: Vec<Formula> = elements
        .iter()
        .map(|&j| {
            Ok(and(
                num(j as u64, "t0"),
                button_sentence(code(&[0, j as u64])?),
            ))
        })
        .collect::<Result<_>>()?;
    t.insert(e, params(1), disj(ex))?;
    for (i, (r, n)) in symbols.iter().enumerate() {
        let ps = params(*n);
        let mut cases = Vec::new();
        let mut err = None;
        tuples_over(elements, *n, &mut |tup| {
            let mut s = vec![1, i as u64];
            s.extend(tup.iter().map(|&x| x as u64));
            match code(&s) {
                Ok(k) => {
                    let eqs = tup.iter().zip(&ps).map(|(&j, p)| num(j as u64, p));
                    cases.push(and(conj(eqs), button_sentence(k)));
                }
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        t.insert(r, ps, disj(cases))?;
    }
    Ok(t)
}

/// Realize `m` by buttons and compare every subformula of `phi`, under all
/// assignments into `D_v`, with its relativized translation.
pub fn dejongh_relative_check(m: &FoModel, phi: &Formula) -> Result<EquivReport> {
    phi.check_language(Language::Fo)?;
    let symbols = symbol_table(m, Some(phi))?;
    let taken: BTreeSet<String> = symbols.iter().map(|(s, _)| s.clone()).collect();
    let e = fresh_name("E", &taken);
    let elements = m.elements();
    let t = relative_translation(&e, &symbols, &elements)?;
    let top = elements.iter().max().map_or(0, |&x| x as usize + 1);
    let base = Universe::from_seed([HfSet::ordinal(top)]);
    let model = realize_code(m.frame(), &fo_code_with(m, &symbols)?, &base)?;
    let fr = m.frame();
    let mut rows = Vec::new();
    let mut seen = BTreeSet::new();
    for chi in phi
        .subformulas()
        .into_iter()
        .filter(|c| seen.insert(c.clone()))
    {
        let target = t.apply(&relativize_e(&chi, &e)?)?;
        let mut ev = Evaluator::new(&model, &target)?;
        let vars: Vec<String> = chi.free_vars().into_iter().collect();
        for v in 0..fr.len() {
            let mut out = Ok(());
            tuples_over(m.domain_of(v), vars.len(), &mut |tup| {
                if out.is_err() {
                    return;
                }
                let a: Assignment = vars.iter().cloned().zip(tup.iter().copied()).collect();
                let ids: BTreeMap<String, u32> = a
                    .iter()
                    .map(|(k, &j)| (k.clone(), HfSet::ordinal(j as usize).id()))
                    .collect();
                let r = force_fo(m, fr.name(v), &chi, &a).and_then(|s| Ok((s, ev.force(v, &ids)?)));
                match r {
                    Ok((source, target)) => rows.push(EquivRow {
                        node: fr.name(v).to_string(),
                        formula: render(&chi),
                        params: a,
                        source,
                        target,
                    }),
                    Err(e) => out = Err(e),
                }
            });
            out?;
        }
    }
    let phi_text = render(phi);
    let top_rows: Vec<&EquivRow> = rows.iter().filter(|r| r.formula == phi_text).collect();
    let mut refuted_at: Vec<String> = top_rows
        .iter()
        .filter(|r| !r.source)
        .map(|r| r.node.clone())
        .collect();
    refuted_at.dedup();
    let translation_refuted = top_rows.iter().filter(|r| !r.source).all(|r| !r.target);
    let mut report = EquivReport {
        kind: "relative".into(),
        formula: phi_text,
        translated: render(&t.apply(&relativize_e(phi, &e)?)?),
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
