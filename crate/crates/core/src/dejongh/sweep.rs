//! Formula sweeps comparing a first-order model with its mimic model.

use std::collections::{BTreeMap, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::mimic::{mimic_build_with, Mimic};
use super::report::{EquivReport, EquivRow};
use super::translation::params;
use crate::engine::Evaluator;
use crate::error::{Error, Result};
use crate::fo::{force_fo, tuples_over, Assignment, FoModel, FoModelSpec};
use crate::hf::HfSet;
use crate::syntax::{and, exists, forall, imp, or, pred, render, Formula, Language};
use crate::table::TableModel;

pub const MAX_DEPTH: usize = 3;

/// `⊥` and every atom over `vars`.
pub fn atoms(symbols: &[(String, usize)], vars: &[&str]) -> Vec<Formula> {
    let mut out = vec![Formula::Bot];
    for (s, n) in symbols {
        if *n == 0 {
            out.push(Formula::Letter(s.clone()));
            continue;
        }
        let mut args: Vec<Vec<&str>> = vec![vec![]];
        for _ in 0..*n {
            args = args
                .into_iter()
                .flat_map(|a| vars.iter().map(move |v| [a.clone(), vec![*v]].concat()))
                .collect();
        }
        out.extend(args.iter().map(|a| pred(s.as_str(), a)));
    }
    out
}

/// All formulas of depth at most `depth` built from `atoms` with `∧ ∨ →`
/// and `∃ ∀` over `vars`.
pub fn formulas_up_to(atoms: &[Formula], vars: &[&str], depth: usize) -> Vec<Formula> {
    let mut level = atoms.to_vec();
    for _ in 0..depth {
        let mut next = atoms.to_vec();
        for a in &level {
            for b in &level {
                next.push(and(a.clone(), b.clone()));
                next.push(or(a.clone(), b.clone()));
                next.push(imp(a.clone(), b.clone()));
            }
        }
        for a in &level {
            for v in vars {
                next.push(exists(*v, a.clone()));
                next.push(forall(*v, a.clone()));
            }
        }
        let mut seen = HashSet::new();
        next.retain(|f| seen.insert(f.clone()));
        level = next;
    }
    level
}

/// A random formula of depth exactly `depth`.
pub fn random_formula(
    rng: &mut impl Rng,
    atoms: &[Formula],
    vars: &[&str],
    depth: usize,
) -> Formula {
    if depth == 0 {
        return atoms.choose(rng).expect("atoms").clone();
    }
    let deep = random_formula(rng, atoms, vars, depth - 1);
    match rng.gen_range(0..5) {
        k @ 0..=2 => {
            let d = rng.gen_range(0..depth);
            let other = random_formula(rng, atoms, vars, d);
            let (a, b) = if rng.gen_bool(0.5) {
                (deep, other)
            } else {
                (other, deep)
            };
            match k {
                0 => and(a, b),
                1 => or(a, b),
                _ => imp(a, b),
            }
        }
        3 => exists(*vars.choose(rng).unwrap(), deep),
        _ => forall(*vars.choose(rng).unwrap(), deep),
    }
}

/// The first-order model read off the mimic: `D_v = ℳ_v` and `P` holds of
/// `x̄` at `v` when `v ⊩ φ_P(x̄)`.
pub fn induced_model(mm: &Mimic) -> Result<FoModel> {
    let fr = mm.model.frame();
    let ids: Vec<Vec<u32>> = (0..fr.len())
        .map(|v| {
            mm.model
                .universe(v)
                .elements()
                .iter()
                .map(|x| x.id())
                .collect()
        })
        .collect();
    let mut relations = BTreeMap::new();
    for (i, (s, n)) in mm.coded.symbols.iter().enumerate() {
        let ps = params(*n);
        let mut ev = Evaluator::new(&mm.model, &mm.atom(i, &ps))?;
        let mut per = BTreeMap::new();
        for (v, d) in ids.iter().enumerate() {
            let mut tuples = Vec::new();
            let mut env = vec![0; 0];
            let mut err = None;
            tuples_over(d, *n, &mut |t| {
                let a: BTreeMap<String, u32> = ps.iter().cloned().zip(t.iter().copied()).collect();
                match ev.env(v, &a) {
                    Ok(e) => env = e,
                    Err(e) => {
                        err = Some(e);
                        return;
                    }
                }
                if ev.eval(v, &mut env) {
                    tuples.push(t.to_vec());
                }
            });
            if let Some(e) = err {
                return Err(e);
            }
            per.insert(fr.name(v).to_string(), tuples);
        }
        relations.insert(s.clone(), per);
    }
    FoModel::from_spec(&FoModelSpec {
        frame: fr.to_spec(),
        domains: (0..fr.len())
            .map(|v| (fr.name(v).to_string(), ids[v].clone()))
            .collect(),
        relations,
        ..Default::default()
    })
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MimicNode {
    pub node: String,
    pub source: String,
    pub universe: usize,
    pub window: (u32, u32),
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MimicMismatch {
    pub formula: String,
    pub node: String,
    pub x: String,
    pub y: String,
    pub source: bool,
    pub target: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct MimicReport {
    pub model_hash: String,
    pub nodes: Vec<MimicNode>,
    pub depth: usize,
    pub exhaustive: usize,
    pub random: usize,
    pub seed: u64,
    pub comparisons: u64,
    pub mismatches: u64,
    pub examples: Vec<MimicMismatch>,
    pub cross_checks: usize,
    pub cross_check_failures: usize,
}

impl MimicReport {
    pub fn pass(&self) -> bool {
        self.mismatches == 0 && self.cross_check_failures == 0
    }
}

const VARS: [&str; 2] = ["x", "y"];
const CROSS_CHECKS: usize = 6;

fn show(x: u32) -> String {
    HfSet::from_id(x).to_string()
}

struct Sweep<'a> {
    mm: &'a Mimic,
    src: TableModel,
    ind: TableModel,
    /// Per mimic node, source element to the sets of `ℳ_v` it pulls back to.
    pullback: Vec<HashMap<u32, Vec<u64>>>,
    report: MimicReport,
}

impl Sweep<'_> {
    fn compare(&mut self, f: &Formula) -> Result<()> {
        let fr = self.mm.model.frame();
        for t in 0..fr.len() {
            let s = self.mm.source_node(t);
            let words = self.ind.elements().len().div_ceil(64);
            let mut expected: HashMap<u32, Vec<u64>> = HashMap::new();
            for &e in self.pullback[t].keys() {
                let row = self.src.row_bits(f, s, &[e])?;
                let mut acc = vec![0u64; words];
                for (i, &d) in self.src.elements().iter().enumerate() {
                    if row[i / 64] >> (i % 64) & 1 == 1 {
                        if let Some(pb) = self.pullback[t].get(&d) {
                            acc.iter_mut().zip(pb).for_each(|(a, b)| *a |= b);
                        }
                    }
                }
                expected.insert(e, acc);
            }
            for (&a, entry) in &self.mm.maps.g[t] {
                let got = self.ind.row_bits(f, t, &[a])?;
                let want = &expected[&entry.element];
                self.report.comparisons += self.mm.maps.g[t].len() as u64;
                let diff: u32 = got
                    .iter()
                    .zip(want)
                    .map(|(x, y)| (x ^ y).count_ones())
                    .sum();
                if diff == 0 {
                    continue;
                }
                self.report.mismatches += diff as u64;
                if self.report.examples.len() < 10 {
                    let i = (0..got.len() * 64)
                        .find(|&i| (got[i / 64] ^ want[i / 64]) >> (i % 64) & 1 == 1)
                        .unwrap();
                    self.report.examples.push(MimicMismatch {
                        formula: render(f),
                        node: fr.name(t).to_string(),
                        x: show(a),
                        y: show(self.ind.elements()[i]),
                        source: want[i / 64] >> (i % 64) & 1 == 1,
                        target: got[i / 64] >> (i % 64) & 1 == 1,
                    });
                }
            }
        }
        Ok(())
    }

    /// Direct forcing of `f^τ` in the set model against the induced table.
    fn cross_check(&mut self, f: &Formula, rng: &mut ChaCha8Rng) -> Result<()> {
        let target = self.mm.translation()?.apply(f)?;
        let mut ev = Evaluator::new(&self.mm.model, &target)?;
        let fr = self.mm.model.frame();
        let t = rng.gen_range(0..fr.len());
        let dom: Vec<u32> = self.mm.maps.g[t].keys().copied().collect();
        let a: BTreeMap<String, u32> = VARS
            .iter()
            .map(|v| (v.to_string(), *dom.choose(rng).unwrap()))
            .collect();
        let direct = ev.force(t, &a)?;
        let table = self.ind.holds(f, t, &a.clone().into_iter().collect())?;
        self.report.cross_checks += 1;
        if direct != table {
            self.report.cross_check_failures += 1;
        }
        Ok(())
    }
}

/// Sweep every formula of depth at most 2 over the signature of `m` in
/// the variables `x, y`, plus `random` formulas of depth `depth`, comparing
/// forcing in `m` with forcing of the `τ`-translation in the mimic model
/// at every node and every pair of parameters.
pub fn mimic_check(m: &FoModel, depth: usize, random: usize, seed: u64) -> Result<MimicReport> {
    if depth > MAX_DEPTH {
        return Err(Error::Unsupported(format!(
            "sweep depth {depth} exceeds the limit of {MAX_DEPTH}"
        )));
    }
    let symbols = m.relations();
    let mm = mimic_build_with(m, &symbols)?;
    let ind = TableModel::new(&induced_model(&mm)?, &VARS)?;
    let fr = mm.model.frame();
    let words = ind.elements().len().div_ceil(64);
    let pullback = (0..fr.len())
        .map(|t| {
            let mut pb: HashMap<u32, Vec<u64>> = HashMap::new();
            for (&a, e) in &mm.maps.g[t] {
                let i = ind.position(a).expect("universe element");
                pb.entry(e.element).or_insert_with(|| vec![0; words])[i / 64] |= 1 << (i % 64);
            }
            pb
        })
        .collect();
    let nodes = (0..fr.len())
        .map(|t| MimicNode {
            node: fr.name(t).to_string(),
            source: m.frame().name(mm.source_node(t)).to_string(),
            universe: mm.model.universe(t).len(),
            window: mm.maps.window[t],
        })
        .collect();
    let mut sweep = Sweep {
        mm: &mm,
        src: TableModel::new(m, &VARS)?,
        ind,
        pullback,
        report: MimicReport {
            model_hash: mm.model.fingerprint(),
            nodes,
            depth,
            exhaustive: 0,
            random: 0,
            seed,
            comparisons: 0,
            mismatches: 0,
            examples: Vec::new(),
            cross_checks: 0,
            cross_check_failures: 0,
        },
    };
    let base = atoms(&symbols, &VARS);
    let all = formulas_up_to(&base, &VARS, depth.min(2));
    for f in &all {
        sweep.compare(f)?;
        if f.depth() >= 2 {
            sweep.ind.forget(f);
            sweep.src.forget(f);
        }
    }
    sweep.report.exhaustive = all.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..random {
        let f = random_formula(&mut rng, &base, &VARS, depth);
        sweep.compare(&f)?;
        if k % 10 == 9 {
            sweep.ind.clear();
            sweep.src.clear();
        }
        sweep.report.random += 1;
    }
    for _ in 0..CROSS_CHECKS {
        let f = all.choose(&mut rng).expect("formulas").clone();
        sweep.cross_check(&f, &mut rng)?;
    }
    Ok(sweep.report)
}

/// The model's relations together with the symbols of `phi`; the formula
/// fixes the arity of relations that hold nowhere.
pub fn signature(m: &FoModel, phi: &Formula) -> Result<Vec<(String, usize)>> {
    let mut all: BTreeMap<String, usize> = BTreeMap::new();
    let fr = m.frame();
    for (r, n) in m.relations() {
        if (0..fr.len()).any(|v| !m.tuples(&r, v).is_empty()) {
            all.insert(r, n);
        }
    }
    for p in phi.letters() {
        all.entry(p).or_insert(0);
    }
    for (p, ars) in phi.predicates() {
        for a in ars {
            match all.get(&p) {
                Some(&have) if have != a => {
                    return Err(Error::Arity {
                        symbol: p,
                        expected: have,
                        found: a,
                    })
                }
                _ => {
                    all.insert(p.clone(), a);
                }
            }
        }
    }
    for (r, n) in m.relations() {
        all.entry(r).or_insert(n);
    }
    Ok(all.into_iter().collect())
}

fn abbreviate(f: &Formula) -> String {
    let text = render(f);
    if text.len() <= 2000 {
        text
    } else {
        format!(
            "<formula with {} symbols, {} characters>",
            f.size(),
            text.len()
        )
    }
}

/// Compare every subformula of `phi` with its `τ`-translation at every node
/// of the mimic model and every assignment into `ℳ_v`. Rows give the
/// parameters as source elements `g_v(x̄)` and are listed once per distinct
/// outcome.
pub fn mimic_check_formula(m: &FoModel, phi: &Formula) -> Result<EquivReport> {
    phi.check_language(Language::Fo)?;
    let symbols = signature(m, phi)?;
    let mm = mimic_build_with(m, &symbols)?;
    let tr = mm.translation()?;
    let fr = mm.model.frame();
    let mut rows = Vec::new();
    let mut seen_rows = std::collections::BTreeSet::new();
    let mut seen = HashSet::new();
    let mut mismatches = 0;
    for chi in phi
        .subformulas()
        .into_iter()
        .filter(|c| seen.insert(c.clone()))
    {
        let mut ev = Evaluator::new(&mm.model, &tr.apply(&chi)?)?;
        let vars: Vec<String> = chi.free_vars().into_iter().collect();
        for t in 0..fr.len() {
            let s = m.frame().name(mm.source_node(t)).to_string();
            let ids: Vec<u32> = mm.maps.g[t].keys().copied().collect();
            let mut out = Ok(());
            tuples_over(&ids, vars.len(), &mut |tup| {
                if out.is_err() {
                    return;
                }
                let a: BTreeMap<String, u32> =
                    vars.iter().cloned().zip(tup.iter().copied()).collect();
                let src: Assignment = a
                    .iter()
                    .map(|(k, x)| (k.clone(), mm.maps.g[t][x].element))
                    .collect();
                let r =
                    force_fo(m, &s, &chi, &src).and_then(|source| Ok((source, ev.force(t, &a)?)));
                match r {
                    Ok((source, target)) => {
                        if source != target {
                            mismatches += 1;
                        }
                        let row = EquivRow {
                            node: fr.name(t).to_string(),
                            formula: render(&chi),
                            params: src,
                            source,
                            target,
                        };
                        let key = (
                            row.node.clone(),
                            row.formula.clone(),
                            row.params.clone(),
                            source,
                            target,
                        );
                        if seen_rows.insert(key) {
                            rows.push(row);
                        }
                    }
                    Err(e) => out = Err(e),
                }
            });
            out?;
        }
    }
    let phi_text = render(phi);
    let top: Vec<&EquivRow> = rows.iter().filter(|r| r.formula == phi_text).collect();
    let mut refuted_at: Vec<String> = top
        .iter()
        .filter(|r| !r.source)
        .map(|r| r.node.clone())
        .collect();
    refuted_at.dedup();
    let translation_refuted = top.iter().filter(|r| !r.source).all(|r| !r.target);
    let mut notes: Vec<String> = (0..fr.len())
        .filter(|&t| fr.name(t) != m.frame().name(mm.source_node(t)))
        .map(|t| {
            format!(
                "node {} stands for source node {}",
                fr.name(t),
                m.frame().name(mm.source_node(t))
            )
        })
        .collect();
    if mismatches > 0 {
        notes.push(format!("{mismatches} mismatched assignments"));
    }
    let mut report = EquivReport {
        kind: "mimic".into(),
        formula: phi_text,
        translated: abbreviate(&tr.apply(phi)?),
        model_hash: mm.model.fingerprint(),
        rows,
        mismatches: 0,
        refuted_at,
        translation_refuted,
        notes,
    };
    report.finish();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fo::{countermodel_formula, iqc_countermodel};

    #[test]
    fn enumeration_counts() {
        let base = atoms(&[("P".into(), 1)], &VARS);
        assert_eq!(base.len(), 3);
        assert_eq!(formulas_up_to(&base, &VARS, 1).len(), 42);
        assert_eq!(formulas_up_to(&base, &VARS, 2).len(), 5463);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            assert_eq!(random_formula(&mut rng, &base, &VARS, 3).depth(), 3);
        }
    }

    #[test]
    fn countermodel_sweeps() {
        for name in ["CD", "DNS", "DecidableP"] {
            let m = iqc_countermodel(name).unwrap();
            let r = mimic_check_formula(&m, &countermodel_formula(name).unwrap()).unwrap();
            assert!(r.pass(), "{name}: {:?}", r.first_mismatch());
            assert!(!r.refuted_at.is_empty(), "{name}");
        }
        let m = iqc_countermodel("CD").unwrap();
        let r = mimic_check(&m, 1, 5, 7).unwrap();
        assert!(r.pass(), "{:?}", r.examples);
        assert!(r.comparisons > 0 && r.cross_checks == CROSS_CHECKS);
        assert!(mimic_check(&m, 4, 0, 0).is_err());
    }
}
