//! Kripke models for intuitionistic first-order logic, with and without
//! equality.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::engine::{self, Structure};
use crate::error::{Error, Result};
use crate::frames::{Frame, FrameSpec};
use crate::syntax::{Formula, Language};

/// Variable assignment by element id.
pub type Assignment = BTreeMap<String, u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Equality {
    None,
    Identity,
    /// Per-node congruence pairs; reflexive pairs are implicit.
    Congruence(Vec<HashSet<(u32, u32)>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Relation {
    arity: usize,
    per_node: Vec<HashSet<Vec<u32>>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoModel {
    frame: Frame,
    domains: Vec<Vec<u32>>,
    names: Vec<String>,
    rels: Vec<Relation>,
    equality: Equality,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct FoModelSpec {
    pub frame: FrameSpec,
    pub domains: BTreeMap<String, Vec<u32>>,
    #[serde(default)]
    pub relations: BTreeMap<String, BTreeMap<String, Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub congruence: Option<BTreeMap<String, Vec<(u32, u32)>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub equality: bool,
}

impl FoModel {
    /// Build and check the model conditions.
    pub fn from_spec(spec: &FoModelSpec) -> Result<FoModel> {
        let m = FoModel::from_spec_unchecked(spec)?;
        let v = check_fo_model(&m);
        if v.is_empty() {
            Ok(m)
        } else {
            Err(Error::InvalidModel(v.join("; ")))
        }
    }

    /// Build without checking monotonicity or congruence laws.
    pub fn from_spec_unchecked(spec: &FoModelSpec) -> Result<FoModel> {
        let frame = Frame::from_spec(&spec.frame)?;
        let n = frame.len();
        let mut domains = vec![Vec::new(); n];
        for (node, ids) in &spec.domains {
            let mut d = ids.clone();
            d.sort_unstable();
            d.dedup();
            domains[frame.index_of(node)?] = d;
        }
        let mut names = Vec::new();
        let mut rels = Vec::new();
        for (r, by_node) in &spec.relations {
            let mut arity = None;
            let mut per_node = vec![HashSet::new(); n];
            for (node, tuples) in by_node {
                let i = frame.index_of(node)?;
                for t in tuples {
                    if let Some(a) = arity {
                        if a != t.len() {
                            return Err(Error::Arity {
                                symbol: r.clone(),
                                expected: a,
                                found: t.len(),
                            });
                        }
                    }
                    arity = Some(t.len());
                    per_node[i].insert(t.clone());
                }
            }
            names.push(r.clone());
            rels.push(Relation {
                arity: arity.unwrap_or(0),
                per_node,
            });
        }
        let equality = match &spec.congruence {
            Some(c) => {
                let mut per = vec![HashSet::new(); n];
                for (node, pairs) in c {
                    per[frame.index_of(node)?] = pairs.iter().copied().collect();
                }
                Equality::Congruence(per)
            }
            None if spec.equality => Equality::Identity,
            None => Equality::None,
        };
        Ok(FoModel {
            frame,
            domains,
            names,
            rels,
            equality,
        })
    }

    pub fn to_spec(&self) -> FoModelSpec {
        let nm = |i: usize| self.frame.name(i).to_string();
        let domains = (0..self.frame.len())
            .map(|i| (nm(i), self.domains[i].clone()))
            .collect();
        let relations = self
            .names
            .iter()
            .zip(&self.rels)
            .map(|(r, rel)| {
                let by_node = (0..self.frame.len())
                    .map(|i| {
                        let mut ts: Vec<Vec<u32>> = rel.per_node[i].iter().cloned().collect();
                        ts.sort();
                        (nm(i), ts)
                    })
                    .collect();
                (r.clone(), by_node)
            })
            .collect();
        let congruence = match &self.equality {
            Equality::Congruence(c) => Some(
                (0..self.frame.len())
                    .map(|i| {
                        let mut ps: Vec<(u32, u32)> = c[i].iter().copied().collect();
                        ps.sort();
                        (nm(i), ps)
                    })
                    .collect(),
            ),
            _ => None,
        };
        FoModelSpec {
            frame: self.frame.to_spec(),
            domains,
            relations,
            congruence,
            equality: self.equality == Equality::Identity,
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn domain_of(&self, v: usize) -> &[u32] {
        &self.domains[v]
    }

    pub fn has_equality(&self) -> bool {
        self.equality != Equality::None
    }

    pub fn language(&self) -> Language {
        if self.has_equality() {
            Language::FoEq
        } else {
            Language::Fo
        }
    }

    /// Relation symbols with their arities.
    pub fn relations(&self) -> Vec<(String, usize)> {
        self.names
            .iter()
            .cloned()
            .zip(self.rels.iter().map(|r| r.arity))
            .collect()
    }

    /// Tuples of `R` at node `v`, sorted.
    pub fn tuples(&self, r: &str, v: usize) -> Vec<Vec<u32>> {
        match self.names.iter().position(|x| x == r) {
            Some(i) => {
                let mut t: Vec<Vec<u32>> = self.rels[i].per_node[v].iter().cloned().collect();
                t.sort();
                t
            }
            None => Vec::new(),
        }
    }

    /// All element ids occurring in some domain.
    pub fn elements(&self) -> Vec<u32> {
        let s: BTreeSet<u32> = self.domains.iter().flatten().copied().collect();
        s.into_iter().collect()
    }

    fn congruent(&self, v: usize, a: u32, b: u32) -> bool {
        match &self.equality {
            Equality::Congruence(c) => a == b || c[v].contains(&(a, b)),
            _ => a == b,
        }
    }
}

impl Structure for FoModel {
    fn frame(&self) -> &Frame {
        &self.frame
    }

    fn domain(&self, v: usize) -> &[u32] {
        &self.domains[v]
    }

    fn symbol(&self, name: &str, arity: usize) -> Result<Option<u32>> {
        match self.names.iter().position(|x| x == name) {
            None => Ok(None),
            Some(i)
                if self.rels[i].arity == arity
                    || self.rels[i].per_node.iter().all(|s| s.is_empty()) =>
            {
                Ok(Some(i as u32))
            }
            Some(i) => Err(Error::Arity {
                symbol: name.to_string(),
                expected: self.rels[i].arity,
                found: arity,
            }),
        }
    }

    fn rel(&self, v: usize, sym: u32, args: &[u32]) -> bool {
        self.rels[sym as usize].per_node[v].contains(args)
    }

    fn eq(&self, v: usize, a: u32, b: u32) -> Option<bool> {
        match self.equality {
            Equality::None => None,
            _ => Some(self.congruent(v, a, b)),
        }
    }

    fn mem(&self, _v: usize, _a: u32, _b: u32) -> Option<bool> {
        None
    }
}

/// Forcing at node `v` under assignment `a`.
pub fn force_fo(m: &FoModel, v: &str, f: &Formula, a: &Assignment) -> Result<bool> {
    f.check_language(m.language())?;
    let i = m.frame.index_of(v)?;
    engine::force(m, i, f, a)
}

/// Monotonicity and congruence violations, as readable messages.
pub fn check_fo_model(m: &FoModel) -> Vec<String> {
    let mut out = Vec::new();
    let fr = &m.frame;
    let n = fr.len();
    for v in 0..n {
        for &w in fr.up(v) {
            for x in &m.domains[v] {
                if !m.domains[w].contains(x) {
                    out.push(format!(
                        "element {x} of D_{} missing from D_{}",
                        fr.name(v),
                        fr.name(w)
                    ));
                }
            }
        }
    }
    for (r, rel) in m.names.iter().zip(&m.rels) {
        for v in 0..n {
            for t in &rel.per_node[v] {
                if let Some(x) = t.iter().find(|x| !m.domains[v].contains(x)) {
                    out.push(format!("{r} at {} uses {x} outside the domain", fr.name(v)));
                }
                for &w in fr.up(v) {
                    if !rel.per_node[w].contains(t) {
                        out.push(format!(
                            "{r}{t:?} holds at {} but not at {}",
                            fr.name(v),
                            fr.name(w)
                        ));
                    }
                }
            }
        }
    }
    if let Equality::Congruence(c) = &m.equality {
        for v in 0..n {
            let d = &m.domains[v];
            let rel = |a: u32, b: u32| a == b || c[v].contains(&(a, b));
            for &(a, b) in &c[v] {
                if !d.contains(&a) || !d.contains(&b) {
                    out.push(format!(
                        "congruence at {} relates {a}, {b} outside the domain",
                        fr.name(v)
                    ));
                }
                if !rel(b, a) {
                    out.push(format!(
                        "congruence at {} not symmetric on {a}, {b}",
                        fr.name(v)
                    ));
                }
                for &x in d {
                    if rel(b, x) && !rel(a, x) {
                        out.push(format!(
                            "congruence at {} not transitive on {a}, {b}, {x}",
                            fr.name(v)
                        ));
                    }
                }
                for &w in fr.up(v) {
                    if !(a == b || c[w].contains(&(a, b))) {
                        out.push(format!(
                            "{a} ~ {b} at {} but not at {}",
                            fr.name(v),
                            fr.name(w)
                        ));
                    }
                }
            }
            for (r, relation) in m.names.iter().zip(&m.rels) {
                for t in &relation.per_node[v] {
                    for (k, &x) in t.iter().enumerate() {
                        for &y in d {
                            if y != x && rel(x, y) {
                                let mut t2 = t.clone();
                                t2[k] = y;
                                if !relation.per_node[v].contains(&t2) {
                                    out.push(format!(
                                        "{r} at {} not compatible with {x} ~ {y}",
                                        fr.name(v)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Result of [`pad_domains`]: the padded model and the map `f` sending
/// every element of the padded model to the original element it copies.
#[derive(Debug, Clone)]
pub struct Padding {
    pub model: FoModel,
    pub f: BTreeMap<u32, u32>,
}

/// Add `k` fresh copies of the least element of `D_v` above each node `v`
/// in `at` (all nodes when `None`). A copy behaves exactly like its
/// source in every relation, so `M', v ⊩ φ(x̄)` iff `M, v ⊩ φ(f(x̄))`.
pub fn pad_domains(m: &FoModel, k: usize, at: Option<&[usize]>) -> Result<Padding> {
    if m.has_equality() {
        return Err(Error::Unsupported(
            "domain padding needs an equality-free model".into(),
        ));
    }
    let fr = &m.frame;
    let all: Vec<usize> = (0..fr.len()).collect();
    let at = at.unwrap_or(&all);
    let mut next = m.elements().last().map_or(0, |x| x + 1);
    let mut f: BTreeMap<u32, u32> = m.elements().into_iter().map(|x| (x, x)).collect();
    let mut domains = m.domains.clone();
    for &v in at {
        let y = *m.domains[v].first().ok_or_else(|| {
            Error::InvalidModel(format!("cannot pad at {}: empty domain", fr.name(v)))
        })?;
        for _ in 0..k {
            let c = next;
            next += 1;
            f.insert(c, y);
            for &w in fr.up(v) {
                domains[w].push(c);
            }
        }
    }
    for d in &mut domains {
        d.sort_unstable();
    }
    let rels = m
        .rels
        .iter()
        .map(|r| {
            let per_node = (0..fr.len())
                .map(|w| {
                    let mut out = HashSet::new();
                    tuples_over(&domains[w], r.arity, &mut |t| {
                        let img: Vec<u32> = t.iter().map(|x| f[x]).collect();
                        if r.per_node[w].contains(&img) {
                            out.insert(t.to_vec());
                        }
                    });
                    out
                })
                .collect();
            Relation {
                arity: r.arity,
                per_node,
            }
        })
        .collect();
    Ok(Padding {
        model: FoModel {
            frame: fr.clone(),
            domains,
            names: m.names.clone(),
            rels,
            equality: Equality::None,
        },
        f,
    })
}

/// Call `visit` on every tuple of length `n` over `d`.
pub fn tuples_over(d: &[u32], n: usize, visit: &mut dyn FnMut(&[u32])) {
    fn rec(d: &[u32], n: usize, cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if cur.len() == n {
            visit(cur);
            return;
        }
        for &x in d {
            cur.push(x);
            rec(d, n, cur, visit);
            cur.pop();
        }
    }
    rec(d, n, &mut Vec::with_capacity(n), visit);
}

/// Names accepted by [`iqc_countermodel`] with the formula each refutes.
pub const COUNTERMODELS: &[(&str, &str)] = &[
    ("CD", "forall x (P(x) | q) -> forall x P(x) | q"),
    ("DNS", "~~(exists x P(x)) -> exists x ~~P(x)"),
    ("DecidableP", "forall x (P(x) | ~P(x))"),
    (
        "TwoElementEq",
        "(exists x exists y forall z (z = x | z = y)) -> exists x forall z (z = x)",
    ),
];

fn spec_of(
    nodes: &[&str],
    covers: &[(&str, &str)],
    domains: &[(&str, &[u32])],
    rels: &[(&str, &str, &[&[u32]])],
) -> FoModelSpec {
    let mut relations: BTreeMap<String, BTreeMap<String, Vec<Vec<u32>>>> = BTreeMap::new();
    for (r, node, ts) in rels {
        relations
            .entry(r.to_string())
            .or_default()
            .insert(node.to_string(), ts.iter().map(|t| t.to_vec()).collect());
    }
    FoModelSpec {
        frame: FrameSpec {
            nodes: nodes.iter().map(|s| s.to_string()).collect(),
            leq: None,
            covers: Some(
                covers
                    .iter()
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .collect(),
            ),
        },
        domains: domains
            .iter()
            .map(|(n, d)| (n.to_string(), d.to_vec()))
            .collect(),
        relations,
        congruence: None,
        equality: false,
    }
}

/// A small model refuting the named schema at its root.
pub fn iqc_countermodel(name: &str) -> Result<FoModel> {
    let spec = match name {
        "CD" => spec_of(
            &["r", "t"],
            &[("r", "t")],
            &[("r", &[0]), ("t", &[0, 1])],
            &[("P", "r", &[&[0]]), ("P", "t", &[&[0]]), ("q", "t", &[&[]])],
        ),
        "DNS" => spec_of(
            &["r", "a", "b"],
            &[("r", "a"), ("r", "b")],
            &[("r", &[0, 1]), ("a", &[0, 1]), ("b", &[0, 1])],
            &[("P", "a", &[&[0]]), ("P", "b", &[&[1]])],
        ),
        "DecidableP" => spec_of(
            &["r", "t"],
            &[("r", "t")],
            &[("r", &[0]), ("t", &[0])],
            &[("P", "t", &[&[0]])],
        ),
        "TwoElementEq" => {
            let mut s = spec_of(&["r"], &[], &[("r", &[0, 1])], &[]);
            s.equality = true;
            s
        }
        other => return Err(Error::UnknownName(other.to_string())),
    };
    FoModel::from_spec(&spec)
}

/// The formula refuted by the named countermodel.
pub fn countermodel_formula(name: &str) -> Result<Formula> {
    let (_, text) = COUNTERMODELS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownName(name.to_string()))?;
    crate::syntax::parse_any(text)
}
