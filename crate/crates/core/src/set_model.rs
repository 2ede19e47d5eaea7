//! Kripke models for set theory whose domains are finite transitive HF
//! universes, with membership read off the sets themselves.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engine::{self, Evaluator, Structure};
use crate::error::{Error, Result};
use crate::fo;
use crate::frames::{Frame, FrameSpec};
use crate::hf::{eval_classical, parse_hf, HfSet, SetAssignment, Universe};
use crate::syntax::{self, axioms, is_delta0, Formula, Language};

/// Node name to the sets living there. Not yet checked.
pub type SoundAssignment = BTreeMap<String, Vec<HfSet>>;

#[derive(Debug, Clone)]
pub struct SetKripkeModel {
    frame: Frame,
    universes: Vec<Universe>,
    domains: Vec<Vec<u32>>,
    kids: HashMap<u32, Arc<[u32]>>,
}

/// An HF set in JSON: a literal string or a nested array.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum HfLiteral {
    Text(String),
    Nested(serde_json::Value),
}

impl HfLiteral {
    pub fn to_set(&self) -> Result<HfSet> {
        match self {
            HfLiteral::Text(s) => parse_hf(s),
            HfLiteral::Nested(v) => HfSet::from_json(v),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SetModelSpec {
    pub frame: FrameSpec,
    pub universes: BTreeMap<String, Vec<HfLiteral>>,
}

/// Check `asg` and build the model with actual membership.
pub fn build_classical_model(fr: Frame, asg: &SoundAssignment) -> Result<SetKripkeModel> {
    for name in asg.keys() {
        fr.index_of(name)?;
    }
    let mut universes = Vec::with_capacity(fr.len());
    for v in 0..fr.len() {
        let sets = asg
            .get(fr.name(v))
            .ok_or_else(|| Error::InvalidModel(format!("no universe for node {}", fr.name(v))))?;
        let u = Universe::from_elements(sets.iter().copied())
            .map_err(|e| Error::InvalidModel(format!("at node {}: {e}", fr.name(v))))?;
        universes.push(u);
    }
    SetKripkeModel::from_universes(fr, universes)
}

impl SetKripkeModel {
    /// Fails if the universes are not monotone along the order.
    pub fn from_universes(frame: Frame, universes: Vec<Universe>) -> Result<SetKripkeModel> {
        if universes.len() != frame.len() {
            return Err(Error::InvalidModel(
                "one universe per node is required".into(),
            ));
        }
        for v in 0..frame.len() {
            for &w in frame.up(v) {
                if let Some(&x) = universes[v]
                    .elements()
                    .iter()
                    .find(|&&x| !universes[w].contains(x))
                {
                    return Err(Error::InvalidModel(format!(
                        "assignment not monotone: {x} is in the universe of {} but not of {}",
                        frame.name(v),
                        frame.name(w)
                    )));
                }
            }
        }
        let mut kids = HashMap::new();
        for u in &universes {
            for &x in u.elements() {
                kids.entry(x.id()).or_insert_with(|| x.member_ids());
            }
        }
        let domains = universes
            .iter()
            .map(|u| u.elements().iter().map(|x| x.id()).collect())
            .collect();
        Ok(SetKripkeModel {
            frame,
            universes,
            domains,
            kids,
        })
    }

    /// The same universe at every node.
    pub fn constant(frame: Frame, u: Universe) -> SetKripkeModel {
        let n = frame.len();
        SetKripkeModel::from_universes(frame, vec![u; n]).expect("constant assignment is monotone")
    }

    pub fn from_spec(spec: &SetModelSpec) -> Result<SetKripkeModel> {
        let fr = Frame::from_spec(&spec.frame)?;
        let mut asg = SoundAssignment::new();
        for (v, lits) in &spec.universes {
            asg.insert(
                v.clone(),
                lits.iter().map(HfLiteral::to_set).collect::<Result<_>>()?,
            );
        }
        build_classical_model(fr, &asg)
    }

    pub fn to_spec(&self) -> SetModelSpec {
        let universes = (0..self.frame.len())
            .map(|v| {
                let lits = self.universes[v]
                    .sorted_structurally()
                    .into_iter()
                    .map(|x| HfLiteral::Text(x.to_string()))
                    .collect();
                (self.frame.name(v).to_string(), lits)
            })
            .collect();
        SetModelSpec {
            frame: self.frame.to_spec(),
            universes,
        }
    }

    /// SHA-256 of the canonical JSON form.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(&self.to_spec()).expect("serializable");
        let digest = Sha256::digest(json.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn universe(&self, v: usize) -> &Universe {
        &self.universes[v]
    }

    pub fn universes(&self) -> &[Universe] {
        &self.universes
    }

    fn ids(&self, v: usize, params: &SetAssignment) -> Result<BTreeMap<String, u32>> {
        params
            .iter()
            .map(|(k, x)| {
                if self.universes[v].contains(*x) {
                    Ok((k.clone(), x.id()))
                } else {
                    Err(Error::OutsideDomain {
                        node: self.frame.name(v).to_string(),
                        param: format!("{k} = {x}"),
                    })
                }
            })
            .collect()
    }
}

impl Structure for SetKripkeModel {
    fn frame(&self) -> &Frame {
        &self.frame
    }

    fn domain(&self, v: usize) -> &[u32] {
        &self.domains[v]
    }

    fn symbol(&self, _name: &str, _arity: usize) -> Result<Option<u32>> {
        Ok(None)
    }

    fn rel(&self, _v: usize, _sym: u32, _args: &[u32]) -> bool {
        false
    }

    fn eq(&self, _v: usize, a: u32, b: u32) -> Option<bool> {
        Some(a == b)
    }

    fn mem(&self, _v: usize, a: u32, b: u32) -> Option<bool> {
        Some(
            self.kids
                .get(&b)
                .is_some_and(|k| k.binary_search(&a).is_ok()),
        )
    }

    fn members(&self, _v: usize, a: u32) -> Cow<'_, [u32]> {
        match self.kids.get(&a) {
            Some(k) => Cow::Borrowed(k),
            None => Cow::Owned(HfSet::from_id(a).member_ids().to_vec()),
        }
    }
}

/// Forcing at node `v`; parameters must lie in its universe.
pub fn force_set(m: &SetKripkeModel, v: &str, f: &Formula, params: &SetAssignment) -> Result<bool> {
    f.check_language(Language::Set)?;
    let i = m.frame.index_of(v)?;
    engine::force(m, i, f, &m.ids(i, params)?)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LocalityRow {
    pub node: String,
    pub forced: bool,
    pub classical: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LocalityReport {
    pub rows: Vec<LocalityRow>,
    pub mismatches: Vec<String>,
}

/// Compare forcing with classical truth in each node's universe. Nodes whose
/// universe misses a parameter are skipped.
pub fn check_local_evaluation(
    m: &SetKripkeModel,
    f: &Formula,
    params: &SetAssignment,
) -> Result<LocalityReport> {
    f.check_language(Language::Set)?;
    if !is_delta0(f) {
        return Err(Error::NotDelta0(syntax::render(f)));
    }
    let mut ev = Evaluator::new(m, f)?;
    let mut rows = Vec::new();
    let mut mismatches = Vec::new();
    for v in 0..m.frame.len() {
        let Ok(ids) = m.ids(v, params) else { continue };
        let forced = ev.force(v, &ids)?;
        let classical = eval_classical(&m.universes[v], f, params)?;
        if forced != classical {
            mismatches.push(m.frame.name(v).to_string());
        }
        rows.push(LocalityRow {
            node: m.frame.name(v).to_string(),
            forced,
            classical,
        });
    }
    Ok(LocalityReport { rows, mismatches })
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum AxiomStatus {
    Checked,
    NotFinitelyCheckable,
}

/// A node and values for the leading universals at which the matrix fails.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    pub node: String,
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct NodeVerdict {
    pub node: String,
    pub forced: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AxiomReport {
    pub axiom: String,
    pub formula: String,
    pub status: AxiomStatus,
    pub nodes: Vec<NodeVerdict>,
}

impl AxiomReport {
    pub fn forced_everywhere(&self) -> bool {
        self.status == AxiomStatus::Checked && self.nodes.iter().all(|n| n.forced)
    }
}

/// Audit a named axiom or scheme instance at every node.
pub fn check_axiom(
    m: &SetKripkeModel,
    name: &str,
    matrix: Option<&Formula>,
) -> Result<AxiomReport> {
    let f = axioms::axiom(name, matrix)?;
    if matches!(name, "Infinity" | "MP") {
        return Ok(AxiomReport {
            axiom: name.to_string(),
            formula: syntax::render(&f),
            status: AxiomStatus::NotFinitelyCheckable,
            nodes: Vec::new(),
        });
    }
    let params: SetAssignment = BTreeMap::new();
    if let Some(v) = f.free_vars().into_iter().next() {
        return Err(Error::UnassignedVariable(v));
    }
    check_sentence(m, name, &f, &params)
}

/// Audit an arbitrary Set formula with parameters at every node whose
/// universe holds the parameters.
pub fn check_sentence(
    m: &SetKripkeModel,
    label: &str,
    f: &Formula,
    params: &SetAssignment,
) -> Result<AxiomReport> {
    f.check_language(Language::Set)?;
    let f = f.normalize();
    let mut ev = Evaluator::new(m, &f)?;
    let mut nodes = Vec::new();
    for v in 0..m.frame.len() {
        let Ok(ids) = m.ids(v, params) else { continue };
        let forced = ev.force(v, &ids)?;
        let (witness, counterexample) = if forced {
            (
                find_witness(m, v, &f, &ids)?.map(|x| HfSet::from_id(x).to_string()),
                None,
            )
        } else {
            (None, find_counterexample(m, v, &f, &ids)?)
        };
        nodes.push(NodeVerdict {
            node: m.frame.name(v).to_string(),
            forced,
            witness,
            counterexample,
        });
    }
    Ok(AxiomReport {
        axiom: label.to_string(),
        formula: syntax::render(&f),
        status: AxiomStatus::Checked,
        nodes,
    })
}

/// Witness for the outermost existential reached through implications whose
/// antecedents are forced at `v`.
fn find_witness(
    m: &SetKripkeModel,
    v: usize,
    f: &Formula,
    ids: &BTreeMap<String, u32>,
) -> Result<Option<u32>> {
    match f {
        Formula::Exists(..) | Formula::BExists(..) => Evaluator::new(m, f)?.witness(v, ids),
        Formula::Impl(a, b) if engine::force(m, v, a, ids)? => find_witness(m, v, b, ids),
        _ => Ok(None),
    }
}

/// For `∀x̄ φ` not forced at `v`: some `u ≥ v` and values in `D_u` with
/// `u ⊮ φ`. By persistence one node suffices.
fn find_counterexample(
    m: &SetKripkeModel,
    v: usize,
    f: &Formula,
    ids: &BTreeMap<String, u32>,
) -> Result<Option<Counterexample>> {
    let mut xs = Vec::new();
    let mut body = f;
    while let Formula::Forall(x, b) = body {
        xs.push(x.clone());
        body = b;
    }
    if xs.is_empty() {
        return Ok(None);
    }
    let mut ev = Evaluator::new(m, body)?;
    for &u in m.frame.up(v) {
        let dom = &m.domains[u];
        let k = xs.len();
        let total = dom.len().checked_pow(k as u32).unwrap_or(usize::MAX);
        let mut env = ids.clone();
        for mut code in 0..total {
            for x in &xs {
                env.insert(x.clone(), dom[code % dom.len()]);
                code /= dom.len();
            }
            if !ev.force(u, &env)? {
                let values = xs
                    .iter()
                    .map(|x| (x.clone(), HfSet::from_id(env[x]).to_string()))
                    .collect();
                return Ok(Some(Counterexample {
                    node: m.frame.name(u).to_string(),
                    values,
                }));
            }
        }
    }
    Ok(None)
}

/// `g` is a set of Kuratowski pairs forming a total function from `a` to `b`.
pub fn is_function_set(g: HfSet, a: HfSet, b: HfSet) -> bool {
    let mut graph: BTreeMap<HfSet, HfSet> = BTreeMap::new();
    for p in g.members() {
        let Some((x, y)) = p.unpair() else {
            return false;
        };
        if !a.contains(x) || !b.contains(y) {
            return false;
        }
        if graph.insert(x, y).is_some_and(|old| old != y) {
            return false;
        }
    }
    graph.len() == a.len()
}

/// `v < w` and a function `g: a → b` with `a, b ∈ D_v` and `g ∈ D_w ∖ D_v`.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ExpWitness {
    pub lower: String,
    pub upper: String,
    pub a: String,
    pub b: String,
    pub g: String,
    /// Whether `lower` forces the Exp instance at `(a, b)`; false when sound.
    pub instance_forced: bool,
    /// Whether `lower` forces Exp; false when sound.
    pub exp_forced: bool,
}

fn exp_instance() -> Formula {
    syntax::exists(
        "z",
        syntax::forall(
            "f",
            syntax::iff(syntax::mem("f", "z"), axioms::is_function("f", "x", "y")),
        ),
    )
}

/// The least witness above node `v`, verified by forcing.
pub fn exp_witness_at(m: &SetKripkeModel, v: usize) -> Result<Option<ExpWitness>> {
    let low = m.universes[v].sorted_structurally();
    for &w in m.frame.up(v) {
        if w == v {
            continue;
        }
        let mut fresh: Vec<HfSet> = m.universes[w]
            .elements()
            .iter()
            .copied()
            .filter(|&g| !m.universes[v].contains(g))
            .collect();
        fresh.sort_by(|x, y| x.cmp_structural(*y));
        for &g in &fresh {
            for &a in &low {
                for &b in &low {
                    if !is_function_set(g, a, b) {
                        continue;
                    }
                    let params: SetAssignment = [("x".to_string(), a), ("y".to_string(), b)].into();
                    let instance_forced =
                        engine::force(m, v, &exp_instance(), &m.ids(v, &params)?)?;
                    let exp_forced =
                        engine::force(m, v, &axioms::axiom("Exp", None)?, &BTreeMap::new())?;
                    return Ok(Some(ExpWitness {
                        lower: m.frame.name(v).to_string(),
                        upper: m.frame.name(w).to_string(),
                        a: a.to_string(),
                        b: b.to_string(),
                        g: g.to_string(),
                        instance_forced,
                        exp_forced,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// The first node, in frame order, with a witness.
pub fn exp_failure_witness(m: &SetKripkeModel) -> Result<Option<ExpWitness>> {
    for v in 0..m.frame.len() {
        if let Some(x) = exp_witness_at(m, v)? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CollapseRow {
    pub node: String,
    pub antecedent: bool,
    pub antecedent_refuted: bool,
    pub consequent: bool,
    pub forced: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CollapseReport {
    pub formula: String,
    /// False when some universe has fewer than three elements.
    pub conclusive: bool,
    pub rows: Vec<CollapseRow>,
}

impl CollapseReport {
    pub fn forced_everywhere(&self) -> bool {
        self.rows.iter().all(|r| r.forced)
    }
}

/// "At most two objects implies at most one", evaluated at every node.
pub fn check_equality_collapse(m: &SetKripkeModel) -> Result<CollapseReport> {
    let phi = fo::countermodel_formula("TwoElementEq")?;
    let Formula::Impl(ante, cons) = &phi else {
        unreachable!("implication")
    };
    let none = BTreeMap::new();
    let mut e_phi = Evaluator::new(m, &phi)?;
    let mut e_ante = Evaluator::new(m, ante)?;
    let mut e_neg = Evaluator::new(m, &syntax::not((**ante).clone()))?;
    let mut e_cons = Evaluator::new(m, cons)?;
    let mut rows = Vec::new();
    for v in 0..m.frame.len() {
        rows.push(CollapseRow {
            node: m.frame.name(v).to_string(),
            antecedent: e_ante.force(v, &none)?,
            antecedent_refuted: e_neg.force(v, &none)?,
            consequent: e_cons.force(v, &none)?,
            forced: e_phi.force(v, &none)?,
        });
    }
    Ok(CollapseReport {
        formula: syntax::render(&phi),
        conclusive: m.universes.iter().all(|u| u.len() >= 3),
        rows,
    })
}

/// The four functions `2 → 2`, the swap first.
pub fn functions_two_to_two() -> Vec<HfSet> {
    let (z, o) = (HfSet::ordinal(0), HfSet::ordinal(1));
    let f = |a: HfSet, b: HfSet| HfSet::doubleton(HfSet::pair(z, a), HfSet::pair(o, b));
    vec![f(o, z), f(z, z), f(z, o), f(o, o)]
}

/// A chain of `n ≤ 5` nodes over `tc{0, 1, 2, pairs over 2}` where node `k`
/// also holds the first `k` functions `2 → 2`.
pub fn exp_failure_chain(n: usize) -> Result<SetKripkeModel> {
    if n == 0 || n > 5 {
        return Err(Error::Unsupported(format!(
            "chain length {n} (expected 1..=5)"
        )));
    }
    let ords: Vec<HfSet> = (0..3).map(HfSet::ordinal).collect();
    let mut base = ords.clone();
    for &a in &ords[..2] {
        for &b in &ords[..2] {
            base.push(HfSet::pair(a, b));
        }
    }
    let fs = functions_two_to_two();
    let universes = (0..n)
        .map(|k| Universe::from_seed(base.iter().chain(&fs[..k]).copied()))
        .collect();
    SetKripkeModel::from_universes(Frame::chain(n), universes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_any;

    fn p(s: &str) -> Formula {
        parse_any(s).unwrap()
    }

    fn two_chain(lo: Universe, hi: Universe) -> SetKripkeModel {
        SetKripkeModel::from_universes(Frame::chain(2), vec![lo, hi]).unwrap()
    }

    #[test]
    fn building() {
        let fr = Frame::chain(2);
        let v3 = Universe::v(3).elements().to_vec();
        let v4 = Universe::v(4).elements().to_vec();
        let asg: SoundAssignment = [("0".into(), v3.clone()), ("1".into(), v3.clone())].into();
        assert!(build_classical_model(fr.clone(), &asg).is_ok());
        let asg: SoundAssignment = [("0".into(), v3.clone()), ("1".into(), v4.clone())].into();
        assert!(build_classical_model(fr.clone(), &asg).is_ok());
        let asg: SoundAssignment = [("0".into(), v4.clone()), ("1".into(), v3.clone())].into();
        assert!(build_classical_model(fr.clone(), &asg).is_err());
        let mut broken = v3.clone();
        broken.retain(|&x| x != HfSet::ordinal(1));
        let asg: SoundAssignment = [("0".into(), v3), ("1".into(), broken)].into();
        assert!(matches!(
            build_classical_model(fr, &asg),
            Err(Error::InvalidModel(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let m = two_chain(Universe::v(2), Universe::v(3));
        let text = serde_json::to_string(&m.to_spec()).unwrap();
        let back = SetKripkeModel::from_spec(&serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back.universes(), m.universes());
        assert_eq!(back.fingerprint(), m.fingerprint());
        let nested = r#"{"frame":{"nodes":["r"]},"universes":{"r":[[], "{{}}"]}}"#;
        let m = SetKripkeModel::from_spec(&serde_json::from_str(nested).unwrap()).unwrap();
        assert_eq!(m.universe(0).len(), 2);
    }

    #[test]
    fn forcing_examples() {
        let m = two_chain(Universe::v(3), Universe::v(4));
        let a: SetAssignment = [("a".into(), HfSet::ordinal(2))].into();
        assert!(force_set(&m, "1", &p("a = a"), &a).unwrap());
        let b: SetAssignment = [("a".into(), HfSet::EMPTY), ("b".into(), HfSet::ordinal(1))].into();
        assert!(force_set(&m, "0", &p("a in b"), &b).unwrap());
        assert!(force_set(
            &m,
            "0",
            &p("forall x (x = a | exists y (y in x))"),
            &[("a".into(), HfSet::EMPTY)].into()
        )
        .unwrap());
        // True in V_3, refuted through the rank-3 sets of the top node.
        let low_rank = p("forall x forall y in x forall z in y forall u in z false");
        assert!(eval_classical(m.universe(0), &low_rank, &SetAssignment::new()).unwrap());
        assert!(!force_set(&m, "0", &low_rank, &SetAssignment::new()).unwrap());
        assert!(force_set(&m, "0", &p("forall x (x in a | ~(x in a))"), &a).unwrap());
        let outside: SetAssignment = [("a".into(), HfSet::ordinal(3))].into();
        assert!(matches!(
            force_set(&m, "0", &p("a = a"), &outside),
            Err(Error::OutsideDomain { .. })
        ));
    }

    #[test]
    fn locality() {
        let m = SetKripkeModel::from_universes(
            Frame::chain(3),
            vec![Universe::v(2), Universe::v(3), Universe::v(4)],
        )
        .unwrap();
        let a: SetAssignment = [
            ("a".into(), HfSet::ordinal(1)),
            ("b".into(), HfSet::ordinal(2)),
        ]
        .into();
        for f in [
            "forall x in a (x in b)",
            "a in b",
            "exists x in b ~(x in a)",
        ] {
            let r = check_local_evaluation(&m, &p(f), &a).unwrap();
            assert!(r.mismatches.is_empty(), "{f}");
        }
        assert!(matches!(
            check_local_evaluation(&m, &p("exists x (x in a)"), &a),
            Err(Error::NotDelta0(_))
        ));
    }

    #[test]
    fn axioms_audit() {
        let m = two_chain(Universe::v(3), Universe::v(4));
        let r = check_axiom(&m, "EmptySet", None).unwrap();
        assert!(r.forced_everywhere());
        assert_eq!(r.nodes[0].witness.as_deref(), Some("{}"));
        assert!(check_axiom(&m, "Extensionality", None)
            .unwrap()
            .forced_everywhere());
        assert_eq!(
            check_axiom(&m, "Infinity", None).unwrap().status,
            AxiomStatus::NotFinitelyCheckable
        );
        // V_4 is not closed under pairing, so a counterexample is reported.
        let r = check_axiom(&m, "Pairing", None).unwrap();
        assert!(!r.nodes[1].forced);
        assert!(r.nodes[1].counterexample.is_some());
    }

    #[test]
    fn exp_failure() {
        let m = exp_failure_chain(2).unwrap();
        let w = exp_failure_witness(&m).unwrap().unwrap();
        assert_eq!((w.a.as_str(), w.b.as_str()), ("{{},{{}}}", "{{},{{}}}"));
        assert_eq!(parse_hf(&w.g).unwrap(), functions_two_to_two()[0]);
        assert!(!w.instance_forced && !w.exp_forced);
        let c = SetKripkeModel::constant(Frame::chain(2), Universe::v(3));
        assert!(exp_failure_witness(&c).unwrap().is_none());
        let m = exp_failure_chain(4).unwrap();
        for v in 0..3 {
            let w = exp_witness_at(&m, v).unwrap().unwrap();
            assert!(!w.exp_forced);
        }
        assert!(exp_witness_at(&m, 3).unwrap().is_none());
    }

    #[test]
    fn equality_collapse() {
        let m = two_chain(Universe::v(3), Universe::v(4));
        let r = check_equality_collapse(&m).unwrap();
        assert!(r.conclusive && r.forced_everywhere());
        assert!(r.rows.iter().all(|x| x.antecedent_refuted));
        let one = SetKripkeModel::constant(Frame::chain(1), Universe::v(1));
        let r = check_equality_collapse(&one).unwrap();
        assert!(!r.conclusive);
        assert!(r.rows[0].antecedent && r.rows[0].consequent && r.rows[0].forced);
    }
}
