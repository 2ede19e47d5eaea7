//! Forcing in Kripke models for intuitionistic propositional logic.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{enumerate_valuations, rooted_posets, Frame, FrameSpec, NodeMask, Valuation};
use crate::syntax::{Formula, Language};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropModel {
    pub frame: Frame,
    pub valuation: Valuation,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropModelSpec {
    #[serde(flatten)]
    pub frame: FrameSpec,
    #[serde(default)]
    pub valuation: BTreeMap<String, Vec<String>>,
}

impl PropModel {
    /// A model whose valuation must be persistent.
    pub fn new(frame: Frame, valuation: Valuation) -> Result<PropModel> {
        if frame.len() > 64 {
            return Err(Error::InvalidModel(
                "propositional models are limited to 64 nodes".into(),
            ));
        }
        for (p, &m) in &valuation {
            if !frame.is_up_closed(m) {
                return Err(Error::InvalidModel(format!(
                    "valuation of {p} is not upward closed"
                )));
            }
        }
        Ok(PropModel { frame, valuation })
    }

    /// A model without the persistence check, for fault injection.
    pub fn new_unchecked(frame: Frame, valuation: Valuation) -> PropModel {
        PropModel { frame, valuation }
    }

    pub fn from_spec(spec: &PropModelSpec) -> Result<PropModel> {
        let frame = Frame::from_spec(&spec.frame)?;
        let mut val = Valuation::new();
        for (p, nodes) in &spec.valuation {
            let mut m = 0;
            for n in nodes {
                m |= 1 << frame.index_of(n)?;
            }
            val.insert(p.clone(), m);
        }
        PropModel::new(frame, val)
    }

    pub fn to_spec(&self) -> PropModelSpec {
        let valuation = self
            .valuation
            .iter()
            .map(|(p, &m)| {
                let nodes = (0..self.frame.len())
                    .filter(|&i| m & 1 << i != 0)
                    .map(|i| self.frame.name(i).to_string())
                    .collect();
                (p.clone(), nodes)
            })
            .collect();
        PropModelSpec {
            frame: self.frame.to_spec(),
            valuation,
        }
    }

    /// The set of nodes forcing `f`.
    pub fn truth_set(&self, f: &Formula) -> Result<NodeMask> {
        f.check_language(Language::Prop)?;
        let prog = Program::compile(f);
        let ups: Vec<NodeMask> = (0..self.frame.len())
            .map(|v| self.frame.up_mask(v))
            .collect();
        Ok(prog.run(&ups, self.frame.len(), &|p| {
            self.valuation.get(p).copied().unwrap_or(0)
        }))
    }
}

/// Whether node `v` forces `f`.
pub fn force_prop(m: &PropModel, v: &str, f: &Formula) -> Result<bool> {
    let i = m.frame.index_of(v)?;
    Ok(m.truth_set(f)? & 1 << i != 0)
}

/// A pair `v <= w` where `v` forces `f` and `w` does not, if any.
pub fn check_persistence(m: &PropModel, f: &Formula) -> Result<Option<(String, String)>> {
    let t = m.truth_set(f)?;
    for v in 0..m.frame.len() {
        if t & 1 << v == 0 {
            continue;
        }
        for &w in m.frame.up(v) {
            if t & 1 << w == 0 {
                return Ok(Some((
                    m.frame.name(v).to_string(),
                    m.frame.name(w).to_string(),
                )));
            }
        }
    }
    Ok(None)
}

/// True iff `f` is forced everywhere under every persistent valuation.
pub fn frame_validates(fr: &Frame, f: &Formula) -> Result<bool> {
    f.check_language(Language::Prop)?;
    Ok(refute_on_frame(fr, f).is_none())
}

/// A valuation and a node refuting `f` on `fr`.
fn refute_on_frame(fr: &Frame, f: &Formula) -> Option<(Valuation, usize)> {
    let prog = Program::compile(f);
    let letters: Vec<String> = f.letters().into_iter().collect();
    let ups: Vec<NodeMask> = (0..fr.len()).map(|v| fr.up_mask(v)).collect();
    let all: NodeMask = if fr.len() == 64 {
        !0
    } else {
        (1 << fr.len()) - 1
    };
    for val in enumerate_valuations(fr, &letters) {
        let t = prog.run(&ups, fr.len(), &|p| val.get(p).copied().unwrap_or(0));
        if t != all {
            let v = (0..fr.len())
                .find(|&v| t & 1 << v == 0)
                .expect("some node fails");
            return Some((val, v));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// No countermodel with at most `bound` nodes.
    Valid {
        bound: usize,
    },
    Countermodel {
        model: PropModel,
        node: String,
    },
}

/// Search rooted frames of up to `bound` nodes for a countermodel.
pub fn ipc_decide(f: &Formula, bound: usize) -> Result<Decision> {
    f.check_language(Language::Prop)?;
    for n in 1..=bound.max(1) {
        for fr in rooted_posets(n).iter() {
            if let Some((val, v)) = refute_on_frame(fr, f) {
                let node = fr.name(v).to_string();
                return Ok(Decision::Countermodel {
                    model: PropModel::new_unchecked(fr.clone(), val),
                    node,
                });
            }
        }
    }
    Ok(Decision::Valid { bound })
}

#[derive(Debug, Clone, Copy)]
enum Op {
    Bot,
    Letter(usize),
    And(usize, usize),
    Or(usize, usize),
    Impl(usize, usize),
}

/// A formula flattened into shared subformula slots, children first.
struct Program {
    ops: Vec<Op>,
    letters: Vec<String>,
}

impl Program {
    fn compile(f: &Formula) -> Program {
        let mut p = Program {
            ops: Vec::new(),
            letters: Vec::new(),
        };
        let mut memo = HashMap::new();
        p.slot(f, &mut memo);
        p
    }

    fn slot(&mut self, f: &Formula, memo: &mut HashMap<Formula, usize>) -> usize {
        if let Some(&i) = memo.get(f) {
            return i;
        }
        let op = match f {
            Formula::Letter(l) => {
                let k = match self.letters.iter().position(|x| x == l) {
                    Some(k) => k,
                    None => {
                        self.letters.push(l.clone());
                        self.letters.len() - 1
                    }
                };
                Op::Letter(k)
            }
            Formula::And(a, b) => Op::And(self.slot(a, memo), self.slot(b, memo)),
            Formula::Or(a, b) => Op::Or(self.slot(a, memo), self.slot(b, memo)),
            Formula::Impl(a, b) => Op::Impl(self.slot(a, memo), self.slot(b, memo)),
            _ => Op::Bot,
        };
        self.ops.push(op);
        memo.insert(f.clone(), self.ops.len() - 1);
        self.ops.len() - 1
    }

    fn run(&self, ups: &[NodeMask], n: usize, val: &dyn Fn(&str) -> NodeMask) -> NodeMask {
        let letters: Vec<NodeMask> = self.letters.iter().map(|l| val(l)).collect();
        let mut t: Vec<NodeMask> = Vec::with_capacity(self.ops.len());
        for op in &self.ops {
            let m = match *op {
                Op::Bot => 0,
                Op::Letter(k) => letters[k],
                Op::And(a, b) => t[a] & t[b],
                Op::Or(a, b) => t[a] | t[b],
                Op::Impl(a, b) => {
                    let bad = t[a] & !t[b];
                    (0..n)
                        .filter(|&v| ups[v] & bad == 0)
                        .fold(0, |m, v| m | 1 << v)
                }
            };
            t.push(m);
        }
        *t.last().unwrap_or(&0)
    }
}

/// Standard intuitionistic theorems.
pub const IPC_THEOREMS: [&str; 10] = [
    "p -> p",
    "p -> q -> p",
    "(p -> q -> r) -> (p -> q) -> p -> r",
    "p & q -> q & p",
    "p | q -> q | p",
    "p -> ~~p",
    "~~~p -> ~p",
    "~(p | q) <-> ~p & ~q",
    "(p -> q) -> ~q -> ~p",
    "~~(p | ~p)",
];

/// Classical tautologies that intuitionistic logic does not prove.
pub const IPC_NON_THEOREMS: [&str; 10] = [
    "p | ~p",
    "~~p -> p",
    "(p -> q) | (q -> p)",
    "~p | ~~p",
    "((p -> q) -> p) -> p",
    "~(p & q) -> ~p | ~q",
    "(p -> q | r) -> (p -> q) | (p -> r)",
    "(~p -> ~q) -> q -> p",
    "~~(p -> q) -> p -> q",
    "(p -> q) -> ~p | q",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    fn p(s: &str) -> Formula {
        parse(s, Language::Prop).unwrap()
    }

    fn chain_top_p() -> PropModel {
        PropModel::new(Frame::chain(2), [("p".to_string(), 0b10)].into()).unwrap()
    }

    #[test]
    fn excluded_middle_fails_at_bottom() {
        let m = chain_top_p();
        assert!(!force_prop(&m, "0", &p("p | ~p")).unwrap());
        assert!(force_prop(&m, "1", &p("p | ~p")).unwrap());
        assert!(force_prop(&m, "0", &p("p -> p")).unwrap());
        assert!(!force_prop(&m, "1", &p("false")).unwrap());
    }

    #[test]
    fn corrupted_valuation_breaks_persistence() {
        let m = PropModel::new_unchecked(Frame::chain(2), [("p".to_string(), 0b01)].into());
        assert_eq!(
            check_persistence(&m, &p("p")).unwrap(),
            Some(("0".into(), "1".into()))
        );
        assert!(PropModel::new(Frame::chain(2), [("p".to_string(), 0b01)].into()).is_err());
        assert_eq!(
            check_persistence(&chain_top_p(), &p("p | q")).unwrap(),
            None
        );
    }

    #[test]
    fn frame_validity() {
        assert!(frame_validates(&Frame::chain(1), &p("p | ~p")).unwrap());
        assert!(!frame_validates(&Frame::chain(2), &p("p | ~p")).unwrap());
    }

    #[test]
    fn decide_examples() {
        for s in ["~~p -> p", "((p -> q) -> p) -> p"] {
            match ipc_decide(&p(s), 6).unwrap() {
                Decision::Countermodel { model, .. } => assert_eq!(model.frame.len(), 2),
                d => panic!("{s}: {d:?}"),
            }
        }
        assert_eq!(
            ipc_decide(&p("p -> q -> p"), 5).unwrap(),
            Decision::Valid { bound: 5 }
        );
    }

    #[test]
    fn spec_round_trip() {
        let m = chain_top_p();
        let json = serde_json::to_string(&m.to_spec()).unwrap();
        let back: PropModelSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(PropModel::from_spec(&back).unwrap(), m);
    }
}
