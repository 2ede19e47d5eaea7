//! Straight-from-the-clauses forcing, no memo, no compilation. Models are
//! read from their spec structs; the order is closed here by Warshall.

use std::collections::{BTreeMap, HashSet};

use ikp_kripke::fo::FoModelSpec;
use ikp_kripke::frames::FrameSpec;
use ikp_kripke::hf::HfSet;
use ikp_kripke::prop::PropModelSpec;
use ikp_kripke::set_model::SetModelSpec;
use ikp_kripke::syntax::{Formula, Term};

pub struct Order {
    pub names: Vec<String>,
    pub leq: Vec<Vec<bool>>,
}

impl Order {
    pub fn from_spec(spec: &FrameSpec) -> Order {
        let names = spec.nodes.clone();
        let n = names.len();
        let pos = |s: &str| names.iter().position(|x| x == s).expect("node");
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in spec.leq.iter().chain(spec.covers.iter()).flatten() {
            leq[pos(a)][pos(b)] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        Order { names, leq }
    }

    pub fn above(&self, v: usize) -> Vec<usize> {
        (0..self.names.len()).filter(|&w| self.leq[v][w]).collect()
    }
}

fn var(t: &Term) -> &str {
    t.as_var().expect("variable term")
}

pub struct NaiveProp {
    pub order: Order,
    pub val: BTreeMap<String, Vec<bool>>,
}

impl NaiveProp {
    pub fn new(spec: &PropModelSpec) -> NaiveProp {
        let order = Order::from_spec(&spec.frame);
        let val = spec
            .valuation
            .iter()
            .map(|(p, ns)| {
                (
                    p.clone(),
                    order.names.iter().map(|x| ns.contains(x)).collect(),
                )
            })
            .collect();
        NaiveProp { order, val }
    }

    pub fn forces(&self, v: usize, f: &Formula) -> bool {
        match f {
            Formula::Bot => false,
            Formula::Letter(p) => self.val.get(p).is_some_and(|s| s[v]),
            Formula::And(a, b) => self.forces(v, a) && self.forces(v, b),
            Formula::Or(a, b) => self.forces(v, a) || self.forces(v, b),
            Formula::Impl(a, b) => self
                .order
                .above(v)
                .into_iter()
                .all(|w| !self.forces(w, a) || self.forces(w, b)),
            other => panic!("not propositional: {other:?}"),
        }
    }
}

pub struct NaiveFo {
    pub order: Order,
    pub domains: Vec<Vec<u32>>,
    pub rels: BTreeMap<String, Vec<HashSet<Vec<u32>>>>,
    /// `None` without equality; otherwise the pairs identified at each node.
    pub eq: Option<Vec<HashSet<(u32, u32)>>>,
}

impl NaiveFo {
    pub fn new(spec: &FoModelSpec) -> NaiveFo {
        let order = Order::from_spec(&spec.frame);
        let per_node = |m: &BTreeMap<String, Vec<Vec<u32>>>| -> Vec<HashSet<Vec<u32>>> {
            order
                .names
                .iter()
                .map(|v| m.get(v).into_iter().flatten().cloned().collect())
                .collect()
        };
        let domains = order
            .names
            .iter()
            .map(|v| spec.domains.get(v).cloned().unwrap_or_default())
            .collect();
        let rels = spec
            .relations
            .iter()
            .map(|(r, m)| (r.clone(), per_node(m)))
            .collect();
        let eq = if let Some(c) = &spec.congruence {
            Some(
                order
                    .names
                    .iter()
                    .map(|v| c.get(v).into_iter().flatten().copied().collect())
                    .collect(),
            )
        } else if spec.equality {
            Some(vec![HashSet::new(); order.names.len()])
        } else {
            None
        };
        NaiveFo {
            order,
            domains,
            rels,
            eq,
        }
    }

    pub fn forces(&self, v: usize, f: &Formula, a: &BTreeMap<String, u32>) -> bool {
        match f {
            Formula::Bot => false,
            Formula::Letter(p) => self.rels.get(p).is_some_and(|r| r[v].contains(&Vec::new())),
            Formula::Pred(p, ts) => {
                let t: Vec<u32> = ts.iter().map(|t| a[var(t)]).collect();
                self.rels.get(p).is_some_and(|r| r[v].contains(&t))
            }
            Formula::Eq(x, y) => {
                let (x, y) = (a[var(x)], a[var(y)]);
                let eq = self
                    .eq
                    .as_ref()
                    .expect("equality in an equality-free model");
                x == y || eq[v].contains(&(x, y))
            }
            Formula::And(p, q) => self.forces(v, p, a) && self.forces(v, q, a),
            Formula::Or(p, q) => self.forces(v, p, a) || self.forces(v, q, a),
            Formula::Impl(p, q) => self
                .order
                .above(v)
                .into_iter()
                .all(|w| !self.forces(w, p, a) || self.forces(w, q, a)),
            Formula::Exists(x, b) => self.domains[v].iter().any(|&d| {
                let mut a2 = a.clone();
                a2.insert(x.clone(), d);
                self.forces(v, b, &a2)
            }),
            Formula::Forall(x, b) => self.order.above(v).into_iter().all(|w| {
                self.domains[w].iter().all(|&d| {
                    let mut a2 = a.clone();
                    a2.insert(x.clone(), d);
                    self.forces(w, b, &a2)
                })
            }),
            other => panic!("not first-order: {other:?}"),
        }
    }
}

pub struct NaiveSet {
    pub order: Order,
    pub universes: Vec<Vec<HfSet>>,
}

impl NaiveSet {
    pub fn new(spec: &SetModelSpec) -> NaiveSet {
        let order = Order::from_spec(&spec.frame);
        let universes = order
            .names
            .iter()
            .map(|v| {
                spec.universes[v]
                    .iter()
                    .map(|l| l.to_set().expect("set literal"))
                    .collect()
            })
            .collect();
        NaiveSet { order, universes }
    }

    fn with(a: &BTreeMap<String, HfSet>, x: &str, d: HfSet) -> BTreeMap<String, HfSet> {
        let mut a2 = a.clone();
        a2.insert(x.to_string(), d);
        a2
    }

    pub fn forces(&self, v: usize, f: &Formula, a: &BTreeMap<String, HfSet>) -> bool {
        match f {
            Formula::Bot => false,
            Formula::Mem(x, y) => a[var(y)].contains(a[var(x)]),
            Formula::Eq(x, y) => a[var(x)] == a[var(y)],
            Formula::And(p, q) => self.forces(v, p, a) && self.forces(v, q, a),
            Formula::Or(p, q) => self.forces(v, p, a) || self.forces(v, q, a),
            Formula::Impl(p, q) => self
                .order
                .above(v)
                .into_iter()
                .all(|w| !self.forces(w, p, a) || self.forces(w, q, a)),
            Formula::Exists(x, b) => self.universes[v]
                .iter()
                .any(|&d| self.forces(v, b, &Self::with(a, x, d))),
            Formula::Forall(x, b) => self.order.above(v).into_iter().all(|w| {
                self.universes[w]
                    .iter()
                    .all(|&d| self.forces(w, b, &Self::with(a, x, d)))
            }),
            Formula::BExists(x, t, b) => a[var(t)]
                .members()
                .into_iter()
                .any(|d| self.forces(v, b, &Self::with(a, x, d))),
            Formula::BForall(x, t, b) => {
                let s = a[var(t)];
                self.order.above(v).into_iter().all(|w| {
                    s.members()
                        .into_iter()
                        .all(|d| self.forces(w, b, &Self::with(a, x, d)))
                })
            }
            other => panic!("not set-theoretic: {other:?}"),
        }
    }
}
