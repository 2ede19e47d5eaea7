//! Finite partial orders used as Kripke frames.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Bitmask over the nodes of a frame with at most 64 nodes.
pub type NodeMask = u64;

/// A failure of one of the partial order axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Violation {
    Duplicate { node: String },
    Unknown { node: String },
    Reflexivity { node: String },
    Antisymmetry { a: String, b: String },
    Transitivity { a: String, b: String, c: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Duplicate { node } => write!(f, "duplicate node {node}"),
            Violation::Unknown { node } => write!(f, "unknown node {node}"),
            Violation::Reflexivity { node } => write!(f, "missing {node} <= {node}"),
            Violation::Antisymmetry { a, b } => write!(f, "{a} <= {b} and {b} <= {a}"),
            Violation::Transitivity { a, b, c } => {
                write!(f, "{a} <= {b} <= {c} but not {a} <= {c}")
            }
        }
    }
}

/// Check the order axioms on a raw relation. With `implicit_reflexive`,
/// missing pairs `(a, a)` are assumed.
pub fn validate_relation(
    nodes: &[String],
    pairs: &[(String, String)],
    implicit_reflexive: bool,
) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut index = HashMap::new();
    for (i, n) in nodes.iter().enumerate() {
        if index.insert(n.as_str(), i).is_some() {
            out.push(Violation::Duplicate { node: n.clone() });
        }
    }
    let n = nodes.len();
    let mut rel = vec![vec![false; n]; n];
    for (a, b) in pairs {
        match (index.get(a.as_str()), index.get(b.as_str())) {
            (Some(&i), Some(&j)) => rel[i][j] = true,
            (None, _) => out.push(Violation::Unknown { node: a.clone() }),
            (_, None) => out.push(Violation::Unknown { node: b.clone() }),
        }
    }
    for i in 0..n {
        if implicit_reflexive {
            rel[i][i] = true;
        } else if !rel[i][i] {
            out.push(Violation::Reflexivity {
                node: nodes[i].clone(),
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if rel[i][j] && rel[j][i] {
                out.push(Violation::Antisymmetry {
                    a: nodes[i].clone(),
                    b: nodes[j].clone(),
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j || !rel[i][j] {
                continue;
            }
            for k in 0..n {
                if k != j && rel[j][k] && !rel[i][k] {
                    out.push(Violation::Transitivity {
                        a: nodes[i].clone(),
                        b: nodes[j].clone(),
                        c: nodes[k].clone(),
                    });
                }
            }
        }
    }
    out
}

/// JSON form of a frame: the full order (`leq`, reflexive pairs optional)
/// or a cover relation (`covers`) whose reflexive-transitive closure is taken.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSpec {
    pub nodes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers: Option<Vec<(String, String)>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    nodes: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<Vec<bool>>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl Frame {
    /// Build from the full order; fails with the list of violations.
    pub fn from_leq(nodes: Vec<String>, pairs: &[(String, String)]) -> Result<Frame> {
        let v = validate_relation(&nodes, pairs, true);
        if !v.is_empty() {
            let msgs: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            return Err(Error::InvalidFrame(msgs.join("; ")));
        }
        let index: HashMap<String, usize> = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, n)| (n, i))
            .collect();
        let n = nodes.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in pairs {
            leq[index[a]][index[b]] = true;
        }
        Ok(Self::from_matrix(nodes, leq))
    }

    /// Build from a cover relation, taking the reflexive-transitive closure.
    pub fn from_covers(nodes: Vec<String>, covers: &[(String, String)]) -> Result<Frame> {
        let index: HashMap<&str, usize> = nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        if index.len() != nodes.len() {
            return Err(Error::InvalidFrame("duplicate node".into()));
        }
        let n = nodes.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let i = *index
                .get(a.as_str())
                .ok_or_else(|| Error::UnknownNode(a.clone()))?;
            let j = *index
                .get(b.as_str())
                .ok_or_else(|| Error::UnknownNode(b.clone()))?;
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    let row_k = leq[k].clone();
                    for (c, b) in leq[i].iter_mut().zip(row_k) {
                        *c |= b;
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::InvalidFrame(format!(
                        "cycle through {} and {}",
                        nodes[i], nodes[j]
                    )));
                }
            }
        }
        Ok(Self::from_matrix(nodes, leq))
    }

    pub fn from_spec(spec: &FrameSpec) -> Result<Frame> {
        match (&spec.leq, &spec.covers) {
            (Some(l), None) => Frame::from_leq(spec.nodes.clone(), l),
            (None, Some(c)) => Frame::from_covers(spec.nodes.clone(), c),
            (None, None) => Frame::from_leq(spec.nodes.clone(), &[]),
            (Some(_), Some(_)) => Err(Error::InvalidFrame(
                "give either leq or covers, not both".into(),
            )),
        }
    }

    pub fn to_spec(&self) -> FrameSpec {
        let mut leq = Vec::new();
        for i in 0..self.len() {
            for &j in &self.up[i] {
                leq.push((self.nodes[i].clone(), self.nodes[j].clone()));
            }
        }
        FrameSpec {
            nodes: self.nodes.clone(),
            leq: Some(leq),
            covers: None,
        }
    }

    /// Trusted constructor from a reflexive, antisymmetric, transitive matrix.
    pub(crate) fn from_matrix(nodes: Vec<String>, leq: Vec<Vec<bool>>) -> Frame {
        let n = nodes.len();
        let index = nodes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let up = (0..n)
            .map(|i| (0..n).filter(|&j| leq[i][j]).collect())
            .collect();
        let down = (0..n)
            .map(|i| (0..n).filter(|&j| leq[j][i]).collect())
            .collect();
        Frame {
            nodes,
            index,
            leq,
            up,
            down,
        }
    }

    /// The chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Frame {
        let nodes = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect();
        Frame::from_matrix(nodes, leq)
    }

    pub fn antichain(n: usize) -> Frame {
        let nodes = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
        Frame::from_matrix(nodes, leq)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn name(&self, i: usize) -> &str {
        &self.nodes[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Indices of `{w : v <= w}`.
    pub fn up(&self, v: usize) -> &[usize] {
        &self.up[v]
    }

    pub fn down(&self, v: usize) -> &[usize] {
        &self.down[v]
    }

    pub fn up_mask(&self, v: usize) -> NodeMask {
        self.up[v].iter().fold(0, |m, &j| m | 1 << j)
    }

    /// Names of `{w : v <= w}`.
    pub fn up_set(&self, v: &str) -> Result<Vec<String>> {
        let i = self.index_of(v)?;
        Ok(self.up[i].iter().map(|&j| self.nodes[j].clone()).collect())
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.down[i].len() == 1)
            .collect()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].len() == 1).collect()
    }

    pub fn root(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.up[i].len() == self.len())
    }

    /// Every down-set is a chain.
    pub fn is_tree(&self) -> bool {
        (0..self.len()).all(|v| {
            let d = &self.down[v];
            d.iter()
                .all(|&a| d.iter().all(|&b| self.leq[a][b] || self.leq[b][a]))
        })
    }

    /// Pairs `(v, w)` with `v < w` and nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.len() {
            for &w in &self.up[v] {
                if w != v
                    && !self.up[v]
                        .iter()
                        .any(|&u| u != v && u != w && self.leq[u][w])
                {
                    out.push((v, w));
                }
            }
        }
        out
    }

    /// DOT rendering of the Hasse diagram, smaller nodes at the bottom.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph K {\n  rankdir=BT;\n");
        for n in &self.nodes {
            s.push_str(&format!("  \"{n}\";\n"));
        }
        for (v, w) in self.covers() {
            s.push_str(&format!(
                "  \"{}\" -> \"{}\";\n",
                self.nodes[v], self.nodes[w]
            ));
        }
        s.push_str("}\n");
        s
    }

    /// The subframe generated by `v`, with the map back to this frame.
    pub fn generated(&self, v: usize) -> (Frame, Vec<usize>) {
        let keep = self.up[v].clone();
        let nodes = keep.iter().map(|&i| self.nodes[i].clone()).collect();
        let leq = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| self.leq[i][j]).collect())
            .collect();
        (Frame::from_matrix(nodes, leq), keep)
    }

    /// All upward-closed node sets, as bitmasks. Needs at most 64 nodes.
    pub fn up_sets(&self) -> Vec<NodeMask> {
        assert!(self.len() <= 64, "up_sets needs at most 64 nodes");
        let mut order: Vec<usize> = (0..self.len()).collect();
        // Larger up-sets first is a linear extension of >=.
        order.sort_by_key(|&i| self.up[i].len());
        let mut out = Vec::new();
        self.up_sets_rec(&order, 0, 0, &mut out);
        out.sort_unstable();
        out
    }

    fn up_sets_rec(&self, order: &[usize], k: usize, acc: NodeMask, out: &mut Vec<NodeMask>) {
        if k == order.len() {
            out.push(acc);
            return;
        }
        let v = order[k];
        self.up_sets_rec(order, k + 1, acc, out);
        let up = self.up_mask(v) & !(1 << v);
        if acc & up == up {
            self.up_sets_rec(order, k + 1, acc | 1 << v, out);
        }
    }

    pub fn is_up_closed(&self, m: NodeMask) -> bool {
        (0..self.len()).all(|v| m & 1 << v == 0 || m & self.up_mask(v) == self.up_mask(v))
    }

    /// Unravel along covers from `root`: nodes are cover paths, named by
    /// joining the original names with `/`. Returns the tree and the map
    /// from tree nodes to nodes of this frame.
    pub fn unravel(&self, root: usize) -> (Frame, Vec<usize>) {
        let covers = self.covers();
        let mut paths: Vec<Vec<usize>> = vec![vec![root]];
        let mut k = 0;
        while k < paths.len() {
            let last = *paths[k].last().unwrap();
            for &(a, b) in &covers {
                if a == last {
                    let mut p = paths[k].clone();
                    p.push(b);
                    paths.push(p);
                }
            }
            k += 1;
        }
        let names = paths
            .iter()
            .map(|p| {
                p.iter()
                    .map(|&i| self.nodes[i].as_str())
                    .collect::<Vec<_>>()
                    .join("/")
            })
            .collect();
        let leq = paths
            .iter()
            .map(|p| {
                paths
                    .iter()
                    .map(|q| q.len() >= p.len() && q[..p.len()] == p[..])
                    .collect()
            })
            .collect();
        let map = paths.iter().map(|p| *p.last().unwrap()).collect();
        (Frame::from_matrix(names, leq), map)
    }

    /// Canonical form up to isomorphism: the lexicographically least
    /// adjacency bit string over all relabellings.
    pub fn canonical_code(&self) -> Vec<bool> {
        let n = self.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<bool>> = None;
        permute(&mut perm, 0, &mut |p| {
            let code: Vec<bool> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| self.leq[p[i]][p[j]])
                .collect();
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        });
        best.unwrap_or_default()
    }
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Valuations as maps from letters to up-closed node masks.
pub type Valuation = BTreeMap<String, NodeMask>;

/// Every persistent valuation of `letters` on `fr`, each exactly once.
pub fn enumerate_valuations<'a>(
    fr: &Frame,
    letters: &'a [String],
) -> impl Iterator<Item = Valuation> + 'a {
    let ups = fr.up_sets();
    let k = letters.len();
    let total: usize = ups.len().pow(k as u32);
    (0..total).map(move |mut code| {
        let mut v = Valuation::new();
        for l in letters {
            v.insert(l.clone(), ups[code % ups.len()]);
            code /= ups.len();
        }
        v
    })
}

static ROOTED: Lazy<Mutex<HashMap<usize, Arc<Vec<Frame>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// All rooted posets with `n` nodes, one per isomorphism class. Node 0 is
/// the root and node names are `0..n`.
pub fn rooted_posets(n: usize) -> Arc<Vec<Frame>> {
    assert!(n >= 1);
    if let Some(v) = ROOTED.lock().get(&n) {
        return v.clone();
    }
    let tops = posets_up_to_iso(n - 1);
    let frames: Vec<Frame> = tops
        .iter()
        .map(|m| {
            let mut leq = vec![vec![true; n]];
            for row in m {
                let mut r = vec![false];
                r.extend(row.iter().copied());
                leq.push(r);
            }
            Frame::from_matrix((0..n).map(|i| i.to_string()).collect(), leq)
        })
        .collect();
    let arc = Arc::new(frames);
    ROOTED.lock().insert(n, arc.clone());
    arc
}

/// Posets on `n` points up to isomorphism, as order matrices.
fn posets_up_to_iso(n: usize) -> Vec<Vec<Vec<bool>>> {
    // Naturally labelled posets: node k's strict down-set is an ideal of 0..k.
    let mut layer: Vec<Vec<Vec<bool>>> = vec![vec![]];
    for k in 0..n {
        let mut next = Vec::new();
        for m in &layer {
            for ideal in ideals(m, k) {
                let mut m2: Vec<Vec<bool>> = m
                    .iter()
                    .map(|r| {
                        let mut r = r.clone();
                        r.push(false);
                        r
                    })
                    .collect();
                for (i, row) in m2.iter_mut().enumerate() {
                    row[k] = ideal & 1 << i != 0;
                }
                let mut last = vec![false; k + 1];
                last[k] = true;
                m2.push(last);
                next.push(m2);
            }
        }
        layer = next;
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in layer {
        let names = (0..n).map(|i| i.to_string()).collect();
        let f = Frame::from_matrix(names, m.clone());
        if seen.insert(f.canonical_code()) {
            out.push(m);
        }
    }
    out
}

/// Down-closed subsets of the first `k` nodes of `m`, as bitmasks.
fn ideals(m: &[Vec<bool>], k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    for s in 0u64..1 << k {
        let closed = (0..k).all(|j| s & 1 << j == 0 || (0..k).all(|i| !m[i][j] || s & 1 << i != 0));
        if closed {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> String {
        x.to_string()
    }

    #[test]
    fn validation_examples() {
        let nodes = vec![s("v"), s("w")];
        assert!(validate_relation(&nodes, &[(s("v"), s("w"))], true).is_empty());
        let v = validate_relation(&nodes, &[(s("v"), s("w")), (s("w"), s("v"))], true);
        assert!(matches!(v[0], Violation::Antisymmetry { .. }));
        let nodes = vec![s("a"), s("b"), s("c")];
        let v = validate_relation(&nodes, &[(s("a"), s("b")), (s("b"), s("c"))], true);
        assert_eq!(
            v,
            vec![Violation::Transitivity {
                a: s("a"),
                b: s("b"),
                c: s("c")
            }]
        );
        let v = validate_relation(&nodes, &[], false);
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn valuation_counts() {
        let one = [s("p")];
        assert_eq!(enumerate_valuations(&Frame::chain(1), &one).count(), 2);
        assert_eq!(enumerate_valuations(&Frame::chain(2), &one).count(), 3);
        assert_eq!(enumerate_valuations(&Frame::antichain(2), &one).count(), 4);
        assert_eq!(enumerate_valuations(&Frame::chain(2), &[]).count(), 1);
    }

    #[test]
    fn up_sets_of_small_frames() {
        let c = Frame::chain(2);
        assert_eq!(c.up_set("0").unwrap(), vec![s("0"), s("1")]);
        assert_eq!(c.up_set("1").unwrap(), vec![s("1")]);
        assert!(c.up_set("9").is_err());
        assert_eq!(Frame::antichain(2).up_set("1").unwrap(), vec![s("1")]);
    }

    #[test]
    fn rooted_poset_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| rooted_posets(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn unravel_diamond() {
        let nodes = vec![s("r"), s("a"), s("b"), s("t")];
        let covers = [
            (s("r"), s("a")),
            (s("r"), s("b")),
            (s("a"), s("t")),
            (s("b"), s("t")),
        ];
        let f = Frame::from_covers(nodes, &covers).unwrap();
        assert!(!f.is_tree());
        let (t, map) = f.unravel(0);
        assert_eq!(t.len(), 5);
        assert!(t.is_tree());
        assert_eq!(map.iter().filter(|&&i| i == 3).count(), 2);
    }

    #[test]
    fn dot_lists_covers_only() {
        let dot = Frame::chain(3).to_dot();
        assert!(dot.contains("\"0\" -> \"1\""));
        assert!(!dot.contains("\"0\" -> \"2\""));
    }
}
