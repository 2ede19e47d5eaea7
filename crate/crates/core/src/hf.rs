//! Hereditarily finite sets, finite transitive universes and classical
//! evaluation.
//!
//! Sets are hash-consed in a process-wide table, so two sets are equal iff
//! their ids are equal. The table is guarded by a read-write lock and may be
//! used from many threads.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use once_cell::sync::Lazy;
use parking_lot::RwLock;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::syntax::{Formula, Language, Term};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HfSet(u32);

struct Entry {
    children: Arc<[u32]>,
    rank: u32,
}

struct Table {
    entries: Vec<Entry>,
    index: HashMap<Arc<[u32]>, u32>,
}

static TABLE: Lazy<RwLock<Table>> = Lazy::new(|| {
    let empty: Arc<[u32]> = Arc::from(Vec::new());
    let mut index = HashMap::new();
    index.insert(empty.clone(), 0);
    RwLock::new(Table {
        entries: vec![Entry {
            children: empty,
            rank: 0,
        }],
        index,
    })
});

/// Default bound on the number of sets a closure may produce.
pub const DEFAULT_SIZE_BUDGET: usize = 200_000;

/// Size budget, overridable with `IKP_SIZE_BUDGET`.
pub fn size_budget() -> usize {
    std::env::var("IKP_SIZE_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SIZE_BUDGET)
}

impl HfSet {
    pub const EMPTY: HfSet = HfSet(0);

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn from_id(id: u32) -> HfSet {
        assert!(
            (id as usize) < TABLE.read().entries.len(),
            "unknown set id {id}"
        );
        HfSet(id)
    }

    /// The set with exactly the given members.
    pub fn from_members(members: impl IntoIterator<Item = HfSet>) -> HfSet {
        let mut ids: Vec<u32> = members.into_iter().map(|s| s.0).collect();
        ids.sort_unstable();
        ids.dedup();
        if let Some(&i) = TABLE.read().index.get(ids.as_slice()) {
            return HfSet(i);
        }
        let mut t = TABLE.write();
        if let Some(&i) = t.index.get(ids.as_slice()) {
            return HfSet(i);
        }
        let rank = ids
            .iter()
            .map(|&c| t.entries[c as usize].rank + 1)
            .max()
            .unwrap_or(0);
        let children: Arc<[u32]> = Arc::from(ids);
        let id = t.entries.len() as u32;
        t.entries.push(Entry {
            children: children.clone(),
            rank,
        });
        t.index.insert(children, id);
        HfSet(id)
    }

    pub fn singleton(x: HfSet) -> HfSet {
        HfSet::from_members([x])
    }

    pub fn doubleton(a: HfSet, b: HfSet) -> HfSet {
        HfSet::from_members([a, b])
    }

    /// Kuratowski pair `{{a}, {a, b}}`.
    pub fn pair(a: HfSet, b: HfSet) -> HfSet {
        HfSet::doubleton(HfSet::singleton(a), HfSet::doubleton(a, b))
    }

    /// Components of a Kuratowski pair.
    pub fn unpair(self) -> Option<(HfSet, HfSet)> {
        let m = self.members();
        match m.len() {
            1 => {
                // {{a}} = (a, a)
                let inner = m[0].members();
                (inner.len() == 1).then(|| (inner[0], inner[0]))
            }
            2 => {
                let (s, d) = if m[0].len() == 1 {
                    (m[0], m[1])
                } else {
                    (m[1], m[0])
                };
                let a = *s.members().first()?;
                let dm = d.members();
                if s.len() != 1 || dm.len() != 2 || !dm.contains(&a) {
                    return None;
                }
                let b = if dm[0] == a { dm[1] } else { dm[0] };
                Some((a, b))
            }
            _ => None,
        }
    }

    /// Von Neumann ordinal `n`.
    pub fn ordinal(n: usize) -> HfSet {
        let mut acc = Vec::with_capacity(n);
        let mut cur = HfSet::EMPTY;
        for _ in 0..n {
            acc.push(cur);
            cur = HfSet::from_members(acc.iter().copied());
        }
        cur
    }

    /// Members, sorted by id.
    pub fn members(self) -> Vec<HfSet> {
        TABLE.read().entries[self.0 as usize]
            .children
            .iter()
            .map(|&c| HfSet(c))
            .collect()
    }

    pub fn member_ids(self) -> Arc<[u32]> {
        TABLE.read().entries[self.0 as usize].children.clone()
    }

    pub fn len(self) -> usize {
        TABLE.read().entries[self.0 as usize].children.len()
    }

    pub fn is_empty(self) -> bool {
        self == HfSet::EMPTY
    }

    pub fn contains(self, x: HfSet) -> bool {
        TABLE.read().entries[self.0 as usize]
            .children
            .binary_search(&x.0)
            .is_ok()
    }

    pub fn rank(self) -> u32 {
        TABLE.read().entries[self.0 as usize].rank
    }

    /// Transitive closure: all members, members of members, and so on.
    pub fn tc(self) -> BTreeSet<HfSet> {
        let mut out = BTreeSet::new();
        let mut stack = self.members();
        while let Some(x) = stack.pop() {
            if out.insert(x) {
                stack.extend(x.members());
            }
        }
        out
    }

    pub fn union(self) -> HfSet {
        HfSet::from_members(self.members().into_iter().flat_map(|m| m.members()))
    }

    /// Power set; `None` when it would have more than `budget` members.
    pub fn power(self, budget: usize) -> Option<HfSet> {
        let m = self.members();
        if m.len() >= usize::BITS as usize - 1 || 1usize << m.len() > budget {
            return None;
        }
        let subsets = (0..1u64 << m.len()).map(|bits| {
            HfSet::from_members(
                m.iter()
                    .enumerate()
                    .filter(|(i, _)| bits & 1 << i != 0)
                    .map(|(_, &x)| x),
            )
        });
        Some(HfSet::from_members(subsets.collect::<Vec<_>>()))
    }

    /// Order by rank, then structurally on members. Independent of ids.
    pub fn cmp_structural(self, other: HfSet) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        let r = self.rank().cmp(&other.rank());
        if r != Ordering::Equal {
            return r;
        }
        let mut a = self.members();
        let mut b = other.members();
        a.sort_by(|x, y| y.cmp_structural(*x));
        b.sort_by(|x, y| y.cmp_structural(*x));
        for (x, y) in a.iter().zip(&b) {
            let c = x.cmp_structural(*y);
            if c != Ordering::Equal {
                return c;
            }
        }
        a.len().cmp(&b.len())
    }

    pub fn to_json(self) -> Value {
        let mut m = self.members();
        m.sort_by(|x, y| x.cmp_structural(*y));
        Value::Array(m.into_iter().map(|x| x.to_json()).collect())
    }

    pub fn from_json(v: &Value) -> Result<HfSet> {
        match v {
            Value::Array(items) => Ok(HfSet::from_members(
                items
                    .iter()
                    .map(HfSet::from_json)
                    .collect::<Result<Vec<_>>>()?,
            )),
            _ => Err(Error::Json("an HF set is a nested array".into())),
        }
    }

    /// If this is a von Neumann ordinal, its value.
    pub fn as_ordinal(self) -> Option<usize> {
        let n = self.len();
        (HfSet::ordinal(n) == self).then_some(n)
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = self.members();
        m.sort_by(|x, y| x.cmp_structural(*y));
        f.write_str("{")?;
        for (i, x) in m.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}{}", self.0, self)
    }
}

/// Parse an HF literal: `{}`, `{a, b}`, `ord(n)`, `pair(a, b)`.
pub fn parse_hf(text: &str) -> Result<HfSet> {
    let mut p = HfParser {
        s: text.as_bytes(),
        i: 0,
    };
    let x = p.set()?;
    p.ws();
    if p.i != p.s.len() {
        return Err(Error::Syntax {
            pos: p.i,
            msg: "trailing input".into(),
        });
    }
    Ok(x)
}

struct HfParser<'a> {
    s: &'a [u8],
    i: usize,
}

impl HfParser<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            pos: self.i,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: u8) -> bool {
        self.ws();
        if self.s.get(self.i) == Some(&c) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn set(&mut self) -> Result<HfSet> {
        self.ws();
        if self.eat(b'{') {
            let mut items = Vec::new();
            if self.eat(b'}') {
                return Ok(HfSet::EMPTY);
            }
            loop {
                items.push(self.set()?);
                if self.eat(b'}') {
                    return Ok(HfSet::from_members(items));
                }
                if !self.eat(b',') {
                    return self.err("expected `,` or `}`");
                }
            }
        }
        let rest = &self.s[self.i..];
        if rest.starts_with(b"ord") {
            self.i += 3;
            if !self.eat(b'(') {
                return self.err("expected `(`");
            }
            self.ws();
            let start = self.i;
            while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
                self.i += 1;
            }
            let n: usize = std::str::from_utf8(&self.s[start..self.i])
                .ok()
                .and_then(|t| t.parse().ok())
                .ok_or(Error::Syntax {
                    pos: start,
                    msg: "expected a number".into(),
                })?;
            if !self.eat(b')') {
                return self.err("expected `)`");
            }
            return Ok(HfSet::ordinal(n));
        }
        if rest.starts_with(b"pair") {
            self.i += 4;
            if !self.eat(b'(') {
                return self.err("expected `(`");
            }
            let a = self.set()?;
            if !self.eat(b',') {
                return self.err("expected `,`");
            }
            let b = self.set()?;
            if !self.eat(b')') {
                return self.err("expected `)`");
            }
            return Ok(HfSet::pair(a, b));
        }
        self.err("expected `{`, `ord(` or `pair(`")
    }
}

/// Closure operations for [`universe_close`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClosureOps {
    pub pairing: bool,
    pub union: bool,
    pub power: bool,
}

/// A finite transitive set of HF sets, sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Universe {
    elems: Vec<HfSet>,
}

impl Universe {
    /// The transitive closure of `seed` (seed elements included).
    pub fn from_seed(seed: impl IntoIterator<Item = HfSet>) -> Universe {
        let mut all = BTreeSet::new();
        for x in seed {
            all.insert(x);
            all.extend(x.tc());
        }
        Universe {
            elems: all.into_iter().collect(),
        }
    }

    /// Exactly these sets; fails if they are not transitive.
    pub fn from_elements(elems: impl IntoIterator<Item = HfSet>) -> Result<Universe> {
        let mut v: Vec<HfSet> = elems.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        let u = Universe { elems: v };
        if let Some((x, c)) = u.transitivity_gap() {
            return Err(Error::InvalidModel(format!(
                "universe contains {x} but not its member {c}"
            )));
        }
        Ok(u)
    }

    /// `V_n`: all sets of rank below `n`.
    pub fn v(n: usize) -> Universe {
        let mut cur: Vec<HfSet> = Vec::new();
        for _ in 0..n {
            let k = cur.len();
            assert!(k < 20, "V_n too large");
            let next: Vec<HfSet> = (0..1u64 << k)
                .map(|bits| {
                    HfSet::from_members((0..k).filter(|i| bits & 1 << i != 0).map(|i| cur[i]))
                })
                .collect();
            cur = next;
        }
        Universe::from_elements(cur).expect("V_n is transitive")
    }

    pub fn elements(&self) -> &[HfSet] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: HfSet) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &Universe) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }

    pub fn union_with(&self, other: &Universe) -> Universe {
        Universe::from_seed(self.elems.iter().chain(&other.elems).copied())
    }

    /// A member whose own member is missing, if any.
    pub fn transitivity_gap(&self) -> Option<(HfSet, HfSet)> {
        for &x in &self.elems {
            for c in x.members() {
                if !self.contains(c) {
                    return Some((x, c));
                }
            }
        }
        None
    }

    /// Elements in structural order, for reports.
    pub fn sorted_structurally(&self) -> Vec<HfSet> {
        let mut v = self.elems.clone();
        v.sort_by(|a, b| a.cmp_structural(*b));
        v
    }

    pub fn max_rank(&self) -> u32 {
        self.elems.iter().map(|x| x.rank()).max().unwrap_or(0)
    }
}

/// Least transitive superset of `seed` closed under `ops` among sets of rank
/// at most `rank_cap`.
pub fn universe_close(
    seed: &[HfSet],
    ops: ClosureOps,
    rank_cap: u32,
    budget: usize,
) -> Result<Universe> {
    let mut set: BTreeSet<HfSet> = Universe::from_seed(seed.iter().copied())
        .elems
        .into_iter()
        .collect();
    if set.len() > budget {
        return Err(Error::Budget { budget });
    }
    loop {
        let cur: Vec<HfSet> = set.iter().copied().collect();
        let mut new = Vec::new();
        if ops.pairing {
            for (i, &a) in cur.iter().enumerate() {
                for &b in &cur[i..] {
                    let p = HfSet::doubleton(a, b);
                    if p.rank() <= rank_cap && !set.contains(&p) {
                        new.push(p);
                    }
                }
            }
        }
        if ops.union {
            for &a in &cur {
                let u = a.union();
                if !set.contains(&u) {
                    new.push(u);
                }
            }
        }
        if ops.power {
            for &a in &cur {
                if a.rank() < rank_cap {
                    let p = a.power(budget).ok_or(Error::Budget { budget })?;
                    if !set.contains(&p) {
                        new.push(p);
                    }
                }
            }
        }
        if new.is_empty() {
            break;
        }
        for x in new {
            set.insert(x);
            set.extend(x.tc());
            if set.len() > budget {
                return Err(Error::Budget { budget });
            }
        }
    }
    Ok(Universe {
        elems: set.into_iter().collect(),
    })
}

/// Assignment of HF sets to variables.
pub type SetAssignment = BTreeMap<String, HfSet>;

/// Tarski satisfaction in `u`, quantifiers ranging over `u`.
pub fn eval_classical(u: &Universe, f: &Formula, a: &SetAssignment) -> Result<bool> {
    f.check_language(Language::Set)?;
    for v in f.free_vars() {
        if !a.contains_key(&v) {
            return Err(Error::UnassignedVariable(v));
        }
    }
    let mut env = a.clone();
    tarski(u, f, &mut env)
}

fn val(t: &Term, env: &SetAssignment) -> Result<HfSet> {
    match t {
        Term::Var(v) => env
            .get(v)
            .copied()
            .ok_or_else(|| Error::UnassignedVariable(v.clone())),
        Term::App(f, _) => Err(Error::Unsupported(format!("function symbol `{f}`"))),
    }
}

fn tarski(u: &Universe, f: &Formula, env: &mut SetAssignment) -> Result<bool> {
    let scoped = |x: &str, d: HfSet, body: &Formula, env: &mut SetAssignment| -> Result<bool> {
        let saved = env.insert(x.to_string(), d);
        let r = tarski(u, body, env);
        match saved {
            Some(s) => env.insert(x.to_string(), s),
            None => env.remove(x),
        };
        r
    };
    Ok(match f {
        Formula::Bot => false,
        Formula::Eq(a, b) => val(a, env)? == val(b, env)?,
        Formula::Mem(a, b) => val(b, env)?.contains(val(a, env)?),
        Formula::And(a, b) => tarski(u, a, env)? && tarski(u, b, env)?,
        Formula::Or(a, b) => tarski(u, a, env)? || tarski(u, b, env)?,
        Formula::Impl(a, b) => !tarski(u, a, env)? || tarski(u, b, env)?,
        Formula::Exists(x, b) => {
            for &d in u.elements() {
                if scoped(x, d, b, env)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Forall(x, b) => {
            for &d in u.elements() {
                if !scoped(x, d, b, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::BExists(x, t, b) => {
            for d in val(t, env)?.members() {
                if u.contains(d) && scoped(x, d, b, env)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::BForall(x, t, b) => {
            for d in val(t, env)?.members() {
                if u.contains(d) && !scoped(x, d, b, env)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Letter(_) | Formula::Pred(..) => unreachable!("checked language"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{self, axioms, parse_any};

    #[test]
    fn ordinals_and_ranks() {
        assert_eq!(HfSet::ordinal(0), HfSet::EMPTY);
        assert_eq!(HfSet::ordinal(1), HfSet::singleton(HfSet::EMPTY));
        for n in 0..=8 {
            assert_eq!(HfSet::ordinal(n).rank(), n as u32);
            assert_eq!(HfSet::ordinal(n).tc().len(), n);
        }
        let x = parse_hf("{{{}}}").unwrap();
        assert_eq!(x.rank(), 2);
        assert_eq!(x.tc(), [HfSet::EMPTY, HfSet::ordinal(1)].into());
    }

    #[test]
    fn literals() {
        assert_eq!(parse_hf("{{},{{}}}").unwrap(), HfSet::ordinal(2));
        assert_eq!(parse_hf("{ {}, {}}").unwrap(), HfSet::ordinal(1));
        let p = parse_hf("pair(ord(0), ord(1))").unwrap();
        assert_eq!(p.unpair(), Some((HfSet::ordinal(0), HfSet::ordinal(1))));
        assert_eq!(
            HfSet::pair(HfSet::EMPTY, HfSet::EMPTY).unpair(),
            Some((HfSet::EMPTY, HfSet::EMPTY))
        );
        assert!(parse_hf("{").is_err());
        assert_eq!(HfSet::ordinal(2).to_string(), "{{},{{}}}");
        let j = HfSet::ordinal(3).to_json();
        assert_eq!(HfSet::from_json(&j).unwrap(), HfSet::ordinal(3));
    }

    #[test]
    fn v_sizes() {
        assert_eq!(Universe::v(3).len(), 4);
        assert_eq!(Universe::v(4).len(), 16);
    }

    #[test]
    fn pairing_closure() {
        let ops = ClosureOps {
            pairing: true,
            ..Default::default()
        };
        let u = universe_close(&[HfSet::singleton(HfSet::EMPTY)], ops, 2, 1000).unwrap();
        assert_eq!(u, Universe::v(3));
        let u = universe_close(
            &[HfSet::singleton(HfSet::EMPTY)],
            ClosureOps::default(),
            2,
            1000,
        )
        .unwrap();
        assert_eq!(u.len(), 2);
        assert!(universe_close(&[HfSet::ordinal(3)], ops, 6, 10).is_err());
    }

    #[test]
    fn classical_examples() {
        let u = Universe::v(3);
        let a: SetAssignment = [("t".to_string(), HfSet::ordinal(2))].into();
        assert!(
            eval_classical(&u, &parse_any("exists y forall x in y false").unwrap(), &a).unwrap()
        );
        assert!(eval_classical(&u, &parse_any("forall x in t (x in t)").unwrap(), &a).unwrap());
        // No function 2 -> 2 has rank below 3, so z = {} witnesses the instance.
        let inst = syntax::exists(
            "z",
            syntax::forall(
                "f",
                syntax::iff(syntax::mem("f", "z"), axioms::is_function("f", "t", "t")),
            ),
        );
        assert!(eval_classical(&u, &inst, &a).unwrap());
        assert!(eval_classical(&u, &axioms::axiom("Exp", None).unwrap(), &a).unwrap());
    }
}
