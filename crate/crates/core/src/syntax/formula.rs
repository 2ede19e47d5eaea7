use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Object languages handled by the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Language {
    Prop,
    Fo,
    FoEq,
    Set,
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Language::Prop => "prop",
            Language::Fo => "fo",
            Language::FoEq => "foeq",
            Language::Set => "set",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Language {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "prop" => Ok(Language::Prop),
            "fo" => Ok(Language::Fo),
            "foeq" => Ok(Language::FoEq),
            "set" => Ok(Language::Set),
            other => Err(Error::UnknownName(other.to_string())),
        }
    }
}

/// A term: a variable (or constant) name, or a function application.
///
/// Function applications only exist ahead of
/// [`eliminate_function_symbols`](crate::syntax::eliminate_function_symbols);
/// every evaluator rejects them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "node", content = "args")]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    fn rename(&self, from: &str, to: &str) -> Term {
        match self {
            Term::Var(v) if v == from => Term::Var(to.to_string()),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.rename(from, to)).collect())
            }
        }
    }
}

/// Formulas of the propositional, first-order and set-theoretic languages.
///
/// Negation is `Impl(φ, Bot)`; there is no separate node for it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "node", content = "args")]
pub enum Formula {
    Bot,
    Letter(String),
    Pred(String, Vec<Term>),
    Eq(Term, Term),
    Mem(Term, Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    BExists(String, Term, Box<Formula>),
    BForall(String, Term, Box<Formula>),
}

pub fn letter(p: impl Into<String>) -> Formula {
    Formula::Letter(p.into())
}

pub fn pred(p: impl Into<String>, vars: &[&str]) -> Formula {
    Formula::Pred(p.into(), vars.iter().map(|v| Term::var(*v)).collect())
}

pub fn mem(a: impl Into<String>, b: impl Into<String>) -> Formula {
    Formula::Mem(Term::Var(a.into()), Term::Var(b.into()))
}

pub fn eq(a: impl Into<String>, b: impl Into<String>) -> Formula {
    Formula::Eq(Term::Var(a.into()), Term::Var(b.into()))
}

pub fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn imp(a: Formula, b: Formula) -> Formula {
    Formula::Impl(Box::new(a), Box::new(b))
}

pub fn not(a: Formula) -> Formula {
    imp(a, Formula::Bot)
}

pub fn iff(a: Formula, b: Formula) -> Formula {
    and(imp(a.clone(), b.clone()), imp(b, a))
}

pub fn top() -> Formula {
    not(Formula::Bot)
}

pub fn exists(x: impl Into<String>, body: Formula) -> Formula {
    Formula::Exists(x.into(), Box::new(body))
}

pub fn forall(x: impl Into<String>, body: Formula) -> Formula {
    Formula::Forall(x.into(), Box::new(body))
}

pub fn bexists(x: impl Into<String>, a: impl Into<String>, body: Formula) -> Formula {
    Formula::BExists(x.into(), Term::Var(a.into()), Box::new(body))
}

pub fn bforall(x: impl Into<String>, a: impl Into<String>, body: Formula) -> Formula {
    Formula::BForall(x.into(), Term::Var(a.into()), Box::new(body))
}

/// Left-nested conjunction, as the parser reads `a & b & c`; the empty
/// conjunction is `~false`.
pub fn conj(items: impl IntoIterator<Item = Formula>) -> Formula {
    let mut it = items.into_iter();
    match it.next() {
        None => top(),
        Some(first) => it.fold(first, and),
    }
}

/// Left-nested disjunction; the empty disjunction is `false`.
pub fn disj(items: impl IntoIterator<Item = Formula>) -> Formula {
    let mut it = items.into_iter();
    match it.next() {
        None => Formula::Bot,
        Some(first) => it.fold(first, or),
    }
}

impl Formula {
    pub fn is_atomic(&self) -> bool {
        matches!(
            self,
            Formula::Bot
                | Formula::Letter(_)
                | Formula::Pred(..)
                | Formula::Eq(..)
                | Formula::Mem(..)
        )
    }

    /// Connective and quantifier nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Impl(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::Exists(_, b)
            | Formula::Forall(_, b)
            | Formula::BExists(_, _, b)
            | Formula::BForall(_, _, b) => 1 + b.depth(),
            _ => 0,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Impl(a, b) => 1 + a.size() + b.size(),
            Formula::Exists(_, b)
            | Formula::Forall(_, b)
            | Formula::BExists(_, _, b)
            | Formula::BForall(_, _, b) => 1 + b.size(),
            _ => 1,
        }
    }

    /// Distinct subformulas, children before parents.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        self.collect_subformulas(&mut out, &mut seen);
        out
    }

    fn collect_subformulas(&self, out: &mut Vec<Formula>, seen: &mut BTreeSet<Formula>) {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Impl(a, b) => {
                a.collect_subformulas(out, seen);
                b.collect_subformulas(out, seen);
            }
            Formula::Exists(_, b)
            | Formula::Forall(_, b)
            | Formula::BExists(_, _, b)
            | Formula::BForall(_, _, b) => b.collect_subformulas(out, seen),
            _ => {}
        }
        if seen.insert(self.clone()) {
            out.push(self.clone());
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        let add_term = |t: &Term, bound: &Vec<String>, out: &mut BTreeSet<String>| {
            let mut vs = BTreeSet::new();
            t.collect_vars(&mut vs);
            for v in vs {
                if !bound.contains(&v) {
                    out.insert(v);
                }
            }
        };
        match self {
            Formula::Bot | Formula::Letter(_) => {}
            Formula::Pred(_, args) => args.iter().for_each(|t| add_term(t, bound, out)),
            Formula::Eq(a, b) | Formula::Mem(a, b) => {
                add_term(a, bound, out);
                add_term(b, bound, out);
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Impl(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(x, body) | Formula::Forall(x, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            Formula::BExists(x, t, body) | Formula::BForall(x, t, body) => {
                add_term(t, bound, out);
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// All variable names, free or bound.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            Formula::Pred(_, args) => args.iter().for_each(|t| t.collect_vars(&mut out)),
            Formula::Eq(a, b) | Formula::Mem(a, b) => {
                a.collect_vars(&mut out);
                b.collect_vars(&mut out);
            }
            Formula::Exists(x, _) | Formula::Forall(x, _) => {
                out.insert(x.clone());
            }
            Formula::BExists(x, t, _) | Formula::BForall(x, t, _) => {
                out.insert(x.clone());
                t.collect_vars(&mut out);
            }
            _ => {}
        });
        out
    }

    /// Pre-order visit of every node.
    pub fn walk(&self, visit: &mut dyn FnMut(&Formula)) {
        visit(self);
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Impl(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
            Formula::Exists(_, b)
            | Formula::Forall(_, b)
            | Formula::BExists(_, _, b)
            | Formula::BForall(_, _, b) => b.walk(visit),
            _ => {}
        }
    }

    pub fn letters(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| {
            if let Formula::Letter(p) = f {
                out.insert(p.clone());
            }
        });
        out
    }

    /// Predicate symbols with the arities they are used at.
    pub fn predicates(&self) -> BTreeMap<String, BTreeSet<usize>> {
        let mut out: BTreeMap<String, BTreeSet<usize>> = BTreeMap::new();
        self.walk(&mut |f| {
            if let Formula::Pred(p, args) = f {
                out.entry(p.clone()).or_default().insert(args.len());
            }
        });
        out
    }

    pub fn has_function_terms(&self) -> bool {
        let mut found = false;
        self.walk(&mut |f| {
            let app = |t: &Term| matches!(t, Term::App(..));
            match f {
                Formula::Pred(_, args) => found |= args.iter().any(app),
                Formula::Eq(a, b) | Formula::Mem(a, b) => found |= app(a) || app(b),
                Formula::BExists(_, t, _) | Formula::BForall(_, t, _) => found |= app(t),
                _ => {}
            }
        });
        found
    }

    pub fn has_unbounded_quantifier(&self) -> bool {
        let mut found = false;
        self.walk(&mut |f| found |= matches!(f, Formula::Exists(..) | Formula::Forall(..)));
        found
    }

    /// Check that only node kinds of `lang` occur.
    pub fn check_language(&self, lang: Language) -> Result<()> {
        let mut err = None;
        self.walk(&mut |f| {
            if err.is_some() {
                return;
            }
            let bad = match (f, lang) {
                (Formula::Letter(_), Language::Set) => Some("propositional letter"),
                (Formula::Pred(..), Language::Prop | Language::Set) => Some("predicate"),
                (Formula::Eq(..), Language::Prop | Language::Fo) => Some("equality"),
                (Formula::Mem(..), Language::Prop | Language::Fo | Language::FoEq) => {
                    Some("membership")
                }
                (Formula::Exists(..) | Formula::Forall(..), Language::Prop) => Some("quantifier"),
                (Formula::BExists(..) | Formula::BForall(..), l) if l != Language::Set => {
                    Some("bounded quantifier")
                }
                _ => None,
            };
            if let Some(c) = bad {
                err = Some(Error::WrongLanguage {
                    construct: c.to_string(),
                    language: lang.to_string(),
                });
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Expand bounded quantifiers into their unbounded abbreviations.
    pub fn desugar(&self) -> Formula {
        self.map_children(&|f| f.desugar(), true)
    }

    fn map_children(&self, g: &dyn Fn(&Formula) -> Formula, expand_bounded: bool) -> Formula {
        match self {
            Formula::And(a, b) => and(g(a), g(b)),
            Formula::Or(a, b) => or(g(a), g(b)),
            Formula::Impl(a, b) => imp(g(a), g(b)),
            Formula::Exists(x, b) => exists(x.clone(), g(b)),
            Formula::Forall(x, b) => forall(x.clone(), g(b)),
            Formula::BExists(x, t, b) if expand_bounded => exists(
                x.clone(),
                and(Formula::Mem(Term::Var(x.clone()), t.clone()), g(b)),
            ),
            Formula::BForall(x, t, b) if expand_bounded => forall(
                x.clone(),
                imp(Formula::Mem(Term::Var(x.clone()), t.clone()), g(b)),
            ),
            Formula::BExists(x, t, b) => Formula::BExists(x.clone(), t.clone(), Box::new(g(b))),
            Formula::BForall(x, t, b) => Formula::BForall(x.clone(), t.clone(), Box::new(g(b))),
            _ => self.clone(),
        }
    }

    /// Rename every free occurrence of `from` to `to`. `to` must not be
    /// bound anywhere inside `self`.
    pub fn rename_free(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Bot | Formula::Letter(_) => self.clone(),
            Formula::Pred(p, args) => {
                Formula::Pred(p.clone(), args.iter().map(|t| t.rename(from, to)).collect())
            }
            Formula::Eq(a, b) => Formula::Eq(a.rename(from, to), b.rename(from, to)),
            Formula::Mem(a, b) => Formula::Mem(a.rename(from, to), b.rename(from, to)),
            Formula::And(a, b) => and(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Or(a, b) => or(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Impl(a, b) => imp(a.rename_free(from, to), b.rename_free(from, to)),
            Formula::Exists(x, _) | Formula::Forall(x, _) if x == from => self.clone(),
            Formula::Exists(x, b) => exists(x.clone(), b.rename_free(from, to)),
            Formula::Forall(x, b) => forall(x.clone(), b.rename_free(from, to)),
            Formula::BExists(x, t, b) => {
                let body = if x == from {
                    (**b).clone()
                } else {
                    b.rename_free(from, to)
                };
                Formula::BExists(x.clone(), t.rename(from, to), Box::new(body))
            }
            Formula::BForall(x, t, b) => {
                let body = if x == from {
                    (**b).clone()
                } else {
                    b.rename_free(from, to)
                };
                Formula::BForall(x.clone(), t.rename(from, to), Box::new(body))
            }
        }
    }

    /// Simultaneous renaming of free variables that avoids capture by
    /// renaming bound variables of `self` when they clash with a target name.
    pub fn substitute(&self, map: &BTreeMap<String, String>) -> Formula {
        let mut avoid: BTreeSet<String> = map.values().cloned().collect();
        avoid.extend(self.variables());
        self.subst_rec(map, &mut avoid)
    }

    fn subst_rec(&self, map: &BTreeMap<String, String>, avoid: &mut BTreeSet<String>) -> Formula {
        let term = |t: &Term| -> Term {
            match t {
                Term::Var(v) => Term::Var(map.get(v).cloned().unwrap_or_else(|| v.clone())),
                Term::App(f, args) => Term::App(
                    f.clone(),
                    args.iter()
                        .map(|a| {
                            let mut m = a.clone();
                            for (k, v) in map {
                                m = m.rename(k, v);
                            }
                            m
                        })
                        .collect(),
                ),
            }
        };
        match self {
            Formula::Bot | Formula::Letter(_) => self.clone(),
            Formula::Pred(p, args) => Formula::Pred(p.clone(), args.iter().map(term).collect()),
            Formula::Eq(a, b) => Formula::Eq(term(a), term(b)),
            Formula::Mem(a, b) => Formula::Mem(term(a), term(b)),
            Formula::And(a, b) => and(a.subst_rec(map, avoid), b.subst_rec(map, avoid)),
            Formula::Or(a, b) => or(a.subst_rec(map, avoid), b.subst_rec(map, avoid)),
            Formula::Impl(a, b) => imp(a.subst_rec(map, avoid), b.subst_rec(map, avoid)),
            Formula::Exists(x, b)
            | Formula::Forall(x, b)
            | Formula::BExists(x, _, b)
            | Formula::BForall(x, _, b) => {
                let bound_term = match self {
                    Formula::BExists(_, t, _) | Formula::BForall(_, t, _) => Some(term(t)),
                    _ => None,
                };
                let mut inner = map.clone();
                inner.remove(x);
                let targets: BTreeSet<&String> = inner.values().collect();
                let (nx, body) = if targets.contains(x) {
                    let fresh = fresh_name(x, avoid);
                    avoid.insert(fresh.clone());
                    inner.insert(x.clone(), fresh.clone());
                    (fresh, b.subst_rec(&inner, avoid))
                } else {
                    (x.clone(), b.subst_rec(&inner, avoid))
                };
                match (self, bound_term) {
                    (Formula::Exists(..), _) => exists(nx, body),
                    (Formula::Forall(..), _) => forall(nx, body),
                    (Formula::BExists(..), Some(t)) => Formula::BExists(nx, t, Box::new(body)),
                    (Formula::BForall(..), Some(t)) => Formula::BForall(nx, t, Box::new(body)),
                    _ => unreachable!(),
                }
            }
        }
    }

    /// Rename bound variables so that no quantifier shadows another one on
    /// the same branch, and no bound variable coincides with a free one.
    pub fn normalize(&self) -> Formula {
        let free = self.free_vars();
        let mut avoid = self.variables();
        self.normalize_rec(&mut Vec::new(), &free, &mut avoid)
    }

    fn normalize_rec(
        &self,
        scope: &mut Vec<String>,
        free: &BTreeSet<String>,
        avoid: &mut BTreeSet<String>,
    ) -> Formula {
        match self {
            Formula::And(a, b) => and(
                a.normalize_rec(scope, free, avoid),
                b.normalize_rec(scope, free, avoid),
            ),
            Formula::Or(a, b) => or(
                a.normalize_rec(scope, free, avoid),
                b.normalize_rec(scope, free, avoid),
            ),
            Formula::Impl(a, b) => imp(
                a.normalize_rec(scope, free, avoid),
                b.normalize_rec(scope, free, avoid),
            ),
            Formula::Exists(x, b)
            | Formula::Forall(x, b)
            | Formula::BExists(x, _, b)
            | Formula::BForall(x, _, b) => {
                let (nx, body) = if scope.contains(x) || free.contains(x) {
                    let fresh = fresh_name(x, avoid);
                    avoid.insert(fresh.clone());
                    (fresh.clone(), b.rename_free(x, &fresh))
                } else {
                    (x.clone(), (**b).clone())
                };
                avoid.insert(nx.clone());
                scope.push(nx.clone());
                let body = body.normalize_rec(scope, free, avoid);
                scope.pop();
                match self {
                    Formula::Exists(..) => exists(nx, body),
                    Formula::Forall(..) => forall(nx, body),
                    Formula::BExists(_, t, _) => Formula::BExists(nx, t.clone(), Box::new(body)),
                    Formula::BForall(_, t, _) => Formula::BForall(nx, t.clone(), Box::new(body)),
                    _ => unreachable!(),
                }
            }
            _ => self.clone(),
        }
    }

    /// True when no quantifier rebinds a variable already bound above it.
    pub fn is_normalized(&self) -> bool {
        fn go(f: &Formula, scope: &mut Vec<String>, free: &BTreeSet<String>) -> bool {
            match f {
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Impl(a, b) => {
                    go(a, scope, free) && go(b, scope, free)
                }
                Formula::Exists(x, b)
                | Formula::Forall(x, b)
                | Formula::BExists(x, _, b)
                | Formula::BForall(x, _, b) => {
                    if scope.contains(x) || free.contains(x) {
                        return false;
                    }
                    scope.push(x.clone());
                    let ok = go(b, scope, free);
                    scope.pop();
                    ok
                }
                _ => true,
            }
        }
        go(self, &mut Vec::new(), &self.free_vars())
    }
}

/// A name derived from `base` that is not in `avoid`.
pub fn fresh_name(base: &str, avoid: &BTreeSet<String>) -> String {
    if !avoid.contains(base) {
        return base.to_string();
    }
    let stem = base
        .trim_end_matches(|c: char| c.is_ascii_digit())
        .trim_end_matches('_');
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|i| format!("{stem}_{i}"))
        .find(|n| !avoid.contains(n))
        .expect("unbounded search")
}
