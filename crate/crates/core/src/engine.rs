//! Memoized forcing over first-order and set-theoretic Kripke structures.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::frames::Frame;
use crate::syntax::{Formula, Term};

/// What the forcing clauses need to know about a model.
pub trait Structure {
    fn frame(&self) -> &Frame;

    /// Sorted element ids of `D_v`.
    fn domain(&self, v: usize) -> &[u32];

    fn in_domain(&self, v: usize, x: u32) -> bool {
        self.domain(v).binary_search(&x).is_ok()
    }

    /// Resolve a relation symbol (letters have arity 0). `Ok(None)` means
    /// the symbol is interpreted as empty everywhere.
    fn symbol(&self, name: &str, arity: usize) -> Result<Option<u32>>;

    fn rel(&self, v: usize, sym: u32, args: &[u32]) -> bool;

    /// `None` when the model has no equality.
    fn eq(&self, v: usize, a: u32, b: u32) -> Option<bool>;

    /// `None` when the model has no membership.
    fn mem(&self, v: usize, a: u32, b: u32) -> Option<bool>;

    /// Elements `x` of `D_v` with `v ⊩ x ∈ a`.
    fn members(&self, v: usize, a: u32) -> Cow<'_, [u32]> {
        Cow::Owned(
            self.domain(v)
                .iter()
                .copied()
                .filter(|&x| self.mem(v, x, a) == Some(true))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Bot,
    Rel(Option<u32>, Vec<u32>),
    Eq(u32, u32),
    Mem(u32, u32),
    And(u32, u32),
    Or(u32, u32),
    Impl(u32, u32),
    Exists(u32, u32),
    Forall(u32, u32),
    BExists(u32, u32, u32),
    BForall(u32, u32, u32),
}

/// A formula compiled against one structure.
pub struct Evaluator<'s, S: Structure + ?Sized> {
    s: &'s S,
    nodes: Vec<Node>,
    free: Vec<Vec<u32>>,
    root: u32,
    vars: Vec<String>,
    n_free: usize,
    memo: HashMap<u128, bool>,
    memo_wide: HashMap<(u32, u32, Vec<u32>), bool>,
}

struct Compiler<'a, S: Structure + ?Sized> {
    s: &'a S,
    vars: Vec<String>,
    nodes: Vec<Node>,
    free: Vec<Vec<u32>>,
    cons: HashMap<Node, u32>,
}

impl<S: Structure + ?Sized> Compiler<'_, S> {
    fn var(&mut self, name: &str) -> u32 {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => i as u32,
            None => {
                self.vars.push(name.to_string());
                (self.vars.len() - 1) as u32
            }
        }
    }

    fn term(&mut self, t: &Term) -> Result<u32> {
        match t {
            Term::Var(v) => Ok(self.var(v)),
            Term::App(f, _) => Err(Error::Unsupported(format!(
                "function symbol `{f}` must be eliminated before evaluation"
            ))),
        }
    }

    fn push(&mut self, n: Node, free: Vec<u32>) -> u32 {
        if let Some(&i) = self.cons.get(&n) {
            return i;
        }
        self.nodes.push(n.clone());
        self.free.push(free);
        let i = (self.nodes.len() - 1) as u32;
        self.cons.insert(n, i);
        i
    }

    fn merge(&self, a: u32, b: u32) -> Vec<u32> {
        let mut v = self.free[a as usize].clone();
        v.extend(self.free[b as usize].iter().copied());
        v.sort_unstable();
        v.dedup();
        v
    }

    fn without(&self, body: u32, x: u32, extra: Option<u32>) -> Vec<u32> {
        let mut v: Vec<u32> = self.free[body as usize]
            .iter()
            .copied()
            .filter(|&y| y != x)
            .collect();
        v.extend(extra);
        v.sort_unstable();
        v.dedup();
        v
    }

    fn compile(&mut self, f: &Formula) -> Result<u32> {
        Ok(match f {
            Formula::Bot => self.push(Node::Bot, vec![]),
            Formula::Letter(p) => {
                let sym = self.s.symbol(p, 0)?;
                self.push(Node::Rel(sym, vec![]), vec![])
            }
            Formula::Pred(p, args) => {
                let sym = self.s.symbol(p, args.len())?;
                let args = args
                    .iter()
                    .map(|t| self.term(t))
                    .collect::<Result<Vec<_>>>()?;
                let mut free = args.clone();
                free.sort_unstable();
                free.dedup();
                self.push(Node::Rel(sym, args), free)
            }
            Formula::Eq(a, b) | Formula::Mem(a, b) => {
                let (a, b) = (self.term(a)?, self.term(b)?);
                let mut free = vec![a, b];
                free.sort_unstable();
                free.dedup();
                let n = if matches!(f, Formula::Eq(..)) {
                    Node::Eq(a, b)
                } else {
                    Node::Mem(a, b)
                };
                self.push(n, free)
            }
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Impl(a, b) => {
                let (a, b) = (self.compile(a)?, self.compile(b)?);
                let free = self.merge(a, b);
                let n = match f {
                    Formula::And(..) => Node::And(a, b),
                    Formula::Or(..) => Node::Or(a, b),
                    _ => Node::Impl(a, b),
                };
                self.push(n, free)
            }
            Formula::Exists(x, b) | Formula::Forall(x, b) => {
                let x = self.var(x);
                let b = self.compile(b)?;
                let free = self.without(b, x, None);
                let n = if matches!(f, Formula::Exists(..)) {
                    Node::Exists(x, b)
                } else {
                    Node::Forall(x, b)
                };
                self.push(n, free)
            }
            Formula::BExists(x, t, b) | Formula::BForall(x, t, b) => {
                let t = self.term(t)?;
                let x = self.var(x);
                let b = self.compile(b)?;
                let free = self.without(b, x, Some(t));
                let n = if matches!(f, Formula::BExists(..)) {
                    Node::BExists(x, t, b)
                } else {
                    Node::BForall(x, t, b)
                };
                self.push(n, free)
            }
        })
    }
}

impl<'s, S: Structure + ?Sized> Evaluator<'s, S> {
    pub fn new(s: &'s S, f: &Formula) -> Result<Self> {
        let f = f.normalize();
        let free: Vec<String> = f.free_vars().into_iter().collect();
        let mut c = Compiler {
            s,
            vars: free.clone(),
            nodes: Vec::new(),
            free: Vec::new(),
            cons: HashMap::new(),
        };
        let root = c.compile(&f)?;
        let ev = Evaluator {
            s,
            nodes: c.nodes,
            free: c.free,
            root,
            vars: c.vars,
            n_free: free.len(),
            memo: HashMap::new(),
            memo_wide: HashMap::new(),
        };
        ev.check_kinds()?;
        Ok(ev)
    }

    fn check_kinds(&self) -> Result<()> {
        let probe = self.s.domain(0).first().copied().unwrap_or(0);
        for n in &self.nodes {
            match n {
                Node::Eq(..) if self.s.eq(0, probe, probe).is_none() => {
                    return Err(Error::Unsupported(
                        "equality is not interpreted in this model".into(),
                    ))
                }
                Node::Mem(..) | Node::BExists(..) | Node::BForall(..)
                    if self.s.mem(0, probe, probe).is_none() =>
                {
                    return Err(Error::Unsupported(
                        "membership is not interpreted in this model".into(),
                    ))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Free variables, in the order `eval` expects their values.
    pub fn free_vars(&self) -> &[String] {
        &self.vars[..self.n_free]
    }

    /// Values for the free variables from a name map, checked against `D_v`.
    pub fn env(&self, v: usize, a: &BTreeMap<String, u32>) -> Result<Vec<u32>> {
        let mut env = vec![0; self.vars.len()];
        for (i, name) in self.free_vars().iter().enumerate() {
            let x = *a
                .get(name)
                .ok_or_else(|| Error::UnassignedVariable(name.clone()))?;
            if !self.s.in_domain(v, x) {
                return Err(Error::OutsideDomain {
                    node: self.s.frame().name(v).to_string(),
                    param: format!("{name} = {x}"),
                });
            }
            env[i] = x;
        }
        Ok(env)
    }

    /// Forcing at node `v`; `env` must hold one value per variable slot
    /// (as produced by [`Evaluator::env`]).
    pub fn eval(&mut self, v: usize, env: &mut [u32]) -> bool {
        self.go(self.root, v, env)
    }

    pub fn force(&mut self, v: usize, a: &BTreeMap<String, u32>) -> Result<bool> {
        let mut env = self.env(v, a)?;
        Ok(self.eval(v, &mut env))
    }

    /// For a top-level existential, the least witness at `v`.
    pub fn witness(&mut self, v: usize, a: &BTreeMap<String, u32>) -> Result<Option<u32>> {
        let mut env = self.env(v, a)?;
        let cands: Vec<u32> = match self.nodes[self.root as usize] {
            Node::Exists(..) => self.s.domain(v).to_vec(),
            Node::BExists(_, t, _) => self.s.members(v, env[t as usize]).into_owned(),
            _ => return Ok(None),
        };
        let (x, b) = match self.nodes[self.root as usize] {
            Node::Exists(x, b) | Node::BExists(x, _, b) => (x, b),
            _ => unreachable!(),
        };
        for d in cands {
            env[x as usize] = d;
            if self.go(b, v, &mut env) {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    pub fn clear_memo(&mut self) {
        self.memo.clear();
        self.memo_wide.clear();
    }

    fn lookup(&self, id: u32, v: usize, env: &[u32]) -> (Option<u128>, Option<bool>) {
        let fv = &self.free[id as usize];
        if fv.len() <= 3 && id < 1 << 16 && v < 1 << 16 {
            let mut k: u128 = (id as u128) << 112 | (v as u128) << 96;
            for (i, &x) in fv.iter().enumerate() {
                k |= (env[x as usize] as u128) << (32 * i);
            }
            (Some(k), self.memo.get(&k).copied())
        } else {
            let vals: Vec<u32> = fv.iter().map(|&x| env[x as usize]).collect();
            (None, self.memo_wide.get(&(id, v as u32, vals)).copied())
        }
    }

    fn store(&mut self, key: Option<u128>, id: u32, v: usize, env: &[u32], r: bool) {
        match key {
            Some(k) => {
                self.memo.insert(k, r);
            }
            None => {
                let vals: Vec<u32> = self.free[id as usize]
                    .iter()
                    .map(|&x| env[x as usize])
                    .collect();
                self.memo_wide.insert((id, v as u32, vals), r);
            }
        }
    }

    fn go(&mut self, id: u32, v: usize, env: &mut [u32]) -> bool {
        let node = &self.nodes[id as usize];
        match *node {
            Node::Bot => return false,
            Node::Rel(sym, ref args) => {
                return match sym {
                    None => false,
                    Some(s) => {
                        let vals: Vec<u32> = args.iter().map(|&a| env[a as usize]).collect();
                        self.s.rel(v, s, &vals)
                    }
                }
            }
            Node::Eq(a, b) => return self.s.eq(v, env[a as usize], env[b as usize]) == Some(true),
            Node::Mem(a, b) => {
                return self.s.mem(v, env[a as usize], env[b as usize]) == Some(true)
            }
            _ => {}
        }
        let (key, hit) = self.lookup(id, v, env);
        if let Some(r) = hit {
            return r;
        }
        let s = self.s;
        let fr = s.frame();
        let r = match self.nodes[id as usize].clone() {
            Node::And(a, b) => self.go(a, v, env) && self.go(b, v, env),
            Node::Or(a, b) => self.go(a, v, env) || self.go(b, v, env),
            Node::Impl(a, b) => fr
                .up(v)
                .iter()
                .all(|&w| !self.go(a, w, env) || self.go(b, w, env)),
            Node::Exists(x, b) => {
                let saved = env[x as usize];
                let r = s.domain(v).iter().any(|&d| {
                    env[x as usize] = d;
                    self.go(b, v, env)
                });
                env[x as usize] = saved;
                r
            }
            Node::Forall(x, b) => {
                let saved = env[x as usize];
                let r = fr.up(v).iter().all(|&w| {
                    s.domain(w).iter().all(|&d| {
                        env[x as usize] = d;
                        self.go(b, w, env)
                    })
                });
                env[x as usize] = saved;
                r
            }
            Node::BExists(x, t, b) => {
                let saved = env[x as usize];
                let a = env[t as usize];
                let r = s.members(v, a).iter().any(|&d| {
                    env[x as usize] = d;
                    self.go(b, v, env)
                });
                env[x as usize] = saved;
                r
            }
            Node::BForall(x, t, b) => {
                let saved = env[x as usize];
                let a = env[t as usize];
                let r = fr.up(v).iter().all(|&w| {
                    s.members(w, a).iter().all(|&d| {
                        env[x as usize] = d;
                        self.go(b, w, env)
                    })
                });
                env[x as usize] = saved;
                r
            }
            _ => unreachable!(),
        };
        self.store(key, id, v, env, r);
        r
    }
}

/// One-shot forcing check.
pub fn force<S: Structure + ?Sized>(
    s: &S,
    v: usize,
    f: &Formula,
    a: &BTreeMap<String, u32>,
) -> Result<bool> {
    Evaluator::new(s, f)?.force(v, a)
}
