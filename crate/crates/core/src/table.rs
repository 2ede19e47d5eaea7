//! Truth tables of first-order formulas over a fixed variable list, one
//! bitset per node, for sweeping many formulas over one model.
//!
//! Entries are indexed by tuples over the union of all domains. Only
//! entries whose coordinates lie in `D_v` are meaningful at node `v`.

use std::collections::{HashMap, HashSet};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::fo::FoModel;
use crate::frames::Frame;
use crate::syntax::Formula;

/// One node's table: `rows` rows of `words` words each. The last variable
/// indexes bits inside a row; the others index rows.
type Bits = Vec<u64>;
type Table = Rc<Vec<Bits>>;
/// Arity and per-node tuples of element positions.
type Rel = (usize, Vec<HashSet<Vec<usize>>>);

pub struct TableModel {
    frame: Frame,
    elems: Vec<u32>,
    n: usize,
    index: HashMap<u32, usize>,
    dom: Vec<Vec<usize>>,
    mask: Vec<Bits>,
    rels: HashMap<String, Rel>,
    vars: Vec<String>,
    rows: usize,
    words: usize,
    memo: HashMap<Formula, Table>,
}

impl TableModel {
    /// Tables over `vars` (1 to 3 names) for an equality-free model.
    pub fn new(m: &FoModel, vars: &[&str]) -> Result<TableModel> {
        if m.has_equality() {
            return Err(Error::Unsupported(
                "truth tables need an equality-free model".into(),
            ));
        }
        if vars.is_empty() || vars.len() > 3 {
            return Err(Error::Unsupported(
                "truth tables take 1 to 3 variables".into(),
            ));
        }
        let frame = m.frame().clone();
        let elems = m.elements();
        let n = elems.len().max(1);
        let words = n.div_ceil(64);
        let index: HashMap<u32, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let dom: Vec<Vec<usize>> = (0..frame.len())
            .map(|v| m.domain_of(v).iter().map(|x| index[x]).collect())
            .collect();
        let mask = dom
            .iter()
            .map(|d| {
                let mut b = vec![0; words];
                for &i in d {
                    b[i / 64] |= 1 << (i % 64);
                }
                b
            })
            .collect();
        let rels = m
            .relations()
            .into_iter()
            .map(|(r, k)| {
                let per = (0..frame.len())
                    .map(|v| {
                        m.tuples(&r, v)
                            .into_iter()
                            .map(|t| t.iter().map(|x| index[x]).collect())
                            .collect()
                    })
                    .collect();
                (r, (k, per))
            })
            .collect();
        Ok(TableModel {
            frame,
            elems,
            n,
            index,
            dom,
            mask,
            rels,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            rows: n.pow(vars.len() as u32 - 1),
            words,
            memo: HashMap::new(),
        })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    fn slot(&self, x: &str) -> Result<usize> {
        self.vars.iter().position(|v| v == x).ok_or_else(|| {
            Error::Unsupported(format!(
                "variable `{x}` is not in the table's variable list"
            ))
        })
    }

    /// Outer coordinates of a row.
    fn outer(&self, mut r: usize) -> Vec<usize> {
        let k = self.vars.len() - 1;
        let mut cs = vec![0; k];
        for i in (0..k).rev() {
            cs[i] = r % self.n;
            r /= self.n;
        }
        cs
    }

    fn row_of(&self, cs: &[usize]) -> usize {
        cs.iter().fold(0, |acc, &c| acc * self.n + c)
    }

    fn get(&self, t: &Bits, cs: &[usize]) -> bool {
        let (outer, last) = cs.split_at(cs.len() - 1);
        let i = self.row_of(outer) * self.words * 64 + last[0];
        t[i / 64] >> (i % 64) & 1 == 1
    }

    /// Truth of `f` at `v` under `a` (variable name to element id); unset
    /// variables take the first element.
    pub fn holds(&mut self, f: &Formula, v: usize, a: &HashMap<String, u32>) -> Result<bool> {
        let t = self.table(f)?;
        let mut cs = vec![0; self.vars.len()];
        for (i, x) in self.vars.iter().enumerate() {
            if let Some(e) = a.get(x) {
                cs[i] = *self
                    .index
                    .get(e)
                    .ok_or_else(|| Error::UnknownName(e.to_string()))?;
            }
        }
        Ok(self.get(&t[v], &cs))
    }

    /// Element ids in table order.
    pub fn elements(&self) -> &[u32] {
        &self.elems
    }

    pub fn position(&self, x: u32) -> Option<usize> {
        self.index.get(&x).copied()
    }

    /// The row of `f` at `v` for the given values of all variables but the
    /// last, restricted to `D_v`; bit `i` is the `i`-th element.
    pub fn row_bits(&mut self, f: &Formula, v: usize, outer: &[u32]) -> Result<Vec<u64>> {
        let t = self.table(f)?;
        let cs = outer
            .iter()
            .map(|e| {
                self.index
                    .get(e)
                    .copied()
                    .ok_or_else(|| Error::UnknownName(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        let r = self.row_of(&cs);
        Ok(self
            .row(&t[v], r)
            .iter()
            .zip(&self.mask[v])
            .map(|(a, m)| a & m)
            .collect())
    }

    /// Drop the memoized table of `f` (not of its subformulas).
    pub fn forget(&mut self, f: &Formula) {
        self.memo.remove(f);
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    fn table(&mut self, f: &Formula) -> Result<Table> {
        if let Some(t) = self.memo.get(f) {
            return Ok(t.clone());
        }
        let nodes = self.frame.len();
        let len = self.rows * self.words;
        let t: Vec<Bits> = match f {
            Formula::Bot => vec![vec![0; len]; nodes],
            Formula::Letter(p) => self.atom(p, &[])?,
            Formula::Pred(p, args) => {
                let names = args
                    .iter()
                    .map(|a| {
                        a.as_var()
                            .ok_or_else(|| Error::Unsupported("function terms".into()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.atom(p, &names)?
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let (ta, tb) = (self.table(a)?, self.table(b)?);
                let and = matches!(f, Formula::And(..));
                (0..nodes)
                    .map(|v| {
                        ta[v]
                            .iter()
                            .zip(&tb[v])
                            .map(|(x, y)| if and { x & y } else { x | y })
                            .collect()
                    })
                    .collect()
            }
            Formula::Impl(a, b) => {
                let (ta, tb) = (self.table(a)?, self.table(b)?);
                (0..nodes)
                    .map(|v| {
                        let mut acc = vec![u64::MAX; len];
                        for &w in self.frame.up(v) {
                            for (k, word) in acc.iter_mut().enumerate() {
                                *word &= !ta[w][k] | tb[w][k];
                            }
                        }
                        acc
                    })
                    .collect()
            }
            Formula::Exists(x, b) | Formula::Forall(x, b) => {
                let i = self.slot(x)?;
                let tb = self.table(b)?;
                let ex = matches!(f, Formula::Exists(..));
                (0..nodes)
                    .map(|v| {
                        if i == self.vars.len() - 1 {
                            self.quantify_inner(&tb, v, ex)
                        } else {
                            self.quantify_outer(&tb, v, i, ex)
                        }
                    })
                    .collect()
            }
            Formula::Eq(..) | Formula::Mem(..) | Formula::BExists(..) | Formula::BForall(..) => {
                return Err(Error::Unsupported(format!(
                    "truth tables cover equality-free first-order formulas, not `{}`",
                    crate::syntax::render(f)
                )))
            }
        };
        let t = Rc::new(t);
        self.memo.insert(f.clone(), t.clone());
        Ok(t)
    }

    fn row<'a>(&self, t: &'a Bits, r: usize) -> &'a [u64] {
        &t[r * self.words..(r + 1) * self.words]
    }

    fn quantify_inner(&self, tb: &[Bits], v: usize, ex: bool) -> Bits {
        let mut out = vec![0; self.rows * self.words];
        for r in 0..self.rows {
            let hit = if ex {
                self.row(&tb[v], r)
                    .iter()
                    .zip(&self.mask[v])
                    .any(|(a, m)| a & m != 0)
            } else {
                self.frame.up(v).iter().all(|&w| {
                    self.row(&tb[w], r)
                        .iter()
                        .zip(&self.mask[w])
                        .all(|(a, m)| a & m == *m)
                })
            };
            if hit {
                out[r * self.words..(r + 1) * self.words].fill(u64::MAX);
            }
        }
        out
    }

    fn quantify_outer(&self, tb: &[Bits], v: usize, i: usize, ex: bool) -> Bits {
        let mut out = vec![0; self.rows * self.words];
        for r in 0..self.rows {
            let mut cs = self.outer(r);
            if cs[i] != 0 {
                continue;
            }
            let mut acc = vec![if ex { 0 } else { u64::MAX }; self.words];
            let ws: &[usize] = if ex {
                std::slice::from_ref(&v)
            } else {
                self.frame.up(v)
            };
            for &w in ws {
                for &d in &self.dom[w] {
                    cs[i] = d;
                    for (a, b) in acc.iter_mut().zip(self.row(&tb[w], self.row_of(&cs))) {
                        if ex {
                            *a |= b;
                        } else {
                            *a &= b;
                        }
                    }
                }
            }
            for d in 0..self.n {
                cs[i] = d;
                let q = self.row_of(&cs);
                out[q * self.words..(q + 1) * self.words].copy_from_slice(&acc);
            }
        }
        out
    }

    fn atom(&self, p: &str, args: &[&str]) -> Result<Vec<Bits>> {
        let nodes = self.frame.len();
        let len = self.rows * self.words;
        let Some((k, per)) = self
            .rels
            .get(p)
            .filter(|(_, per)| per.iter().any(|t| !t.is_empty()))
        else {
            return Ok(vec![vec![0; len]; nodes]);
        };
        if *k != args.len() {
            return Err(Error::Arity {
                symbol: p.to_string(),
                expected: *k,
                found: args.len(),
            });
        }
        let slots = args
            .iter()
            .map(|a| self.slot(a))
            .collect::<Result<Vec<_>>>()?;
        let last = self.vars.len() - 1;
        Ok((0..nodes)
            .map(|v| {
                let mut out = vec![0; len];
                if per[v].is_empty() {
                    return out;
                }
                for r in 0..self.rows {
                    let mut cs = self.outer(r);
                    cs.push(0);
                    for c in 0..self.n {
                        cs[last] = c;
                        let key: Vec<usize> = slots.iter().map(|&s| cs[s]).collect();
                        if per[v].contains(&key) {
                            let bit = r * self.words * 64 + c;
                            out[bit / 64] |= 1 << (bit % 64);
                        }
                    }
                }
                out
            })
            .collect())
    }
}
