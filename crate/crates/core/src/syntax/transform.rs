use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::formula::*;

/// Relation, constant and function symbols of a first-order language.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    #[serde(default)]
    pub relations: BTreeMap<String, usize>,
    #[serde(default)]
    pub constants: BTreeSet<String>,
    #[serde(default)]
    pub functions: BTreeMap<String, usize>,
    #[serde(default = "default_e")]
    pub e_symbol: String,
}

fn default_e() -> String {
    "E".to_string()
}

impl Signature {
    /// Read the relation symbols (letters as 0-ary) off a formula.
    pub fn of_formula(f: &Formula) -> Result<Signature> {
        let mut sig = Signature {
            e_symbol: default_e(),
            ..Default::default()
        };
        for p in f.letters() {
            sig.relations.insert(p, 0);
        }
        for (p, arities) in f.predicates() {
            if arities.len() > 1 || sig.relations.contains_key(&p) {
                let mut it = arities.iter();
                let a = *it.next().unwrap_or(&0);
                return Err(Error::Arity {
                    symbol: p,
                    expected: a,
                    found: *it.next().unwrap_or(&0),
                });
            }
            sig.relations.insert(p, *arities.iter().next().unwrap());
        }
        Ok(sig)
    }

    /// Graph relation name for a function symbol.
    pub fn graph_name(f: &str) -> String {
        format!("R_{f}")
    }
}

/// Relativize every quantifier to the unary predicate `e`.
pub fn relativize_e(f: &Formula, e: &str) -> Result<Formula> {
    f.check_language(Language::FoEq)?;
    if f.predicates().contains_key(e) || f.letters().contains(e) {
        return Err(Error::PredicateOccurs(e.to_string()));
    }
    Ok(rel(f, e))
}

fn rel(f: &Formula, e: &str) -> Formula {
    match f {
        Formula::And(a, b) => and(rel(a, e), rel(b, e)),
        Formula::Or(a, b) => or(rel(a, e), rel(b, e)),
        Formula::Impl(a, b) => imp(rel(a, e), rel(b, e)),
        Formula::Exists(x, b) => exists(x.clone(), and(pred(e, &[x]), rel(b, e))),
        Formula::Forall(x, b) => forall(x.clone(), imp(pred(e, &[x]), rel(b, e))),
        _ => f.clone(),
    }
}

struct Flattener<'a> {
    sig: &'a Signature,
    avoid: BTreeSet<String>,
}

impl Flattener<'_> {
    /// Flatten `t` to a variable, pushing graph atoms and fresh variables.
    fn term(&mut self, t: &Term, vars: &mut Vec<String>, atoms: &mut Vec<Formula>) -> Result<Term> {
        match t {
            Term::Var(_) => Ok(t.clone()),
            Term::App(fname, args) => {
                let want = *self
                    .sig
                    .functions
                    .get(fname)
                    .ok_or_else(|| Error::UnknownName(fname.clone()))?;
                if want != args.len() {
                    return Err(Error::Arity {
                        symbol: fname.clone(),
                        expected: want,
                        found: args.len(),
                    });
                }
                let mut flat = Vec::new();
                for a in args {
                    flat.push(self.term(a, vars, atoms)?);
                }
                let v = fresh_name("v", &self.avoid);
                self.avoid.insert(v.clone());
                flat.push(Term::Var(v.clone()));
                atoms.push(Formula::Pred(Signature::graph_name(fname), flat));
                vars.push(v.clone());
                Ok(Term::Var(v))
            }
        }
    }

    fn atom(&mut self, f: &Formula) -> Result<Formula> {
        let mut vars = Vec::new();
        let mut atoms = Vec::new();
        let core = match f {
            Formula::Pred(p, args) => {
                if let Some(&want) = self.sig.relations.get(p) {
                    if want != args.len() {
                        return Err(Error::Arity {
                            symbol: p.clone(),
                            expected: want,
                            found: args.len(),
                        });
                    }
                }
                let mut flat = Vec::new();
                for a in args {
                    flat.push(self.term(a, &mut vars, &mut atoms)?);
                }
                Formula::Pred(p.clone(), flat)
            }
            Formula::Eq(a, b) => {
                let a = self.term(a, &mut vars, &mut atoms)?;
                Formula::Eq(a, self.term(b, &mut vars, &mut atoms)?)
            }
            Formula::Mem(a, b) => {
                let a = self.term(a, &mut vars, &mut atoms)?;
                Formula::Mem(a, self.term(b, &mut vars, &mut atoms)?)
            }
            _ => return Ok(f.clone()),
        };
        if vars.is_empty() {
            return Ok(core);
        }
        atoms.push(core);
        let body = conj(atoms);
        Ok(vars.into_iter().rev().fold(body, |acc, v| exists(v, acc)))
    }

    fn formula(&mut self, f: &Formula) -> Result<Formula> {
        Ok(match f {
            Formula::And(a, b) => and(self.formula(a)?, self.formula(b)?),
            Formula::Or(a, b) => or(self.formula(a)?, self.formula(b)?),
            Formula::Impl(a, b) => imp(self.formula(a)?, self.formula(b)?),
            Formula::Exists(x, b) => exists(x.clone(), self.formula(b)?),
            Formula::Forall(x, b) => forall(x.clone(), self.formula(b)?),
            Formula::BExists(x, t, b) => {
                Formula::BExists(x.clone(), t.clone(), Box::new(self.formula(b)?))
            }
            Formula::BForall(x, t, b) => {
                Formula::BForall(x.clone(), t.clone(), Box::new(self.formula(b)?))
            }
            _ => self.atom(f)?,
        })
    }
}

/// Replace every function application by its graph relation `R_f`,
/// introducing one existential per application, innermost first.
pub fn eliminate_function_symbols(sig: &Signature, f: &Formula) -> Result<Formula> {
    let mut fl = Flattener {
        sig,
        avoid: f.variables(),
    };
    fl.avoid.extend(sig.constants.iter().cloned());
    fl.formula(f)
}
