//! Homomorphic translations from logical languages into set theory.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::syntax::{Formula, Language};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TranslationKind {
    Prop,
    Fo,
    Relative,
    Equality,
}

/// Atoms map to Set formulas; connectives and quantifiers are kept.
#[derive(Debug, Clone)]
pub struct Translation {
    pub kind: TranslationKind,
    map: BTreeMap<String, (Vec<String>, Formula)>,
}

impl Translation {
    pub fn new(kind: TranslationKind) -> Translation {
        Translation {
            kind,
            map: BTreeMap::new(),
        }
    }

    /// Map `symbol(params…)` to `body`, whose free variables must be among
    /// `params`.
    pub fn insert(&mut self, symbol: &str, params: Vec<String>, body: Formula) -> Result<()> {
        if let Some(v) = body.free_vars().into_iter().find(|v| !params.contains(v)) {
            return Err(Error::UnassignedVariable(v));
        }
        body.check_language(Language::Set)?;
        self.map.insert(symbol.to_string(), (params, body));
        Ok(())
    }

    pub fn get(&self, symbol: &str) -> Option<&(Vec<String>, Formula)> {
        self.map.get(symbol)
    }

    pub fn apply(&self, f: &Formula) -> Result<Formula> {
        use Formula::*;
        Ok(match f {
            Bot => Bot,
            Letter(p) => self.atom(p, &[])?,
            Pred(p, args) => {
                let names = args
                    .iter()
                    .map(|t| {
                        t.as_var()
                            .map(str::to_string)
                            .ok_or_else(|| Error::Unsupported(format!("function term in {p}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.atom(p, &names)?
            }
            Eq(a, b) if self.kind == TranslationKind::Equality => Eq(a.clone(), b.clone()),
            Eq(..) | Mem(..) => {
                return Err(Error::WrongLanguage {
                    construct: crate::syntax::render(f),
                    language: format!("{:?} translation source", self.kind),
                })
            }
            And(a, b) => And(Box::new(self.apply(a)?), Box::new(self.apply(b)?)),
            Or(a, b) => Or(Box::new(self.apply(a)?), Box::new(self.apply(b)?)),
            Impl(a, b) => Impl(Box::new(self.apply(a)?), Box::new(self.apply(b)?)),
            Exists(x, b) => Exists(x.clone(), Box::new(self.apply(b)?)),
            Forall(x, b) => Forall(x.clone(), Box::new(self.apply(b)?)),
            BExists(..) | BForall(..) => {
                return Err(Error::WrongLanguage {
                    construct: "bounded quantifier".into(),
                    language: format!("{:?} translation source", self.kind),
                })
            }
        })
    }

    fn atom(&self, symbol: &str, args: &[String]) -> Result<Formula> {
        let (params, body) = self
            .map
            .get(symbol)
            .ok_or_else(|| Error::UnknownName(symbol.to_string()))?;
        if params.len() != args.len() {
            return Err(Error::Arity {
                symbol: symbol.to_string(),
                expected: params.len(),
                found: args.len(),
            });
        }
        let sub: BTreeMap<String, String> = params
            .iter()
            .zip(args)
            .filter(|(p, a)| p != a)
            .map(|(p, a)| (p.clone(), a.clone()))
            .collect();
        Ok(if sub.is_empty() {
            body.clone()
        } else {
            body.substitute(&sub)
        })
    }
}

/// Parameter names for a translated atom of arity `n`.
pub fn params(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("t{i}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{and, mem, parse_any, render};

    #[test]
    fn homomorphic() {
        let mut t = Translation::new(TranslationKind::Fo);
        t.insert("P", params(1), mem("t0", "t0")).unwrap();
        t.insert("q", vec![], Formula::Bot).unwrap();
        let f = parse_any("forall x (P(x) | q) -> exists y P(y)").unwrap();
        assert_eq!(
            render(&t.apply(&f).unwrap()),
            "forall x (x in x | false) -> exists y (y in y)"
        );
        let g = parse_any("P(x) & q").unwrap();
        assert_eq!(t.apply(&g).unwrap(), and(mem("x", "x"), Formula::Bot));
        assert!(t.apply(&parse_any("x = y").unwrap()).is_err());
        assert!(t.insert("R", vec![], mem("a", "b")).is_err());
    }
}
