use crate::error::{Error, Result};

use super::formula::{and, iff, imp, not, or, top, Formula, Language, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Forall,
    Exists,
    In,
    False,
    True,
    Arrow,
    Iff,
    And,
    Or,
    Not,
    Eq,
    Neq,
    LParen,
    RParen,
    Comma,
    End,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = |s: &str| text[i..].starts_with(s);
        let tok = if two("<->") {
            i += 3;
            Tok::Iff
        } else if two("->") {
            i += 2;
            Tok::Arrow
        } else if two("!=") {
            i += 2;
            Tok::Neq
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len()
                && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
            {
                i += 1;
            }
            match &text[start..i] {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                "in" => Tok::In,
                "false" => Tok::False,
                "true" => Tok::True,
                w => Tok::Ident(w.to_string()),
            }
        } else {
            i += 1;
            match c {
                b'&' => Tok::And,
                b'|' => Tok::Or,
                b'~' => Tok::Not,
                b'=' => Tok::Eq,
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b',' => Tok::Comma,
                _ => {
                    return Err(Error::Syntax {
                        pos: start,
                        msg: format!(
                            "unexpected character `{}`",
                            text[start..].chars().next().unwrap_or('?')
                        ),
                    })
                }
            }
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.fail("expected identifier"),
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.implication()?;
        if *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.implication()?;
            return Ok(iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            acc = or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            acc = and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.bump();
                Ok(not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => {
                let universal = self.bump() == Tok::Forall;
                let x = self.ident()?;
                if *self.peek() == Tok::In {
                    self.bump();
                    let a = Term::Var(self.ident()?);
                    let body = Box::new(self.unary()?);
                    Ok(if universal {
                        Formula::BForall(x, a, body)
                    } else {
                        Formula::BExists(x, a, body)
                    })
                } else {
                    let body = Box::new(self.unary()?);
                    Ok(if universal {
                        Formula::Forall(x, body)
                    } else {
                        Formula::Exists(x, body)
                    })
                }
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::Bot)
            }
            Tok::True => {
                self.bump();
                Ok(top())
            }
            Tok::Ident(_) => self.atom(),
            _ => self.fail("expected formula"),
        }
    }

    fn term_args(&mut self) -> Result<Vec<Term>> {
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(args)
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?;
        if *self.peek() == Tok::LParen {
            Ok(Term::App(name, self.term_args()?))
        } else {
            Ok(Term::Var(name))
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let name = self.ident()?;
        let args = if *self.peek() == Tok::LParen {
            Some(self.term_args()?)
        } else {
            None
        };
        let lhs_term = || match &args {
            Some(a) => Term::App(name.clone(), a.clone()),
            None => Term::Var(name.clone()),
        };
        match self.peek() {
            Tok::Eq => {
                self.bump();
                let lhs = lhs_term();
                Ok(Formula::Eq(lhs, self.term()?))
            }
            Tok::Neq => {
                self.bump();
                let lhs = lhs_term();
                Ok(not(Formula::Eq(lhs, self.term()?)))
            }
            Tok::In => {
                self.bump();
                let lhs = lhs_term();
                Ok(Formula::Mem(lhs, self.term()?))
            }
            _ => Ok(match args {
                Some(a) => Formula::Pred(name, a),
                None => Formula::Letter(name),
            }),
        }
    }
}

/// Parse `text` and check it against `lang`.
pub fn parse(text: &str, lang: Language) -> Result<Formula> {
    let f = parse_any(text)?;
    f.check_language(lang)?;
    Ok(f)
}

/// Parse without a language check.
pub fn parse_any(text: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.fail("trailing input");
    }
    Ok(f)
}
