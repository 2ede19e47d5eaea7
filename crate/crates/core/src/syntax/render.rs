use std::fmt;

use super::formula::{Formula, Term};

const IMPL: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

pub fn render_term(t: &Term) -> String {
    match t {
        Term::Var(v) => v.clone(),
        Term::App(f, args) => {
            let inner: Vec<String> = args.iter().map(render_term).collect();
            format!("{f}({})", inner.join(", "))
        }
    }
}

/// ASCII rendering that parses back to the same tree.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    go(f, IMPL, &mut out);
    out
}

fn go(f: &Formula, ctx: u8, out: &mut String) {
    let own = match f {
        Formula::Impl(_, b) if **b == Formula::Bot => UNARY,
        Formula::Impl(..) => IMPL,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    };
    let infix_atom = matches!(f, Formula::Eq(..) | Formula::Mem(..));
    let paren = own < ctx || (infix_atom && ctx == UNARY);
    if paren {
        out.push('(');
    }
    match f {
        Formula::Bot => out.push_str("false"),
        Formula::Letter(p) => out.push_str(p),
        Formula::Pred(p, args) => {
            out.push_str(&render_term(&Term::App(p.clone(), args.clone())));
        }
        Formula::Eq(a, b) => {
            out.push_str(&render_term(a));
            out.push_str(" = ");
            out.push_str(&render_term(b));
        }
        Formula::Mem(a, b) => {
            out.push_str(&render_term(a));
            out.push_str(" in ");
            out.push_str(&render_term(b));
        }
        Formula::Impl(a, b) if **b == Formula::Bot => {
            out.push('~');
            go(a, UNARY, out);
        }
        Formula::Impl(a, b) => {
            go(a, OR, out);
            out.push_str(" -> ");
            go(b, IMPL, out);
        }
        Formula::Or(a, b) => {
            go(a, OR, out);
            out.push_str(" | ");
            go(b, AND, out);
        }
        Formula::And(a, b) => {
            go(a, AND, out);
            out.push_str(" & ");
            go(b, UNARY, out);
        }
        Formula::Exists(x, b) | Formula::Forall(x, b) => {
            out.push_str(if matches!(f, Formula::Exists(..)) {
                "exists "
            } else {
                "forall "
            });
            out.push_str(x);
            out.push(' ');
            go(b, UNARY, out);
        }
        Formula::BExists(x, t, b) | Formula::BForall(x, t, b) => {
            out.push_str(if matches!(f, Formula::BExists(..)) {
                "exists "
            } else {
                "forall "
            });
            out.push_str(x);
            out.push_str(" in ");
            out.push_str(&render_term(t));
            out.push(' ');
            go(b, UNARY, out);
        }
    }
    if paren {
        out.push(')');
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_term(self))
    }
}
