//! Axioms and scheme instances of the set theories, plus the bounded
//! abbreviations they are written with.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

use super::classify::is_delta0;
use super::formula::*;

/// `y` has no elements.
pub fn is_empty(y: &str) -> Formula {
    let z = fresh_name("z", &[y.to_string()].into());
    bforall(z, y, Formula::Bot)
}

/// `y = {x}`.
pub fn is_singleton(y: &str, x: &str) -> Formula {
    let z = fresh_name("z", &[y.to_string(), x.to_string()].into());
    and(mem(x, y), bforall(z.clone(), y, eq(z, x)))
}

/// `y = {a, b}`.
pub fn is_doubleton(y: &str, a: &str, b: &str) -> Formula {
    let z = fresh_name("z", &[y.to_string(), a.to_string(), b.to_string()].into());
    conj([
        mem(a, y),
        mem(b, y),
        bforall(z.clone(), y, or(eq(z.clone(), a), eq(z, b))),
    ])
}

/// `p = (u, v)` as a Kuratowski pair.
pub fn is_pair(p: &str, u: &str, v: &str) -> Formula {
    let w = fresh_name("w", &[p.to_string(), u.to_string(), v.to_string()].into());
    conj([
        bexists(w.clone(), p, is_singleton(&w, u)),
        bexists(w.clone(), p, is_doubleton(&w, u, v)),
        bforall(
            w.clone(),
            p,
            or(is_singleton(&w, u), is_doubleton(&w, u, v)),
        ),
    ])
}

/// `s = y ∪ {y}`.
pub fn is_successor(s: &str, y: &str) -> Formula {
    let z = fresh_name("z", &[s.to_string(), y.to_string()].into());
    conj([
        mem(y, s),
        bforall(z.clone(), y, mem(z.clone(), s)),
        bforall(z.clone(), s, or(mem(z.clone(), y), eq(z, y))),
    ])
}

/// `z ⊆ a`.
pub fn subset(z: &str, a: &str) -> Formula {
    let w = fresh_name("w", &[z.to_string(), a.to_string()].into());
    bforall(w.clone(), z, mem(w, a))
}

/// `f : x → y`, a bounded formula.
pub fn is_function(f: &str, x: &str, y: &str) -> Formula {
    let avoid: BTreeSet<String> = [f, x, y].iter().map(|s| s.to_string()).collect();
    let p = fresh_name("p", &avoid);
    let q = fresh_name("q", &avoid);
    let u = fresh_name("u", &avoid);
    let v = fresh_name("v", &avoid);
    let v2 = fresh_name("v2", &avoid);
    let inside = bforall(
        p.clone(),
        f,
        bexists(u.clone(), x, bexists(v.clone(), y, is_pair(&p, &u, &v))),
    );
    let total = bforall(
        u.clone(),
        x,
        bexists(p.clone(), f, bexists(v.clone(), y, is_pair(&p, &u, &v))),
    );
    let functional = bforall(
        p.clone(),
        f,
        bforall(
            q.clone(),
            f,
            bforall(
                u.clone(),
                x,
                bforall(
                    v.clone(),
                    y,
                    bforall(
                        v2.clone(),
                        y,
                        imp(
                            and(is_pair(&p, &u, &v), is_pair(&q, &u, &v2)),
                            eq(v.clone(), v2.clone()),
                        ),
                    ),
                ),
            ),
        ),
    );
    conj([inside, total, functional])
}

/// `a` is inductive: `∅ ∈ a ∧ ∀x∈a ∃y∈a y = {x}`.
pub fn ind(a: &str) -> Formula {
    let avoid: BTreeSet<String> = [a.to_string()].into();
    let e = fresh_name("e", &avoid);
    let x = fresh_name("x", &avoid);
    let y = fresh_name("y", &avoid);
    and(
        bexists(e.clone(), a, is_empty(&e)),
        bforall(x.clone(), a, bexists(y.clone(), a, is_singleton(&y, &x))),
    )
}

fn is_one(o: &str) -> Formula {
    let e = fresh_name("e", &[o.to_string()].into());
    and(
        bexists(e.clone(), o, is_empty(&e)),
        bforall(e.clone(), o, is_empty(&e)),
    )
}

fn is_two(t: &str) -> Formula {
    let z = fresh_name("z", &[t.to_string()].into());
    conj([
        bexists(z.clone(), t, is_empty(&z)),
        bexists(z.clone(), t, is_one(&z)),
        bforall(z.clone(), t, or(is_empty(&z), is_one(&z))),
    ])
}

fn is_omega(w: &str) -> Formula {
    let avoid: BTreeSet<String> = [w.to_string()].into();
    let e = fresh_name("e", &avoid);
    let y = fresh_name("y", &avoid);
    let s = fresh_name("s", &avoid);
    let z = fresh_name("z", &avoid);
    conj([
        bexists(e.clone(), w, is_empty(&e)),
        bforall(y.clone(), w, bexists(s.clone(), w, is_successor(&s, &y))),
        bforall(
            y.clone(),
            w,
            or(is_empty(&y), bexists(z.clone(), &*y, is_successor(&y, &z))),
        ),
        bforall(y.clone(), w, bforall(z.clone(), &*y, mem(z.clone(), w))),
    ])
}

/// Names of the available axioms and schemes.
pub const AXIOM_NAMES: &[&str] = &[
    "EmptySet",
    "Pairing",
    "Union",
    "Extensionality",
    "Infinity",
    "SetInduction",
    "D0Separation",
    "D0Collection",
    "StrongInfinity",
    "StrongCollection",
    "SubsetCollection",
    "PowerSet",
    "Exp",
    "MP",
    "AC",
    "Ind",
];

/// Distinguished matrix variables of each scheme.
pub fn scheme_vars(name: &str) -> Option<&'static [&'static str]> {
    Some(match name {
        "SetInduction" | "D0Separation" => &["x"],
        "D0Collection" | "StrongCollection" => &["x", "y"],
        "SubsetCollection" => &["x", "y", "u"],
        _ => return None,
    })
}

pub fn is_scheme(name: &str) -> bool {
    scheme_vars(name).is_some()
}

struct Namer {
    avoid: BTreeSet<String>,
}

impl Namer {
    fn new(matrix: Option<&Formula>, distinguished: &[&str]) -> Self {
        let mut avoid = BTreeSet::new();
        if let Some(m) = matrix {
            for v in m.free_vars() {
                if !distinguished.contains(&v.as_str()) {
                    avoid.insert(v);
                }
            }
        }
        Namer { avoid }
    }

    fn name(&mut self, want: &str) -> String {
        let n = if self.avoid.contains(want) {
            fresh_name(want, &self.avoid)
        } else {
            want.to_string()
        };
        self.avoid.insert(n.clone());
        n
    }
}

fn inst(matrix: &Formula, from: &[&str], to: &[&str]) -> Formula {
    let map: BTreeMap<String, String> = from
        .iter()
        .zip(to)
        .filter(|(a, b)| a != b)
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    if map.is_empty() {
        matrix.clone()
    } else {
        matrix.substitute(&map)
    }
}

/// The named axiom, or the instance of the named scheme at `matrix`.
///
/// Scheme matrices use the free variables listed by [`scheme_vars`]; other
/// free variables stay free as parameters. `Ind` returns `Ind(a)`.
pub fn axiom(name: &str, matrix: Option<&Formula>) -> Result<Formula> {
    if let Some(vars) = scheme_vars(name) {
        let m = matrix.ok_or_else(|| Error::MissingMatrix(name.to_string()))?;
        m.check_language(Language::Set)?;
        if matches!(name, "D0Separation" | "D0Collection") && !is_delta0(m) {
            return Err(Error::NotDelta0(name.to_string()));
        }
        let mut nm = Namer::new(Some(m), vars);
        return Ok(scheme(name, m, &mut nm));
    }
    let mut nm = Namer::new(None, &[]);
    let mut n = |s: &str| nm.name(s);
    Ok(match name {
        "EmptySet" => {
            let (a, x) = (n("a"), n("x"));
            exists(a.clone(), bforall(x, a, Formula::Bot))
        }
        "Pairing" => {
            let (a, b, y, x) = (n("a"), n("b"), n("y"), n("x"));
            forall(
                a.clone(),
                forall(
                    b.clone(),
                    exists(
                        y.clone(),
                        forall(
                            x.clone(),
                            iff(mem(x.clone(), y), or(eq(x.clone(), a), eq(x, b))),
                        ),
                    ),
                ),
            )
        }
        "Union" => {
            let (a, y, x, u) = (n("a"), n("y"), n("x"), n("u"));
            forall(
                a.clone(),
                exists(
                    y.clone(),
                    forall(
                        x.clone(),
                        iff(
                            mem(x.clone(), y),
                            exists(u.clone(), and(mem(u.clone(), a), mem(x, u))),
                        ),
                    ),
                ),
            )
        }
        "Extensionality" => {
            let (a, b, x) = (n("a"), n("b"), n("x"));
            forall(
                a.clone(),
                forall(
                    b.clone(),
                    imp(
                        forall(x.clone(), iff(mem(x.clone(), a.clone()), mem(x, b.clone()))),
                        eq(a, b),
                    ),
                ),
            )
        }
        "Infinity" => {
            let (x, e, y, s, z) = (n("x"), n("e"), n("y"), n("s"), n("z"));
            exists(
                x.clone(),
                conj([
                    bexists(e.clone(), x.clone(), is_empty(&e)),
                    forall(
                        y.clone(),
                        imp(
                            mem(y.clone(), x.clone()),
                            bexists(s.clone(), x.clone(), is_successor(&s, &y)),
                        ),
                    ),
                    forall(
                        y.clone(),
                        imp(
                            mem(y.clone(), x),
                            or(
                                is_empty(&y),
                                bexists(z.clone(), y.clone(), is_successor(&y, &z)),
                            ),
                        ),
                    ),
                ]),
            )
        }
        "StrongInfinity" => {
            let (a, b, x) = (n("a"), n("b"), n("x"));
            exists(
                a.clone(),
                and(
                    ind(&a),
                    forall(b.clone(), imp(ind(&b), bforall(x.clone(), a, mem(x, b)))),
                ),
            )
        }
        "PowerSet" => {
            let (a, y, z) = (n("a"), n("y"), n("z"));
            forall(
                a.clone(),
                exists(
                    y.clone(),
                    forall(z.clone(), iff(mem(z.clone(), y), subset(&z, &a))),
                ),
            )
        }
        "Exp" => {
            let (x, y, z, f) = (n("x"), n("y"), n("z"), n("f"));
            forall(
                x.clone(),
                forall(
                    y.clone(),
                    exists(
                        z.clone(),
                        forall(f.clone(), iff(mem(f.clone(), z), is_function(&f, &x, &y))),
                    ),
                ),
            )
        }
        "MP" => {
            let (w, t, al, k, p, s, o) =
                (n("w"), n("t"), n("alpha"), n("k"), n("p"), n("s"), n("o"));
            let value_is = |target: fn(&str) -> Formula| {
                bexists(
                    p.clone(),
                    al.clone(),
                    bexists(
                        s.clone(),
                        p.clone(),
                        bexists(o.clone(), s.clone(), and(is_pair(&p, &k, &o), target(&o))),
                    ),
                )
            };
            let body = imp(
                not(bforall(k.clone(), w.clone(), value_is(is_empty))),
                bexists(k.clone(), w.clone(), value_is(is_one)),
            );
            forall(
                w.clone(),
                imp(
                    is_omega(&w),
                    forall(
                        t.clone(),
                        imp(
                            is_two(&t),
                            forall(al.clone(), imp(is_function(&al, &w, &t), body)),
                        ),
                    ),
                ),
            )
        }
        "AC" => {
            let (a, x, y, z, b, z2) = (n("a"), n("x"), n("y"), n("z"), n("b"), n("z2"));
            let disjoint = bforall(
                x.clone(),
                a.clone(),
                bforall(
                    y.clone(),
                    a.clone(),
                    imp(
                        not(eq(x.clone(), y.clone())),
                        bforall(z.clone(), x.clone(), not(mem(z.clone(), y.clone()))),
                    ),
                ),
            );
            let unique = bexists(
                z.clone(),
                b.clone(),
                and(
                    mem(z.clone(), x.clone()),
                    bforall(
                        z2.clone(),
                        b.clone(),
                        imp(mem(z2.clone(), x.clone()), eq(z2, z)),
                    ),
                ),
            );
            forall(
                a.clone(),
                imp(disjoint, exists(b.clone(), bforall(x, a, unique))),
            )
        }
        "Ind" => ind("a"),
        other => return Err(Error::UnknownName(other.to_string())),
    })
}

fn scheme(name: &str, m: &Formula, nm: &mut Namer) -> Formula {
    match name {
        "SetInduction" => {
            let (a, x) = (nm.name("a"), nm.name("x"));
            let phi_x = inst(m, &["x"], &[&x]);
            let phi_a = inst(m, &["x"], &[&a]);
            imp(
                forall(a.clone(), imp(bforall(x, a.clone(), phi_x), phi_a.clone())),
                forall(a, phi_a),
            )
        }
        "D0Separation" => {
            let (a, y, x) = (nm.name("a"), nm.name("y"), nm.name("x"));
            let phi = inst(m, &["x"], &[&x]);
            forall(
                a.clone(),
                exists(
                    y.clone(),
                    forall(x.clone(), iff(mem(x.clone(), y), and(mem(x, a), phi))),
                ),
            )
        }
        "D0Collection" => {
            let (a, x, y, b) = (nm.name("a"), nm.name("x"), nm.name("y"), nm.name("b"));
            let phi = inst(m, &["x", "y"], &[&x, &y]);
            forall(
                a.clone(),
                imp(
                    bforall(x.clone(), a.clone(), exists(y.clone(), phi.clone())),
                    exists(b.clone(), bforall(x, a, bexists(y, b, phi))),
                ),
            )
        }
        "StrongCollection" => {
            let (a, x, y, b) = (nm.name("a"), nm.name("x"), nm.name("y"), nm.name("b"));
            let phi = inst(m, &["x", "y"], &[&x, &y]);
            forall(
                a.clone(),
                imp(
                    bforall(x.clone(), a.clone(), exists(y.clone(), phi.clone())),
                    exists(
                        b.clone(),
                        and(
                            bforall(
                                x.clone(),
                                a.clone(),
                                bexists(y.clone(), b.clone(), phi.clone()),
                            ),
                            bforall(y, b, bexists(x, a, phi)),
                        ),
                    ),
                ),
            )
        }
        "SubsetCollection" => {
            let (a, b, c, u, x, y, d) = (
                nm.name("a"),
                nm.name("b"),
                nm.name("c"),
                nm.name("u"),
                nm.name("x"),
                nm.name("y"),
                nm.name("d"),
            );
            let psi = inst(m, &["x", "y", "u"], &[&x, &y, &u]);
            forall(
                a.clone(),
                forall(
                    b.clone(),
                    exists(
                        c.clone(),
                        forall(
                            u,
                            imp(
                                bforall(x.clone(), a.clone(), bexists(y.clone(), b, psi.clone())),
                                bexists(
                                    d.clone(),
                                    c,
                                    and(
                                        bforall(
                                            x.clone(),
                                            a.clone(),
                                            bexists(y.clone(), d.clone(), psi.clone()),
                                        ),
                                        bforall(y, d, bexists(x, a, psi)),
                                    ),
                                ),
                            ),
                        ),
                    ),
                ),
            )
        }
        _ => unreachable!("not a scheme"),
    }
}
