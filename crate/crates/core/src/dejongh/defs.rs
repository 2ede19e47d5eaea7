//! Bounded defining formulas for small HF sets.

use std::collections::BTreeSet;

use crate::syntax::{and, bexists, bforall, conj, eq, fresh_name, mem, not, or, top, Formula};

/// A name for a new bound variable that captures nothing in `body_of`.
pub(crate) fn fresh(stem: &str, fixed: &[&str], body_of: &dyn Fn(&str) -> Formula) -> String {
    let mut avoid: BTreeSet<String> = fixed.iter().map(|s| s.to_string()).collect();
    avoid.extend(body_of("#").free_vars());
    fresh_name(stem, &avoid)
}

/// `y` is the von Neumann ordinal `k`.
pub fn num(k: u64, y: &str) -> Formula {
    let z = fresh_name("z", &[y.to_string()].into());
    if k == 0 {
        return bforall(z, y, Formula::Bot);
    }
    let p = fresh_name("p", &[y.to_string(), z.clone()].into());
    bexists(
        p.clone(),
        y,
        conj([
            num(k - 1, &p),
            bforall(
                z.clone(),
                y,
                or(mem(z.clone(), p.clone()), eq(z.clone(), p.clone())),
            ),
            bforall(z.clone(), p.clone(), mem(z, y)),
        ]),
    )
}

/// `m = {y}` for the unique `y` satisfying `pred`.
pub fn singleton_of(m: &str, pred: &dyn Fn(&str) -> Formula) -> Formula {
    let y = fresh("y", &[m], pred);
    let z = fresh_name("z", &[m.to_string(), y.clone()].into());
    bexists(y.clone(), m, and(pred(&y), bforall(z.clone(), m, eq(z, y))))
}

/// `b = {ō_k : k ∈ ks}`.
pub fn ordinal_set(ks: &[u64], b: &str) -> Formula {
    let y = fresh_name("y", &[b.to_string()].into());
    let each = ks.iter().map(|&k| bexists(y.clone(), b, num(k, &y)));
    let only = bforall(
        y.clone(),
        b,
        crate::syntax::disj(ks.iter().map(|&k| num(k, &y))),
    );
    conj(each.chain([only]))
}

/// `z` is a Kuratowski pair `(a, b)` with `body(a, b)`.
pub fn unpack(z: &str, body: &dyn Fn(&str, &str) -> Formula) -> Formula {
    let probe = |x: &str| body(x, "#");
    let a = fresh("a", &[z], &probe);
    let probe_b = |x: &str| body(&a, x);
    let b = fresh("b", &[z, &a], &probe_b);
    let avoid: BTreeSet<String> = [z.to_string(), a.clone(), b.clone()].into();
    let s = fresh_name("s", &avoid);
    let t = fresh_name("t", &avoid);
    bexists(
        s.clone(),
        z,
        bexists(
            t.clone(),
            z,
            bexists(
                a.clone(),
                s,
                bexists(
                    b.clone(),
                    t,
                    and(crate::syntax::axioms::is_pair(z, &a, &b), body(&a, &b)),
                ),
            ),
        ),
    )
}

/// As [`unpack`], for callers that know every name free in `body`: those
/// names and `z` are in `scope`, which `body` receives extended with the
/// new names.
pub(crate) fn unpack_scoped(
    z: &str,
    scope: &BTreeSet<String>,
    body: &dyn Fn(&BTreeSet<String>, &str, &str) -> Formula,
) -> Formula {
    let mut inner = scope.clone();
    inner.insert(z.to_string());
    let a = fresh_name("a", &inner);
    inner.insert(a.clone());
    let b = fresh_name("b", &inner);
    inner.insert(b.clone());
    let s = fresh_name("s", &inner);
    let t = fresh_name("t", &inner);
    let f = body(&inner, &a, &b);
    bexists(
        s.clone(),
        z,
        bexists(
            t.clone(),
            z,
            bexists(
                a.clone(),
                s,
                bexists(
                    b.clone(),
                    t,
                    and(crate::syntax::axioms::is_pair(z, &a, &b), f),
                ),
            ),
        ),
    )
}

/// `rank(x) ≥ n`.
pub fn rank_ge(n: u32, x: &str) -> Formula {
    if n == 0 {
        return top();
    }
    let y = fresh_name("y", &[x.to_string()].into());
    bexists(y.clone(), x, rank_ge(n - 1, &y))
}

/// `rank(x) = n`.
pub fn rank_is(n: u32, x: &str) -> Formula {
    and(rank_ge(n, x), not(rank_ge(n + 1, x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hf::{eval_classical, HfSet, SetAssignment, Universe};

    fn holds(f: &Formula, x: HfSet) -> bool {
        let u = Universe::from_seed([x]);
        let a: SetAssignment = [("x".to_string(), x)].into();
        eval_classical(&u, f, &a).unwrap()
    }

    #[test]
    fn numerals_and_ranks() {
        for k in 0..5u64 {
            for j in 0..5usize {
                assert_eq!(holds(&num(k, "x"), HfSet::ordinal(j)), k as usize == j);
                assert_eq!(
                    holds(&rank_is(k as u32, "x"), HfSet::ordinal(j)),
                    k as usize == j
                );
            }
        }
        let s = HfSet::from_members([HfSet::ordinal(0), HfSet::ordinal(2)]);
        assert!(holds(&ordinal_set(&[0, 2], "x"), s));
        assert!(!holds(&ordinal_set(&[0, 1], "x"), s));
        assert!(holds(
            &singleton_of("x", &|y| num(1, y)),
            HfSet::singleton(HfSet::ordinal(1))
        ));
    }

    #[test]
    fn unpacking_avoids_capture() {
        let p = HfSet::pair(HfSet::ordinal(1), HfSet::ordinal(2));
        let u = Universe::from_seed([p]);
        let f = unpack("x", &|a, b| and(num(1, a), num(2, b)));
        assert!(eval_classical(&u, &f, &[("x".to_string(), p)].into()).unwrap());
        // The body mentions a free `a`; unpacking must not capture it.
        let g = unpack("x", &|_, b| mem("a", b));
        let asg: SetAssignment =
            [("x".to_string(), p), ("a".to_string(), HfSet::ordinal(0))].into();
        assert!(eval_classical(&u, &g, &asg).unwrap());
        let asg: SetAssignment =
            [("x".to_string(), p), ("a".to_string(), HfSet::ordinal(2))].into();
        assert!(!eval_classical(&u, &g, &asg).unwrap());
    }
}
