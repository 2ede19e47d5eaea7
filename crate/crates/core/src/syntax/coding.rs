//! Cantor pairing, length-headed sequence codes and Gödel numbers.
//!
//! `⟨s⟩ = π(len s, body s)` with `body [] = 0`, `body [a] = a` and
//! `body (a : rest) = π(a, body rest)`, where
//! `π(a, b) = (a + b)(a + b + 1)/2 + b`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, ToPrimitive};

use super::formula::{Formula, Term};

/// Unsigned scalar the coding works over.
pub trait Nat:
    Integer + Clone + CheckedAdd + CheckedMul + CheckedSub + FromPrimitive + ToPrimitive
{
}

impl<T> Nat for T where
    T: Integer + Clone + CheckedAdd + CheckedMul + CheckedSub + FromPrimitive + ToPrimitive
{
}

fn two<N: Nat>() -> N {
    N::one() + N::one()
}

/// `w (w + 1) / 2`, or `None` on overflow.
fn triangle<N: Nat>(w: &N) -> Option<N> {
    let w1 = w.checked_add(&N::one())?;
    if w.is_even() {
        (w.clone() / two()).checked_mul(&w1)
    } else {
        w.checked_mul(&(w1 / two()))
    }
}

/// Cantor pairing; `None` when the result does not fit in `N`.
pub fn pair<N: Nat>(a: &N, b: &N) -> Option<N> {
    let s = a.checked_add(b)?;
    triangle(&s)?.checked_add(b)
}

/// Inverse of [`pair`]. Total on `N`.
pub fn unpair<N: Nat>(z: &N) -> (N, N) {
    // Largest w with triangle(w) <= z, by binary search.
    let mut lo = N::zero();
    let mut hi = N::one();
    while matches!(triangle(&hi), Some(t) if t <= *z) {
        hi = match hi.checked_mul(&two()) {
            Some(h) => h,
            None => break,
        };
    }
    while lo < hi {
        let mid = lo.clone() + (hi.clone() - lo.clone() + N::one()) / two();
        match triangle(&mid) {
            Some(t) if t <= *z => lo = mid,
            _ => hi = mid - N::one(),
        }
    }
    let t = triangle(&lo).expect("checked above");
    let b = z.clone() - t;
    let a = lo - b.clone();
    (a, b)
}

/// Length-headed code of a finite sequence.
pub fn code_seq<N: Nat>(s: &[N]) -> Option<N> {
    let body = match s.split_last() {
        None => N::zero(),
        Some((last, init)) => {
            let mut acc = last.clone();
            for a in init.iter().rev() {
                acc = pair(a, &acc)?;
            }
            acc
        }
    };
    pair(&N::from_usize(s.len())?, &body)
}

/// Inverse of [`code_seq`]; `None` on numbers that are not codes.
pub fn decode_seq<N: Nat>(n: &N) -> Option<Vec<N>> {
    let (len, body) = unpair(n);
    let len = len.to_usize()?;
    if len == 0 {
        return body.is_zero().then(Vec::new);
    }
    if len > 1 << 20 {
        return None;
    }
    let mut out = Vec::with_capacity(len);
    let mut rest = body;
    for _ in 1..len {
        let (a, r) = unpair(&rest);
        out.push(a);
        rest = r;
    }
    out.push(rest);
    Some(out)
}

pub fn code_seq_u64(s: &[u64]) -> Option<u64> {
    code_seq(s)
}

pub fn code_seq_big(s: &[BigUint]) -> BigUint {
    code_seq(s).expect("arbitrary precision")
}

fn code_name(s: &str) -> BigUint {
    let bytes: Vec<BigUint> = s.bytes().map(BigUint::from).collect();
    code_seq_big(&bytes)
}

fn decode_name(n: &BigUint) -> Option<String> {
    let bytes: Option<Vec<u8>> = decode_seq(n)?.iter().map(|b| b.to_u8()).collect();
    String::from_utf8(bytes?).ok()
}

fn node(tag: u32, children: Vec<BigUint>) -> BigUint {
    let mut v = vec![BigUint::from(tag)];
    v.extend(children);
    code_seq_big(&v)
}

fn godel_term(t: &Term) -> BigUint {
    match t {
        Term::Var(v) => node(0, vec![code_name(v)]),
        Term::App(f, args) => {
            let mut c = vec![code_name(f)];
            c.extend(args.iter().map(godel_term));
            node(1, c)
        }
    }
}

/// Gödel number of a formula: the sequence code of its tag and children.
pub fn godel(f: &Formula) -> BigUint {
    match f {
        Formula::Bot => node(0, vec![]),
        Formula::Letter(p) => node(1, vec![code_name(p)]),
        Formula::Pred(p, args) => {
            let mut c = vec![code_name(p)];
            c.extend(args.iter().map(godel_term));
            node(2, c)
        }
        Formula::Eq(a, b) => node(3, vec![godel_term(a), godel_term(b)]),
        Formula::Mem(a, b) => node(4, vec![godel_term(a), godel_term(b)]),
        Formula::And(a, b) => node(5, vec![godel(a), godel(b)]),
        Formula::Or(a, b) => node(6, vec![godel(a), godel(b)]),
        Formula::Impl(a, b) => node(7, vec![godel(a), godel(b)]),
        Formula::Exists(x, b) => node(8, vec![code_name(x), godel(b)]),
        Formula::Forall(x, b) => node(9, vec![code_name(x), godel(b)]),
        Formula::BExists(x, t, b) => node(10, vec![code_name(x), godel_term(t), godel(b)]),
        Formula::BForall(x, t, b) => node(11, vec![code_name(x), godel_term(t), godel(b)]),
    }
}

fn ungodel_term(n: &BigUint) -> Option<Term> {
    let parts = decode_seq(n)?;
    let (tag, rest) = parts.split_first()?;
    match (tag.to_u32()?, rest) {
        (0, [v]) => Some(Term::Var(decode_name(v)?)),
        (1, [f, args @ ..]) => Some(Term::App(
            decode_name(f)?,
            args.iter().map(ungodel_term).collect::<Option<_>>()?,
        )),
        _ => None,
    }
}

/// Inverse of [`godel`].
pub fn ungodel(n: &BigUint) -> Option<Formula> {
    let parts = decode_seq(n)?;
    let (tag, rest) = parts.split_first()?;
    let b = |x: &BigUint| ungodel(x).map(Box::new);
    Some(match (tag.to_u32()?, rest) {
        (0, []) => Formula::Bot,
        (1, [p]) => Formula::Letter(decode_name(p)?),
        (2, [p, args @ ..]) => Formula::Pred(
            decode_name(p)?,
            args.iter().map(ungodel_term).collect::<Option<_>>()?,
        ),
        (3, [a, c]) => Formula::Eq(ungodel_term(a)?, ungodel_term(c)?),
        (4, [a, c]) => Formula::Mem(ungodel_term(a)?, ungodel_term(c)?),
        (5, [a, c]) => Formula::And(b(a)?, b(c)?),
        (6, [a, c]) => Formula::Or(b(a)?, b(c)?),
        (7, [a, c]) => Formula::Impl(b(a)?, b(c)?),
        (8, [x, c]) => Formula::Exists(decode_name(x)?, b(c)?),
        (9, [x, c]) => Formula::Forall(decode_name(x)?, b(c)?),
        (10, [x, t, c]) => Formula::BExists(decode_name(x)?, ungodel_term(t)?, b(c)?),
        (11, [x, t, c]) => Formula::BForall(decode_name(x)?, ungodel_term(t)?, b(c)?),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::formula::{letter, pred};
    use num_traits::One;

    /// Position of (a, b) when walking the anti-diagonals a + b = 0, 1, ...
    /// from (s, 0) to (0, s).
    fn diagonal_walk(a: u64, b: u64) -> u64 {
        let mut n = 0;
        for s in 0.. {
            for bb in 0..=s {
                if (s - bb, bb) == (a, b) {
                    return n;
                }
                n += 1;
            }
        }
        unreachable!()
    }

    #[test]
    fn pairing_matches_walk() {
        for a in 0..30u64 {
            for b in 0..30u64 {
                let z = pair(&a, &b).unwrap();
                assert_eq!(z, diagonal_walk(a, b));
                assert_eq!(unpair(&z), (a, b));
            }
        }
    }

    #[test]
    fn worked_code() {
        let inner = diagonal_walk(0, 3);
        assert_eq!(diagonal_walk(2, inner), 75);
        assert_eq!(code_seq_u64(&[0, 3]), Some(75));
        assert_eq!(decode_seq(&75u64), Some(vec![0, 3]));
        assert_eq!(decode_seq(&code_seq_u64(&[]).unwrap()), Some(vec![]));
    }

    #[test]
    fn unpair_is_total_on_u64() {
        for z in [u64::MAX, u64::MAX - 1, 1 << 63, 0, 1] {
            let (a, b) = unpair(&z);
            if let Some(back) = pair(&a, &b) {
                assert_eq!(back, z);
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(pair(&u64::MAX, &1), None);
        let big = BigUint::from(u64::MAX);
        let z = pair(&big, &BigUint::one()).unwrap();
        assert_eq!(unpair(&z), (big, BigUint::one()));
    }

    #[test]
    fn godel_round_trip() {
        let f = pred("P", &["x", "y"]);
        assert_eq!(ungodel(&godel(&f)), Some(f.clone()));
        assert_ne!(godel(&letter("P")), godel(&letter("Q")));
    }
}
