//! Seeded random models and formulas for the integration tests.

use std::collections::{BTreeMap, BTreeSet};

use ikp_kripke::fo::{FoModel, FoModelSpec};
use ikp_kripke::frames::{Frame, Valuation};
use ikp_kripke::hf::{HfSet, Universe};
use ikp_kripke::prop::PropModel;
use ikp_kripke::set_model::SetKripkeModel;
use ikp_kripke::syntax::{self as s, Formula};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    rand::SeedableRng::seed_from_u64(seed)
}

/// A random order on `1..=max` nodes whose index order is a linear extension.
pub fn frame(r: &mut Rng8, max: usize) -> Frame {
    let n = r.gen_range(1..=max);
    let mut leq = vec![vec![false; n]; n];
    for (i, row) in leq.iter_mut().enumerate() {
        for cell in row.iter_mut().skip(i + 1) {
            *cell = r.gen_bool(0.5);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i][k] && leq[k][j] {
                    leq[i][j] = true;
                }
            }
        }
    }
    let names: Vec<String> = (0..n).map(|i| format!("n{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if leq[i][j] {
                pairs.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Frame::from_leq(names, &pairs).expect("partial order")
}

pub fn up_set(r: &mut Rng8, fr: &Frame) -> u64 {
    let sets = fr.up_sets();
    *sets.choose(r).expect("the empty up-set")
}

pub fn prop_model(r: &mut Rng8, letters: &[&str]) -> PropModel {
    let fr = frame(r, 4);
    let val: Valuation = letters
        .iter()
        .map(|p| (p.to_string(), up_set(r, &fr)))
        .collect();
    PropModel::new(fr, val).expect("persistent valuation")
}

pub fn prop_formula(r: &mut Rng8, letters: &[&str], depth: usize) -> Formula {
    if depth == 0 || r.gen_bool(0.2) {
        return match r.gen_range(0..=letters.len()) {
            0 => Formula::Bot,
            i => s::letter(letters[i - 1]),
        };
    }
    let a = prop_formula(r, letters, depth - 1);
    let b = prop_formula(r, letters, depth - 1);
    match r.gen_range(0..4) {
        0 => s::and(a, b),
        1 => s::or(a, b),
        2 => s::imp(a, b),
        _ => s::not(a),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eq {
    None,
    Identity,
    Congruence,
}

/// Increasing domains, up-closed relations `P/1`, `R/2`, `q/0`, and for
/// `Eq::Congruence` a coarsening congruence respected by the relations.
pub fn fo_model(r: &mut Rng8, eq: Eq) -> FoModel {
    let fr = frame(r, 3);
    let n = fr.len();
    let mut next = 0u32;
    let mut doms: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); n];
    for v in 0..n {
        let below: Vec<u32> = fr.down(v).iter().flat_map(|&u| doms[u].clone()).collect();
        doms[v].extend(below);
        let fresh = if doms[v].is_empty() {
            r.gen_range(1..=2)
        } else {
            r.gen_range(0..=1)
        };
        for _ in 0..fresh {
            doms[v].insert(next);
            next += 1;
        }
    }
    // class representative of each element, per node
    let mut class: Vec<BTreeMap<u32, u32>> = vec![BTreeMap::new(); n];
    for v in 0..n {
        let mut c: BTreeMap<u32, u32> = doms[v].iter().map(|&x| (x, x)).collect();
        let merge = |c: &mut BTreeMap<u32, u32>, a: u32, b: u32| {
            let (ra, rb) = (c[&a], c[&b]);
            for x in c.values_mut() {
                if *x == rb {
                    *x = ra;
                }
            }
        };
        if eq == Eq::Congruence {
            for &u in fr.down(v) {
                for (&x, &y) in &class[u].clone() {
                    merge(&mut c, y, x);
                }
            }
            let d: Vec<u32> = doms[v].iter().copied().collect();
            if d.len() > 1 && r.gen_bool(0.4) {
                let (a, b) = (*d.choose(r).unwrap(), *d.choose(r).unwrap());
                merge(&mut c, a, b);
            }
        }
        class[v] = c;
    }
    let mut rels: BTreeMap<String, Vec<BTreeSet<Vec<u32>>>> = BTreeMap::new();
    for (name, k) in [("P", 1), ("R", 2), ("q", 0)] {
        let mut per: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); n];
        for v in 0..n {
            let d: Vec<u32> = doms[v].iter().copied().collect();
            let mut all = vec![vec![]];
            for _ in 0..k {
                all = all
                    .into_iter()
                    .flat_map(|t: Vec<u32>| d.iter().map(move |&x| [t.clone(), vec![x]].concat()))
                    .collect();
            }
            for t in all {
                if r.gen_bool(0.3) {
                    per[v].insert(t);
                }
            }
        }
        loop {
            let before: usize = per.iter().map(|s| s.len()).sum();
            for v in 0..n {
                for &w in fr.up(v) {
                    let ts = per[v].clone();
                    per[w].extend(ts);
                }
                let ts: Vec<Vec<u32>> = per[v].iter().cloned().collect();
                for t in ts {
                    for i in 0..k {
                        for &y in &doms[v] {
                            if class[v][&y] == class[v][&t[i]] {
                                let mut t2 = t.clone();
                                t2[i] = y;
                                per[v].insert(t2);
                            }
                        }
                    }
                }
            }
            if per.iter().map(|s| s.len()).sum::<usize>() == before {
                break;
            }
        }
        rels.insert(name.to_string(), per);
    }
    let nm = |v: usize| fr.name(v).to_string();
    let spec = FoModelSpec {
        frame: fr.to_spec(),
        domains: (0..n)
            .map(|v| (nm(v), doms[v].iter().copied().collect()))
            .collect(),
        relations: rels
            .into_iter()
            .map(|(p, per)| {
                (
                    p,
                    (0..n)
                        .map(|v| (nm(v), per[v].iter().cloned().collect()))
                        .collect(),
                )
            })
            .collect(),
        congruence: (eq == Eq::Congruence).then(|| {
            (0..n)
                .map(|v| {
                    let c = &class[v];
                    let pairs = c.iter().flat_map(|(&a, &ca)| {
                        c.iter()
                            .filter(move |&(&b, &cb)| a != b && ca == cb)
                            .map(move |(&b, _)| (a, b))
                    });
                    (nm(v), pairs.collect())
                })
                .collect()
        }),
        equality: eq != Eq::None,
    };
    FoModel::from_spec(&spec).expect("generated model is well formed")
}

pub fn fo_formula(r: &mut Rng8, vars: &[&str], depth: usize, eq: bool) -> Formula {
    let v = |r: &mut Rng8| *vars.choose(r).unwrap();
    if depth == 0 || r.gen_bool(0.2) {
        return match r.gen_range(0..if eq { 5 } else { 4 }) {
            0 => Formula::Bot,
            1 => s::letter("q"),
            2 => s::pred("P", &[v(r)]),
            3 => s::pred("R", &[v(r), v(r)]),
            _ => s::eq(v(r), v(r)),
        };
    }
    let a = fo_formula(r, vars, depth - 1, eq);
    match r.gen_range(0..6) {
        0 => s::and(a, fo_formula(r, vars, depth - 1, eq)),
        1 => s::or(a, fo_formula(r, vars, depth - 1, eq)),
        2 => s::imp(a, fo_formula(r, vars, depth - 1, eq)),
        3 => s::not(a),
        4 => s::exists(v(r), a),
        _ => s::forall(v(r), a),
    }
}

/// A small transitive set: the closure of a few members of `V_3` and pairs.
fn seed_universe(r: &mut Rng8) -> Universe {
    let pool: Vec<HfSet> = Universe::v(3).elements().to_vec();
    let mut seed = Vec::new();
    for _ in 0..r.gen_range(1..=3) {
        let x = *pool.choose(r).unwrap();
        seed.push(if r.gen_bool(0.3) {
            HfSet::pair(x, *pool.choose(r).unwrap())
        } else {
            x
        });
    }
    Universe::from_seed(seed)
}

/// Increasing transitive universes over a random order of at most 3 nodes.
pub fn set_model(r: &mut Rng8) -> SetKripkeModel {
    let fr = frame(r, 3);
    let n = fr.len();
    let mut us: Vec<Universe> = Vec::with_capacity(n);
    for v in 0..n {
        let mut u = if r.gen_bool(0.5) || fr.down(v).len() == 1 {
            seed_universe(r)
        } else {
            Universe::from_seed([])
        };
        for &w in fr.down(v) {
            if w != v {
                u = u.union_with(&us[w]);
            }
        }
        us.push(u);
    }
    SetKripkeModel::from_universes(fr, us).expect("monotone universes")
}

/// Set-language formulas over `vars`; only bounded quantifiers when `delta0`.
pub fn set_formula(r: &mut Rng8, vars: &[&str], depth: usize, delta0: bool) -> Formula {
    let v = |r: &mut Rng8| *vars.choose(r).unwrap();
    if depth == 0 || r.gen_bool(0.2) {
        return match r.gen_range(0..5) {
            0 => Formula::Bot,
            1 | 2 => s::mem(v(r), v(r)),
            _ => s::eq(v(r), v(r)),
        };
    }
    let a = set_formula(r, vars, depth - 1, delta0);
    let hi = if delta0 { 6 } else { 8 };
    match r.gen_range(0..hi) {
        0 => s::and(a, set_formula(r, vars, depth - 1, delta0)),
        1 => s::or(a, set_formula(r, vars, depth - 1, delta0)),
        2 => s::imp(a, set_formula(r, vars, depth - 1, delta0)),
        3 => s::not(a),
        4 | 5 => {
            let x = v(r);
            let t = vars.iter().copied().filter(|&t| t != x).collect::<Vec<_>>();
            let t = *t.choose(r).unwrap();
            if r.gen_bool(0.5) {
                s::bexists(x, t, a)
            } else {
                s::bforall(x, t, a)
            }
        }
        6 => s::exists(v(r), a),
        _ => s::forall(v(r), a),
    }
}

/// Values for every name in `vars` drawn from `dom`.
pub fn assign<T: Copy>(r: &mut Rng8, vars: &[&str], dom: &[T]) -> BTreeMap<String, T> {
    vars.iter()
        .map(|x| (x.to_string(), *dom.choose(r).unwrap()))
        .collect()
}
