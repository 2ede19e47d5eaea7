mod common;

use std::collections::{BTreeMap, HashMap};

use common::gen::{self, Eq};
use ikp_kripke::dejongh::{Translation, TranslationKind};
use ikp_kripke::fo::{force_fo, pad_domains, Assignment};
use ikp_kripke::frames::{enumerate_valuations, Frame};
use ikp_kripke::hf::{eval_classical, universe_close, ClosureOps, HfSet, SetAssignment, Universe};
use ikp_kripke::prop::{force_prop, frame_validates, PropModel};
use ikp_kripke::set_model::{
    check_axiom, exp_failure_chain, exp_failure_witness, force_set, SetKripkeModel,
};
use ikp_kripke::syntax::coding::{code_seq_u64, decode_seq, godel, ungodel};
use ikp_kripke::syntax::{self as s, is_delta0, parse, render, Formula, Language};
use ikp_kripke::table::TableModel;
use proptest::prelude::*;

fn classical(f: &Formula, val: &BTreeMap<String, bool>) -> bool {
    match f {
        Formula::Bot => false,
        Formula::Letter(p) => val[p],
        Formula::And(a, b) => classical(a, val) && classical(b, val),
        Formula::Or(a, b) => classical(a, val) || classical(b, val),
        Formula::Impl(a, b) => !classical(a, val) || classical(b, val),
        _ => unreachable!(),
    }
}

fn tautology(f: &Formula) -> bool {
    let ls: Vec<String> = f.letters().into_iter().collect();
    (0..1u32 << ls.len()).all(|bits| {
        let val = ls
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), bits >> i & 1 == 1))
            .collect();
        classical(f, &val)
    })
}

fn positive(r: &mut gen::Rng8, letters: &[&str], depth: usize) -> Formula {
    use rand::Rng;
    if depth == 0 || r.gen_bool(0.3) {
        return s::letter(letters[r.gen_range(0..letters.len())]);
    }
    let (a, b) = (
        positive(r, letters, depth - 1),
        positive(r, letters, depth - 1),
    );
    if r.gen_bool(0.5) {
        s::and(a, b)
    } else {
        s::or(a, b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn render_parse_round_trip(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let cases = [
            (gen::prop_formula(&mut r, &["p", "q", "s"], 5), Language::Prop),
            (gen::fo_formula(&mut r, &["x", "y", "z"], 5, false), Language::Fo),
            (gen::fo_formula(&mut r, &["x", "y"], 5, true), Language::FoEq),
            (gen::set_formula(&mut r, &["x", "y", "z"], 5, false), Language::Set),
        ];
        for (f, lang) in cases {
            prop_assert_eq!(parse(&render(&f), lang).unwrap(), f);
        }
    }

    #[test]
    fn delta0_has_no_unbounded_quantifier(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let f = gen::set_formula(&mut r, &["x", "y", "z"], 5, seed % 2 == 0);
        if is_delta0(&f) {
            prop_assert!(!f.normalize().has_unbounded_quantifier());
        }
    }

    #[test]
    fn sequence_coding_round_trips(xs in prop::collection::vec(0u64..40, 0..5)) {
        if let Some(c) = code_seq_u64(&xs) {
            prop_assert_eq!(decode_seq(&c), Some(xs));
        }
    }

    #[test]
    fn godel_round_trips(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let f = gen::prop_formula(&mut r, &["p", "q"], 1);
        prop_assert_eq!(ungodel(&godel(&f)), Some(f));
    }

    #[test]
    fn valuations_persistent_and_up_sets_closed(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let fr = gen::frame(&mut r, 4);
        let letters = vec!["p".to_string(), "q".to_string()];
        for val in enumerate_valuations(&fr, &letters) {
            prop_assert!(PropModel::new(fr.clone(), val).is_ok());
        }
        for v in 0..fr.len() {
            let up = fr.up_mask(v);
            prop_assert!(up >> v & 1 == 1);
            prop_assert!(fr.is_up_closed(up));
        }
    }

    #[test]
    fn prop_persistence(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let m = gen::prop_model(&mut r, &["p", "q", "s"]);
        let f = gen::prop_formula(&mut r, &["p", "q", "s"], 4);
        for v in 0..m.frame.len() {
            if force_prop(&m, m.frame.name(v), &f).unwrap() {
                for &w in m.frame.up(v) {
                    prop_assert!(force_prop(&m, m.frame.name(w), &f).unwrap());
                }
            }
        }
    }

    #[test]
    fn positive_formulas_monotone_in_valuation(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let m = gen::prop_model(&mut r, &["p", "q"]);
        let f = positive(&mut r, &["p", "q"], 4);
        let mut bigger = m.valuation.clone();
        let extra = gen::up_set(&mut r, &m.frame);
        *bigger.get_mut("p").unwrap() |= extra;
        let m2 = PropModel::new(m.frame.clone(), bigger).unwrap();
        for v in 0..m.frame.len() {
            let name = m.frame.name(v);
            prop_assert!(!force_prop(&m, name, &f).unwrap() || force_prop(&m2, name, &f).unwrap());
        }
    }

    #[test]
    fn single_node_frames_are_classical(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let f = gen::prop_formula(&mut r, &["p", "q"], 4);
        prop_assert_eq!(frame_validates(&Frame::chain(1), &f).unwrap(), tautology(&f));
    }
}

#[test]
fn sequence_coding_injective_on_sample() {
    let mut seqs: Vec<Vec<u64>> = vec![vec![]];
    let mut frontier = seqs.clone();
    for _ in 0..4 {
        frontier = frontier
            .iter()
            .flat_map(|s| (0..10).map(move |x| [s.clone(), vec![x]].concat()))
            .collect();
        seqs.extend(frontier.iter().cloned());
    }
    assert_eq!(seqs.len(), 11111);
    let mut seen = HashMap::new();
    for s in &seqs {
        let c = code_seq_u64(s).expect("fits in u64");
        assert_eq!(decode_seq(&c).as_ref(), Some(s));
        assert!(seen.insert(c, s.clone()).is_none(), "collision at {s:?}");
    }
}

fn tarski(m: &common::naive::NaiveFo, f: &Formula, a: &Assignment) -> bool {
    let d = &m.domains[0];
    let with = |x: &str, e: u32| {
        let mut a2 = a.clone();
        a2.insert(x.to_string(), e);
        a2
    };
    match f {
        Formula::Bot => false,
        Formula::Letter(p) => m.rels[p][0].contains(&vec![]),
        Formula::Pred(p, ts) => m.rels[p][0].contains(
            &ts.iter()
                .map(|t| a[t.as_var().unwrap()])
                .collect::<Vec<_>>(),
        ),
        Formula::Eq(x, y) => a[x.as_var().unwrap()] == a[y.as_var().unwrap()],
        Formula::And(p, q) => tarski(m, p, a) && tarski(m, q, a),
        Formula::Or(p, q) => tarski(m, p, a) || tarski(m, q, a),
        Formula::Impl(p, q) => !tarski(m, p, a) || tarski(m, q, a),
        Formula::Exists(x, b) => d.iter().any(|&e| tarski(m, b, &with(x, e))),
        Formula::Forall(x, b) => d.iter().all(|&e| tarski(m, b, &with(x, e))),
        _ => unreachable!(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn fo_persistence(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let eq = [Eq::None, Eq::Identity, Eq::Congruence][(seed % 3) as usize];
        let m = gen::fo_model(&mut r, eq);
        let f = gen::fo_formula(&mut r, &["x", "y"], 4, eq != Eq::None);
        let fr = m.frame();
        for v in 0..fr.len() {
            let a: Assignment = gen::assign(&mut r, &["x", "y"], m.domain_of(v));
            if force_fo(&m, fr.name(v), &f, &a).unwrap() {
                for &w in fr.up(v) {
                    prop_assert!(force_fo(&m, fr.name(w), &f, &a).unwrap());
                }
            }
        }
    }

    #[test]
    fn padding_preserves_forcing(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let m = gen::fo_model(&mut r, Eq::None);
        let f = gen::fo_formula(&mut r, &["x", "y"], 3, false);
        let pad = pad_domains(&m, 1 + (seed % 2) as usize, None).unwrap();
        let fr = m.frame();
        for v in 0..fr.len() {
            for &a in pad.model.domain_of(v) {
                for &b in pad.model.domain_of(v) {
                    let big: Assignment = [("x".to_string(), a), ("y".to_string(), b)].into();
                    let small: Assignment = [("x".to_string(), pad.f[&a]), ("y".to_string(), pad.f[&b])].into();
                    prop_assert_eq!(
                        force_fo(&pad.model, fr.name(v), &f, &big).unwrap(),
                        force_fo(&m, fr.name(v), &f, &small).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn congruent_tuples_agree_on_atoms(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let m = gen::fo_model(&mut r, Eq::Congruence);
        let spec = m.to_spec();
        let cong = spec.congruence.as_ref().unwrap();
        let atoms = [s::pred("P", &["x"]), s::pred("R", &["x", "y"]), s::pred("R", &["y", "x"])];
        for v in 0..m.frame().len() {
            let name = m.frame().name(v);
            for &(a, b) in &cong[name] {
                for &c in m.domain_of(v) {
                    let l: Assignment = [("x".to_string(), a), ("y".to_string(), c)].into();
                    let rr: Assignment = [("x".to_string(), b), ("y".to_string(), c)].into();
                    for atom in &atoms {
                        prop_assert_eq!(force_fo(&m, name, atom, &l).unwrap(), force_fo(&m, name, atom, &rr).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn single_node_fo_is_tarskian(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let mut m = gen::fo_model(&mut r, Eq::Identity);
        while m.frame().len() != 1 {
            m = gen::fo_model(&mut r, Eq::Identity);
        }
        let naive = common::naive::NaiveFo::new(&m.to_spec());
        let f = gen::fo_formula(&mut r, &["x", "y"], 4, true);
        let a: Assignment = gen::assign(&mut r, &["x", "y"], m.domain_of(0));
        prop_assert_eq!(force_fo(&m, m.frame().name(0), &f, &a).unwrap(), tarski(&naive, &f, &a));
    }
}

fn hf_pool() -> Vec<HfSet> {
    let v3 = Universe::v(3).elements().to_vec();
    let mut pool = v3.clone();
    for &a in &v3 {
        for &b in &v3[..2] {
            pool.push(HfSet::pair(a, b));
        }
    }
    pool
}

/// `f^σ` agrees with `σ` on atoms and commutes with every connective and
/// quantifier.
fn homomorphic(t: &Translation, f: &Formula) -> bool {
    let g = t.apply(f).unwrap();
    let sub = |a: &Formula| t.apply(a).unwrap();
    let here = match f {
        Formula::And(a, b) => g == s::and(sub(a), sub(b)),
        Formula::Or(a, b) => g == s::or(sub(a), sub(b)),
        Formula::Impl(a, b) => g == s::imp(sub(a), sub(b)),
        Formula::Exists(x, b) => g == s::exists(x.clone(), sub(b)),
        Formula::Forall(x, b) => g == s::forall(x.clone(), sub(b)),
        Formula::Bot => g == Formula::Bot,
        Formula::Eq(..) => g == *f,
        _ => true,
    };
    here && f
        .subformulas()
        .iter()
        .filter(|h| *h != f)
        .all(|h| homomorphic(t, h))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn extensional_equality_is_identity(i in 0usize..16, j in 0usize..16) {
        let pool = hf_pool();
        let (a, b) = (pool[i % pool.len()], pool[j % pool.len()]);
        let u = Universe::from_seed([a, b]);
        let ext = parse("forall z in x (z in y) & forall z in y (z in x)", Language::Set).unwrap();
        let asg: SetAssignment = [("x".to_string(), a), ("y".to_string(), b)].into();
        prop_assert_eq!(eval_classical(&u, &ext, &asg).unwrap(), a == b);
    }

    #[test]
    fn closure_is_transitive_fixed_point(i in 0usize..16, j in 0usize..16, union in any::<bool>()) {
        let pool = hf_pool();
        let ops = ClosureOps { pairing: true, union, power: false };
        let Ok(u) = universe_close(&[pool[i % pool.len()], pool[j % pool.len()]], ops, 3, 20_000) else {
            return Ok(());
        };
        prop_assert!(u.transitivity_gap().is_none());
        for &a in u.elements() {
            prop_assert!(!union || u.contains(a.union()));
            for &b in u.elements() {
                let p = HfSet::doubleton(a, b);
                prop_assert!(p.rank() > 3 || u.contains(p));
            }
        }
    }

    #[test]
    fn delta0_is_absolute(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let pool = hf_pool();
        let small = Universe::from_seed([pool[seed as usize % pool.len()]]);
        let big = small.union_with(&Universe::from_seed(pool.iter().copied().skip((seed % 7) as usize).step_by(3)));
        let f = gen::set_formula(&mut r, &["x", "y", "z"], 4, true);
        let a: SetAssignment = gen::assign(&mut r, &["x", "y", "z"], small.elements());
        prop_assert_eq!(eval_classical(&small, &f, &a).unwrap(), eval_classical(&big, &f, &a).unwrap());
    }

    #[test]
    fn set_persistence_and_extensionality(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let m = gen::set_model(&mut r);
        let f = gen::set_formula(&mut r, &["x", "y"], 4, false);
        let fr = m.frame();
        for v in 0..fr.len() {
            let a: SetAssignment = gen::assign(&mut r, &["x", "y"], m.universe(v).elements());
            if force_set(&m, fr.name(v), &f, &a).unwrap() {
                for &w in fr.up(v) {
                    prop_assert!(force_set(&m, fr.name(w), &f, &a).unwrap());
                }
            }
        }
        prop_assert!(check_axiom(&m, "Extensionality", None).unwrap().forced_everywhere());
    }

    #[test]
    fn translations_are_homomorphic(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let mut fo = Translation::new(TranslationKind::Fo);
        fo.insert("P", vec!["t0".into()], s::exists("w", s::mem("w", "t0"))).unwrap();
        fo.insert("R", vec!["t0".into(), "t1".into()], s::mem("t0", "t1")).unwrap();
        fo.insert("q", vec![], Formula::Bot).unwrap();
        prop_assert!(homomorphic(&fo, &gen::fo_formula(&mut r, &["x", "y"], 4, false)));
        let mut eq = Translation::new(TranslationKind::Equality);
        eq.insert("P", vec!["t0".into()], s::mem("t0", "t0")).unwrap();
        eq.insert("R", vec!["t0".into(), "t1".into()], s::eq("t0", "t1")).unwrap();
        eq.insert("q", vec![], s::top()).unwrap();
        prop_assert!(homomorphic(&eq, &gen::fo_formula(&mut r, &["x", "y"], 4, true)));
    }

    #[test]
    fn three_variable_tables_match_forcing(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let m = gen::fo_model(&mut r, Eq::None);
        let vars = ["x", "y", "z"];
        let mut t = TableModel::new(&m, &vars).unwrap();
        let fr = m.frame();
        for _ in 0..5 {
            let f = gen::fo_formula(&mut r, &vars, 4, false);
            for v in 0..fr.len() {
                let a: Assignment = gen::assign(&mut r, &vars, m.domain_of(v));
                let h: HashMap<String, u32> = a.clone().into_iter().collect();
                prop_assert_eq!(t.holds(&f, v, &h).unwrap(), force_fo(&m, fr.name(v), &f, &a).unwrap());
            }
        }
    }
}

#[test]
fn exp_witnesses_are_sound() {
    let exp = ikp_kripke::syntax::axioms::axiom("Exp", None).unwrap();
    let mut models: Vec<SetKripkeModel> = (1..=5).map(|n| exp_failure_chain(n).unwrap()).collect();
    let mut r = gen::rng(99);
    models.extend((0..50).map(|_| gen::set_model(&mut r)));
    let mut found = 0;
    for m in &models {
        if let Some(w) = exp_failure_witness(m).unwrap() {
            found += 1;
            assert!(!force_set(m, &w.lower, &exp, &SetAssignment::new()).unwrap());
        }
    }
    assert!(found >= 4);
}
