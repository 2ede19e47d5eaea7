//! Set models that mimic a first-order Kripke model.
//!
//! Each universe holds a tagged encoding of the source model. Node `y`
//! is announced by the button `ψ_{f(y)}`. Sets created at node `y` have
//! ranks in a window reserved for `y`, and a set's rank residue inside
//! its window picks an element of `D_y^*`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::buttons::{
    bin, button_index, button_sentence, button_witness, is_marked_pair, is_marker, marker,
};
use super::defs::{num, rank_ge, rank_is, unpack_scoped};
use super::translation::{params, Translation, TranslationKind};
use crate::error::{Error, Result};
use crate::fo::{pad_domains, FoModel, FoModelSpec};
use crate::frames::Frame;
use crate::hf::{size_budget, HfSet, Universe};
use crate::set_model::SetKripkeModel;
use crate::syntax::axioms::is_pair;
use crate::syntax::{
    and, bexists, bforall, conj, disj, eq, exists, fresh_name, imp, mem, not, or, Formula,
};

/// The source model on a tree, with `D_u^*` nonempty at every node.
#[derive(Debug, Clone)]
pub struct Prepared {
    pub model: FoModel,
    /// Tree node to source node.
    pub nodes: Vec<usize>,
    /// Element of `model` to source element.
    pub elements: BTreeMap<u32, u32>,
    pub parent: Vec<Option<usize>>,
}

fn parents(fr: &Frame) -> Vec<Option<usize>> {
    let mut out = vec![None; fr.len()];
    for (a, b) in fr.covers() {
        out[b] = Some(a);
    }
    out
}

/// Unravel to a tree, then pad so every non-root node adds an element.
pub fn prepare(m: &FoModel) -> Result<Prepared> {
    if m.has_equality() {
        return Err(Error::Unsupported(
            "mimic models need an equality-free model".into(),
        ));
    }
    let fr = m.frame();
    let root = fr
        .root()
        .ok_or_else(|| Error::InvalidModel("mimic models need a rooted frame".into()))?;
    let (tree, nodes) = if fr.is_tree() {
        (fr.clone(), (0..fr.len()).collect::<Vec<_>>())
    } else {
        fr.unravel(root)
    };
    let tree_model = if fr.is_tree() {
        m.clone()
    } else {
        let name = |t: usize| tree.name(t).to_string();
        let spec = FoModelSpec {
            frame: tree.to_spec(),
            domains: (0..tree.len())
                .map(|t| (name(t), m.domain_of(nodes[t]).to_vec()))
                .collect(),
            relations: m
                .relations()
                .into_iter()
                .map(|(r, _)| {
                    (
                        r.clone(),
                        (0..tree.len())
                            .map(|t| (name(t), m.tuples(&r, nodes[t])))
                            .collect(),
                    )
                })
                .collect(),
            ..Default::default()
        };
        FoModel::from_spec(&spec)?
    };
    let parent = parents(&tree);
    let troot = tree.root().expect("unravelling is rooted");
    if tree_model.domain_of(troot).is_empty() {
        return Err(Error::InvalidModel(
            "mimic models need a nonempty root domain".into(),
        ));
    }
    let empty: Vec<usize> = (0..tree.len())
        .filter(|&u| match parent[u] {
            Some(p) => tree_model.domain_of(u) == tree_model.domain_of(p),
            None => false,
        })
        .collect();
    let (model, elements) = if empty.is_empty() {
        let ids = tree_model.elements().into_iter().map(|x| (x, x)).collect();
        (tree_model, ids)
    } else {
        let p = pad_domains(&tree_model, 1, Some(&empty))?;
        (p.model, p.f)
    };
    Ok(Prepared {
        model,
        nodes,
        elements,
        parent,
    })
}

/// `(symbol index, [(r_i, u_i)])`: one true atom, arguments by birth node and
/// position in its fresh list.
pub type TableRow = (usize, Vec<(usize, usize)>);

/// The tagged pair `⟨T, ⟨K, ⟨≤, t⟩⟩⟩` describing a prepared model.
#[derive(Debug, Clone)]
pub struct CodedModel {
    pub prepared: Prepared,
    pub symbols: Vec<(String, usize)>,
    /// `f(y)`, injective and at least 2.
    pub code: Vec<u64>,
    /// `f_u`: the sorted elements of `D_u^*`.
    pub fresh: Vec<Vec<u32>>,
    /// Per node, the rows `(symbol index, [(r_i, u_i)])` of true atoms.
    pub table: Vec<Vec<TableRow>>,
    pub tag: HfSet,
    pub encoding: HfSet,
}

pub fn tag() -> HfSet {
    HfSet::doubleton(HfSet::EMPTY, marker())
}

fn ord(k: usize) -> HfSet {
    HfSet::ordinal(k)
}

/// Right-nested tuple `⟨a_0, ⟨a_1, … ⟨a_{n-1}, ∅⟩⟩⟩`.
fn tuple(items: &[HfSet]) -> HfSet {
    items
        .iter()
        .rev()
        .fold(HfSet::EMPTY, |acc, &x| HfSet::pair(x, acc))
}

impl CodedModel {
    pub fn frame(&self) -> &Frame {
        self.prepared.model.frame()
    }

    /// Ancestors of `v` from the root down, `v` included.
    pub fn path(&self, v: usize) -> Vec<usize> {
        let mut p = vec![v];
        while let Some(u) = self.prepared.parent[*p.last().unwrap()] {
            p.push(u);
        }
        p.reverse();
        p
    }

    /// The node on the path to `v` where `d` first appears.
    pub fn birth_of(&self, v: usize, d: u32) -> Option<usize> {
        self.path(v)
            .into_iter()
            .find(|&u| self.fresh[u].binary_search(&d).is_ok())
    }

    pub fn decode(&self, r: usize, u: usize) -> Option<u32> {
        self.fresh[u].get(r).copied()
    }
}

pub fn encode_coded_model(m: &FoModel) -> Result<CodedModel> {
    encode_with(m, &m.relations())
}

/// Encode with an explicit symbol list; the index of a symbol in the list
/// is its code.
pub fn encode_with(m: &FoModel, symbols: &[(String, usize)]) -> Result<CodedModel> {
    let prepared = prepare(m)?;
    let pm = &prepared.model;
    let fr = pm.frame();
    // The marker is the pair ⟨ō_1, ō_1⟩, so node codes start at 2.
    let code: Vec<u64> = (0..fr.len()).map(|y| y as u64 + 2).collect();
    let fresh: Vec<Vec<u32>> = (0..fr.len())
        .map(|u| {
            let old: BTreeSet<u32> = prepared.parent[u]
                .map(|p| pm.domain_of(p).iter().copied().collect())
                .unwrap_or_default();
            pm.domain_of(u)
                .iter()
                .copied()
                .filter(|d| !old.contains(d))
                .collect()
        })
        .collect();
    let mut coded = CodedModel {
        prepared: prepared.clone(),
        symbols: symbols.to_vec(),
        code,
        fresh,
        table: Vec::new(),
        tag: tag(),
        encoding: HfSet::EMPTY,
    };
    let mut table = Vec::new();
    for w in 0..fr.len() {
        let mut rows = Vec::new();
        for (i, (r, _)) in symbols.iter().enumerate() {
            for t in pm.tuples(r, w) {
                let enc = t
                    .iter()
                    .map(|&d| {
                        let u = coded.birth_of(w, d).expect("tuple inside the domain");
                        (coded.fresh[u].binary_search(&d).unwrap(), u)
                    })
                    .collect();
                rows.push((i, enc));
            }
        }
        rows.sort();
        table.push(rows);
    }
    coded.table = table;
    coded.encoding = coded.build_encoding();
    Ok(coded)
}

impl CodedModel {
    fn node_set(&self, y: usize) -> HfSet {
        ord(self.code[y] as usize)
    }

    fn build_encoding(&self) -> HfSet {
        let fr = self.frame();
        let k = HfSet::from_members((0..fr.len()).map(|y| self.node_set(y)));
        let leq = HfSet::from_members(
            (0..fr.len())
                .flat_map(|a| fr.up(a).iter().map(move |&b| (a, b)))
                .map(|(a, b)| HfSet::pair(self.node_set(a), self.node_set(b))),
        );
        let rows = HfSet::from_members(self.table.iter().enumerate().flat_map(|(w, rows)| {
            rows.iter().map(move |(i, enc)| {
                let items: Vec<HfSet> = enc
                    .iter()
                    .map(|&(r, u)| HfSet::pair(ord(r), self.node_set(u)))
                    .collect();
                HfSet::pair(self.node_set(w), HfSet::pair(ord(*i), tuple(&items)))
            })
        }));
        HfSet::pair(self.tag, HfSet::pair(k, HfSet::pair(leq, rows)))
    }
}

/// Where a set of `ℳ_v` was born and which element it stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MimicEntry {
    pub birth: usize,
    pub residue: usize,
    /// The source element `g_v(x)`.
    pub element: u32,
}

#[derive(Debug, Clone)]
pub struct MimicMaps {
    /// Rank window `[B_u, E_u)` of each node.
    pub window: Vec<(u32, u32)>,
    /// `ℳ_u^*`.
    pub fresh_sets: Vec<Vec<HfSet>>,
    /// Per node, set id to entry.
    pub g: Vec<BTreeMap<u32, MimicEntry>>,
}

impl MimicMaps {
    pub fn element(&self, v: usize, x: u32) -> Option<u32> {
        self.g[v].get(&x).map(|e| e.element)
    }
}

#[derive(Debug, Clone)]
pub struct Mimic {
    pub coded: CodedModel,
    pub model: SetKripkeModel,
    pub maps: MimicMaps,
}

impl Mimic {
    /// Source node for a node of the mimic model.
    pub fn source_node(&self, t: usize) -> usize {
        self.coded.prepared.nodes[t]
    }
}

const RANK_CAP: u32 = 400;

pub fn mimic_build(m: &FoModel) -> Result<Mimic> {
    mimic_build_with(m, &m.relations())
}

pub fn mimic_build_with(m: &FoModel, symbols: &[(String, usize)]) -> Result<Mimic> {
    let coded = encode_with(m, symbols)?;
    let fr = coded.frame().clone();
    let n = fr.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| coded.path(v).len());
    let root = order[0];
    let widest = coded.fresh.iter().map(Vec::len).max().unwrap_or(1);
    let mut seed = vec![
        coded.encoding,
        ord(widest.max(n + 1)),
        HfSet::singleton(marker()),
        button_witness(coded.code[root], HfSet::EMPTY),
    ];
    seed.extend(coded.code.iter().map(|&c| HfSet::singleton(bin(c))));
    let mut universes: Vec<Option<Universe>> = vec![None; n];
    let mut window = vec![(0, 0); n];
    let mut fresh_sets = vec![Vec::new(); n];
    let u0 = Universe::from_seed(seed);
    window[root] = (0, u0.max_rank() + 1);
    fresh_sets[root] = u0.elements().to_vec();
    universes[root] = Some(u0);
    let mut total = 0;
    for &w in &order[1..] {
        let p = coded.prepared.parent[w].expect("non-root node has a parent");
        let up = universes[p].clone().expect("parents first");
        let base = window[p].1;
        let width = coded.fresh[w].len().max(5) as u32;
        if base + width > RANK_CAP {
            return Err(Error::Budget {
                budget: RANK_CAP as usize,
            });
        }
        let top = up
            .elements()
            .iter()
            .copied()
            .filter(|x| x.rank() == base - 1)
            .min_by(|a, b| a.cmp_structural(*b))
            .expect("a set of the top rank exists");
        let mut chain = vec![HfSet::singleton(top)];
        while chain.len() < width as usize {
            chain.push(HfSet::singleton(*chain.last().unwrap()));
        }
        let button = button_witness(coded.code[w], chain[0]);
        let uw = Universe::from_seed(
            up.elements()
                .iter()
                .copied()
                .chain([*chain.last().unwrap(), button]),
        );
        let new: Vec<HfSet> = uw
            .elements()
            .iter()
            .copied()
            .filter(|&x| !up.contains(x))
            .collect();
        if let Some(x) = new
            .iter()
            .find(|x| x.rank() < base || x.rank() >= base + width)
        {
            return Err(Error::InvalidModel(format!(
                "set {x} escapes the rank window of {}",
                fr.name(w)
            )));
        }
        window[w] = (base, base + width);
        fresh_sets[w] = new;
        total += uw.len();
        if total > size_budget() {
            return Err(Error::Budget {
                budget: size_budget(),
            });
        }
        universes[w] = Some(uw);
    }
    let universes: Vec<Universe> = universes
        .into_iter()
        .map(|u| u.expect("every node built"))
        .collect();
    let mut g = Vec::with_capacity(n);
    for (v, uv) in universes.iter().enumerate() {
        let path = coded.path(v);
        let mut map = BTreeMap::new();
        for &x in uv.elements() {
            let r = x.rank();
            let u = *path
                .iter()
                .find(|&&u| r < window[u].1)
                .expect("windows cover every rank");
            let residue = ((r - window[u].0) as usize) % coded.fresh[u].len();
            let element = coded.prepared.elements[&coded.fresh[u][residue]];
            map.insert(
                x.id(),
                MimicEntry {
                    birth: u,
                    residue,
                    element,
                },
            );
        }
        g.push(map);
    }
    let maps = MimicMaps {
        window,
        fresh_sets,
        g,
    };
    validate(&coded, &universes, &maps)?;
    let model = SetKripkeModel::from_universes(fr, universes)?;
    Ok(Mimic { coded, model, maps })
}

fn validate(coded: &CodedModel, universes: &[Universe], maps: &MimicMaps) -> Result<()> {
    let fr = coded.frame();
    for (v, u) in universes.iter().enumerate() {
        let tagged: Vec<HfSet> = u
            .elements()
            .iter()
            .copied()
            .filter(|x| x.unpair().is_some_and(|(a, _)| a == coded.tag))
            .collect();
        if tagged != [coded.encoding] {
            return Err(Error::InvalidModel(format!(
                "tag collision at {}: {} tagged sets",
                fr.name(v),
                tagged.len()
            )));
        }
        let pressed: BTreeSet<u64> = u
            .elements()
            .iter()
            .copied()
            .filter(|&x| is_marked_pair(x))
            .filter_map(button_index)
            .collect();
        let want: BTreeSet<u64> = coded.path(v).iter().map(|&y| coded.code[y]).collect();
        let marked = u.elements().iter().filter(|&&x| is_marked_pair(x)).count();
        if pressed != want || marked != want.len() {
            return Err(Error::InvalidModel(format!(
                "unexpected button sets at {}: {pressed:?} vs {want:?}, {marked}",
                fr.name(v)
            )));
        }
        let image: BTreeSet<u32> = maps.g[v].values().map(|e| e.element).collect();
        let target: BTreeSet<u32> = coded
            .prepared
            .model
            .domain_of(v)
            .iter()
            .map(|d| coded.prepared.elements[d])
            .collect();
        if image != target {
            return Err(Error::InvalidModel(format!(
                "g is not onto the domain at {}",
                fr.name(v)
            )));
        }
    }
    Ok(())
}

fn avoid(names: &[&str]) -> BTreeSet<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `t = {∅, M}`.
fn is_tag(t: &str) -> Formula {
    let a = fresh_name("a", &avoid(&[t]));
    let b = fresh_name("b", &avoid(&[t, &a]));
    let z = fresh_name("z", &avoid(&[t, &a, &b]));
    bexists(
        a.clone(),
        t,
        bexists(
            b.clone(),
            t,
            conj([
                num(0, &a),
                is_marker(&b),
                bforall(z.clone(), t, or(eq(z.clone(), a.clone()), eq(z, b.clone()))),
            ]),
        ),
    )
}

type PartsBody<'a> = dyn Fn(&BTreeSet<String>, &str, &str, &str) -> Formula + 'a;

/// `c` is the coded model with parts `k`, `l` and `tab`.
fn coded(c: &str, scope: &BTreeSet<String>, body: &PartsBody) -> Formula {
    unpack_scoped(c, scope, &|sc, t, rest| {
        and(
            is_tag(t),
            unpack_scoped(rest, sc, &|sc, k, rest2| {
                unpack_scoped(rest2, sc, &|sc, l, tab| body(sc, k, l, tab))
            }),
        )
    })
}

impl Mimic {
    fn codes(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.coded.code.iter().copied().enumerate()
    }

    /// Node `w` lies below the current node.
    pub fn passed(&self, w: &str) -> Formula {
        disj(
            self.codes()
                .map(|(_, c)| and(num(c, w), button_sentence(c))),
        )
    }

    /// `y` lies below the current node and `x ∈ ℳ_y`.
    pub fn exists_in(&self, x: &str, y: &str) -> Formula {
        disj(self.codes().map(|(u, c)| {
            conj([
                num(c, y),
                button_sentence(c),
                not(rank_ge(self.maps.window[u].1, x)),
            ])
        }))
    }

    fn less(l: &str, u: &str, y: &str) -> Formula {
        let p = fresh_name("p", &avoid(&[l, u, y]));
        and(bexists(p.clone(), l, is_pair(&p, u, y)), not(eq(u, y)))
    }

    /// `y` lies below the current node and `x ∈ ℳ_y^*`, reading the order
    /// from the parts `k`, `l` of the coded model.
    pub fn birth_in(&self, x: &str, y: &str, k: &str, l: &str) -> Formula {
        let u = fresh_name("u", &avoid(&[x, y, k, l]));
        conj([
            mem(y, k),
            self.exists_in(x, y),
            bforall(
                u.clone(),
                k,
                imp(Self::less(l, &u, y), not(self.exists_in(x, &u))),
            ),
        ])
    }

    /// `φ_birth(x, y)` with the coded model found in the universe.
    pub fn birth(&self, x: &str, y: &str) -> Formula {
        let scope = avoid(&[x, y]);
        let c = fresh_name("c", &scope);
        exists(
            c.clone(),
            coded(&c, &scope, &|_, k, l, _| self.birth_in(x, y, k, l)),
        )
    }

    /// If `x` was born at `u`, its rank residue there is `r`.
    pub fn residue(&self, x: &str, u: &str, r: &str) -> Formula {
        disj(self.codes().map(|(y, c)| {
            let (b, e) = self.maps.window[y];
            let n = self.coded.fresh[y].len() as u32;
            let cases = (0..n.min(e - b)).map(|j| {
                let ranks = (b..e)
                    .filter(|rho| (rho - b) % n == j)
                    .map(|rho| rank_is(rho, x));
                and(num(j as u64, r), disj(ranks))
            });
            and(num(c, u), disj(cases))
        }))
    }

    fn tuple_match(
        &self,
        tup: &str,
        xs: &[String],
        k: &str,
        l: &str,
        scope: &BTreeSet<String>,
    ) -> Formula {
        let Some((x, rest)) = xs.split_first() else {
            return num(0, tup);
        };
        unpack_scoped(tup, scope, &|sc, e, tail| {
            and(
                unpack_scoped(e, sc, &|_, r, u| {
                    and(self.birth_in(x, u, k, l), self.residue(x, u, r))
                }),
                self.tuple_match(tail, rest, k, l, sc),
            )
        })
    }

    /// `φ_P(x̄)` for the symbol with index `i`.
    pub fn atom(&self, i: usize, xs: &[String]) -> Formula {
        let names: Vec<&str> = xs.iter().map(String::as_str).collect();
        let scope = avoid(&names);
        let c = fresh_name("c", &scope);
        exists(
            c.clone(),
            coded(&c, &scope, &|sc, k, l, tab| {
                let mut sc = sc.clone();
                let w = fresh_name("w", &sc);
                sc.insert(w.clone());
                let row = fresh_name("row", &sc);
                sc.insert(row.clone());
                let body = unpack_scoped(&row, &sc, &|sc, w2, rest| {
                    and(
                        eq(w2, w.as_str()),
                        unpack_scoped(rest, sc, &|sc, p, tup| {
                            and(num(i as u64, p), self.tuple_match(tup, xs, k, l, sc))
                        }),
                    )
                });
                bexists(
                    w.clone(),
                    k,
                    and(self.passed(&w), bexists(row.clone(), tab, body)),
                )
            }),
        )
    }

    /// `τ`: each symbol to its `φ_P`.
    pub fn translation(&self) -> Result<Translation> {
        let mut t = Translation::new(TranslationKind::Fo);
        for (i, (s, n)) in self.coded.symbols.iter().enumerate() {
            let ps = params(*n);
            t.insert(s, ps.clone(), self.atom(i, &ps))?;
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Evaluator;
    use crate::fo::{force_fo, iqc_countermodel, Assignment};
    use crate::syntax::pred;

    fn one_node() -> FoModel {
        let spec = FoModelSpec {
            frame: crate::frames::FrameSpec {
                nodes: vec!["r".into()],
                ..Default::default()
            },
            domains: [("r".to_string(), vec![0, 1])].into(),
            relations: [("P".to_string(), [("r".to_string(), vec![vec![1]])].into())].into(),
            ..Default::default()
        };
        FoModel::from_spec(&spec).unwrap()
    }

    #[test]
    fn coded_table() {
        let c = encode_coded_model(&one_node()).unwrap();
        assert_eq!(c.table, vec![vec![(0, vec![(1, 0)])]]);
        assert_eq!(c.decode(1, 0), Some(1));
        let cd = iqc_countermodel("CD").unwrap();
        let c = encode_coded_model(&cd).unwrap();
        let codes: BTreeSet<u64> = c.code.iter().copied().collect();
        assert_eq!(codes.len(), c.code.len());
        assert!(!codes.contains(&0));
        for v in 0..c.frame().len() {
            for (i, enc) in &c.table[v] {
                let d: Vec<u32> = enc.iter().map(|&(r, u)| c.decode(r, u).unwrap()).collect();
                assert!(c.prepared.model.tuples(&c.symbols[*i].0, v).contains(&d));
            }
        }
    }

    #[test]
    fn maps_and_builders() {
        for m in [
            one_node(),
            iqc_countermodel("CD").unwrap(),
            iqc_countermodel("DNS").unwrap(),
        ] {
            let mm = mimic_build(&m).unwrap();
            let fr = mm.model.frame().clone();
            for v in 0..fr.len() {
                let image: BTreeSet<u32> = mm.maps.g[v].values().map(|e| e.element).collect();
                let want: BTreeSet<u32> = m.domain_of(mm.source_node(v)).iter().copied().collect();
                assert_eq!(image, want);
            }
            let mut passed = Evaluator::new(&mm.model, &mm.passed("w")).unwrap();
            for v in 0..fr.len() {
                for w in 0..fr.len() {
                    let a = [(
                        "w".to_string(),
                        HfSet::ordinal(mm.coded.code[w] as usize).id(),
                    )]
                    .into();
                    assert_eq!(passed.force(v, &a).unwrap(), fr.leq(w, v), "{v} {w}");
                }
            }
            let mut birth = Evaluator::new(&mm.model, &mm.birth("x", "y")).unwrap();
            let v = fr.len() - 1;
            for (&x, e) in &mm.maps.g[v] {
                for y in 0..fr.len() {
                    let a = [
                        ("x".to_string(), x),
                        (
                            "y".to_string(),
                            HfSet::ordinal(mm.coded.code[y] as usize).id(),
                        ),
                    ]
                    .into();
                    assert_eq!(birth.force(v, &a).unwrap(), e.birth == y);
                }
            }
            for (i, (s, n)) in mm.coded.symbols.iter().enumerate() {
                let xs = params(*n);
                let mut ev = Evaluator::new(&mm.model, &mm.atom(i, &xs)).unwrap();
                let names: Vec<&str> = xs.iter().map(String::as_str).collect();
                let f = if *n == 0 {
                    Formula::Letter(s.clone())
                } else {
                    pred(s.as_str(), &names)
                };
                for v in 0..fr.len() {
                    let ids: Vec<u32> = mm
                        .model
                        .universe(v)
                        .elements()
                        .iter()
                        .map(|x| x.id())
                        .collect();
                    crate::fo::tuples_over(&ids, *n, &mut |t| {
                        let a: BTreeMap<String, u32> =
                            xs.iter().cloned().zip(t.iter().copied()).collect();
                        let src: Assignment = xs
                            .iter()
                            .cloned()
                            .zip(t.iter().map(|&x| mm.maps.g[v][&x].element))
                            .collect();
                        let want =
                            force_fo(&m, m.frame().name(mm.source_node(v)), &f, &src).unwrap();
                        assert_eq!(ev.force(v, &a).unwrap(), want, "{s} at {v}");
                    });
                }
            }
        }
    }
}
