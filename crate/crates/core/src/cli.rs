//! Command-line front end. Reports are JSON on stdout; the exit code is
//! 0 on success, 1 when a refutation was found, 2 when a verification
//! failed and 3 on bad input.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::dejongh::{self, sweep};
use crate::error::{Error, Result};
use crate::fo::{self, Assignment, FoModel, FoModelSpec};
use crate::frames::{Frame, FrameSpec};
use crate::hf::Universe;
use crate::prop::{self, Decision, PropModel, PropModelSpec};
use crate::set_model::{self, SetKripkeModel, SetModelSpec};
use crate::syntax::{self, axioms, parse, render, Formula, Language};

pub const PASS: i32 = 0;
pub const REFUTED: i32 = 1;
pub const FAILED: i32 = 2;
pub const BAD_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "ikp",
    version,
    about = "Kripke models for intuitionistic logic and set theory"
)]
pub struct Cli {
    /// Seed for randomized sweeps, recorded in every report.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Override the HF size budget (same as IKP_SIZE_BUDGET).
    #[arg(long, global = true)]
    pub size_budget: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Lang {
    Prop,
    Fo,
    Foeq,
    Set,
}

impl From<Lang> for Language {
    fn from(l: Lang) -> Language {
        match l {
            Lang::Prop => Language::Prop,
            Lang::Fo => Language::Fo,
            Lang::Foeq => Language::FoEq,
            Lang::Set => Language::Set,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a formula and print its rendering and JSON syntax tree.
    Parse {
        #[arg(long, value_enum, default_value = "set")]
        lang: Lang,
        formula: String,
    },
    /// Forcing of a propositional formula in a propositional model.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        node: Option<String>,
    },
    /// Forcing of a first-order formula in a first-order model.
    CheckFo {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        node: Option<String>,
        /// Parameters as `x=0,y=1`.
        #[arg(long)]
        assign: Option<String>,
    },
    /// Decide a propositional formula by countermodel search.
    Decide {
        #[arg(long, default_value_t = 6)]
        bound: usize,
        formula: String,
    },
    /// Audit axioms at every node of a set model.
    Audit {
        /// `ikp`, `all`, or a comma-separated list of axiom names.
        #[arg(long, default_value = "ikp")]
        axioms: String,
        #[arg(long)]
        model: PathBuf,
        /// Scheme matrix as `Name=formula`; repeatable.
        #[arg(long)]
        matrix: Vec<String>,
    },
    /// Look for a node that does not force Exp.
    ExpFailure {
        #[arg(long, conflicts_with = "chain")]
        model: Option<PathBuf>,
        /// Use the built-in chain of this length instead of a file.
        #[arg(long)]
        chain: Option<usize>,
    },
    /// Check "at most two objects implies at most one".
    EqualityCollapse {
        #[arg(long, conflicts_with = "two_element")]
        model: Option<PathBuf>,
        /// Evaluate on the one-node model with two distinct elements.
        #[arg(long)]
        two_element: bool,
    },
    /// Translation checks.
    Dejongh {
        #[command(subcommand)]
        which: DejonghCommand,
    },
    /// Frame utilities.
    Frame {
        #[command(subcommand)]
        which: FrameCommand,
    },
}

#[derive(Debug, Subcommand)]
pub enum DejonghCommand {
    /// Propositional letters to button sentences.
    Prop {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Relativized first-order translation into button sentences.
    Relative {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Mimic model of a first-order model.
    Mimic {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Random formulas of the given depth added to the sweep.
        #[arg(long, default_value_t = 100)]
        random: usize,
        /// Check the subformulas of one formula instead of sweeping.
        #[arg(long)]
        formula: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum FrameCommand {
    /// Print a frame (or the frame of a model file) as JSON or DOT.
    Export {
        #[arg(long)]
        frame: PathBuf,
        #[arg(long)]
        dot: bool,
    },
}

/// Exit code and text for stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub output: String,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn envelope(command: &str, seed: u64, verdict: &str, report: impl Serialize) -> Result<String> {
    let v = json!({
        "command": command,
        "seed": seed,
        "verdict": verdict,
        "report": serde_json::to_value(report)?,
    });
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

fn verdict(code: i32) -> &'static str {
    match code {
        PASS => "pass",
        REFUTED => "refuted",
        FAILED => "failed",
        _ => "error",
    }
}

/// SHA-256 of a model's JSON form.
fn spec_hash(spec: &impl Serialize) -> Result<String> {
    let json = serde_json::to_string(spec)?;
    Ok(Sha256::digest(json.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect())
}

fn done(command: &str, seed: u64, code: i32, report: impl Serialize) -> Result<Outcome> {
    Ok(Outcome {
        code,
        output: envelope(command, seed, verdict(code), report)?,
    })
}

/// Members of the named axiom group.
pub fn axiom_group(name: &str) -> Result<Vec<String>> {
    let names: Vec<&str> = match name {
        "ikp" => vec![
            "EmptySet",
            "Pairing",
            "Union",
            "Extensionality",
            "Infinity",
            "SetInduction",
            "D0Separation",
            "D0Collection",
        ],
        "all" => axioms::AXIOM_NAMES.to_vec(),
        list => list
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect(),
    };
    for n in &names {
        if !axioms::AXIOM_NAMES.contains(n) {
            return Err(Error::UnknownName(n.to_string()));
        }
    }
    Ok(names.into_iter().map(str::to_string).collect())
}

/// Matrix used for a scheme when none is given.
pub fn default_matrix(scheme: &str) -> Option<&'static str> {
    Some(match scheme {
        "SetInduction" | "D0Separation" => "exists z in x (z = z)",
        "D0Collection" | "StrongCollection" | "SubsetCollection" => "x in y",
        _ => return None,
    })
}

fn parse_assignment(text: &str) -> Result<Assignment> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|kv| {
            let (k, v) = kv.split_once('=').ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: format!("expected name=value in `{kv}`"),
            })?;
            let v: u32 = v.trim().parse().map_err(|_| Error::Syntax {
                pos: 0,
                msg: format!("`{v}` is not an element id"),
            })?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

fn select_nodes(fr: &Frame, node: &Option<String>) -> Result<Vec<usize>> {
    match node {
        Some(n) => Ok(vec![fr.index_of(n)?]),
        None => Ok((0..fr.len()).collect()),
    }
}

fn run_inner(cli: &Cli) -> Result<Outcome> {
    let seed = cli.seed;
    match &cli.command {
        Command::Parse { lang, formula } => {
            let f = parse(formula, (*lang).into())?;
            let class = syntax::classify(&f).ok().map(|c| format!("{c:?}"));
            done(
                "parse",
                seed,
                PASS,
                json!({ "rendered": render(&f), "class": class, "ast": f }),
            )
        }
        Command::Check {
            model,
            formula,
            node,
        } => {
            let pm = PropModel::from_spec(&read_json::<PropModelSpec>(model)?)?;
            let f = parse(formula, Language::Prop)?;
            let mut rows = Vec::new();
            for v in select_nodes(&pm.frame, node)? {
                let name = pm.frame.name(v);
                rows.push(json!({ "node": name, "forced": prop::force_prop(&pm, name, &f)? }));
            }
            let code = if rows.iter().all(|r| r["forced"] == true) {
                PASS
            } else {
                REFUTED
            };
            let hash = spec_hash(&pm.to_spec())?;
            done(
                "check",
                seed,
                code,
                json!({ "model_hash": hash, "formula": render(&f), "rows": rows }),
            )
        }
        Command::CheckFo {
            model,
            formula,
            node,
            assign,
        } => {
            let m = FoModel::from_spec(&read_json::<FoModelSpec>(model)?)?;
            let lang = if m.has_equality() {
                Language::FoEq
            } else {
                Language::Fo
            };
            let f = parse(formula, lang)?;
            let a = assign
                .as_deref()
                .map(parse_assignment)
                .transpose()?
                .unwrap_or_default();
            if let Some(x) = f.free_vars().into_iter().find(|x| !a.contains_key(x)) {
                return Err(Error::UnassignedVariable(x));
            }
            let mut rows = Vec::new();
            for v in select_nodes(m.frame(), node)? {
                let name = m.frame().name(v);
                if a.values().all(|x| m.domain_of(v).contains(x)) {
                    rows.push(json!({ "node": name, "forced": fo::force_fo(&m, name, &f, &a)? }));
                }
            }
            let code = if rows.iter().all(|r| r["forced"] == true) {
                PASS
            } else {
                REFUTED
            };
            let hash = spec_hash(&m.to_spec())?;
            done(
                "check-fo",
                seed,
                code,
                json!({ "model_hash": hash, "formula": render(&f), "params": a, "rows": rows }),
            )
        }
        Command::Decide { bound, formula } => {
            if *bound == 0 {
                return Err(Error::Unsupported("bound must be positive".into()));
            }
            let f = parse(formula, Language::Prop)?;
            match prop::ipc_decide(&f, *bound)? {
                Decision::Valid { bound } => done(
                    "decide",
                    seed,
                    PASS,
                    json!({ "formula": render(&f), "valid": true, "bound": bound }),
                ),
                Decision::Countermodel { model, node } => done(
                    "decide",
                    seed,
                    REFUTED,
                    json!({ "formula": render(&f), "valid": false, "node": node, "countermodel": model.to_spec() }),
                ),
            }
        }
        Command::Audit {
            axioms: group,
            model,
            matrix,
        } => {
            let m = SetKripkeModel::from_spec(&read_json::<SetModelSpec>(model)?)?;
            let mut given: BTreeMap<String, Formula> = BTreeMap::new();
            for item in matrix {
                let (k, v) = item.split_once('=').ok_or_else(|| Error::Syntax {
                    pos: 0,
                    msg: format!("expected Name=formula in `{item}`"),
                })?;
                given.insert(k.trim().to_string(), parse(v, Language::Set)?);
            }
            let mut reports = Vec::new();
            for name in axiom_group(group)? {
                let mat = match given.get(&name) {
                    Some(f) => Some(f.clone()),
                    None => default_matrix(&name)
                        .map(|s| parse(s, Language::Set))
                        .transpose()?,
                };
                reports.push(set_model::check_axiom(&m, &name, mat.as_ref())?);
            }
            let refuted = reports
                .iter()
                .any(|r| r.status == set_model::AxiomStatus::Checked && !r.forced_everywhere());
            let code = if refuted { REFUTED } else { PASS };
            done(
                "audit",
                seed,
                code,
                json!({ "model_hash": m.fingerprint(), "axioms": reports }),
            )
        }
        Command::ExpFailure { model, chain } => {
            let m = match model {
                Some(p) => SetKripkeModel::from_spec(&read_json::<SetModelSpec>(p)?)?,
                None => set_model::exp_failure_chain(chain.unwrap_or(2))?,
            };
            let w = set_model::exp_failure_witness(&m)?;
            let code = if w.is_some() { REFUTED } else { PASS };
            done(
                "exp-failure",
                seed,
                code,
                json!({ "model_hash": m.fingerprint(), "witness": w }),
            )
        }
        Command::EqualityCollapse { model, two_element } => {
            if *two_element || model.is_none() {
                let m = fo::iqc_countermodel("TwoElementEq")?;
                let f = fo::countermodel_formula("TwoElementEq")?;
                let root = m.frame().name(0).to_string();
                let forced = fo::force_fo(&m, &root, &f, &Assignment::new())?;
                let code = if forced { PASS } else { REFUTED };
                return done(
                    "equality-collapse",
                    seed,
                    code,
                    json!({
                        "model_hash": spec_hash(&m.to_spec())?,
                        "formula": render(&f),
                        "model": m.to_spec(),
                        "node": root,
                        "forced": forced
                    }),
                );
            }
            let m =
                SetKripkeModel::from_spec(&read_json::<SetModelSpec>(model.as_ref().unwrap())?)?;
            let r = set_model::check_equality_collapse(&m)?;
            let code = if r.forced_everywhere() { PASS } else { FAILED };
            done(
                "equality-collapse",
                seed,
                code,
                json!({ "model_hash": m.fingerprint(), "collapse": r }),
            )
        }
        Command::Dejongh { which } => run_dejongh(which, seed),
        Command::Frame {
            which: FrameCommand::Export { frame, dot },
        } => {
            let v: Value = read_json(frame)?;
            let spec: FrameSpec = serde_json::from_value(v.get("frame").cloned().unwrap_or(v))?;
            let fr = Frame::from_spec(&spec)?;
            if *dot {
                Ok(Outcome {
                    code: PASS,
                    output: fr.to_dot(),
                })
            } else {
                Ok(Outcome {
                    code: PASS,
                    output: serde_json::to_string_pretty(&fr.to_spec())? + "\n",
                })
            }
        }
    }
}

fn run_dejongh(which: &DejonghCommand, seed: u64) -> Result<Outcome> {
    match which {
        DejonghCommand::Prop { model, formula } => {
            let pm = PropModel::from_spec(&read_json::<PropModelSpec>(model)?)?;
            let f = parse(formula, Language::Prop)?;
            let r = dejongh::dejongh_prop_check(&pm, &f, &Universe::v(2))?;
            done(
                "dejongh prop",
                seed,
                if r.pass() { PASS } else { FAILED },
                r,
            )
        }
        DejonghCommand::Relative { model, formula } => {
            let m = FoModel::from_spec(&read_json::<FoModelSpec>(model)?)?;
            let f = parse(formula, Language::Fo)?;
            let r = dejongh::dejongh_relative_check(&m, &f)?;
            done(
                "dejongh relative",
                seed,
                if r.pass() { PASS } else { FAILED },
                r,
            )
        }
        DejonghCommand::Mimic {
            model,
            depth,
            random,
            formula,
        } => {
            let m = FoModel::from_spec(&read_json::<FoModelSpec>(model)?)?;
            match formula {
                Some(text) => {
                    let f = parse(text, Language::Fo)?;
                    let r = sweep::mimic_check_formula(&m, &f)?;
                    done(
                        "dejongh mimic",
                        seed,
                        if r.pass() { PASS } else { FAILED },
                        r,
                    )
                }
                None => {
                    let r = sweep::mimic_check(&m, *depth, *random, seed)?;
                    done(
                        "dejongh mimic",
                        seed,
                        if r.pass() { PASS } else { FAILED },
                        r,
                    )
                }
            }
        }
    }
}

/// Run a parsed command line.
pub fn run(cli: &Cli) -> Outcome {
    if let Some(b) = cli.size_budget {
        std::env::set_var("IKP_SIZE_BUDGET", b.to_string());
    }
    match run_inner(cli) {
        Ok(o) => o,
        Err(e) => Outcome {
            code: BAD_INPUT,
            output: json!({ "error": e.to_string() }).to_string() + "\n",
        },
    }
}
