use std::fmt::Debug;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use milnor_core::freelie::{lyndon_words, parse_lie_expression, witt_dimension};
use milnor_core::milnor::{artin, linking_number, milnor_mu, parse_diagram, parse_index, MorseDiagram};
use milnor_core::nilgrp::{aut_degree, aut_restrict, johnson_kernel_to_sder, sder_to_kernel};
use milnor_core::sder::{derived_series, sder_basis, sder_graded};
use milnor_core::series::{format_word, lcs_weight, magnus, GroupWord};

use crate::report::{int, series_value, Report, Status};
use crate::selftest;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "milnor", version, about = "Exact free Lie rings, special derivations and Milnor invariants of 2-string links")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Run per-degree and per-diagram work on a thread pool.
    #[arg(long, global = true)]
    pub parallel: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Lyndon words of one degree.
    Lyndon {
        #[arg(long, default_value_t = 2)]
        gens: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Dimensions of the free Lie ring in degrees 1..=max-deg.
    Witt {
        #[arg(long, default_value_t = 2)]
        gens: usize,
        #[arg(long = "max-deg")]
        max_deg: usize,
    },
    /// Evaluate a bracket expression such as "[X,[X,Y]] - 2[Y,[X,Y]]".
    Bracket {
        expr: String,
        #[arg(long, default_value_t = 2)]
        gens: usize,
    },
    /// Magnus expansion of a word in x, y.
    Magnus {
        word: String,
        #[arg(long)]
        cap: usize,
    },
    /// Lower central series weight of a word.
    LcsWeight {
        word: String,
        #[arg(long)]
        cap: usize,
    },
    /// Ranks of the special derivation lattices.
    SderDim {
        #[arg(long = "max-deg")]
        max_deg: usize,
        /// Also print basis pairs.
        #[arg(long)]
        basis: bool,
    },
    /// Derived series of the graded special derivations, truncated at `cap`.
    SderDerived {
        #[arg(long, default_value_t = 8)]
        cap: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Artin representation A_n of a diagram.
    Artin {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// A Milnor invariant mu(index; target).
    Milnor {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        index: String,
        #[arg(long)]
        target: usize,
        #[arg(long)]
        cap: usize,
    },
    /// Linking number of a diagram.
    Linking {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Round trip sDer_n -> K_n -> sDer_n for n = 1..=max-level.
    VerifyExact {
        #[arg(long = "max-level", default_value_t = 4)]
        max_level: usize,
    },
    /// Run the acceptance criteria.
    Selftest,
}

/// `Module::Variant` for an error, from its `Debug` form.
pub fn error_kind<E: Debug>(module: &str, e: &E) -> String {
    let dbg = format!("{e:?}");
    let variant: String = dbg.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
    format!("{module}::{variant}")
}

fn domain<E: Debug + std::fmt::Display>(report: &mut Report, module: &str, e: E) {
    report.fail(Status::Error, &error_kind(module, &e), &e.to_string());
}

fn load_diagram(report: &mut Report, path: &Path) -> Option<MorseDiagram> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            report.fail(Status::Usage, "Io", &format!("{}: {e}", path.display()));
            return None;
        }
    };
    match parse_diagram(&text) {
        Ok(d) => Some(d),
        Err(e) => {
            domain(report, "MilnorError", e);
            None
        }
    }
}

fn usage(report: &mut Report, message: &str) {
    report.fail(Status::Usage, "Usage", message);
}

pub fn run(cli: &Cli) -> Report {
    match &cli.command {
        Command::Lyndon { gens, degree } => {
            let mut r = Report::new("lyndon");
            r.input("gens", *gens).input("degree", *degree);
            if *gens == 0 || *degree == 0 {
                usage(&mut r, "gens and degree must be positive");
                return r;
            }
            let b = lyndon_words(*gens, *degree);
            let words: Vec<String> = b.words().iter().map(|w| format_word(w)).collect();
            r.result("count", words.len()).result("words", words);
            r
        }
        Command::Witt { gens, max_deg } => {
            let mut r = Report::new("witt");
            r.input("gens", *gens).input("max_deg", *max_deg);
            if *gens == 0 {
                usage(&mut r, "gens must be positive");
                return r;
            }
            let dims: Vec<usize> = (1..=*max_deg).map(|n| witt_dimension(*gens, n)).collect();
            r.result("dims", dims);
            r
        }
        Command::Bracket { expr, gens } => {
            let mut r = Report::new("bracket");
            r.input("expr", expr.as_str()).input("gens", *gens);
            match parse_lie_expression(expr, *gens) {
                Ok(e) => {
                    let coords: Map<String, Value> =
                        e.coords().iter().map(|(w, c)| (format_word(w), int(c))).collect();
                    r.result("value", e.to_string()).result("degree", e.degree()).result("coords", coords);
                }
                Err(e) => domain(&mut r, "LieError", e),
            }
            r
        }
        Command::Magnus { word, cap } => {
            let mut r = Report::new("magnus");
            r.input("word", word.as_str()).input("cap", *cap);
            match GroupWord::parse(word) {
                Ok(w) => {
                    r.result("series", series_value(&magnus(&w, *cap)));
                }
                Err(e) => domain(&mut r, "SeriesError", e),
            }
            r
        }
        Command::LcsWeight { word, cap } => {
            let mut r = Report::new("lcs-weight");
            r.input("word", word.as_str()).input("cap", *cap);
            match GroupWord::parse(word) {
                Ok(w) => {
                    r.result("weight", lcs_weight(&w, *cap).to_string());
                }
                Err(e) => domain(&mut r, "SeriesError", e),
            }
            r
        }
        Command::SderDim { max_deg, basis } => {
            let mut r = Report::new("sder-dim");
            r.input("max_deg", *max_deg).input("basis", *basis);
            match sder_graded(*max_deg, cli.parallel) {
                Ok(g) => {
                    r.result("dims", g.dims());
                    if *basis {
                        let mut m = Map::new();
                        for d in 1..=*max_deg {
                            let pairs: Vec<Value> = g
                                .derivations(d)
                                .expect("lattice rows are pair coordinates")
                                .iter()
                                .map(|p| json!({ "u": p.u().to_string(), "v": p.v().to_string() }))
                                .collect();
                            m.insert(format!("{d:02}"), Value::Array(pairs));
                        }
                        r.result("basis", m);
                    }
                }
                Err(e) => domain(&mut r, "SderError", e),
            }
            r
        }
        Command::SderDerived { cap, depth } => {
            let mut r = Report::new("sder-derived");
            r.input("cap", *cap).input("depth", *depth);
            match derived_series(*cap, *depth, cli.parallel) {
                Ok(s) => {
                    let dims: Vec<Value> = s.terms.iter().map(|t| json!(t.dims())).collect();
                    let dropped: Vec<Value> = s
                        .dropped
                        .iter()
                        .map(|m| Value::Object(m.iter().map(|(d, c)| (format!("{d:02}"), json!(c))).collect()))
                        .collect();
                    let min: Vec<Value> = s.terms.iter().map(|t| json!(t.min_degree())).collect();
                    r.result("dims_by_depth", dims)
                        .result("min_degree_by_depth", min)
                        .result("dropped_pairs_above_cap", dropped)
                        .result(
                            "statement",
                            "truncated computation: this is evidence about the derived series, not a proof of non-solvability",
                        );
                }
                Err(e) => domain(&mut r, "SderError", e),
            }
            r
        }
        Command::Artin { diagram, level } => {
            let mut r = Report::new("artin");
            r.input("diagram", diagram.display().to_string()).input("level", *level);
            let Some(d) = load_diagram(&mut r, diagram) else { return r };
            if *level == 0 {
                usage(&mut r, "level must be positive");
                return r;
            }
            match artin(&d, *level) {
                Ok(a) => {
                    let lk = aut_restrict(&a, 1).ok().and_then(|a1| a1.linking_integer());
                    r.result("image_x", series_value(a.image_x()))
                        .result("image_y", series_value(a.image_y()))
                        .result("is_identity", a.is_identity())
                        .result("degree", aut_degree(&a).to_string())
                        .result("level_one_integer", lk.as_ref().map_or(Value::Null, int));
                }
                Err(e) => domain(&mut r, "MilnorError", e),
            }
            r
        }
        Command::Milnor { diagram, index, target, cap } => {
            let mut r = Report::new("milnor");
            r.input("diagram", diagram.display().to_string())
                .input("index", index.as_str())
                .input("target", *target)
                .input("cap", *cap);
            let Some(d) = load_diagram(&mut r, diagram) else { return r };
            let idx = match parse_index(index) {
                Ok(i) => i,
                Err(e) => {
                    domain(&mut r, "MilnorError", e);
                    return r;
                }
            };
            match milnor_mu(&d, &idx, *target, *cap) {
                Ok(mu) => {
                    r.result("mu", int(&mu)).result("linking_number", linking_number(&d));
                }
                Err(e) => domain(&mut r, "MilnorError", e),
            }
            r
        }
        Command::Linking { diagram } => {
            let mut r = Report::new("linking");
            r.input("diagram", diagram.display().to_string());
            let Some(d) = load_diagram(&mut r, diagram) else { return r };
            r.result("linking_number", linking_number(&d));
            r
        }
        Command::VerifyExact { max_level } => {
            let mut r = Report::new("verify-exact");
            r.input("max_level", *max_level);
            let mut levels = Map::new();
            let mut all = true;
            for n in 1..=*max_level {
                let basis = match sder_basis(n) {
                    Ok(b) => b,
                    Err(e) => {
                        domain(&mut r, "SderError", e);
                        return r;
                    }
                };
                let mut round_trip = true;
                let mut restricts = true;
                for d in &basis {
                    match sder_to_kernel(d) {
                        Ok(k) => {
                            restricts &= aut_restrict(&k, n).map(|a| a.is_identity()).unwrap_or(false);
                            round_trip &= johnson_kernel_to_sder(&k).map(|j| &j == d).unwrap_or(false);
                        }
                        Err(e) => {
                            domain(&mut r, "NilError", e);
                            return r;
                        }
                    }
                }
                all &= round_trip && restricts;
                levels.insert(
                    format!("{n:02}"),
                    json!({ "basis_size": basis.len(), "round_trip": round_trip, "restricts_to_identity": restricts }),
                );
            }
            r.result("levels", levels).result("exact", all);
            if !all {
                r.fail(Status::Fail, "Check", "exact-sequence round trip failed");
            }
            r
        }
        Command::Selftest => selftest::report(cli.parallel),
    }
}
