//! Command-line front end and the `fullaudit` pipeline.
//!
//! Exit codes: 0 pass, 1 input error, 2 property violation, 3 internal
//! inconsistency (a negative final charge that no configuration explains,
//! or a ledger that does not balance). Batch runs report the largest code.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::coloring::{check_superextendable, solve, verify, Caps, Coloring};
use crate::configurations::{explain_with, scan, verify_reduction, LemmaId};
use crate::discharging::{discharge, fmt_q, ledger_json};
use crate::generators::{enumerate_plane_graphs, plant_configuration, sample_in_class};
use crate::graph_class::{in_class_abstract, in_class_g};
use crate::plane_graph::{Graph, PlaneGraph};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "plane110", version, about = "Class checks, (1,1,0)-coloring and discharging audits for plane graphs")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for random generation.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Defect caps per color, e.g. 1,1,0.
    #[arg(long, global = true)]
    pub caps: Option<String>,
    /// TOML file with defaults for `json`, `seed` and `caps`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Class membership report for a .pg or adjacency-list file.
    #[command(alias = "check")]
    Classcheck { file: PathBuf },
    /// Find a coloring, honoring precolored vertices.
    Color {
        file: PathBuf,
        /// Extra pins as v=c.
        #[arg(long = "pin")]
        pins: Vec<String>,
    },
    /// Check that every boundary coloring of a cycle superextends.
    Superextend(CycleArg),
    /// Run the discharging rules and print the charge ledger.
    Discharge(CycleArg),
    /// List configuration matches.
    Scan(CycleArg),
    /// Verify the reduction of one scan match by index.
    Oracle {
        #[command(flatten)]
        cycle: CycleArg,
        #[arg(long = "match")]
        index: usize,
    },
    /// Generate instances in .pg format.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Full pipeline over a file or every .pg file in a directory.
    Fullaudit { path: PathBuf },
}

#[derive(Debug, Args)]
pub struct CycleArg {
    pub file: PathBuf,
    /// Outer cycle as comma-separated vertices; defaults to the file's
    /// `outer:` line, else the first facial triangle or 7-cycle.
    #[arg(long)]
    pub c0: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// Every connected plane graph on n vertices.
    Enum {
        #[arg(long)]
        n: usize,
        /// Only graphs in the class.
        #[arg(long)]
        in_class: bool,
    },
    /// One random member of the class.
    Sample {
        #[arg(long)]
        n: usize,
    },
    /// A graph containing the named configuration.
    Plant {
        #[arg(long)]
        lemma: String,
        #[arg(long, default_value_t = 0)]
        padding: usize,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    json: Option<bool>,
    seed: Option<u64>,
    caps: Option<String>,
}

/// Settings after merging the config file under the flags.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub json: bool,
    pub seed: u64,
    pub caps: Caps,
}

/// Result of running a command: text for stdout and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

impl Outcome {
    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome { output: format!("error: {msg}\n"), code: EXIT_INPUT }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let settings = match settings(cli) {
        Ok(s) => s,
        Err(e) => return Outcome::input_error(e),
    };
    match run_command(&cli.command, settings) {
        Ok(o) => o,
        Err(e) => Outcome::input_error(e),
    }
}

fn settings(cli: &Cli) -> Result<Settings, String> {
    let file: ConfigFile = match &cli.config {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
            toml::from_str(&text).map_err(|e| format!("{}: {e}", p.display()))?
        }
        None => ConfigFile::default(),
    };
    let caps_text = cli.caps.clone().or(file.caps).unwrap_or_else(|| "1,1,0".into());
    Ok(Settings {
        json: cli.json || file.json.unwrap_or(false),
        seed: cli.seed.or(file.seed).unwrap_or(0),
        caps: caps_text.parse().map_err(|e| format!("{e}"))?,
    })
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<PlaneGraph, String> {
    PlaneGraph::load(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn render(settings: Settings, value: &Value, text: String) -> String {
    if settings.json {
        serde_json::to_string_pretty(value).unwrap_or_default() + "\n"
    } else {
        text
    }
}

fn run_command(cmd: &Command, s: Settings) -> Result<Outcome, String> {
    match cmd {
        Command::Classcheck { file } => {
            let text = read(file)?;
            let report = match PlaneGraph::load(&text) {
                Ok(g) => in_class_g(&g),
                Err(pg_err) => {
                    let g = Graph::parse_adjacency(&text)
                        .map_err(|e| format!("{}: {pg_err}; as adjacency: {e}", file.display()))?;
                    in_class_abstract(&g)
                }
            };
            let code = if report.in_class { EXIT_PASS } else { EXIT_VIOLATION };
            let value = serde_json::to_value(&report).unwrap_or_default();
            // Class reports are JSON in both modes.
            let output = serde_json::to_string_pretty(&value).unwrap_or_default() + "\n";
            Ok(Outcome { output, code })
        }
        Command::Color { file, pins } => {
            let g = load(file)?;
            let n = g.vertex_count();
            let mut pinned: Vec<(usize, u8)> = g.precolor().to_vec();
            for p in pins {
                pinned.push(parse_pin(p, n)?);
            }
            let col = Coloring::from_pairs(n, &pinned);
            let sol = solve(g.graph(), s.caps, &col, &[]).map_err(|e| e.to_string())?;
            let value = json!({ "sat": sol.coloring().is_some(), "coloring": sol.coloring(), "stats": sol.stats() });
            match sol.coloring() {
                Some(c) => {
                    if !verify(g.graph(), c, s.caps).is_empty() {
                        return Ok(Outcome {
                            output: "solver returned an invalid coloring\n".into(),
                            code: EXIT_INCONSISTENT,
                        });
                    }
                    Ok(Outcome { output: render(s, &value, c.to_lines()), code: EXIT_PASS })
                }
                None => Ok(Outcome { output: render(s, &value, "UNSAT\n".into()), code: EXIT_VIOLATION }),
            }
        }
        Command::Superextend(arg) => {
            let g = load(&arg.file)?;
            let cycle = match &arg.c0 {
                Some(t) => parse_vertices(t, g.vertex_count())?,
                None => {
                    g.face(default_c0(&g).ok_or("no outer cycle given and no facial triangle or 7-cycle")?).walk.clone()
                }
            };
            let r = check_superextendable(g.graph(), &cycle, s.caps).map_err(|e| e.to_string())?;
            let code = if r.passed() { EXIT_PASS } else { EXIT_VIOLATION };
            let value = serde_json::to_value(&r).unwrap_or_default();
            let text = format!(
                "cycle {:?}: {}/{} boundary colorings superextend\n",
                r.cycle, r.extended, r.boundary_colorings
            );
            Ok(Outcome { output: render(s, &value, text), code })
        }
        Command::Discharge(arg) => {
            let g = load(&arg.file)?;
            let c0 = resolve_c0(&g, arg.c0.as_deref())?;
            let (_, ledger, audit) = discharge(&g, c0).map_err(|e| e.to_string())?;
            let code = if audit.zero_sum { EXIT_PASS } else { EXIT_INCONSISTENT };
            let mut text = String::new();
            for t in &ledger.transfers {
                let _ = writeln!(text, "{} -> {} {} ({})", t.from, t.to, fmt_q(&t.amount), t.rule.tag());
            }
            for (e, x) in &ledger.final_charge {
                let _ = writeln!(text, "final {e} {}", fmt_q(x));
            }
            let _ = writeln!(text, "negatives {}", audit.negatives.len());
            Ok(Outcome { output: render(s, &ledger_json(&ledger, &audit), text), code })
        }
        Command::Scan(arg) => {
            let g = load(&arg.file)?;
            let c0 = resolve_c0(&g, arg.c0.as_deref())?;
            let matches = scan(&g, c0);
            let mut text = String::new();
            for (i, m) in matches.iter().enumerate() {
                let roles: Vec<String> = m.vertices.iter().map(|(r, v)| format!("{r}={v}")).collect();
                let _ = writeln!(text, "{i}: {} {}", m.lemma, roles.join(" "));
            }
            Ok(Outcome {
                output: render(s, &serde_json::to_value(&matches).unwrap_or_default(), text),
                code: EXIT_PASS,
            })
        }
        Command::Oracle { cycle, index } => {
            let g = load(&cycle.file)?;
            let c0 = resolve_c0(&g, cycle.c0.as_deref())?;
            let matches = scan(&g, c0);
            let m = matches.get(*index).ok_or_else(|| format!("no match {index}; scan found {}", matches.len()))?;
            let v = verify_reduction(&g, c0, m, s.caps).map_err(|e| e.to_string())?;
            let code = if v.pass && v.sigma_descends && v.class_matches_claim { EXIT_PASS } else { EXIT_VIOLATION };
            let text = format!(
                "{}: {} ({}/{} boundary colorings extend, sigma {} -> {})\n",
                v.lemma,
                if v.pass { "PASS" } else { "FAIL" },
                v.extended,
                v.boundary_colorings,
                v.sigma_before,
                v.sigma_after
            );
            Ok(Outcome { output: render(s, &serde_json::to_value(&v).unwrap_or_default(), text), code })
        }
        Command::Gen(g) => generate(g, s),
        Command::Fullaudit { path } => fullaudit_path(path, s),
    }
}

fn generate(cmd: &GenCommand, s: Settings) -> Result<Outcome, String> {
    let graphs: Vec<PlaneGraph> = match cmd {
        GenCommand::Enum { n, in_class } => enumerate_plane_graphs(*n)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|g| !in_class || in_class_g(g).in_class)
            .collect(),
        GenCommand::Sample { n } => vec![sample_in_class(*n, s.seed).map_err(|e| e.to_string())?],
        GenCommand::Plant { lemma, padding } => {
            let lemma = lemma.parse::<LemmaId>().map_err(|e| e.to_string())?;
            let p = plant_configuration(lemma, *padding).map_err(|e| e.to_string())?;
            let c0 = p.c0;
            vec![p.graph.with_outer_face(c0)]
        }
    };
    let mut out = String::new();
    for (i, g) in graphs.iter().enumerate() {
        if graphs.len() > 1 {
            let _ = writeln!(out, "# graph {i}");
        }
        out.push_str(&g.to_text());
        if i + 1 < graphs.len() {
            out.push('\n');
        }
    }
    Ok(Outcome { output: out, code: EXIT_PASS })
}

fn parse_pin(p: &str, n: usize) -> Result<(usize, u8), String> {
    let (v, c) = p.split_once('=').ok_or_else(|| format!("pin `{p}`: expected v=c"))?;
    let v: usize = v.trim().parse().map_err(|_| format!("pin `{p}`: bad vertex"))?;
    let c: u8 = c.trim().parse().map_err(|_| format!("pin `{p}`: bad color"))?;
    if v >= n || !(1..=3).contains(&c) {
        return Err(format!("pin `{p}` out of range"));
    }
    Ok((v, c))
}

fn parse_vertices(t: &str, n: usize) -> Result<Vec<usize>, String> {
    t.split(',')
        .map(|x| match x.trim().parse::<usize>() {
            Ok(v) if v < n => Ok(v),
            _ => Err(format!("bad vertex `{x}` in `{t}`")),
        })
        .collect()
}

/// The designated outer face, else the lowest-id simple facial triangle,
/// else the lowest-id simple facial 7-cycle.
pub fn default_c0(g: &PlaneGraph) -> Option<usize> {
    if let Some(f) = g.outer_face() {
        return Some(f);
    }
    [3, 7].into_iter().find_map(|k| g.faces().iter().find(|f| f.degree() == k && f.is_simple()).map(|f| f.id))
}

fn resolve_c0(g: &PlaneGraph, c0: Option<&str>) -> Result<usize, String> {
    match c0 {
        Some(t) => {
            let walk = parse_vertices(t, g.vertex_count())?;
            g.find_face(&walk).ok_or_else(|| format!("`{t}` is not a face"))
        }
        None => default_c0(g).ok_or_else(|| "no outer face given and no facial triangle or 7-cycle".into()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub status: Status,
    pub code: i32,
    pub detail: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct FullAudit {
    pub file: Option<String>,
    pub c0: Option<Vec<usize>>,
    pub stages: Vec<Stage>,
    pub exit_code: i32,
}

fn stage(name: &'static str, ok: bool, fail_code: i32, detail: Value) -> Stage {
    Stage { name, status: if ok { Status::Pass } else { Status::Fail }, code: if ok { 0 } else { fail_code }, detail }
}

fn skipped(name: &'static str, why: &str) -> Stage {
    Stage { name, status: Status::Skipped, code: 0, detail: json!({ "reason": why }) }
}

/// Class check, coloring, superextension of `C0`, discharging and
/// coverage of every negative final charge by a configuration match.
pub fn full_audit(g: &PlaneGraph, caps: Caps) -> FullAudit {
    let mut stages = Vec::new();
    let class = in_class_g(g);
    let in_class = class.in_class;
    stages.push(stage("class", in_class, EXIT_VIOLATION, serde_json::to_value(&class).unwrap_or_default()));

    let pins = Coloring::from_pairs(g.vertex_count(), g.precolor());
    match solve(g.graph(), caps, &pins, &[]) {
        Ok(sol) => {
            let valid = sol.coloring().map(|c| verify(g.graph(), c, caps).is_empty());
            let st = match valid {
                Some(true) => stage("color", true, EXIT_VIOLATION, json!({ "sat": true, "stats": sol.stats() })),
                Some(false) => stage("color", false, EXIT_INCONSISTENT, json!({ "sat": true, "round_trip": false })),
                None => stage("color", false, EXIT_VIOLATION, json!({ "sat": false, "stats": sol.stats() })),
            };
            stages.push(st);
        }
        Err(e) => stages.push(stage("color", false, EXIT_VIOLATION, json!({ "error": e.to_string() }))),
    }

    let c0 = default_c0(g).filter(|&f| matches!(g.face(f).degree(), 3 | 7) && g.face(f).is_simple());
    let cycle = c0.map(|f| g.face(f).walk.clone());
    match &cycle {
        Some(walk) => match check_superextendable(g.graph(), walk, caps) {
            Ok(r) => stages.push(stage(
                "superextend",
                r.passed(),
                EXIT_VIOLATION,
                json!({ "boundary_colorings": r.boundary_colorings, "extended": r.extended }),
            )),
            Err(e) => stages.push(stage("superextend", false, EXIT_VIOLATION, json!({ "error": e.to_string() }))),
        },
        None => stages.push(skipped("superextend", "no facial triangle or 7-cycle")),
    }

    match c0.map(|f| (f, discharge(g, f))) {
        Some((f, Ok((_, ledger, audit)))) => {
            let balanced = audit.zero_sum && ledger.initial_sum() == Default::default();
            stages.push(stage(
                "discharge",
                balanced,
                EXIT_INCONSISTENT,
                json!({
                    "initial_sum": fmt_q(&ledger.initial_sum()),
                    "final_sum": fmt_q(&ledger.final_sum()),
                    "transfers": ledger.transfers.len(),
                    "negatives": audit.negatives.len(),
                    "outer_formula_holds": audit.outer.holds,
                }),
            ));
            let matches = scan(g, f);
            let mut uncovered = Vec::new();
            let mut explained = serde_json::Map::new();
            for neg in &audit.negatives {
                let by: Vec<String> = explain_with(&matches, neg.element).iter().map(|m| m.lemma.to_string()).collect();
                if by.is_empty() {
                    uncovered.push(neg.element.to_string());
                }
                explained.insert(neg.element.to_string(), json!(by));
            }
            let detail = json!({ "matches": matches.len(), "explained": explained, "uncovered": uncovered });
            if in_class {
                stages.push(stage("coverage", uncovered.is_empty(), EXIT_INCONSISTENT, detail));
            } else {
                stages.push(Stage { name: "coverage", status: Status::Skipped, code: 0, detail });
            }
        }
        Some((_, Err(e))) => stages.push(stage("discharge", false, EXIT_INPUT, json!({ "error": e.to_string() }))),
        None => {
            stages.push(skipped("discharge", "no facial triangle or 7-cycle"));
            stages.push(skipped("coverage", "no facial triangle or 7-cycle"));
        }
    }
    let exit_code = stages.iter().map(|s| s.code).max().unwrap_or(0);
    FullAudit { file: None, c0: cycle, stages, exit_code }
}

fn audit_file(path: &Path, caps: Caps) -> FullAudit {
    let name = Some(path.display().to_string());
    match load(path) {
        Ok(g) => FullAudit { file: name, ..full_audit(&g, caps) },
        Err(e) => FullAudit {
            file: name,
            c0: None,
            stages: vec![stage("parse", false, EXIT_INPUT, json!({ "error": e }))],
            exit_code: EXIT_INPUT,
        },
    }
}

fn fullaudit_path(path: &Path, s: Settings) -> Result<Outcome, String> {
    let files: Vec<PathBuf> = if path.is_dir() {
        let mut v: Vec<PathBuf> = std::fs::read_dir(path)
            .map_err(|e| format!("{}: {e}", path.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "pg"))
            .collect();
        v.sort();
        v
    } else {
        vec![path.to_path_buf()]
    };
    let reports: Vec<FullAudit> = files.par_iter().map(|f| audit_file(f, s.caps)).collect();
    let code = reports.iter().map(|r| r.exit_code).max().unwrap_or(EXIT_PASS);
    let mut text = String::new();
    for r in &reports {
        let stages: Vec<String> =
            r.stages.iter().map(|st| format!("{}={:?}", st.name, st.status).to_lowercase()).collect();
        let _ = writeln!(text, "{} exit {} {}", r.file.as_deref().unwrap_or("-"), r.exit_code, stages.join(" "));
    }
    let value = if path.is_dir() {
        json!({ "exit_code": code, "files": reports })
    } else {
        serde_json::to_value(&reports[0]).unwrap_or_default()
    };
    Ok(Outcome { output: render(s, &value, text), code })
}
