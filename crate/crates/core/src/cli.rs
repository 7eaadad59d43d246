//! The `wordsym` command line.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 bad input or spec, 3 the
//! prefix could not certify the requested lengths, 4 a symmetry hypothesis
//! failed (e.g. the language is not closed under a group element).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::factors::{stabilize_with, FactorIndex, StabilizeOptions, DEFAULT_MAX_PREFIX};
use crate::generators::WordSpec;
use crate::graph::{build_gamma, export_dot, g_richness_report_on, RichnessVerdict};
use crate::group::SymmetryGroup;
use crate::palindromics::{word_defect, DefectVerdict};
use crate::repetitions::{
    find_overlaps, resume_search, search_squarefree_rich, SearchResult, DEFAULT_NODE_BUDGET,
};
use crate::symmetry::{parse_symmetries, Symmetry, SymmetryTerm};
use crate::word::format_letters;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

const SPEC_HELP: &str = "Word specs: tm, fib, example62, champernowne, tbm:B,M, periodic:WORD, \
literal:WORD, fixpoint:FILE:SEED. A substitution FILE has lines `0 -> 01`.";

const GROUP_HELP: &str = "Group specs are `;`-separated generators: R (reversal), Id, \
a:0>1,1>0 (antimorphism), m:2>3,3>2 (morphism). The generated group is used.";

#[derive(Parser, Debug)]
#[command(
    name = "wordsym",
    version,
    about = "Symmetries, palindromes and complexity of infinite words"
)]
#[command(
    after_help = "Exit codes: 0 ok, 1 negative verdict, 2 bad input, 3 prefix too short to certify, 4 hypothesis violated.\nSet WORDSYM_MAX_PREFIX to cap stabilization (default 10000000 letters)."
)]
pub struct Cli {
    /// Print wall-clock time to stderr.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print a prefix of a word.
    #[command(after_help = SPEC_HELP)]
    Generate {
        spec: String,
        #[arg(long)]
        length: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor complexity table. CSV columns: n,C,dC,d2C,status.
    #[command(after_help = SPEC_HELP)]
    Complexity {
        spec: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// G-richness report. CSV columns: n,dC,P(<theta>)...,R,G,ineq,eq,loops_ok,tree_ok,pass.
    #[command(after_help = GROUP_HELP)]
    Richness {
        spec: String,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph of symmetries at one length. CSV columns:
    /// n,vertices,edge_classes,loops,directed_edges,loops_ok,tree_ok.
    #[command(after_help = GROUP_HELP)]
    Graph {
        spec: String,
        #[arg(long)]
        group: String,
        #[arg(long)]
        n: usize,
        /// Write the undirected graph in DOT format.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Distinct overlaps w w a in a prefix. CSV columns: position,w,w_prime,factor.
    #[command(after_help = SPEC_HELP)]
    Overlaps {
        spec: String,
        #[arg(long)]
        length: usize,
        #[arg(long, default_value_t = 20)]
        max_report: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Longest square-free Θ-rich words. Exit 0 iff the search tree was exhausted.
    #[command(
        after_help = "Checkpoint files are text: `alphabet K`, `theta T`, `nodes N`, `best R`, \
then one `witness WORD` line per witness and one `frontier WORD` line per unexplored subtree root, \
in search order. `--resume FILE` continues from one."
    )]
    Search {
        #[arg(long, required_unless_present = "resume")]
        alphabet: Option<usize>,
        /// Involutive antimorphism; defaults to reversal.
        #[arg(long, default_value = "R")]
        theta: String,
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Write a checkpoint here when the budget runs out.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long)]
        resume: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Θ-defect along prefixes. Exit 0 iff no prefix had positive defect.
    #[command(after_help = SPEC_HELP)]
    Defect {
        spec: String,
        #[arg(long, default_value = "R")]
        theta: String,
        #[arg(long, default_value_t = 100_000)]
        max_prefix: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (program name first) and runs the command. Returns the
/// process exit code.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let started = Instant::now();
    let code = match run(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    };
    if cli.timing {
        eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
    }
    code
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) | Error::InvalidSpec(_) | Error::GroupTooLarge { .. } => 2,
        Error::StabilizationFailure { .. }
        | Error::UntrustedRange { .. }
        | Error::TrustExhausted { .. } => 3,
        e if e.is_hypothesis_violation() => 4,
        _ => 1,
    }
}

fn stabilize_options() -> Result<StabilizeOptions> {
    let max_prefix = match std::env::var("WORDSYM_MAX_PREFIX") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("WORDSYM_MAX_PREFIX={v:?} is not a length")))?,
        Err(_) => DEFAULT_MAX_PREFIX,
    };
    Ok(StabilizeOptions { max_prefix })
}

fn parse_theta(text: &str, spec_alphabet: usize) -> Result<Symmetry> {
    let term: SymmetryTerm = text.parse()?;
    term.on(spec_alphabet.max(term.min_alphabet()))
}

fn parse_group(text: &str, spec_alphabet: usize) -> Result<SymmetryGroup> {
    let k = text
        .split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.parse::<SymmetryTerm>().map(|s| s.min_alphabet()))
        .try_fold(spec_alphabet, |k, m| m.map(|m| k.max(m)))?;
    SymmetryGroup::generate(&parse_symmetries(text, k)?)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Rows keyed by column name, rendered as CSV or as a JSON envelope.
struct Table {
    command: &'static str,
    word_spec: Option<String>,
    group: Option<(String, usize)>,
    trust: Value,
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
    verdicts: Map<String, Value>,
}

impl Table {
    fn new(command: &'static str, columns: &[&str]) -> Self {
        Table {
            command,
            word_spec: None,
            group: None,
            trust: Value::Null,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            verdicts: Map::new(),
        }
    }

    fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io_err = |e: csv::Error| Error::Io(io::Error::other(e));
        w.write_record(&self.columns).map_err(io_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| match v {
                Value::Null => String::new(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            }))
            .map_err(io_err)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Io(io::Error::other(e.to_string())))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                Value::Object(
                    self.columns
                        .iter()
                        .cloned()
                        .zip(row.iter().cloned())
                        .collect(),
                )
            })
            .collect();
        let envelope = json!({
            "command": self.command,
            "word_spec": self.word_spec,
            "group_spec": self.group.as_ref().map(|g| &g.0),
            "group_order": self.group.as_ref().map(|g| g.1),
            "trust": self.trust,
            "columns": self.columns,
            "rows": rows,
            "verdicts": self.verdicts,
            "tool_version": TOOL_VERSION,
        });
        let mut s = serde_json::to_string_pretty(&envelope).expect("json values serialize");
        s.push('\n');
        s
    }

    fn render(&self, format: Format, text: impl FnOnce(&Table) -> String) -> Result<String> {
        match format {
            Format::Csv => self.csv(),
            Format::Json => Ok(self.json()),
            Format::Text => Ok(text(self)),
        }
    }
}

fn text_rows(t: &Table) -> String {
    let mut out = t.columns.join("\t");
    out.push('\n');
    for row in &t.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|v| match v {
                Value::Null => "-".to_string(),
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    for (k, v) in &t.verdicts {
        out.push_str(&format!(
            "{k}: {}\n",
            v.as_str().map(str::to_string).unwrap_or(v.to_string())
        ));
    }
    out
}

pub fn run(command: &Command) -> Result<i32> {
    match command {
        Command::Generate { spec, length, out } => {
            let spec = WordSpec::parse(spec)?;
            let mut text = format_letters(&spec.prefix(*length)?);
            text.push('\n');
            emit(out, &text)?;
            Ok(0)
        }
        Command::Complexity {
            spec,
            n_max,
            format,
            out,
        } => complexity(spec, *n_max, *format, out),
        Command::Richness {
            spec,
            group,
            n_max,
            format,
            out,
        } => richness(spec, group, *n_max, *format, out),
        Command::Graph {
            spec,
            group,
            n,
            dot,
            format,
            out,
        } => graph(spec, group, *n, dot, *format, out),
        Command::Overlaps {
            spec,
            length,
            max_report,
            format,
            out,
        } => overlaps(spec, *length, *max_report, *format, out),
        Command::Search {
            alphabet,
            theta,
            budget,
            checkpoint,
            resume,
            format,
            out,
        } => search(*alphabet, theta, *budget, checkpoint, resume, *format, out),
        Command::Defect {
            spec,
            theta,
            max_prefix,
            format,
            out,
        } => defect(spec, theta, *max_prefix, *format, out),
    }
}

fn trust_json(idx: &FactorIndex) -> Value {
    serde_json::to_value(idx.trust()).expect("trust range serializes")
}

fn complexity(spec_text: &str, n_max: usize, format: Format, out: &Option<PathBuf>) -> Result<i32> {
    let spec = WordSpec::parse(spec_text)?;
    let (idx, code) = match stabilize_with(&spec, n_max + 2, &stabilize_options()?) {
        Ok(idx) => (idx, 0),
        Err(Error::StabilizationFailure {
            partial,
            n_max,
            max_prefix,
        }) => {
            eprintln!(
                "error: factor sets up to length {n_max} did not stabilize within {max_prefix} letters; \
                 rows are limited to the settled range and marked partial"
            );
            (*partial, 3)
        }
        Err(e) => return Err(e),
    };
    let status = if code == 0 { "ok" } else { "partial" };
    let mut table = Table::new("complexity", &["n", "C", "dC", "d2C", "status"]);
    table.word_spec = Some(spec.to_string());
    table.trust = trust_json(&idx);
    let last = n_max.min(idx.trusted_n().saturating_sub(2));
    for n in 1..=last {
        table.rows.push(vec![
            json!(n),
            json!(idx.complexity(n)?),
            json!(idx.delta_c(n)?),
            json!(idx.delta2_c(n)?),
            json!(status),
        ]);
    }
    table.verdicts.insert("stabilized".into(), json!(code == 0));
    emit(out, &table.render(format, text_rows)?)?;
    Ok(code)
}

fn richness(
    spec_text: &str,
    group_text: &str,
    n_max: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<i32> {
    let spec = WordSpec::parse(spec_text)?;
    let group = parse_group(group_text, spec.alphabet_size())?;
    let idx = stabilize_with(&spec, n_max + 1, &stabilize_options()?)?;
    let report = g_richness_report_on(&idx, &group, n_max)?;

    let thetas: Vec<String> = group
        .involutive_antimorphisms()
        .iter()
        .map(|t| format!("P({t})"))
        .collect();
    let mut columns: Vec<&str> = vec!["n", "dC"];
    columns.extend(thetas.iter().map(String::as_str));
    columns.extend(["R", "G", "ineq", "eq", "loops_ok", "tree_ok", "pass"]);
    let mut table = Table::new("richness", &columns);
    table.word_spec = Some(spec.to_string());
    table.group = Some((group_text.to_string(), group.order()));
    table.trust = trust_json(&idx);
    for row in &report.rows {
        let mut cells = vec![json!(row.n), json!(row.delta_c)];
        cells.extend(row.pal.iter().map(|p| json!(p)));
        cells.extend([
            json!(row.r),
            json!(report.group_order),
            json!(row.inequality),
            json!(row.equality),
            json!(row.graph.map(|g| g.loops_ok)),
            json!(row.graph.map(|g| g.tree_ok)),
            json!(row.passed()),
        ]);
        table.rows.push(cells);
    }
    let verdict = match report.verdict {
        RichnessVerdict::GRichSoFar => "g-rich-so-far".to_string(),
        RichnessVerdict::AlmostGRichSoFar { n0 } => format!("almost-g-rich-so-far (n0={n0})"),
        RichnessVerdict::NotGRich => "not-g-rich".to_string(),
    };
    table.verdicts.insert("verdict".into(), json!(verdict));
    table
        .verdicts
        .insert("n_threshold".into(), json!(report.n_used));
    table
        .verdicts
        .insert("n_allletters".into(), json!(report.thresholds.n_allletters));
    table
        .verdicts
        .insert("n_weak".into(), json!(report.thresholds.n_weak));
    emit(out, &table.render(format, text_rows)?)?;
    Ok(if report.verdict == RichnessVerdict::GRichSoFar {
        0
    } else {
        1
    })
}

fn graph(
    spec_text: &str,
    group_text: &str,
    n: usize,
    dot: &Option<PathBuf>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<i32> {
    let spec = WordSpec::parse(spec_text)?;
    let group = parse_group(group_text, spec.alphabet_size())?;
    let idx = stabilize_with(&spec, n + 1, &stabilize_options()?)?;
    let g = build_gamma(&idx, &group, n)?;
    if let Some(path) = dot {
        fs::write(path, export_dot(&g))?;
    }
    let mut table = Table::new(
        "graph",
        &[
            "n",
            "vertices",
            "edge_classes",
            "loops",
            "directed_edges",
            "loops_ok",
            "tree_ok",
        ],
    );
    table.word_spec = Some(spec.to_string());
    table.group = Some((group_text.to_string(), group.order()));
    table.trust = trust_json(&idx);
    table.rows.push(vec![
        json!(n),
        json!(g.vertices.len()),
        json!(g.classes.len()),
        json!(g.loop_count()),
        json!(g.edges.len()),
        json!(g.loops_ok()),
        json!(g.tree_ok()),
    ]);
    let text = |_: &Table| {
        let mut s = format!(
            "{} vertices, {} edge classes ({} loops), {} directed edges\n",
            g.vertices.len(),
            g.classes.len(),
            g.loop_count(),
            g.edges.len()
        );
        s.push_str(&format!(
            "loops_ok: {}\ntree_ok: {}\n",
            g.loops_ok(),
            g.tree_ok()
        ));
        s
    };
    emit(out, &table.render(format, text)?)?;
    Ok(0)
}

fn overlaps(
    spec_text: &str,
    length: usize,
    max_report: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<i32> {
    let spec = WordSpec::parse(spec_text)?;
    let prefix = spec.prefix(length)?;
    let found = find_overlaps(&prefix, max_report);
    let mut table = Table::new("overlaps", &["position", "w", "w_prime", "factor"]);
    table.word_spec = Some(spec.to_string());
    for o in &found {
        table.rows.push(vec![
            json!(o.position),
            json!(format_letters(&o.w)),
            json!(format_letters(&o.w_prime)),
            json!(format_letters(&o.factor())),
        ]);
    }
    table.verdicts.insert("overlaps".into(), json!(found.len()));
    let text = |_: &Table| {
        let mut s = format!("{} overlaps\n", found.len());
        for o in &found {
            s.push_str(&format!(
                "{} at {} (w={}, w'={})\n",
                o.factor(),
                o.position,
                o.w,
                o.w_prime
            ));
        }
        s
    };
    emit(out, &table.render(format, text)?)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn search(
    alphabet: Option<usize>,
    theta_text: &str,
    budget: u64,
    checkpoint: &Option<PathBuf>,
    resume: &Option<PathBuf>,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<i32> {
    let result = match resume {
        Some(path) => {
            let state = SearchResult::from_checkpoint(&fs::read_to_string(path)?)?;
            if alphabet.is_some_and(|k| k != state.alphabet_size) {
                return Err(Error::invalid("--alphabet disagrees with the checkpoint"));
            }
            resume_search(&state, budget)?
        }
        None => {
            let k = alphabet.expect("clap requires --alphabet without --resume");
            let theta: SymmetryTerm = theta_text.parse()?;
            search_squarefree_rich(k, &theta.on(k)?, budget)?
        }
    };
    if let Some(path) = checkpoint {
        if !result.exhausted {
            fs::write(path, result.to_checkpoint())?;
        }
    }
    let mut table = Table::new("search", &["witness"]);
    table.group = None;
    for w in &result.witnesses {
        table.rows.push(vec![json!(format_letters(w))]);
    }
    table
        .verdicts
        .insert("alphabet".into(), json!(result.alphabet_size));
    table
        .verdicts
        .insert("theta".into(), json!(result.theta.to_string()));
    table.verdicts.insert("r".into(), json!(result.r));
    table.verdicts.insert("nodes".into(), json!(result.nodes));
    table
        .verdicts
        .insert("exhausted".into(), json!(result.exhausted));
    table
        .verdicts
        .insert("up_to_permutation".into(), json!(result.reduced()));
    let text = |_: &Table| {
        let mut s = format!("r={}\n", result.r);
        for w in &result.witnesses {
            s.push_str(&format!("witness {}\n", format_letters(w)));
        }
        s.push_str(&format!(
            "nodes {}\nexhausted {}\n",
            result.nodes, result.exhausted
        ));
        s
    };
    emit(out, &table.render(format, text)?)?;
    Ok(if result.exhausted { 0 } else { 1 })
}

fn defect(
    spec_text: &str,
    theta_text: &str,
    max_prefix: usize,
    format: Format,
    out: &Option<PathBuf>,
) -> Result<i32> {
    let spec = WordSpec::parse(spec_text)?;
    let theta = parse_theta(theta_text, spec.alphabet_size())?;
    let curve = word_defect(&spec, &theta, max_prefix)?;
    let verdict = match curve.verdict {
        DefectVerdict::Zero => "zero",
        DefectVerdict::FiniteSoFar => "finite-so-far",
        DefectVerdict::Growing => "growing",
    };
    let mut table = Table::new(
        "defect",
        &[
            "prefix_len",
            "sup",
            "increments",
            "last_increase_at",
            "verdict",
        ],
    );
    table.word_spec = Some(spec.to_string());
    table.rows.push(vec![
        json!(curve.prefix_len),
        json!(curve.sup),
        json!(curve.increments),
        json!(curve.last_increase_at),
        json!(verdict),
    ]);
    table
        .verdicts
        .insert("theta".into(), json!(theta.to_string()));
    table.verdicts.insert("verdict".into(), json!(verdict));
    let text = |_: &Table| {
        format!(
            "theta {theta}\nprefix {}\nsup defect {}\nincrements {}\nlast increase at {}\nverdict {verdict}\n",
            curve.prefix_len,
            curve.sup,
            curve.increments,
            curve
                .last_increase_at
                .map_or("-".to_string(), |i| i.to_string()),
        )
    };
    emit(out, &table.render(format, text)?)?;
    Ok(if curve.verdict == DefectVerdict::Zero {
        0
    } else {
        1
    })
}
