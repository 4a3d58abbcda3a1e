//! `ekr`: batch front end for ekr-core.
//!
//! Exit status: 0 on success, 1 on validation errors (bad flags, unreadable
//! or malformed files), 2 when a search or lemma check runs out of node
//! budget. Partial results are still written in the budget case.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use ekr_core::counting::{disjoint_pairs, q_matchings, t_disjoint_pairs, t_intersecting_pairs};
use ekr_core::family::{colex_segment, ell_ball, lex_segment, t_star_union};
use ekr_core::formulas::{all_bounds, lex_disj_formula, table, thresholds, TABLE_HEADER};
use ekr_core::kneser::{bipartite_part_value, induced_edges, spectral_lower_bound, spectrum, KneserGraph};
use ekr_core::search::conjecture::verify_lex_conjecture;
use ekr_core::search::lemmas::{verify_add_set, verify_full_stars, verify_star_union};
use ekr_core::search::{certify_minimum, certify_with_checkpoint, BoundKind, Mode, SearchConfig, DEFAULT_NODE_BUDGET};
use ekr_core::{io as famio, Error, KSet, Params, SetFamily, Statistic};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ekr",
    version,
    about = "Exact disjoint-pair computations on k-uniform set systems"
)]
struct Cli {
    /// Write timing information to stderr.
    #[arg(long, global = true)]
    log: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a constructed family in the family file format.
    Gen(GenArgs),
    /// Count a statistic of a family file.
    Count(CountArgs),
    /// Evaluate closed forms and bounds.
    Formula(FormulaArgs),
    /// Certify the minimum of a statistic over all families of size s.
    Certify(CertifyArgs),
    /// Certify every s in a range and compare with lex, colex and l-balls.
    ///
    /// CSV columns: s,r,minimum,lex_value,lex_optimal,colex_value,ball_attains,complete,nodes_visited
    Sweep(SweepArgs),
    /// Kneser graph K(n,k): spectrum, spectral bound, edge list, induced edges.
    Kneser(KneserArgs),
    /// Exhaustively check the union-of-stars lemmas.
    VerifyLemmas(LemmaArgs),
}

#[derive(Args, Clone, Copy)]
struct Shape {
    #[arg(long)]
    n: u32,
    #[arg(long)]
    k: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Lex,
    Colex,
    Ellball,
    Tstars,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyFormat {
    Text,
    Json,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    construction: Construction,
    #[command(flatten)]
    shape: Shape,
    /// Size, for lex and colex.
    #[arg(long)]
    s: Option<u128>,
    /// Number of stars, for ellball and tstars.
    #[arg(long)]
    r: Option<u32>,
    /// Sets must meet [r] in at least ell elements (ellball).
    #[arg(long)]
    ell: Option<u32>,
    /// Center size for tstars; centers default to [t-1] plus one of t..t+r-1.
    #[arg(long)]
    t: Option<u32>,
    /// Explicit tstars centers, e.g. `1,2;1,3;2,3`.
    #[arg(long)]
    centers: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: FamilyFormat,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stat {
    Disj,
    Tdisj,
    Tint,
    Qmatch,
}

impl Stat {
    fn statistic(self) -> Statistic {
        match self {
            Stat::Disj => Statistic::DisjointPairs,
            Stat::Tdisj => Statistic::TDisjointPairs,
            Stat::Tint => Statistic::TIntersectingPairs,
            Stat::Qmatch => Statistic::QMatchings,
        }
    }
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, value_enum)]
    stat: Stat,
    #[arg(long, default_value_t = 1)]
    t: u32,
    #[arg(long, default_value_t = 2)]
    q: u32,
    /// Family file, text or JSON; `-` reads stdin.
    file: PathBuf,
}

#[derive(Args)]
struct FormulaArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, required_unless_present = "table")]
    s: Option<u128>,
    #[arg(long, default_value_t = 1)]
    t: u32,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long)]
    ell: Option<u32>,
    /// Every bound and threshold, not just the lex formula.
    #[arg(long)]
    all: bool,
    /// CSV rows for every s in the range instead of JSON.
    ///
    /// Columns: n,k,s,r,lex_formula,pair_upper,qmatch_upper,spectral_lower,one_more_floor
    #[arg(long, conflicts_with_all = ["s", "all"])]
    table: bool,
    #[arg(long, requires = "table")]
    s_from: Option<u128>,
    #[arg(long, requires = "table")]
    s_to: Option<u128>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchMode {
    Exhaustive,
    Bnb,
    Local,
}

#[derive(Clone, Copy, ValueEnum)]
enum Bound {
    Trivial,
    MinIncrement,
    Sorted,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value = "bnb")]
    mode: SearchMode,
    #[arg(long, env = "EKR_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Do not fix {1..k} as a member.
    #[arg(long)]
    no_symmetry: bool,
    #[arg(long, value_enum, default_value = "sorted")]
    bound: Bound,
    /// Seed for local search.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random restarts for local search.
    #[arg(long, default_value_t = 8)]
    restarts: u32,
    /// Run partitions on one thread.
    #[arg(long)]
    sequential: bool,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        let mut config = match self.mode {
            SearchMode::Exhaustive => SearchConfig::exhaustive(),
            SearchMode::Bnb => SearchConfig::branch_and_bound(),
            SearchMode::Local => SearchConfig::local_search(self.seed),
        };
        config.restarts = self.restarts;
        config = config
            .with_budget(self.budget)
            .with_symmetry(!self.no_symmetry)
            .with_bound(match self.bound {
                Bound::Trivial => BoundKind::Trivial,
                Bound::MinIncrement => BoundKind::MinIncrement,
                Bound::Sorted => BoundKind::SortedIncrements,
            });
        if self.sequential {
            config = config.sequential();
        }
        config
    }
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long)]
    s: u128,
    #[arg(long, value_enum, default_value = "disj")]
    stat: Stat,
    #[arg(long, default_value_t = 1)]
    t: u32,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[command(flatten)]
    search: SearchArgs,
    /// Resumable progress file; partitions run in order.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    shape: Shape,
    #[arg(long, value_enum, default_value = "disj")]
    stat: Stat,
    #[arg(long, default_value_t = 1)]
    t: u32,
    #[arg(long, default_value_t = 2)]
    q: u32,
    #[arg(long, default_value_t = 0)]
    s_from: u128,
    /// Defaults to C(n,k).
    #[arg(long)]
    s_to: Option<u128>,
    #[command(flatten)]
    search: SearchArgs,
}

#[derive(Args)]
#[command(group(ArgGroup::new("action").required(true).args(["spectrum", "bound", "edges", "induced", "cut"])))]
struct KneserArgs {
    #[command(flatten)]
    shape: Shape,
    /// Eigenvalues with multiplicities.
    #[arg(long)]
    spectrum: bool,
    /// Spectral lower bound on disjoint pairs for families of size S.
    #[arg(long, value_name = "S")]
    bound: Option<u128>,
    /// Edge list, one `u v` pair of lex ranks per line.
    #[arg(long)]
    edges: bool,
    /// Edges induced by a family file.
    #[arg(long, value_name = "FILE")]
    induced: Option<PathBuf>,
    /// Edges between a family file and its complement.
    #[arg(long, value_name = "FILE")]
    cut: Option<PathBuf>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    #[value(alias = "4.2")]
    StarUnion,
    #[value(alias = "4.3")]
    AddSet,
    #[value(alias = "4.4")]
    FullStars,
}

#[derive(Args)]
struct LemmaArgs {
    #[arg(long, value_enum)]
    lemma: Lemma,
    #[command(flatten)]
    shape: Shape,
    #[arg(long)]
    t: u32,
    #[arg(long)]
    r: u32,
    /// Cap on tuples times C(n,k).
    #[arg(long, env = "EKR_NODE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

/// A failed run: the message and the exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = match &e {
            Error::Range { what, detail } => format!("--{}: {detail}", what.replace('_', "-")),
            other => other.to_string(),
        };
        let code = if matches!(e, Error::Budget(_)) { 2 } else { 1 };
        Failure { code, message }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let start = Instant::now();
    let result = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Count(a) => count(a),
        Command::Formula(a) => formula(a),
        Command::Certify(a) => certify(a),
        Command::Sweep(a) => sweep(a),
        Command::Kneser(a) => kneser(a),
        Command::VerifyLemmas(a) => verify_lemmas(a),
    };
    if cli.log {
        eprintln!("elapsed: {:.3?}", start.elapsed());
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn emit(output: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| fail(format!("{}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| fail(format!("stdout: {e}"))),
    }
}

fn emit_json(value: &impl Serialize) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| fail(e.to_string()))?;
    text.push('\n');
    emit(None, &text)
}

fn read_family(path: &PathBuf) -> Result<SetFamily, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| fail(format!("stdin: {e}")))?;
    } else {
        text = fs::read_to_string(path).map_err(|e| fail(format!("{}: {e}", path.display())))?;
    }
    famio::parse_auto(&text).map_err(|e| fail(format!("{}: {e}", path.display())))
}

fn required<T>(value: Option<T>, flag: &str, construction: &str) -> Result<T, Failure> {
    value.ok_or_else(|| fail(format!("--{flag} is required for --construction {construction}")))
}

fn parse_centers(n: u32, spec: &str) -> Result<Vec<KSet>, Failure> {
    spec.split(';')
        .map(|part| {
            let elements: Vec<u32> = part
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| fail(format!("--centers: `{x}` is not an integer")))
                })
                .collect::<Result<_, _>>()?;
            KSet::new(n, &elements).map_err(|e| fail(format!("--centers: {e}")))
        })
        .collect()
}

fn gen(a: GenArgs) -> Outcome {
    let Shape { n, k } = a.shape;
    let family = match a.construction {
        Construction::Lex => lex_segment(n, k, required(a.s, "s", "lex")?)?,
        Construction::Colex => colex_segment(n, k, required(a.s, "s", "colex")?)?,
        Construction::Ellball => {
            let r = required(a.r, "r", "ellball")?;
            ell_ball(n, k, r, required(a.ell, "ell", "ellball")?)?
        }
        Construction::Tstars => {
            let centers = match (&a.centers, a.t, a.r) {
                (Some(spec), _, _) => parse_centers(n, spec)?,
                (None, Some(t), Some(r)) => lex_centers(n, t, r)?,
                _ => return Err(fail("--construction tstars needs --centers, or --t and --r")),
            };
            t_star_union(n, k, &centers)?
        }
    };
    let text = match a.format {
        FamilyFormat::Text => famio::to_text(&family),
        FamilyFormat::Json => famio::to_json(&family) + "\n",
    };
    emit(a.output.as_ref(), &text)?;
    Ok(0)
}

/// `[t-1] ∪ {t-1+i}` for `i = 1..=r`.
fn lex_centers(n: u32, t: u32, r: u32) -> Result<Vec<KSet>, Failure> {
    if t == 0 {
        return Err(fail("--t: need t >= 1"));
    }
    if t - 1 + r > n {
        return Err(fail(format!("--r: need t - 1 + r <= n = {n}")));
    }
    (1..=r)
        .map(|i| {
            let mut elements: Vec<u32> = (1..t).collect();
            elements.push(t - 1 + i);
            KSet::new(n, &elements).map_err(Failure::from)
        })
        .collect()
}

/// Serializes `report` with a `params` field holding the full echo.
fn with_params(params: &Params, report: &impl Serialize) -> Value {
    let mut value = serde_json::to_value(report).expect("report serialises");
    match &mut value {
        Value::Object(map) => {
            map.insert("params".into(), serde_json::to_value(params).expect("params serialise"));
            value
        }
        _ => json!({ "params": params, "value": value }),
    }
}

fn count(a: CountArgs) -> Outcome {
    let family = read_family(&a.file)?;
    let (n, k) = family.context();
    let params = Params::new(n, k, family.len() as u128)?;
    let params = if a.t > 1 { params.with_t(a.t)? } else { params };
    let params = params.with_q(a.q)?;
    let mut report = match a.stat {
        Stat::Disj => disjoint_pairs(&family),
        Stat::Tdisj => t_disjoint_pairs(&family, a.t)?,
        Stat::Tint => t_intersecting_pairs(&family, a.t)?,
        Stat::Qmatch => q_matchings(&family, a.q)?,
    };
    report.params = params;
    emit_json(&with_params(&params, &report))?;
    Ok(0)
}

fn formula(a: FormulaArgs) -> Outcome {
    let Shape { n, k } = a.shape;
    if a.table {
        let probe = Params::new(n, k, 0)?;
        let s_to = a.s_to.unwrap_or(probe.total_sets());
        let rows = table(n, k, a.q, a.s_from.unwrap_or(0), s_to)?;
        let mut text = String::from(TABLE_HEADER);
        text.push('\n');
        for row in rows {
            text += &row.csv();
            text.push('\n');
        }
        emit(None, &text)?;
        return Ok(0);
    }
    let mut params = Params::new(n, k, a.s.expect("clap enforces --s"))?.with_q(a.q)?;
    if a.t > 1 {
        params = params.with_t(a.t)?;
    }
    if let Some(ell) = a.ell {
        params = params.with_ell(ell)?;
    }
    let out = if a.all {
        json!({
            "params": params,
            "bounds": all_bounds(&params),
            "thresholds": thresholds(&params),
        })
    } else {
        json!({
            "params": params,
            "lex_formula": lex_disj_formula(n, k, params.s)?.to_string(),
        })
    };
    emit_json(&out)?;
    Ok(0)
}

fn statistic_params(shape: Shape, s: u128, stat: Stat, t: u32, q: u32) -> Result<Params, Failure> {
    let mut params = Params::new(shape.n, shape.k, s)?.with_q(q)?;
    if t > 1 || matches!(stat, Stat::Tdisj | Stat::Tint) {
        params = params.with_t(t)?;
    }
    Ok(params)
}

fn certify(a: CertifyArgs) -> Outcome {
    let params = statistic_params(a.shape, a.s, a.stat, a.t, a.q)?;
    let config = a.search.config();
    let statistic = a.stat.statistic();
    let cert = match &a.checkpoint {
        Some(path) => certify_with_checkpoint(&params, statistic, &config, path)?,
        None => certify_minimum(&params, statistic, &config)?,
    };
    emit_json(&cert)?;
    Ok(if cert.complete || cert.mode == Mode::LocalSearch {
        0
    } else {
        2
    })
}

const SWEEP_HEADER: &str = "s,r,minimum,lex_value,lex_optimal,colex_value,ball_attains,complete,nodes_visited";

fn sweep(a: SweepArgs) -> Outcome {
    let base = statistic_params(a.shape, 0, a.stat, a.t, a.q)?;
    let s_to = a.s_to.unwrap_or(base.total_sets());
    if a.s_from > s_to {
        return Err(fail(format!("--s-from: {} exceeds --s-to {s_to}", a.s_from)));
    }
    base.with_s(s_to)?;
    let config = a.search.config();
    let rows = verify_lex_conjecture(&base, a.stat.statistic(), a.s_from, s_to, &config)?;
    let mut text = String::from(SWEEP_HEADER);
    text.push('\n');
    let mut complete = true;
    for row in &rows {
        let c = &row.certificate;
        complete &= c.complete || c.mode == Mode::LocalSearch;
        text += &format!(
            "{},{},{},{},{},{},{},{},{}\n",
            c.params.s,
            c.params.r.map(|r| r.to_string()).unwrap_or_default(),
            c.minimum,
            c.lex_value,
            c.lex_optimal,
            row.colex_value,
            row.ball_attains,
            c.complete,
            c.nodes_visited
        );
    }
    emit(None, &text)?;
    Ok(if complete { 0 } else { 2 })
}

fn kneser(a: KneserArgs) -> Outcome {
    let Shape { n, k } = a.shape;
    let g = KneserGraph::new(n, k)?;
    let shape = json!({ "n": n, "k": k });
    if a.spectrum {
        let spec = spectrum(n, k)?;
        let grouped: Vec<Value> = spec
            .grouped()
            .into_iter()
            .map(|(v, m)| json!({ "value": v.to_string(), "multiplicity": m.to_string() }))
            .collect();
        emit_json(&json!({
            "params": shape,
            "vertices": g.vertex_count().to_string(),
            "degree": g.degree().to_string(),
            "eigenvalues": spec.eigenvalues,
            "distinct": grouped,
        }))?;
    } else if let Some(s) = a.bound {
        let params = Params::new(n, k, s)?;
        let bound = spectral_lower_bound(n, k, s)?;
        emit_json(&json!({
            "params": params,
            "spectral_lower": bound.to_string(),
            "spectral_lower_ceil": ekr_core::formulas::ceil_nonneg(&bound).to_string(),
        }))?;
    } else if a.edges {
        let mut buf = Vec::new();
        g.write_edge_list(&mut buf)?;
        emit(a.output.as_ref(), &String::from_utf8(buf).expect("edge list is ascii"))?;
    } else {
        let (path, cut) = match (&a.induced, &a.cut) {
            (Some(p), _) => (p, false),
            (_, Some(p)) => (p, true),
            _ => unreachable!("clap requires one action"),
        };
        let family = read_family(path)?;
        if family.context() != (n, k) {
            return Err(fail(format!(
                "{}: family has n={} k={}, flags say n={n} k={k}",
                path.display(),
                family.n(),
                family.k()
            )));
        }
        let params = Params::new(n, k, family.len() as u128)?;
        let (name, value) = if cut {
            ("cut_edges", bipartite_part_value(&g, &family)?)
        } else {
            ("induced_edges", induced_edges(&g, &family)?)
        };
        emit_json(&json!({ "params": params, name: value.to_string() }))?;
    }
    Ok(0)
}

fn verify_lemmas(a: LemmaArgs) -> Outcome {
    let Shape { n, k } = a.shape;
    let echo = json!({ "n": n, "k": k, "t": a.t, "r": a.r, "budget": a.budget });
    let result = match a.lemma {
        Lemma::StarUnion => verify_star_union(n, k, a.t, a.r, a.budget).map(serde_json::to_value),
        Lemma::AddSet => verify_add_set(n, k, a.t, a.r, a.budget).map(serde_json::to_value),
        Lemma::FullStars => verify_full_stars(n, k, a.t, a.r, a.budget).map(serde_json::to_value),
    };
    let name = match a.lemma {
        Lemma::StarUnion => "star_union",
        Lemma::AddSet => "add_set",
        Lemma::FullStars => "full_stars",
    };
    match result {
        Ok(report) => {
            let report = report.map_err(|e| fail(e.to_string()))?;
            emit_json(&json!({ "params": echo, "lemma": name, "complete": true, "report": report }))?;
            Ok(0)
        }
        Err(Error::Budget(msg)) => {
            emit_json(&json!({ "params": echo, "lemma": name, "complete": false, "reason": msg }))?;
            Ok(2)
        }
        Err(e) => Err(e.into()),
    }
}
