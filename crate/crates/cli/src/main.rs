use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Map, Value};

use thickness::core1d::CutOutSet;
use thickness::dimension::{dim_lower_bound_1d, region_samples};
use thickness::document::{BuiltSet, SetDocument};
use thickness::game::{
    alice_thickness_strategy, complement_of_gaps_oracle, run_game, verify_winning_run, AdversaryBob, BobPlayer,
    CenteredBob, RandomBob,
};
use thickness::gaplemma1d::{check_gap_lemma, find_intersection};
use thickness::gaplemmard::{approximate_common_point, check_gap_lemma_rd};
use thickness::interval::Enclosure;
use thickness::patterns1d::{
    ap_upper_bound_middle, bfs_lower_bound, distance_contains, find_3ap, longest_ap_truncated, pattern_capacity,
    CapacityParams,
};
use thickness::scalar::{format_float, format_rational, parse_rational};
use thickness::setsrd::{fy_thickness, thickness_rd};
use thickness::{Error, Rational};

#[derive(Parser)]
#[command(name = "thick", version, about = "Thickness, Gap Lemma checks, patterns and games for Cantor-type sets")]
struct Cli {
    /// Print a JSON result record instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Thickness of the set described by FILE.
    Thickness {
        file: PathBuf,
        /// Construction depth (default 20 on the line, 6 for cube systems).
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Check the Gap Lemma hypotheses for two sets.
    GapLemma {
        file_a: PathBuf,
        file_b: PathBuf,
        #[arg(long)]
        depth: Option<usize>,
        /// Denseness constant for cube systems.
        #[arg(long, value_parser = rational)]
        r: Option<Rational>,
        /// Also construct a common point (sets on the line).
        #[arg(long)]
        find_point: bool,
        #[arg(long, value_parser = rational, default_value = "1e-9")]
        tol: Rational,
    },
    /// Progressions, distances and pattern capacity.
    Patterns {
        file: Option<PathBuf>,
        /// Longest progression among the endpoints of this stage.
        #[arg(long, value_name = "DEPTH", num_args = 0..=1, default_missing_value = "5")]
        ap_search: Option<usize>,
        #[arg(long, default_value_t = 16)]
        max_len: usize,
        #[arg(long)]
        three_ap: bool,
        #[arg(long, value_parser = rational, value_name = "T")]
        distance: Option<Rational>,
        #[arg(long, value_name = "TAU")]
        capacity: Option<f64>,
        #[arg(long, num_args = 2, value_names = ["N", "TAU"])]
        condition: Option<Vec<String>>,
        #[arg(long, value_parser = rational, default_value = "1e-12")]
        tol: Rational,
    },
    /// Play one potential game against the thickness strategy.
    Game {
        file: PathBuf,
        #[arg(long, value_parser = rational, default_value = "1/4")]
        beta: Rational,
        #[arg(long, value_enum, default_value_t = BobKind::Random)]
        bob: BobKind,
        #[arg(long, value_parser = rational, default_value = "1e-12")]
        stop: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the JSON-lines transcript here.
        #[arg(long)]
        transcript: Option<PathBuf>,
    },
    /// Write figure data as CSV.
    EmitCsv {
        #[arg(value_enum)]
        kind: CsvKind,
        #[arg(long)]
        out: Option<PathBuf>,
        /// region: thickness of the sampled boundary.
        #[arg(long, value_parser = rational, default_value = "1")]
        tau: Rational,
        /// region: samples per boundary segment.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// dim_curve: tau runs over 2^k/16 for k = 0..=k_max.
        #[arg(long, default_value_t = 8)]
        k_max: u32,
        /// ap_bounds: epsilon runs over 1/m for m = 3..=m_max.
        #[arg(long, default_value_t = 50)]
        m_max: i64,
        /// ap_bounds: constant in the lower bound.
        #[arg(long, default_value_t = 1.0)]
        c: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BobKind {
    Center,
    Random,
    Adversary,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum CsvKind {
    DimCurve,
    ApBounds,
    Region,
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).ok_or_else(|| format!("invalid rational {s:?}"))
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Status {
    Ok,
    ParseError,
    Inconclusive,
    HypothesesFail,
    NotFound,
    IllegalMove,
    Failed,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::ParseError => 2,
            Status::Inconclusive => 3,
            Status::HypothesesFail => 4,
            Status::NotFound => 5,
            Status::IllegalMove => 6,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Failed => "failed",
            Status::ParseError => "parse_error",
            Status::Inconclusive => "inconclusive",
            Status::HypothesesFail => "hypotheses_fail",
            Status::NotFound => "not_found",
            Status::IllegalMove => "illegal_move",
        }
    }
}

struct Failure {
    status: Status,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            Error::Parse(_) | Error::Domain(_) | Error::Overlap(_) | Error::Containment(_) | Error::Degenerate(_) => {
                Status::ParseError
            }
            Error::Inconclusive(_) => Status::Inconclusive,
            Error::Hypothesis(_) => Status::HypothesesFail,
            Error::NotFound(_) | Error::Exhausted { .. } => Status::NotFound,
            Error::IllegalMove { .. } => Status::IllegalMove,
            _ => Status::Failed,
        };
        Failure { status, message: e.to_string() }
    }
}

fn fail(status: Status, message: impl Into<String>) -> Failure {
    Failure { status, message: message.into() }
}

/// Text lines and JSON outputs of one command.
struct Record {
    command: &'static str,
    inputs: Map<String, Value>,
    outputs: Map<String, Value>,
    lines: Vec<String>,
    status: Status,
}

impl Record {
    fn new(command: &'static str) -> Self {
        Record { command, inputs: Map::new(), outputs: Map::new(), lines: Vec::new(), status: Status::Ok }
    }

    fn input(&mut self, key: &str, v: impl Into<Value>) {
        self.inputs.insert(key.into(), v.into());
    }

    fn output(&mut self, key: &str, v: impl Into<Value>) {
        self.outputs.insert(key.into(), v.into());
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }
}

type Step = Result<(), Failure>;

fn fmt_q(x: &Rational) -> String {
    format_rational(x)
}

fn enclosure_json(e: &Enclosure<Rational>) -> Value {
    let end = |x: &thickness::interval::Extended<Rational>| match x.finite() {
        Some(v) => Value::from(fmt_q(v)),
        None => Value::from("inf"),
    };
    json!({"lo": end(&e.lo), "hi": end(&e.hi), "exact": e.is_exact()})
}

fn enclosure_text(e: &Enclosure<Rational>) -> String {
    let end = |x: &thickness::interval::Extended<Rational>| x.finite().map_or("inf".to_string(), fmt_q);
    if e.is_exact() {
        format!("= {} (exact)", end(&e.lo))
    } else {
        format!("in [{}, {}]", end(&e.lo), end(&e.hi))
    }
}

fn load(path: &PathBuf) -> Result<BuiltSet, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(Status::ParseError, format!("{}: {e}", path.display())))?;
    let doc = SetDocument::parse(&text).map_err(|e| fail(Status::ParseError, format!("{}: {e}", path.display())))?;
    doc.build().map_err(|e| fail(Status::ParseError, format!("{}: {e}", path.display())))
}

fn load_line(path: &PathBuf) -> Result<CutOutSet<Rational>, Failure> {
    match load(path)? {
        BuiltSet::Line(c) => Ok(c),
        _ => Err(fail(Status::ParseError, format!("{}: a set on the line is required", path.display()))),
    }
}

fn cmd_thickness(rec: &mut Record, file: &PathBuf, depth: Option<usize>) -> Step {
    rec.input("file", file.display().to_string());
    let set = load(file)?;
    let (tau, used) = match &set {
        BuiltSet::Line(c) => {
            let d = depth.unwrap_or(20);
            (c.thickness(d), Some(d))
        }
        BuiltSet::Cubes(s) => {
            let d = depth.unwrap_or(6);
            (thickness_rd(s, d), Some(d))
        }
        BuiltSet::Fy(f) => (Enclosure::new(fy_thickness(f), fy_thickness(f)), None),
    };
    if let Some(d) = used {
        rec.input("depth", d);
    }
    rec.output("dimension", set.ambient_dim());
    rec.output("tau", enclosure_json(&tau));
    rec.line(format!("tau {}", enclosure_text(&tau)));
    Ok(())
}

fn cmd_gap_lemma(
    rec: &mut Record,
    a: &PathBuf,
    b: &PathBuf,
    depth: Option<usize>,
    r: Option<Rational>,
    find_point: bool,
    tol: &Rational,
) -> Step {
    rec.input("file_a", a.display().to_string());
    rec.input("file_b", b.display().to_string());
    let (sa, sb) = (load(a)?, load(b)?);
    if sa.ambient_dim() != sb.ambient_dim() {
        return Err(fail(
            Status::ParseError,
            format!("documents live in dimensions {} and {}", sa.ambient_dim(), sb.ambient_dim()),
        ));
    }
    match (&sa, &sb) {
        (BuiltSet::Line(c1), BuiltSet::Line(c2)) => {
            let d = depth.unwrap_or(20);
            rec.input("depth", d);
            let rep = check_gap_lemma(c1, c2, d)?;
            rec.output("hulls_intersect", rep.hulls_intersect);
            rec.output("neither_in_gap", rep.neither_in_gap);
            rec.output("thickness_product_ok", rep.thickness_product_ok);
            rec.output("product", enclosure_json(&rep.product_enclosure));
            rec.line(format!("hulls intersect: {}", rep.hulls_intersect));
            rec.line(format!("neither in a gap of the other: {}", rep.neither_in_gap));
            rec.line(format!(
                "thickness product {} (>= 1: {})",
                enclosure_text(&rep.product_enclosure),
                rep.thickness_product_ok
            ));
            if let Some(w) = &rep.offending_witness {
                rec.output("offending_witness", w.to_string());
                rec.line(format!("offending interval: {w}"));
            }
            if !rep.passes() {
                rec.status = Status::HypothesesFail;
                return Ok(());
            }
            rec.line("hypotheses hold");
            if find_point {
                rec.input("tol", fmt_q(tol));
                let w = find_intersection(c1, c2, tol)?;
                rec.output("point", fmt_q(&w.point));
                rec.output("error_bound", fmt_q(&w.error_bound));
                rec.output("linked_pairs", w.trail.len());
                rec.line(format!("point {} (error bound {})", fmt_q(&w.point), fmt_q(&w.error_bound)));
            }
            Ok(())
        }
        (BuiltSet::Cubes(s1), BuiltSet::Cubes(s2)) => {
            let d = depth.unwrap_or(6);
            let r = r.ok_or_else(|| fail(Status::ParseError, "cube systems need --r"))?;
            rec.input("depth", d);
            rec.input("r", fmt_q(&r));
            let rep = check_gap_lemma_rd(s1, s2, &r, d)?;
            rec.output("thickness_product_ok", rep.thickness_product_ok);
            rec.output("product", enclosure_json(&rep.product));
            rec.output("threshold", fmt_q(&rep.threshold));
            rec.output("dense1_ok", rep.dense1_ok);
            rec.output("dense2_ok", rep.dense2_ok);
            rec.output("anchor_ok", rep.anchor_ok);
            rec.output("anchor_certified", rep.anchor_certified);
            rec.line(format!(
                "thickness product {} (>= {}: {})",
                enclosure_text(&rep.product),
                fmt_q(&rep.threshold),
                rep.thickness_product_ok
            ));
            rec.line(format!("first system {}-uniformly dense: {}", fmt_q(&r), rep.dense1_ok));
            rec.line(format!("second system {}-uniformly dense: {}", fmt_q(&r), rep.dense2_ok));
            rec.line(format!("anchor: {} (certified: {})", rep.anchor_ok, rep.anchor_certified));
            if !rep.passes() {
                rec.status = Status::HypothesesFail;
                return Ok(());
            }
            rec.line("hypotheses hold");
            if find_point {
                match approximate_common_point(s1, s2, d) {
                    Some((x, bound)) => {
                        rec.output("approximate_point", x.to_string());
                        rec.output("error_bound", fmt_q(&bound));
                        rec.line(format!("approximate point {x} (not certified; cover bound {})", fmt_q(&bound)));
                    }
                    None => return Err(fail(Status::NotFound, format!("covers of depth {d} do not meet"))),
                }
            }
            Ok(())
        }
        _ => Err(fail(Status::ParseError, "the Gap Lemma check needs two sets on the line or two cube systems")),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_patterns(
    rec: &mut Record,
    file: Option<&PathBuf>,
    ap_search: Option<usize>,
    max_len: usize,
    three_ap: bool,
    distance: Option<&Rational>,
    capacity: Option<f64>,
    condition: Option<&[String]>,
    tol: &Rational,
) -> Step {
    let needs_set = ap_search.is_some() || three_ap || distance.is_some();
    let set = match (file, needs_set) {
        (Some(f), _) => {
            rec.input("file", f.display().to_string());
            Some(load_line(f)?)
        }
        (None, true) => return Err(fail(Status::ParseError, "this query needs a set description file")),
        (None, false) => None,
    };
    if ap_search.is_none() && !three_ap && distance.is_none() && capacity.is_none() && condition.is_none() {
        return Err(fail(
            Status::ParseError,
            "nothing to do; pass --ap-search, --three-ap, --distance, --capacity or --condition",
        ));
    }
    if let Some(depth) = ap_search {
        let c = set.as_ref().unwrap();
        rec.input("ap_search", depth);
        let w = longest_ap_truncated(c, depth, max_len)?;
        let terms = w.terms();
        if !terms.iter().all(|t| c.truncation_contains(t, depth)) {
            return Err(fail(Status::Failed, "progression failed re-verification"));
        }
        let shown: Vec<String> = terms.iter().map(fmt_q).collect();
        rec.output("ap_length", w.length);
        rec.output("ap_terms", shown.clone());
        rec.line(format!("longest AP length {}: {}", w.length, shown.join(",")));
    }
    if three_ap {
        let c = set.as_ref().unwrap();
        rec.input("tol", fmt_q(tol));
        let (w, bound) = find_3ap(c, tol)?;
        let terms = w.terms();
        if !c.truncation_contains(&terms[0], 20) || !c.truncation_contains(&terms[1], 20) {
            return Err(fail(Status::Failed, "progression failed re-verification"));
        }
        let shown: Vec<String> = terms.iter().map(fmt_q).collect();
        rec.output("three_ap", shown.clone());
        rec.output("three_ap_error_bound", fmt_q(&bound));
        rec.line(shown.join(", "));
        if !bound.is_zero() {
            rec.line(format!("third term within {} of the set", fmt_q(&bound)));
        }
    }
    if let Some(t) = distance {
        let c = set.as_ref().unwrap();
        rec.input("distance", fmt_q(t));
        let w = distance_contains(c, t, tol)?;
        let y = w.point.clone() + t.clone();
        if !c.truncation_contains(&w.point, 20) {
            return Err(fail(Status::Failed, "witness failed re-verification"));
        }
        rec.output("distance_witness", vec![fmt_q(&w.point), fmt_q(&y)]);
        rec.output("distance_error_bound", fmt_q(&w.error_bound));
        rec.line(format!(
            "distance {} realized by {} and {} (error bound {})",
            fmt_q(t),
            fmt_q(&w.point),
            fmt_q(&y),
            fmt_q(&w.error_bound)
        ));
    }
    if let Some(tau) = capacity {
        rec.input("capacity", format_float(tau));
        let n = pattern_capacity(tau)?;
        rec.output("capacity", n);
        rec.line(format!("N = {n} (natural-log convention)"));
    }
    if let Some(args) = condition {
        let n: u64 = args[0].parse().map_err(|_| fail(Status::ParseError, format!("invalid count {:?}", args[0])))?;
        let tau: f64 = args[1].parse().map_err(|_| fail(Status::ParseError, format!("invalid tau {:?}", args[1])))?;
        rec.input("condition", vec![n.to_string(), format_float(tau)]);
        let p = CapacityParams::new(n, tau)?;
        let holds = p.lhs() <= p.rhs();
        rec.output("condition", holds);
        rec.output("condition_lhs", format_float(p.lhs()));
        rec.output("condition_rhs", format_float(p.rhs()));
        rec.line(format!(
            "n alpha^c = {} {} {} = (1 - beta^(1-c)) / 720^2: {}",
            format_float(p.lhs()),
            if holds { "<=" } else { ">" },
            format_float(p.rhs()),
            if holds { "holds" } else { "fails" }
        ));
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_game(
    rec: &mut Record,
    file: &PathBuf,
    beta: &Rational,
    bob: BobKind,
    stop: &Rational,
    seed: u64,
    transcript: Option<&PathBuf>,
) -> Step {
    rec.input("file", file.display().to_string());
    rec.input("beta", fmt_q(beta));
    rec.input("stop", fmt_q(stop));
    let c = load_line(file)?;
    let s = alice_thickness_strategy(&c, beta.clone())?;
    let p = s.envelope().clone();
    let mut player: Box<dyn BobPlayer<Rational>> = match bob {
        BobKind::Center => Box::new(CenteredBob { start: None }),
        BobKind::Random => Box::new(RandomBob::new(seed)),
        BobKind::Adversary => Box::new(AdversaryBob::new(c.clone())),
    };
    rec.input("bob", player.name());
    let t = run_game(&s, player.as_mut(), &p, stop)?;
    if let Some(path) = transcript {
        fs::write(path, t.to_jsonl()).map_err(|e| fail(Status::Failed, format!("{}: {e}", path.display())))?;
        rec.output("transcript", path.display().to_string());
    }
    let verdict = verify_winning_run(&t, complement_of_gaps_oracle(&c))?;
    rec.output(
        "params",
        json!({"alpha": fmt_q(&p.alpha), "beta": fmt_q(&p.beta), "c": fmt_q(&p.c), "rho": fmt_q(&p.rho)}),
    );
    rec.output("turns", t.moves.len());
    rec.output("erasures", t.erased_intervals().len());
    rec.output("outcome", t.outcome_enclosure.to_string());
    rec.output("verdict", verdict.to_string());
    rec.line(format!(
        "params alpha = {}, beta = {}, c = {}, rho = {}",
        fmt_q(&p.alpha),
        fmt_q(&p.beta),
        fmt_q(&p.c),
        fmt_q(&p.rho)
    ));
    rec.line(format!(
        "{} turns, {} erasures, outcome in {}",
        t.moves.len(),
        t.erased_intervals().len(),
        t.outcome_enclosure
    ));
    rec.line(format!("verdict: {verdict}"));
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_emit_csv(
    rec: &mut Record,
    kind: CsvKind,
    out: Option<&PathBuf>,
    tau: &Rational,
    samples: usize,
    k_max: u32,
    m_max: i64,
    c: f64,
) -> Step {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| fail(Status::Failed, e.to_string());
    let name = match kind {
        CsvKind::DimCurve => {
            rec.input("k_max", k_max);
            w.write_record(["tau", "beta_bound"]).map_err(csv_err)?;
            for k in 0..=k_max {
                let t = Rational::new(num_traits::pow(2u32.into(), k as usize), 16u32.into());
                let b = dim_lower_bound_1d(&t)?;
                w.write_record([fmt_q(&t), format_float(b.value)]).map_err(csv_err)?;
            }
            "dim_curve"
        }
        CsvKind::ApBounds => {
            rec.input("m_max", m_max);
            rec.input("c", format_float(c));
            w.write_record(["epsilon", "upper_bound", "bfs_lower_bound"]).map_err(csv_err)?;
            for m in 3..=m_max {
                let eps = thickness::q(1, m);
                let upper = ap_upper_bound_middle(&eps)?;
                let lower = bfs_lower_bound(1.0 / m as f64, c)?;
                w.write_record([fmt_q(&eps), upper.to_string(), format_float(lower)]).map_err(csv_err)?;
            }
            "ap_bounds"
        }
        CsvKind::Region => {
            rec.input("tau", fmt_q(tau));
            rec.input("samples", samples);
            w.write_record(["x", "y", "g_value"]).map_err(csv_err)?;
            for s in region_samples(tau, samples)? {
                w.write_record([format_float(s.x), format_float(s.y), format_float(s.g)]).map_err(csv_err)?;
            }
            "region"
        }
    };
    rec.input("kind", name);
    let bytes = w.into_inner().map_err(|e| fail(Status::Failed, e.to_string()))?;
    let rows = bytes.iter().filter(|&&b| b == b'\n').count().saturating_sub(1);
    rec.output("rows", rows);
    match out {
        Some(path) => {
            fs::write(path, &bytes).map_err(|e| fail(Status::Failed, format!("{}: {e}", path.display())))?;
            rec.output("out", path.display().to_string());
            rec.line(format!("wrote {rows} rows to {}", path.display()));
        }
        None => rec.line(String::from_utf8(bytes).expect("csv is utf-8").trim_end().to_string()),
    }
    Ok(())
}

fn run(cli: &Cli) -> (Record, Option<Failure>) {
    let (mut rec, res) = match &cli.command {
        Command::Thickness { file, depth } => {
            let mut rec = Record::new("thickness");
            let res = cmd_thickness(&mut rec, file, *depth);
            (rec, res)
        }
        Command::GapLemma { file_a, file_b, depth, r, find_point, tol } => {
            let mut rec = Record::new("gap-lemma");
            let res = cmd_gap_lemma(&mut rec, file_a, file_b, *depth, r.clone(), *find_point, tol);
            (rec, res)
        }
        Command::Patterns { file, ap_search, max_len, three_ap, distance, capacity, condition, tol } => {
            let mut rec = Record::new("patterns");
            let res = cmd_patterns(
                &mut rec,
                file.as_ref(),
                *ap_search,
                *max_len,
                *three_ap,
                distance.as_ref(),
                *capacity,
                condition.as_deref(),
                tol,
            );
            (rec, res)
        }
        Command::Game { file, beta, bob, stop, seed, transcript } => {
            let mut rec = Record::new("game");
            rec.input("seed", *seed);
            let res = cmd_game(&mut rec, file, beta, *bob, stop, *seed, transcript.as_ref());
            (rec, res)
        }
        Command::EmitCsv { kind, out, tau, samples, k_max, m_max, c } => {
            let mut rec = Record::new("emit-csv");
            let res = cmd_emit_csv(&mut rec, *kind, out.as_ref(), tau, *samples, *k_max, *m_max, *c);
            (rec, res)
        }
    };
    match res {
        Ok(()) => (rec, None),
        Err(f) => {
            rec.status = f.status;
            (rec, Some(f))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (rec, failure) = run(&cli);
    let mut stdout = std::io::stdout().lock();
    if cli.json {
        let mut v = json!({
            "command": rec.command,
            "inputs": Value::Object(rec.inputs),
            "outputs": Value::Object(rec.outputs),
            "status": rec.status.name(),
        });
        if let Some(f) = &failure {
            v["error"] = Value::from(f.message.clone());
        }
        let _ = writeln!(stdout, "{}", serde_json::to_string_pretty(&v).expect("records serialize"));
    } else {
        for l in &rec.lines {
            let _ = writeln!(stdout, "{l}");
        }
        if rec.status == Status::HypothesesFail && failure.is_none() {
            let _ = writeln!(stdout, "hypotheses fail");
        }
    }
    if let Some(f) = &failure {
        eprintln!("error: {}", f.message);
    }
    ExitCode::from(rec.status.code())
}
