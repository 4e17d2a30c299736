//! The `skorodist` command line.

use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::json;
use skorodist_core::betweenness::{check_axioms, AxiomKind};
use skorodist_core::diagnostics::{
    default_deltas, default_horizons, diagnose, diagnose_fixed_domain, Curve, FamilyReport, ModulusKind, Witness,
};
use skorodist_core::metric::{MetricSpace, Phi, SqueezeConfig, TimeMetric};
use skorodist_core::ordered::{
    d_m, d_part, d_tot, gen_diftop, gen_noncompl, gen_noop, hausdorff, mismatch_modulus, Budget, OrderedPointSet,
};
use skorodist_core::path::{modulus, path_dist, restrict, skorohod_modulus, GraphOptions, Path, Variant};

use crate::error::{CliError, CliResult};
use crate::format::sig6;
use crate::io::{self, AnyPath, AnySet, ConfigFile, Document, Family};
use crate::matrix::distance_matrix;
use crate::mode::{AnyBetweenness, Mode, Value};

#[derive(Debug, Parser)]
#[command(name = "skorodist", version, about = "Skorohod J1/M1 distances, moduli and compactness diagnostics")]
pub struct Cli {
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance between two paths or two ordered point sets.
    Dist(DistArgs),
    /// Classic or Skorohod modulus of one path.
    Modulus(ModulusArgs),
    /// Compactness diagnostics for a directory of paths.
    Diagnose(DiagnoseArgs),
    /// Betweenness axiom suite on random triples.
    Axioms(AxiomsArgs),
    /// Ordered-set counterexamples with their verified inequalities.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// CSV of distances from a numbered sequence of paths to a limit.
    Converge(ConvergeArgs),
    /// CSV matrix of pairwise distances in a directory.
    Matrix(MatrixArgs),
}

/// Settings shared by every path computation.
#[derive(Debug, Clone, Args)]
pub struct Common {
    /// j1, m1, order or interp:NAME (linear, geometric, smoothstep).
    #[arg(long, default_value = "j1")]
    pub mode: Mode,
    /// Sampling mesh of the graphs.
    #[arg(long)]
    pub eta: Option<f64>,
    /// Unbounded domains are cut at this time.
    #[arg(long)]
    pub horizon: Option<f64>,
    /// Time weight: exp_neg_abs or inv_one_plus_sq.
    #[arg(long)]
    pub phi: Option<String>,
    /// JSON settings file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Part,
    Tot,
    Hausdorff,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Part => Variant::Part,
            VariantArg::Tot => Variant::Tot,
            VariantArg::Hausdorff => Variant::Hausdorff,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Classic,
    Skorohod,
}

impl From<KindArg> for ModulusKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Classic => ModulusKind::Classic,
            KindArg::Skorohod => ModulusKind::Skorohod,
        }
    }
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = VariantArg::Tot)]
    pub variant: VariantArg,
    /// For ordered sets: compute d^<m> instead of the variant.
    #[arg(long)]
    pub m: Option<usize>,
    pub a: PathBuf,
    pub b: PathBuf,
}

#[derive(Debug, Args)]
pub struct ModulusArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = KindArg::Skorohod)]
    pub kind: KindArg,
    /// Times are restricted to [-T, T].
    #[arg(short = 'T', long = "time", default_value_t = 1.0)]
    pub time: f64,
    /// Window widths, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub delta: Vec<f64>,
    pub file: PathBuf,
}

#[derive(Debug, Args)]
pub struct DiagnoseArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = KindArg::Skorohod)]
    pub kind: KindArg,
    /// Horizons T, comma separated. Defaults to 1, 2, 5 and the horizon.
    #[arg(long, value_delimiter = ',')]
    pub horizons: Vec<f64>,
    /// Window widths, comma separated. Defaults to 1/2, ..., 1/256.
    #[arg(long, value_delimiter = ',')]
    pub deltas: Vec<f64>,
    /// All paths share one interval; also check the oscillation at its ends.
    #[arg(long)]
    pub fixed_domain: bool,
    /// Where to write the JSON report.
    #[arg(long)]
    pub out: Option<PathBuf>,
    pub dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct AxiomsArgs {
    /// j1 (trivial), m1 (linear), order or interp:NAME.
    #[arg(long, default_value = "j1")]
    pub mode: Mode,
    /// Dimension of the sampled points, for m1 and interp modes.
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// Membership tolerance. Defaults to 0 for exact kinds, 1e-9 otherwise.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Two chains close in d^<m> but far in d^<m+1>.
    Noop {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0.25)]
        eps: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partial orders converging in d^<m> but not in d^<m+1>.
    Diftop {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Cauchy sequence K_k = {0 < 1 < 1/k}, k = 2..n, without a limit.
    Noncompl {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = VariantArg::Tot)]
    pub variant: VariantArg,
    /// Which members to use, by the number ending their file name.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u64>,
    /// Restrict every path to times up to t first.
    #[arg(long)]
    pub restrict: Option<f64>,
    pub sequence: PathBuf,
    pub limit: PathBuf,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_enum, default_value_t = VariantArg::Tot)]
    pub variant: VariantArg,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    pub dir: PathBuf,
}

/// Resolved numeric settings.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub cfg: SqueezeConfig,
    pub opts: GraphOptions,
    pub budget: Budget,
}

fn positive(name: &str, x: f64) -> CliResult<f64> {
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(CliError::input(format!("--{name} must be a positive number, got {x}")))
    }
}

impl Common {
    pub fn settings(&self, env_budget: Option<&str>) -> CliResult<Settings> {
        let file = match &self.config {
            Some(p) => io::read_config(p)?,
            None => ConfigFile::default(),
        };
        let mut opts = GraphOptions::default();
        opts.eta = positive("eta", self.eta.or(file.eta).unwrap_or(opts.eta))?;
        opts.horizon = positive("horizon", self.horizon.or(file.horizon).unwrap_or(opts.horizon))?;
        let mut cfg = SqueezeConfig::default();
        if let Some(name) = self.phi.as_deref().or(file.phi.as_deref()) {
            cfg.phi = Phi::from_name(name).ok_or_else(|| CliError::input(format!("unknown phi {name:?}")))?;
        }
        if let Some(name) = file.dbar.as_deref() {
            cfg.dbar = TimeMetric::from_name(name).ok_or_else(|| CliError::input(format!("unknown dbar {name:?}")))?;
        }
        Ok(Settings { cfg, opts, budget: io::budget(&file, env_budget)? })
    }
}

/// Runs a parsed command, writing its report to `out`.
pub fn run(cli: &Cli, env_budget: Option<&str>, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Dist(a) => run_dist(a, env_budget, out),
        Command::Modulus(a) => run_modulus(a, env_budget, out),
        Command::Diagnose(a) => run_diagnose(a, env_budget, out),
        Command::Axioms(a) => run_axioms(a, cli.seed, out),
        Command::Gen { kind } => run_gen(kind, env_budget, out),
        Command::Converge(a) => run_converge(a, env_budget, out),
        Command::Matrix(a) => run_matrix(a, env_budget, out),
    }
}

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(CliError::from)
    };
}

fn path_values<P: Clone + PartialEq>(p: &Path<P>) -> impl Iterator<Item = &P> {
    p.initial().into_iter().chain(p.knots().iter().flat_map(|k| [&k.left, &k.right]))
}

fn betweenness_for<'a, P: Value>(mode: &Mode, paths: impl IntoIterator<Item = &'a Path<P>>) -> CliResult<AnyBetweenness<P>> {
    AnyBetweenness::for_mode(mode, paths.into_iter().flat_map(path_values))
}

fn run_dist(a: &DistArgs, env_budget: Option<&str>, out: &mut dyn Write) -> CliResult<()> {
    let s = a.common.settings(env_budget)?;
    if a.m == Some(0) {
        return Err(CliError::input("--m must be at least 1"));
    }
    let (da, db) = (io::read_document(&a.a)?, io::read_document(&a.b)?);
    match (da, db) {
        (Document::Path(pa), Document::Path(pb)) => {
            if a.m.is_some() {
                return Err(CliError::input("--m applies to ordered sets, not paths"));
            }
            match (pa, pb) {
                (AnyPath::Real(p), AnyPath::Real(q)) => dist_paths(&p, &q, a, &s, out),
                (AnyPath::Vector(p, d1), AnyPath::Vector(q, d2)) if d1 == d2 => dist_paths(&p, &q, a, &s, out),
                _ => Err(CliError::input("the two paths live in different spaces")),
            }
        }
        (Document::Set(ka), Document::Set(kb)) => match (ka, kb) {
            (AnySet::Real(k1), AnySet::Real(k2)) => dist_sets(&f64::default_space(), &k1, &k2, a, &s, out),
            (AnySet::Vector(k1), AnySet::Vector(k2)) => {
                if k1.points()[0].len() != k2.points()[0].len() {
                    return Err(CliError::input("the two sets have different dimensions"));
                }
                dist_sets(&<Vec<f64>>::default_space(), &k1, &k2, a, &s, out)
            }
            _ => Err(CliError::input("the two sets live in different spaces")),
        },
        _ => Err(CliError::input("cannot compare a path with an ordered set")),
    }
}

trait DefaultSpace: Value {
    fn default_space() -> Self::Space {
        Self::Space::default()
    }
}

impl<P: Value> DefaultSpace for P {}

fn dist_paths<P: Value>(p: &Path<P>, q: &Path<P>, a: &DistArgs, s: &Settings, out: &mut dyn Write) -> CliResult<()> {
    let b = betweenness_for(&a.common.mode, [p, q])?;
    let d = path_dist(p, q, &b, &P::default_space(), &s.cfg, &s.opts, a.variant.into());
    emit!(out, "value {}", sig6(d.value))?;
    emit!(out, "error_bar {}", sig6(d.error_bar))?;
    emit!(out, "truncation {}", sig6(d.truncation))?;
    if let Some(c) = &d.correspondence {
        emit!(out, "correspondence {} pairs", c.len())?;
    }
    Ok(())
}

fn dist_sets<M: MetricSpace>(
    space: &M,
    k1: &OrderedPointSet<M::Point>,
    k2: &OrderedPointSet<M::Point>,
    a: &DistArgs,
    s: &Settings,
    out: &mut dyn Write,
) -> CliResult<()> {
    if let Some(m) = a.m {
        let v = d_m(space, k1, k2, m, &s.budget)?;
        return emit!(out, "d^<{m}> {}", sig6(v));
    }
    match a.variant {
        VariantArg::Hausdorff => emit!(out, "hausdorff {}", sig6(hausdorff(space, k1.points(), k2.points())?)),
        VariantArg::Part => emit!(out, "d_part {}", sig6(d_part(space, k1, k2, &s.budget)?)),
        VariantArg::Tot => {
            let (v, c) = d_tot(space, k1, k2)?;
            emit!(out, "d_tot {}", sig6(v))?;
            emit!(out, "correspondence {} pairs", c.pairs.len())
        }
    }
}

fn run_modulus(a: &ModulusArgs, env_budget: Option<&str>, out: &mut dyn Write) -> CliResult<()> {
    a.common.settings(env_budget)?;
    positive("time", a.time)?;
    for &d in &a.delta {
        positive("delta", d)?;
    }
    match io::read_path(&a.file)? {
        AnyPath::Real(p) => modulus_table(&p, a, out),
        AnyPath::Vector(p, _) => modulus_table(&p, a, out),
    }
    .map_err(|e| e.in_file(&a.file))
}

fn modulus_table<P: Value>(p: &Path<P>, a: &ModulusArgs, out: &mut dyn Write) -> CliResult<()> {
    let b = betweenness_for(&a.common.mode, [p])?;
    let space = P::default_space();
    emit!(out, "delta,value,t1,t2,t3")?;
    for &delta in &a.delta {
        let m = match a.kind {
            KindArg::Classic => modulus(p, &space, a.time, delta)?,
            KindArg::Skorohod => skorohod_modulus(p, &b, &space, a.time, delta),
        };
        let w = match m.witness {
            Some(ts) => ts.map(sig6).join(","),
            None => ",,".into(),
        };
        emit!(out, "{},{},{w}", sig6(delta), sig6(m.value))?;
    }
    Ok(())
}

fn load_family(dir: &FsPath) -> CliResult<(Vec<PathBuf>, Family)> {
    let files = io::json_files(dir)?;
    let paths = files.iter().map(|f| io::read_path(f)).collect::<CliResult<Vec<_>>>()?;
    Ok((files, Family::from_paths(paths)?))
}

fn file_name(f: &FsPath) -> String {
    f.file_name().unwrap_or_default().to_string_lossy().into_owned()
}

fn run_diagnose(a: &DiagnoseArgs, env_budget: Option<&str>, out: &mut dyn Write) -> CliResult<()> {
    let s = a.common.settings(env_budget)?;
    let horizons = if a.horizons.is_empty() { default_horizons(s.opts.horizon) } else { a.horizons.clone() };
    let deltas = if a.deltas.is_empty() { default_deltas() } else { a.deltas.clone() };
    for &t in &horizons {
        positive("horizons", t)?;
    }
    for &d in &deltas {
        positive("deltas", d)?;
    }
    if a.fixed_domain && a.kind == KindArg::Classic {
        return Err(CliError::input("--fixed-domain uses the Skorohod modulus; drop --kind classic"));
    }
    let (files, family) = load_family(&a.dir)?;
    let report = match &family {
        Family::Real(ps) => family_report(ps, a, &horizons, &deltas)?,
        Family::Vector(ps, _) => family_report(ps, a, &horizons, &deltas)?,
    };
    let names: Vec<String> = files.iter().map(|f| file_name(f)).collect();
    emit!(out, "verdict {}", report.verdict.name())?;
    emit!(out, "containment {}", if report.containment.passed { "pass" } else { "fail" })?;
    for c in &report.curves {
        let vals: Vec<String> = c.values.iter().map(|&v| sig6(v)).collect();
        emit!(out, "curve T={} {}", sig6(c.horizon), vals.join(" "))?;
    }
    if let Some(c) = &report.boundary {
        let vals: Vec<String> = c.values.iter().map(|&v| sig6(v)).collect();
        emit!(out, "boundary {}", vals.join(" "))?;
    }
    for w in &report.witnesses {
        emit!(out, "witness {}", witness_line(w, &names))?;
    }
    if let Some(file) = &a.out {
        let doc = report_json(&report, a, &names);
        io::write_json(file, &doc)?;
        emit!(out, "report {}", file.display())?;
    }
    Ok(())
}

fn family_report<P: Value>(ps: &[Path<P>], a: &DiagnoseArgs, horizons: &[f64], deltas: &[f64]) -> CliResult<FamilyReport> {
    let b = betweenness_for(&a.common.mode, ps)?;
    let space = P::default_space();
    Ok(if a.fixed_domain {
        diagnose_fixed_domain(ps, &b, &space, deltas)?
    } else {
        diagnose(ps, &b, &space, horizons, deltas, a.kind.into())?
    })
}

fn witness_line(w: &Witness, names: &[String]) -> String {
    let name = |i: &usize| names.get(*i).cloned().unwrap_or_default();
    match w {
        Witness::Unbounded { horizon, paths } => {
            let ps: Vec<String> = paths.iter().map(name).collect();
            format!("unbounded T={} growing at {}", sig6(*horizon), ps.join(" "))
        }
        Witness::Floor { horizon, floor, scales } => {
            format!("floor T={} value {} reached at {} scales", sig6(*horizon), sig6(*floor), scales.len())
        }
        Witness::Boundary { floor, scales } => {
            format!("boundary value {} reached at {} scales", sig6(*floor), scales.len())
        }
    }
}

fn curve_json(c: &Curve, names: &[String]) -> serde_json::Value {
    let points: Vec<[f64; 2]> = c.deltas.iter().zip(&c.values).map(|(&d, &v)| [d, v]).collect();
    let argmax: Vec<Option<&String>> = c.argmax.iter().map(|i| i.and_then(|i| names.get(i))).collect();
    json!({ "horizon": c.horizon, "points": points, "argmax": argmax })
}

fn scales_json(scales: &[(f64, usize)], names: &[String]) -> serde_json::Value {
    scales.iter().map(|(d, i)| json!({ "delta": d, "file": names.get(*i) })).collect()
}

fn report_json(r: &FamilyReport, a: &DiagnoseArgs, names: &[String]) -> serde_json::Value {
    let boxes: Vec<_> = r
        .containment
        .boxes
        .iter()
        .map(|b| json!({ "horizon": b.horizon, "lo": b.lo, "hi": b.hi, "radii": b.radii }))
        .collect();
    let witnesses: Vec<_> = r
        .witnesses
        .iter()
        .map(|w| match w {
            Witness::Unbounded { horizon, paths } => json!({
                "type": "unbounded",
                "horizon": horizon,
                "files": paths.iter().map(|i| names.get(*i)).collect::<Vec<_>>(),
            }),
            Witness::Floor { horizon, floor, scales } => json!({
                "type": "floor", "horizon": horizon, "floor": floor, "scales": scales_json(scales, names),
            }),
            Witness::Boundary { floor, scales } => json!({
                "type": "boundary", "floor": floor, "scales": scales_json(scales, names),
            }),
        })
        .collect();
    json!({
        "mode": a.common.mode.to_string(),
        "kind": if a.kind == KindArg::Classic { "classic" } else { "skorohod" },
        "fixed_domain": a.fixed_domain,
        "verdict": r.verdict.name(),
        "note": "verdicts read finitely many window widths; consistent-with-precompact is not a proof",
        "files": names,
        "containment": { "passed": r.containment.passed, "boxes": boxes },
        "curves": r.curves.iter().map(|c| curve_json(c, names)).collect::<Vec<_>>(),
        "boundary": r.boundary.as_ref().map(|c| curve_json(c, names)),
        "witnesses": witnesses,
    })
}

fn axiom_name(k: AxiomKind) -> &'static str {
    match k {
        AxiomKind::Symmetry => "symmetry",
        AxiomKind::ContainsEndpoint => "contains-endpoint",
        AxiomKind::Intersection => "intersection",
        AxiomKind::Union => "union",
        AxiomKind::Degenerate => "degenerate",
        AxiomKind::Monotone => "monotone",
        AxiomKind::Antisymmetry => "antisymmetry",
        AxiomKind::Transfer => "transfer",
        AxiomKind::OrderTotal => "order-total",
        AxiomKind::OrderEquivalence => "order-equivalence",
        AxiomKind::SampleOrder => "sample-order",
    }
}

const AXIOMS: [AxiomKind; 11] = [
    AxiomKind::Symmetry,
    AxiomKind::ContainsEndpoint,
    AxiomKind::Intersection,
    AxiomKind::Union,
    AxiomKind::Degenerate,
    AxiomKind::Monotone,
    AxiomKind::Antisymmetry,
    AxiomKind::Transfer,
    AxiomKind::OrderTotal,
    AxiomKind::OrderEquivalence,
    AxiomKind::SampleOrder,
];

fn run_axioms(a: &AxiomsArgs, seed: u64, out: &mut dyn Write) -> CliResult<()> {
    if a.dim == 0 || a.samples == 0 {
        return Err(CliError::input("--dim and --samples must be positive"));
    }
    let exact = matches!(a.mode, Mode::J1 | Mode::Order);
    if a.mode == Mode::Order && a.dim != 1 {
        return Err(CliError::input("order mode lives on the real line; use --dim 1"));
    }
    let tol = a.tol.unwrap_or(if exact { 0.0 } else { 1e-9 });
    if !(tol >= 0.0) {
        return Err(CliError::input("--tol must be nonnegative"));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    // Exact kinds draw from small pools so that coincident points occur.
    let pool: Vec<f64> = match a.mode {
        Mode::J1 => (0..6).map(f64::from).collect(),
        Mode::Order => (0..12).map(|_| rng.gen_range(-5.0..5.0)).collect(),
        _ => Vec::new(),
    };
    let range = match &a.mode {
        Mode::Interp(name) if name == "geometric" => 0.1..3.0,
        _ => -3.0..3.0,
    };
    let point = |rng: &mut StdRng| -> Vec<f64> {
        if pool.is_empty() {
            (0..a.dim).map(|_| rng.gen_range(range.clone())).collect()
        } else {
            (0..a.dim).map(|_| pool[rng.gen_range(0..pool.len())]).collect()
        }
    };
    let triples: Vec<(Vec<f64>, Vec<f64>, Vec<f64>)> =
        (0..a.samples).map(|_| (point(&mut rng), point(&mut rng), point(&mut rng))).collect();
    let counts = if a.dim == 1 {
        let t: Vec<(f64, f64, f64)> = triples.iter().map(|(x, y, z)| (x[0], y[0], z[0])).collect();
        let b = AnyBetweenness::for_mode(&a.mode, pool.iter())?;
        axiom_counts(&b, &t, tol)
    } else {
        let b = AnyBetweenness::for_mode(&a.mode, std::iter::empty())?;
        axiom_counts(&b, &triples, tol)
    };
    emit!(out, "mode {}, {} triples, dimension {}, tolerance {}", a.mode, a.samples, a.dim, sig6(tol))?;
    let mut total = 0;
    for (k, c) in AXIOMS.iter().zip(&counts) {
        emit!(out, "{} {c}", axiom_name(*k))?;
        total += c;
    }
    emit!(out, "violations {total}")?;
    if total > 0 {
        return Err(CliError::Check(format!("{total} axiom violations")));
    }
    Ok(())
}

fn axiom_counts<P: Value>(b: &AnyBetweenness<P>, triples: &[(P, P, P)], tol: f64) -> Vec<usize> {
    let r = check_axioms(b, &P::default_space(), triples, tol);
    AXIOMS.iter().map(|&k| r.count(k)).collect()
}

/// Prints one verified inequality and remembers failures.
struct Checks<'a> {
    out: &'a mut dyn Write,
    failed: Vec<String>,
}

impl Checks<'_> {
    fn le(&mut self, name: &str, value: f64, bound: f64) -> CliResult<()> {
        self.line(name, value, "<=", bound, value <= bound)
    }

    fn ge(&mut self, name: &str, value: f64, bound: f64) -> CliResult<()> {
        self.line(name, value, ">=", bound, value >= bound)
    }

    fn line(&mut self, name: &str, value: f64, op: &str, bound: f64, ok: bool) -> CliResult<()> {
        emit!(self.out, "{name} {} {op} {} {}", sig6(value), sig6(bound), if ok { "ok" } else { "FAILED" })?;
        if !ok {
            self.failed.push(name.to_string());
        }
        Ok(())
    }

    fn finish(self) -> CliResult<()> {
        if self.failed.is_empty() {
            Ok(())
        } else {
            Err(CliError::Check(format!("failed checks: {}", self.failed.join(", "))))
        }
    }
}

fn write_sets(dir: Option<&PathBuf>, sets: &[(String, &OrderedPointSet<f64>)], out: &mut dyn Write) -> CliResult<()> {
    let Some(dir) = dir else { return Ok(()) };
    std::fs::create_dir_all(dir).map_err(|e| CliError::input(format!("{}: {e}", dir.display())))?;
    for (name, set) in sets {
        let file = dir.join(format!("{name}.json"));
        io::write_json(&file, &io::set_to_json(set))?;
        emit!(out, "wrote {}", file.display())?;
    }
    Ok(())
}

fn run_gen(kind: &GenKind, env_budget: Option<&str>, out: &mut dyn Write) -> CliResult<()> {
    let budget = io::budget(&ConfigFile::default(), env_budget)?;
    let space = f64::default_space();
    match kind {
        GenKind::Noop { m, eps, out: dir } => {
            let (k1, k2) = gen_noop(*m, *eps)?;
            write_sets(dir.as_ref(), &[("k1".into(), &k1), ("k2".into(), &k2)], out)?;
            let lo = d_m(&space, &k1, &k2, *m, &budget)?;
            let hi = d_m(&space, &k1, &k2, m + 1, &budget)?;
            let part = d_part(&space, &k1, &k2, &budget)?;
            let (tot, _) = d_tot(&space, &k1, &k2)?;
            let mut c = Checks { out, failed: Vec::new() };
            c.le(&format!("d^<{m}>"), lo, *eps)?;
            c.ge(&format!("d^<{}>", m + 1), hi, 0.5)?;
            if *m >= 2 {
                c.le("d_part", part, 2.0 * eps * tot)?;
            }
            emit!(c.out, "d_tot {}", sig6(tot))?;
            emit!(c.out, "ratio d_part/d_tot {}", sig6(part / tot))?;
            c.finish()
        }
        GenKind::Diftop { m, n, out: dir } => {
            let (kn, k) = gen_diftop(*m, *n)?;
            write_sets(dir.as_ref(), &[(format!("k_{n}"), &kn), ("k".into(), &k)], out)?;
            let lo = d_m(&space, &kn, &k, *m, &budget)?;
            let hi = d_m(&space, &kn, &k, m + 1, &budget)?;
            let mut c = Checks { out, failed: Vec::new() };
            c.le(&format!("d^<{m}>"), lo, 0.1 / *n as f64)?;
            c.ge(&format!("d^<{}>", m + 1), hi, 0.5)?;
            c.finish()
        }
        GenKind::Noncompl { n, out: dir } => {
            if *n < 2 {
                return Err(CliError::input("--n must be at least 2"));
            }
            let ks: Vec<usize> = (2..=*n).collect();
            let eps: Vec<f64> = ks.iter().map(|&k| 1.0 / k as f64).collect();
            let sets = gen_noncompl(&eps)?;
            let named: Vec<(String, &OrderedPointSet<f64>)> =
                ks.iter().zip(&sets).map(|(k, s)| (format!("k_{k}"), s)).collect();
            write_sets(dir.as_ref(), &named, out)?;
            let header: Vec<String> = ks.iter().map(|k| format!("K_{k}")).collect();
            emit!(out, "d_tot,{}", header.join(","))?;
            let mut bad = Vec::new();
            for (i, a) in sets.iter().enumerate() {
                let mut row = Vec::with_capacity(sets.len());
                for (j, b) in sets.iter().enumerate() {
                    let (d, _) = d_tot(&space, a, b)?;
                    if d > (eps[i] - eps[j]).abs() + 1e-12 {
                        bad.push(format!("d_tot(K_{}, K_{})", ks[i], ks[j]));
                    }
                    row.push(sig6(d));
                }
                emit!(out, "K_{},{}", ks[i], row.join(","))?;
            }
            let mut c = Checks { out, failed: bad };
            for (i, k) in sets.iter().enumerate() {
                c.ge(&format!("mismatch(K_{}, 1/{})", ks[i], ks[i]), mismatch_modulus(&space, k, eps[i]), 1.0 - eps[i])?;
            }
            c.finish()
        }
    }
}

fn run_converge(a: &ConvergeArgs, env_budget: Option<&str>, out: &mut dyn Write) -> CliResult<()> {
    let s = a.common.settings(env_budget)?;
    let mut members = Vec::new();
    for f in io::json_files(&a.sequence)? {
        let n = io::trailing_number(&f)
            .ok_or_else(|| CliError::input(format!("{}: file name must end in a number", f.display())))?;
        if a.n.is_empty() || a.n.contains(&n) {
            members.push((n, f));
        }
    }
    for n in &a.n {
        if !members.iter().any(|(m, _)| m == n) {
            return Err(CliError::input(format!("{}: no member numbered {n}", a.sequence.display())));
        }
    }
    members.sort_by_key(|(n, _)| *n);
    let limit = io::read_path(&a.limit)?;
    let mut paths = Vec::with_capacity(members.len() + 1);
    for (_, f) in &members {
        paths.push(io::read_path(f)?);
    }
    paths.push(limit);
    let ns: Vec<u64> = members.iter().map(|(n, _)| *n).collect();
    match Family::from_paths(paths)? {
        Family::Real(ps) => converge_rows(ps, &ns, a, &s, out),
        Family::Vector(ps, _) => converge_rows(ps, &ns, a, &s, out),
    }
}

fn converge_rows<P: Value>(
    mut ps: Vec<Path<P>>,
    ns: &[u64],
    a: &ConvergeArgs,
    s: &Settings,
    out: &mut dyn Write,
) -> CliResult<()> {
    if let Some(t) = a.restrict {
        ps = ps.iter().map(|p| restrict(p, t)).collect::<Result<_, _>>()?;
    }
    let limit = ps.pop().expect("the limit is last");
    let b = betweenness_for(&a.common.mode, ps.iter().chain([&limit]))?;
    let space = P::default_space();
    emit!(out, "n,distance,error_bar")?;
    for (n, p) in ns.iter().zip(&ps) {
        let d = path_dist(p, &limit, &b, &space, &s.cfg, &s.opts, a.variant.into());
        emit!(out, "{n},{},{}", sig6(d.value), sig6(d.error_bar))?;
    }
    Ok(())
}

fn run_matrix(a: &MatrixArgs, env_budget: Option<&str>, out: &mut dyn Write) -> CliResult<()> {
    let s = a.common.settings(env_budget)?;
    let (files, family) = load_family(&a.dir)?;
    let m = match &family {
        Family::Real(ps) => {
            let b = betweenness_for(&a.common.mode, ps)?;
            distance_matrix(ps, &b, &f64::default_space(), &s.cfg, &s.opts, a.variant.into())
        }
        Family::Vector(ps, _) => {
            let b = betweenness_for(&a.common.mode, ps)?;
            distance_matrix(ps, &b, &<Vec<f64>>::default_space(), &s.cfg, &s.opts, a.variant.into())
        }
    };
    let names: Vec<String> = files.iter().map(|f| file_name(f)).collect();
    let mut csv = format!("file,{}\n", names.join(","));
    for (i, name) in names.iter().enumerate() {
        let row: Vec<String> = (0..m.n).map(|j| sig6(m.get(i, j))).collect();
        csv.push_str(&format!("{name},{}\n", row.join(",")));
    }
    match &a.out {
        Some(file) => {
            std::fs::write(file, csv).map_err(|e| CliError::input(format!("{}: {e}", file.display())))?;
            emit!(out, "wrote {} ({} x {}, error_bar {})", file.display(), m.n, m.n, sig6(m.error_bar))
        }
        None => out.write_all(csv.as_bytes()).map_err(CliError::from),
    }
}
