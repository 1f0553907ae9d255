//! Command-line front end: single runs, table and figure data, CSV output.
//!
//! Options come from flags and, optionally, a `key = value` config file
//! named by `--config`; flags win. Keys are the long flag names without the
//! leading dashes.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, ValueEnum};
use rand_distr::{Distribution, StandardNormal};

use crate::biortho::{two_sided_gs, BiorthConfig, BiorthStatus, GsVariant};
use crate::dense::DenseMatrix;
use crate::diagnostics::{biorth_loss, cond2, decomposition_error, sketch_biorth_error};
use crate::error::Error;
use crate::lanczos::{nonsym_lanczos, rand_nonsym_lanczos, ritz_triplets, LanczosResult, MatrixOracle};
use crate::mtx;
use crate::rbiortho::{randomized_two_sided_gs, PrecisionPolicy, RBiorthConfig};
use crate::rng::{domain, stream_rng};
use crate::sketching::{default_sketch_dim, default_zeta, Scaling, SketchKind, SketchOperator};
use crate::testmatrices::{
    default_s_grid, gen_gaussian_pair, gen_ill_conditioned, gen_prescribed_spectrum, sketched_orthogonal_ip_experiment,
    SpectrumSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Biortho,
    Rbiortho,
    Lanczos,
    Rlanczos,
    Fig1,
    Table1,
    Table2,
    Table4,
    Fig5,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

/// Input pair for `biortho` and `rbiortho` when no file is given.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PairKind {
    Gaussian,
    IllConditioned,
}

#[derive(Debug, Parser)]
#[command(name = "biorth", version, about = "Deterministic and randomized two-sided Gram-Schmidt, nonsymmetric Lanczos")]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

/// Every field is optional so that a config file can fill the gaps.
#[derive(Debug, Clone, Default, Args)]
pub struct Options {
    /// Ambient dimension (rows).
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of columns, or Lanczos steps.
    #[arg(long)]
    pub m: Option<usize>,
    /// Sketch dimension; defaults to min(n, 4(m+1)).
    #[arg(long)]
    pub s: Option<usize>,
    /// Nonzeros per column of a sparse sign sketch.
    #[arg(long)]
    pub zeta: Option<usize>,
    /// CGS, MGS or CGS_O (an `r` prefix is accepted).
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long)]
    pub passes: Option<usize>,
    /// sparse-sign, gaussian or identity.
    #[arg(long)]
    pub sketch_kind: Option<String>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// double or mixed.
    #[arg(long)]
    pub precision: Option<String>,
    /// Matrix Market file: `A` for Lanczos, `X` for biorthogonalization.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Matrix Market file for `Y`; defaults to the `--input` matrix.
    #[arg(long)]
    pub input_y: Option<PathBuf>,
    /// gaussian or ill-conditioned.
    #[arg(long)]
    pub pair: Option<String>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Condition number of the similarity in the generated Lanczos matrix.
    #[arg(long)]
    pub cond_x: Option<f64>,
    /// Number of leading Ritz pairs to report.
    #[arg(long)]
    pub k: Option<usize>,
    /// Fill the `time_s` column; without it the output is reproducible
    /// byte for byte.
    #[arg(long)]
    pub timing: bool,
}

/// Failure categories with their exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitKind {
    Numerical,
    Config,
    Io,
    Breakdown,
    Format,
}

impl ExitKind {
    pub fn code(self) -> i32 {
        match self {
            ExitKind::Numerical => 1,
            ExitKind::Config => 2,
            ExitKind::Io => 3,
            ExitKind::Breakdown => 4,
            ExitKind::Format => 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    fn config(msg: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Config,
            message: msg.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::Io(_) => ExitKind::Io,
            Error::Format(_) => ExitKind::Format,
            Error::InvalidArgument(_) | Error::DimensionMismatch { .. } => ExitKind::Config,
            _ => ExitKind::Numerical,
        };
        Self {
            kind,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Fully resolved options for one command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub m: usize,
    pub s: Option<usize>,
    pub zeta: Option<usize>,
    pub variant: GsVariant,
    pub passes: usize,
    pub sketch_kind: Option<SketchKind>,
    pub seed: u64,
    pub precision: PrecisionPolicy,
    pub input_path: Option<PathBuf>,
    pub input_y_path: Option<PathBuf>,
    pub pair: PairKind,
    pub out_path: Option<PathBuf>,
    pub trials: usize,
    pub cond_x: f64,
    pub k: usize,
    pub timing: bool,
}

const CONFIG_KEYS: &[&str] = &[
    "n", "m", "s", "zeta", "variant", "passes", "sketch-kind", "seed", "precision", "input", "input-y", "pair", "out",
    "trials", "cond-x", "k", "timing",
];

/// Parses `key = value` lines; `#` starts a comment. Underscores in keys
/// are read as dashes.
pub fn parse_config(text: &str) -> CliResult<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::config(format!("config line {}: expected `key = value`", i + 1)))?;
        let key = k.trim().replace('_', "-");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(CliError::config(format!("config line {}: unknown key `{}`", i + 1, k.trim())));
        }
        out.insert(key, v.trim().to_string());
    }
    Ok(out)
}

fn parse_value<T: FromStr>(key: &str, v: &str) -> CliResult<T>
where
    T::Err: fmt::Display,
{
    v.parse().map_err(|e| CliError::config(format!("invalid value `{v}` for {key}: {e}")))
}

fn pick<T: FromStr>(flag: Option<T>, file: &BTreeMap<String, String>, key: &str) -> CliResult<Option<T>>
where
    T::Err: fmt::Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get(key).map(|v| parse_value(key, v)).transpose(),
    }
}

fn parse_pair(v: &str) -> CliResult<PairKind> {
    PairKind::from_str(v, true).map_err(|_| CliError::config(format!("unknown input pair `{v}`")))
}

impl RunConfig {
    /// Merges flags over the config file and fills per-command defaults.
    pub fn resolve(command: Command, opts: &Options) -> CliResult<Self> {
        let file = match &opts.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| CliError {
                    kind: ExitKind::Io,
                    message: format!("cannot read config {}: {e}", path.display()),
                })?;
                parse_config(&text)?
            }
            None => BTreeMap::new(),
        };
        Self::resolve_with(command, opts, &file)
    }

    pub fn resolve_with(command: Command, opts: &Options, file: &BTreeMap<String, String>) -> CliResult<Self> {
        let (n_def, m_def) = match command {
            Command::Table1 | Command::Table4 => (10_000, 200),
            Command::Table2 => (10_000, 500),
            Command::Fig1 => (10_000, 0),
            Command::Lanczos | Command::Rlanczos | Command::Fig5 => (1000, 100),
            Command::Biortho | Command::Rbiortho => (1000, 50),
        };
        let input_path = pick(opts.input.clone(), file, "input")?;
        let (variant_def, passes_def) = match command {
            Command::Lanczos => (GsVariant::Mgs, 2),
            Command::Rlanczos | Command::Rbiortho => (GsVariant::CgsO, 2),
            _ => (GsVariant::Mgs, 2),
        };
        let variant = match pick::<String>(opts.variant.clone(), file, "variant")? {
            Some(v) => v.parse().map_err(|e: Error| CliError::config(e.to_string()))?,
            None => variant_def,
        };
        let sketch_kind = match pick::<String>(opts.sketch_kind.clone(), file, "sketch-kind")? {
            Some(v) => Some(v.parse().map_err(|e: Error| CliError::config(e.to_string()))?),
            None => None,
        };
        let precision = match pick::<String>(opts.precision.clone(), file, "precision")? {
            Some(v) => v.parse().map_err(|e: Error| CliError::config(e.to_string()))?,
            None => PrecisionPolicy::uniform(),
        };
        let pair = match pick::<String>(opts.pair.clone(), file, "pair")? {
            Some(v) => parse_pair(&v)?,
            None => PairKind::Gaussian,
        };
        let timing = opts.timing || pick::<bool>(None, file, "timing")?.unwrap_or(false);
        let cfg = RunConfig {
            command,
            n: pick(opts.n, file, "n")?.unwrap_or(n_def),
            m: pick(opts.m, file, "m")?.unwrap_or(m_def),
            s: pick(opts.s, file, "s")?,
            zeta: pick(opts.zeta, file, "zeta")?,
            variant,
            passes: pick(opts.passes, file, "passes")?.unwrap_or(passes_def),
            sketch_kind,
            seed: pick(opts.seed, file, "seed")?.unwrap_or(1),
            precision,
            input_y_path: pick(opts.input_y.clone(), file, "input-y")?,
            input_path,
            pair,
            out_path: pick(opts.out.clone(), file, "out")?,
            trials: pick(opts.trials, file, "trials")?.unwrap_or(100),
            cond_x: pick(opts.cond_x, file, "cond-x")?.unwrap_or(100.0),
            k: pick(opts.k, file, "k")?.unwrap_or(10),
            timing,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> CliResult<()> {
        let needs_m = !matches!(self.command, Command::Fig1);
        if self.n == 0 || (needs_m && self.m == 0) {
            return Err(CliError::config("n and m must be positive"));
        }
        if self.passes == 0 || self.trials == 0 {
            return Err(CliError::config("passes and trials must be positive"));
        }
        if self.s == Some(0) || self.zeta == Some(0) {
            return Err(CliError::config("s and zeta must be positive"));
        }
        if needs_m && self.input_path.is_none() && self.m > self.n {
            return Err(CliError::config(format!("m = {} exceeds n = {}", self.m, self.n)));
        }
        if !(self.cond_x >= 1.0) {
            return Err(CliError::config("cond-x must be at least 1"));
        }
        Ok(())
    }

    /// Sketch for `columns` columns of length `n`.
    pub fn sketch(&self, n: usize, columns: usize) -> CliResult<SketchOperator> {
        let s = self.s.unwrap_or_else(|| default_sketch_dim(n, columns));
        let zeta = self.zeta.unwrap_or_else(|| default_zeta(s));
        let zeta = (self.sketch_kind() == SketchKind::SparseSign).then_some(zeta);
        Ok(SketchOperator::new(self.sketch_kind(), s, n, zeta, self.seed, Scaling::Standard)?)
    }

    /// The named sketch kind, sparse sign by default.
    pub fn sketch_kind(&self) -> SketchKind {
        self.sketch_kind.unwrap_or(SketchKind::SparseSign)
    }
}

/// One row of a stability table.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodRow {
    pub method: String,
    pub time_s: f64,
    pub cond_q: f64,
    pub cond_p: f64,
    pub err_x: f64,
    pub err_y: f64,
    /// Loss of biorthogonality, or of sketch-biorthogonality for the
    /// randomized methods.
    pub biorth: f64,
    pub status: BiorthStatus,
}

pub const TABLE_HEADER: &str = "method,time_s,cond_Q,cond_P,err_X,err_Y,biorth,status";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn status_cell(s: &BiorthStatus) -> String {
    match s {
        BiorthStatus::Complete => "complete".into(),
        BiorthStatus::Breakdown { step, .. } => format!("breakdown@{step}"),
    }
}

impl MethodRow {
    pub fn csv_line(&self, timing: bool) -> String {
        let time = if timing { num(self.time_s) } else { String::new() };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.method,
            time,
            num(self.cond_q),
            num(self.cond_p),
            num(self.err_x),
            num(self.err_y),
            num(self.biorth),
            status_cell(&self.status)
        )
    }
}

pub fn rows_to_csv(rows: &[MethodRow], timing: bool) -> String {
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.csv_line(timing));
        out.push('\n');
    }
    out
}

fn cond_or_nan(m: &DenseMatrix<f64>) -> f64 {
    if m.ncols() == 0 {
        f64::NAN
    } else {
        cond2(m).unwrap_or(f64::INFINITY)
    }
}

/// Runs the deterministic process and measures it.
pub fn deterministic_row(x: &DenseMatrix<f64>, y: &DenseMatrix<f64>, cfg: &BiorthConfig) -> CliResult<MethodRow> {
    let start = Instant::now();
    let res = two_sided_gs(x, y, cfg)?;
    let time_s = start.elapsed().as_secs_f64();
    let k = res.q.ncols();
    Ok(MethodRow {
        method: cfg.label(),
        time_s,
        cond_q: cond_or_nan(&res.q),
        cond_p: cond_or_nan(&res.p),
        err_x: decomposition_error(&x.leading_cols(k), &res.q, &res.tx)?,
        err_y: decomposition_error(&y.leading_cols(k), &res.p, &res.ty)?,
        biorth: biorth_loss(&res.q, &res.p)?,
        status: res.status,
    })
}

/// Runs the randomized process and measures it.
pub fn randomized_row(x: &DenseMatrix<f64>, y: &DenseMatrix<f64>, cfg: &RBiorthConfig) -> CliResult<MethodRow> {
    let start = Instant::now();
    let res = randomized_two_sided_gs(x, y, cfg)?;
    let time_s = start.elapsed().as_secs_f64();
    let k = res.q.ncols();
    Ok(MethodRow {
        method: cfg.label(),
        time_s,
        cond_q: cond_or_nan(&res.q),
        cond_p: cond_or_nan(&res.p),
        err_x: decomposition_error(&x.leading_cols(k), &res.q, &res.tx)?,
        err_y: decomposition_error(&y.leading_cols(k), &res.p, &res.ty)?,
        biorth: sketch_biorth_error(&res.sq, &res.sp)?,
        status: res.status,
    })
}

/// `(variant, passes)` rows of the two stability tables, deterministic
/// family first; the randomized family repeats the list.
pub const STABILITY_METHODS: [(GsVariant, usize); 7] = [
    (GsVariant::Mgs, 1),
    (GsVariant::Mgs, 2),
    (GsVariant::Cgs, 1),
    (GsVariant::Cgs, 2),
    (GsVariant::Cgs, 3),
    (GsVariant::CgsO, 1),
    (GsVariant::CgsO, 2),
];

/// Methods compared in double and mixed precision.
pub const MIXED_METHODS: [(GsVariant, usize); 3] = [(GsVariant::Mgs, 2), (GsVariant::Cgs, 3), (GsVariant::CgsO, 2)];

/// Every row of a stability table on the given pair.
pub fn stability_table(x: &DenseMatrix<f64>, y: &DenseMatrix<f64>, sketch: &SketchOperator) -> CliResult<Vec<MethodRow>> {
    let mut rows = Vec::new();
    for (v, p) in STABILITY_METHODS {
        rows.push(deterministic_row(x, y, &BiorthConfig::new(v, p))?);
    }
    for (v, p) in STABILITY_METHODS {
        rows.push(randomized_row(x, y, &RBiorthConfig::new(v, p, sketch.clone()))?);
    }
    Ok(rows)
}

/// Double precision rows followed by their mixed precision counterparts.
pub fn mixed_precision_table(x: &DenseMatrix<f64>, y: &DenseMatrix<f64>, sketch: &SketchOperator) -> CliResult<Vec<MethodRow>> {
    let mut rows = Vec::new();
    for (v, p) in MIXED_METHODS {
        rows.push(randomized_row(x, y, &RBiorthConfig::new(v, p, sketch.clone()))?);
    }
    for (v, p) in MIXED_METHODS {
        rows.push(randomized_row(x, y, &RBiorthConfig::new(v, p, sketch.clone()).mixed())?);
    }
    Ok(rows)
}

/// Random starting vectors for Lanczos.
pub fn start_vectors(n: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let draw = |i| {
        let mut rng = stream_rng(seed, domain::START_VECTORS, i);
        (0..n).map(|_| StandardNormal.sample(&mut rng)).collect::<Vec<f64>>()
    };
    (draw(0), draw(1))
}

/// The eigenvalue benchmark matrix: two-rate geometric decay, `κ(X) = cond_x`.
pub fn benchmark_matrix(n: usize, cond_x: f64, seed: u64) -> CliResult<DenseMatrix<f64>> {
    Ok(gen_prescribed_spectrum(&SpectrumSpec::two_rate_decay(n, cond_x)?, seed)?)
}

enum Operator {
    Dense(DenseMatrix<f64>),
    Sparse(mtx::CsrMatrix),
}

impl Operator {
    fn oracle(&self) -> &dyn MatrixOracle {
        match self {
            Operator::Dense(a) => a,
            Operator::Sparse(a) => a,
        }
    }
}

fn read_matrix(path: &Path) -> CliResult<mtx::CsrMatrix> {
    Ok(mtx::read_path(path)?)
}

fn lanczos_operator(cfg: &RunConfig) -> CliResult<Operator> {
    match &cfg.input_path {
        Some(path) => {
            let a = read_matrix(path)?;
            if a.nrows() != a.ncols() {
                return Err(CliError::config(format!(
                    "Lanczos needs a square matrix, {} is {} x {}",
                    path.display(),
                    a.nrows(),
                    a.ncols()
                )));
            }
            Ok(Operator::Sparse(a))
        }
        None => Ok(Operator::Dense(benchmark_matrix(cfg.n, cfg.cond_x, cfg.seed)?)),
    }
}

fn run_lanczos(a: &dyn MatrixOracle, cfg: &RunConfig, randomized: bool, variant: GsVariant, passes: usize) -> CliResult<LanczosResult> {
    let n = a.dim();
    if cfg.m > n {
        return Err(CliError::config(format!("m = {} exceeds the matrix dimension {n}", cfg.m)));
    }
    let (q1, p1) = start_vectors(n, cfg.seed);
    if randomized {
        let s = cfg.s.unwrap_or_else(|| default_sketch_dim(n, cfg.m));
        let mut sk = cfg.clone();
        sk.s = Some(s);
        let rcfg = RBiorthConfig {
            precision: cfg.precision,
            ..RBiorthConfig::new(variant, passes, sk.sketch(n, cfg.m)?)
        };
        Ok(rand_nonsym_lanczos(a, &q1, &p1, cfg.m, &rcfg)?)
    } else {
        Ok(nonsym_lanczos(a, &q1, &p1, cfg.m, &BiorthConfig::new(variant, passes))?)
    }
}

pub const RITZ_HEADER: &str = "rank,theta_re,theta_im,res_right,res_left,warning";

fn ritz_csv(a: &dyn MatrixOracle, res: &LanczosResult, k: usize) -> CliResult<String> {
    let trip = ritz_triplets(a, res, k.min(res.steps()))?;
    let mut out = format!("# method={} steps={} status={}\n{RITZ_HEADER}\n", res.method, res.steps(), status_cell(&res.status));
    for (i, t) in trip.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            i + 1,
            num(t.theta.re),
            num(t.theta.im),
            num(t.res_right),
            num(t.res_left),
            t.warning.as_deref().unwrap_or("").replace(',', ";")
        );
    }
    Ok(out)
}

pub const FIG5_HEADER: &str = "method,iteration,rank,theta_re,theta_im,res_right";

/// Per-iteration right residuals of the `k` leading Ritz pairs.
pub fn fig5_csv(a: &dyn MatrixOracle, runs: &[LanczosResult], k: usize) -> CliResult<String> {
    let mut out = String::from(FIG5_HEADER);
    out.push('\n');
    for res in runs {
        for j in 1..=res.steps() {
            let lead = res.leading(j)?;
            for (r, t) in ritz_triplets(a, &lead, k.min(j))?.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    res.method,
                    j,
                    r + 1,
                    num(t.theta.re),
                    num(t.theta.im),
                    num(t.res_right)
                );
            }
        }
    }
    Ok(out)
}

fn input_pair(cfg: &RunConfig) -> CliResult<(DenseMatrix<f64>, DenseMatrix<f64>)> {
    if let Some(px) = &cfg.input_path {
        let x = read_matrix(px)?.to_dense();
        let y = match &cfg.input_y_path {
            Some(py) => read_matrix(py)?.to_dense(),
            None => x.clone(),
        };
        if x.shape() != y.shape() {
            return Err(CliError::config(format!("X is {:?} but Y is {:?}", x.shape(), y.shape())));
        }
        return Ok((x, y));
    }
    Ok(match cfg.pair {
        PairKind::Gaussian => gen_gaussian_pair(cfg.n, cfg.m, cfg.seed)?,
        PairKind::IllConditioned => gen_ill_conditioned(cfg.n, cfg.m)?,
    })
}

/// What a command produced: the output text and whether a breakdown
/// occurred in a single-run command.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub output: String,
    pub breakdown: bool,
}

/// Runs one command and returns its output.
pub fn execute(cfg: &RunConfig) -> CliResult<Outcome> {
    let single = |rows: Vec<MethodRow>| Outcome {
        breakdown: rows.iter().any(|r| !r.status.is_complete()),
        output: rows_to_csv(&rows, cfg.timing),
    };
    match cfg.command {
        Command::Biortho => {
            let (x, y) = input_pair(cfg)?;
            Ok(single(vec![deterministic_row(&x, &y, &BiorthConfig::new(cfg.variant, cfg.passes))?]))
        }
        Command::Rbiortho => {
            let (x, y) = input_pair(cfg)?;
            let rcfg = RBiorthConfig {
                precision: cfg.precision,
                ..RBiorthConfig::new(cfg.variant, cfg.passes, cfg.sketch(x.nrows(), x.ncols())?)
            };
            Ok(single(vec![randomized_row(&x, &y, &rcfg)?]))
        }
        Command::Lanczos | Command::Rlanczos => {
            let op = lanczos_operator(cfg)?;
            let res = run_lanczos(op.oracle(), cfg, cfg.command == Command::Rlanczos, cfg.variant, cfg.passes)?;
            Ok(Outcome {
                output: ritz_csv(op.oracle(), &res, cfg.k)?,
                breakdown: !res.status.is_complete(),
            })
        }
        Command::Table1 | Command::Table4 => {
            let (x, y) = gen_ill_conditioned(cfg.n, cfg.m)?;
            let sketch = cfg.sketch(cfg.n, cfg.m)?;
            let rows = if cfg.command == Command::Table1 {
                stability_table(&x, &y, &sketch)?
            } else {
                mixed_precision_table(&x, &y, &sketch)?
            };
            Ok(Outcome {
                output: rows_to_csv(&rows, cfg.timing),
                breakdown: false,
            })
        }
        Command::Table2 => {
            let (x, y) = gen_gaussian_pair(cfg.n, cfg.m, cfg.seed)?;
            let rows = stability_table(&x, &y, &cfg.sketch(cfg.n, cfg.m)?)?;
            Ok(Outcome {
                output: rows_to_csv(&rows, cfg.timing),
                breakdown: false,
            })
        }
        Command::Fig1 => {
            let kinds = match cfg.sketch_kind {
                Some(k) => vec![k],
                None => vec![SketchKind::SparseSign, SketchKind::Gaussian],
            };
            let grid: Vec<usize> = match cfg.s {
                Some(s) => vec![s],
                None => default_s_grid().into_iter().filter(|&s| s <= cfg.n).collect(),
            };
            let table = sketched_orthogonal_ip_experiment(cfg.n, &grid, cfg.trials, &kinds, cfg.seed)?;
            Ok(Outcome {
                output: table.to_csv(),
                breakdown: false,
            })
        }
        Command::Fig5 => {
            let op = lanczos_operator(cfg)?;
            let det = run_lanczos(op.oracle(), cfg, false, GsVariant::Mgs, 2)?;
            let rnd = run_lanczos(op.oracle(), cfg, true, GsVariant::CgsO, 2)?;
            Ok(Outcome {
                output: fig5_csv(op.oracle(), &[det, rnd], cfg.k)?,
                breakdown: false,
            })
        }
    }
}

/// Parses arguments, runs, writes the output and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { ExitKind::Config.code() } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.command, &cli.options) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.kind.code()
        }
    }
}

/// Resolves options, executes and writes the output.
pub fn run(command: Command, opts: &Options) -> CliResult<i32> {
    let cfg = RunConfig::resolve(command, opts)?;
    let outcome = execute(&cfg)?;
    match &cfg.out_path {
        Some(path) => std::fs::write(path, &outcome.output).map_err(|e| CliError {
            kind: ExitKind::Io,
            message: format!("cannot write {}: {e}", path.display()),
        })?,
        None => print!("{}", outcome.output),
    }
    if outcome.breakdown {
        eprintln!("error: numerical breakdown, partial results written");
        return Ok(ExitKind::Breakdown.code());
    }
    Ok(0)
}
