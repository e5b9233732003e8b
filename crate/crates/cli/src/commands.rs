//! Each command is a thin call into `powtool-core`; results are shaped into
//! JSON values with equations and polynomials as strings.

use std::collections::BTreeMap;

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use powtool_core::numeric::{confinement_detect, ec_search, BallSpec, Hyperplane, SearchOptions, SolveReport};
use powtool_core::predimension::{
    build_phi_certificate, classify_pair_with, delta_parts, eval_phi_certificate, quotient_pair, ClassifyOptions,
    Configuration, Disjunct, NormalVerdict, PhiCertificate, PointData,
};
use powtool_core::subspace::QLinearSubspace;
use powtool_core::toric::{buchberger, dim_variety, Dimension, LaurentIdeal, LaurentPoly, MonomialOrder, DEFAULT_PAIR_BUDGET};
use powtool_core::PowError;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::dsl::{KernelMode, ParseError, ProblemFile};
use crate::report::{inputs_digest, Report, Settings, SCHEMA};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Analyze,
    Delta,
    Quotient,
    Cert,
    Solve,
    Confine,
    Gbdim,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Delta => "delta",
            Command::Quotient => "quotient",
            Command::Cert => "cert",
            Command::Solve => "solve",
            Command::Confine => "confine",
            Command::Gbdim => "gbdim",
        }
    }

    fn needs_seed(self) -> bool {
        matches!(self, Command::Solve | Command::Confine)
    }
}

/// Command-line overrides; `None` defers to the file, then to defaults.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Flags {
    pub height: Option<u32>,
    pub torsion: Option<u64>,
    pub seed: Option<u64>,
    pub precision: Option<usize>,
    pub radius: Option<f64>,
    pub budget: Option<usize>,
}

pub const DEFAULT_HEIGHT: u32 = 2;
pub const DEFAULT_TORSION: u64 = 3;
pub const DEFAULT_PRECISION: usize = 128;
pub const DEFAULT_RADIUS: f64 = 1.0;
pub const DEFAULT_BUDGET: usize = 200;
/// Tolerance for grouping solutions into cosets.
pub const CONFINE_TOL: f64 = 1e-8;

pub fn resolve_settings(file: &ProblemFile, flags: &Flags) -> Settings {
    Settings {
        height: flags.height.or(file.height).unwrap_or(DEFAULT_HEIGHT),
        torsion: flags.torsion.or(file.torsion).unwrap_or(DEFAULT_TORSION),
        seed: flags.seed.or(file.seed),
        precision: flags.precision.or(file.precision).unwrap_or(DEFAULT_PRECISION),
        radius: flags.radius.or(file.radius).unwrap_or(DEFAULT_RADIUS),
        budget: flags.budget.or(file.budget).unwrap_or(DEFAULT_BUDGET),
        groebner: file.groebner.unwrap_or(DEFAULT_PAIR_BUDGET),
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(ParseError),
    #[error("{0}")]
    Library(PowError),
    #[error("{0}")]
    Precondition(String),
}

impl From<PowError> for CliError {
    fn from(e: PowError) -> Self {
        CliError::Library(e)
    }
}

impl CliError {
    /// 1 I/O, 3 parse error, 4 budget exceeded, 5 unmet precondition.
    /// Usage errors exit with 2 before any file is read.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) => 1,
            CliError::Parse(_) => 3,
            CliError::Library(PowError::BudgetExceeded(_)) => 4,
            CliError::Library(_) | CliError::Precondition(_) => 5,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io(_) => "io",
            CliError::Parse(_) => "parse",
            CliError::Library(PowError::BudgetExceeded(_)) => "budget_exceeded",
            CliError::Library(_) | CliError::Precondition(_) => "precondition",
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Serialize)]
struct SubspaceView {
    dim: usize,
    equations: Vec<String>,
}

fn subspace(s: &QLinearSubspace) -> SubspaceView {
    SubspaceView { dim: s.dim(), equations: s.equations() }
}

fn generators(w: &LaurentIdeal) -> Vec<String> {
    w.nonzero_generators().map(LaurentPoly::to_string).collect()
}

fn int_value(v: &BigInt) -> Value {
    v.to_i64().map_or_else(|| json!(v.to_string()), |x| json!(x))
}

fn int_rows(rows: &[Vec<BigInt>]) -> Vec<Vec<Value>> {
    rows.iter().map(|r| r.iter().map(int_value).collect()).collect()
}

fn dimension(d: Dimension) -> Value {
    match d {
        Dimension::Empty => json!("empty"),
        Dimension::Dim(k) => json!(k),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

const INDEPENDENCE_CAVEAT: &str =
    "symbolic results treat l1..lm as algebraically independent; their numeric values are not inspected";

/// Runs one command on a parsed problem.
pub fn run_command(cmd: Command, path: &str, file: &ProblemFile, flags: &Flags) -> CliResult<Report> {
    let settings = resolve_settings(file, flags);
    if cmd.needs_seed() && settings.seed.is_none() {
        return Err(CliError::Precondition(format!("{} requires a seed (--seed or a 'seed' directive)", cmd.name())));
    }
    let config = file.configuration()?;
    let mut warnings = Vec::new();
    let symbolic = !matches!(cmd, Command::Solve | Command::Confine);
    if symbolic && file.lambdas.iter().any(Option::is_some) {
        warnings.push(INDEPENDENCE_CAVEAT.to_string());
    }
    let result = match cmd {
        Command::Analyze => analyze(&config, &settings, &mut warnings)?,
        Command::Delta => {
            let parts = delta_parts(&config, settings.groebner)?;
            json!({
                "lin_dim_k": parts.lin_dim_k,
                "tr_deg": parts.tr_deg,
                "lin_dim_q": parts.lin_dim_q,
                "delta": parts.delta(),
            })
        }
        Command::Quotient => {
            let m = file.m_subspace().ok_or_else(|| CliError::Precondition("quotient needs 'M' vectors".into()))?;
            let q = quotient_pair(&config, &m, settings.groebner)?;
            json!({
                "m": to_value(&subspace(&m)),
                "characters": int_rows(&m.character_rows()),
                "n": q.n,
                "l": q.l,
                "linear": q.linear.equations(),
                "variety": generators(&q.variety),
            })
        }
        Command::Cert => cert(file, &config, &settings)?,
        Command::Solve => {
            let report = solve(file, &config, &settings)?;
            if report.solutions.is_empty() {
                warnings.push("no solution found within the attempt budget".into());
            }
            solve_value(&report)
        }
        Command::Confine => confine(file, &config, &settings, &mut warnings)?,
        Command::Gbdim => {
            let w = config.specialized_variety()?;
            let gb = buchberger(&w, MonomialOrder::GrevLex, settings.groebner)?;
            let names = LaurentPoly::default_names(w.nvars());
            json!({
                "order": "grevlex",
                "basis": gb.polys.iter().map(|p| p.fmt_with(&names)).collect::<Vec<_>>(),
                "dimension": dimension(dim_variety(&w, settings.groebner)?),
            })
        }
    };
    let canonical = file.to_string();
    Ok(Report {
        schema: SCHEMA,
        command: cmd.name().into(),
        file: path.into(),
        inputs_digest: Some(inputs_digest(&canonical, cmd.name(), &settings)),
        settings: Some(settings),
        result,
        warnings,
        error: None,
    })
}

fn analyze(config: &Configuration, settings: &Settings, warnings: &mut Vec<String>) -> CliResult<Value> {
    let opts = ClassifyOptions { budget: settings.groebner, ..ClassifyOptions::default() };
    let c = classify_pair_with(config, settings.height, &opts)?;
    let normality = match &c.normal_verdict {
        NormalVerdict::NormalUpToHeight { height, examined, complete } => {
            warnings.push(format!("normality verified only up to height {height}"));
            if !complete {
                warnings.push(format!("normality search stopped after {examined} subspaces"));
            }
            json!({ "verdict": "normal_up_to_height", "height": height, "examined": examined, "complete": complete })
        }
        NormalVerdict::ViolatedBy { witness, lhs, rhs } => {
            json!({ "verdict": "violated", "witness": to_value(&subspace(witness)), "lhs": lhs, "rhs": rhs })
        }
    };
    Ok(json!({
        "n": config.n,
        "l": config.l,
        "dim_l": c.dim_l,
        "dim_w": c.dim_w,
        "delta": c.delta,
        "free": c.is_free,
        "special": c.is_special,
        "normal": !c.normal_verdict.is_violated(),
        "envelope": to_value(&subspace(&c.envelope)),
        "n_l": to_value(&subspace(&c.n_l)),
        "normality": normality,
    }))
}

fn disjunct_name(d: &Disjunct) -> String {
    match d {
        Disjunct::Exceptional(i) => format!("exceptional({i})"),
        Disjunct::QuotientExceptional(i) => format!("quotient_exceptional({i})"),
        Disjunct::Torsion(i) => format!("torsion({i})"),
    }
}

pub fn certificate_value(cert: &PhiCertificate) -> Value {
    let ms: Vec<Value> = cert
        .ms
        .iter()
        .map(|md| {
            json!({
                "m": to_value(&subspace(&md.m)),
                "fiber_dim": md.fiber_dim,
                "characters": int_rows(&md.characters),
                "quotient_variety": generators(&md.quotient_variety),
                "quotient_n": to_value(&subspace(&md.quotient_n)),
                "quotient_fiber_dim": md.quotient_fiber_dim,
                "torsion_characters": int_rows(&md.torsion_characters),
                "torsion_cosets": md.torsion_cosets.iter().map(|c| json!({
                    "order": c.order,
                    "character_values": c.character_values.iter().map(int_value).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "special": cert.is_special,
        "torsion_bound": cert.torsion_bound,
        "candidates": ms,
        "disjuncts": cert.disjuncts.iter().map(disjunct_name).collect::<Vec<_>>(),
    })
}

fn cert(file: &ProblemFile, config: &Configuration, settings: &Settings) -> CliResult<Value> {
    let candidates: Vec<QLinearSubspace> = file.m_subspace().into_iter().collect();
    let cert = build_phi_certificate(config, &candidates, settings.torsion, settings.groebner)?;
    let mut value = certificate_value(&cert);
    if let Some(point) = &file.point {
        let w = file.torus_point().ok_or_else(|| CliError::Precondition("point has a zero coordinate".into()))?;
        let hit = eval_phi_certificate(&cert, &PointData { w, x: None })?;
        value["evaluation"] = json!({
            "point": point.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
            "first_disjunct": hit,
            "holds": hit.map(|i| disjunct_name(&cert.disjuncts[i])),
        });
    }
    Ok(value)
}

/// The search exactly as the CLI runs it: a ball of the given radius
/// centered at the origin of `L(0)`'s free coordinates.
pub fn solve(file: &ProblemFile, config: &Configuration, settings: &Settings) -> CliResult<SolveReport> {
    let emb = file.embedding(settings.precision).ok_or(PowError::NotRealEmbedded)?;
    let dim = config.l0().dim();
    let region = BallSpec::new(vec![0.0; dim], settings.radius)?;
    let avoid = file.avoid.iter().map(|h| Hyperplane::new(h.normal.clone(), h.offset)).collect::<Result<Vec<_>, _>>()?;
    let opts = SearchOptions {
        budget: settings.budget,
        seed: settings.seed.expect("seed checked by run_command"),
        ..SearchOptions::default()
    };
    Ok(ec_search(config, &emb, &region, &avoid, &opts)?)
}

fn solve_value(report: &SolveReport) -> Value {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for a in &report.attempts {
        let key = to_value(&a.status).as_str().expect("status is a string").to_string();
        *counts.entry(key).or_default() += 1;
    }
    let mut v = to_value(report);
    v["status_counts"] = to_value(&counts);
    v
}

fn confine(
    file: &ProblemFile,
    config: &Configuration,
    settings: &Settings,
    warnings: &mut Vec<String>,
) -> CliResult<Value> {
    if file.kernel == Some(KernelMode::Symbolic) {
        return Err(CliError::Precondition("confine needs a numeric kernel".into()));
    }
    let report = solve(file, config, settings)?;
    let zs: Vec<_> = report.solutions.iter().map(|s| s.z.clone()).collect();
    let confinement = if zs.is_empty() {
        warnings.push("no solution found within the attempt budget".into());
        Value::Null
    } else {
        to_value(&confinement_detect(&zs, &file.kernel_spec(settings.precision), settings.height, CONFINE_TOL)?)
    };
    Ok(json!({ "solve": solve_value(&report), "confinement": confinement }))
}
