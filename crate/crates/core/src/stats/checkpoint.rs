use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::bounds::{
    bound_dense_lower, bound_dense_upper, bound_sbt_lower, bound_sbt_upper, bound_sft_lower, bound_sft_upper,
};
use super::runs::xi_count_runs;
use super::xi::{xi_count, xi_ratio, PredicateMode, TrajectoryPoint, XiQuery};
use crate::constructions::{checkpoint_indices, Checkpoints, ScrambledPoint};
use crate::error::{Error, Result};

/// Default symbol budget per verification run.
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckpointKind {
    /// Ratio at `m_{ν_j}` must be at least the lower bound.
    LowerAtNu,
    /// Ratio at `m_{μ_j}` must be at most the upper bound.
    UpperAtMu,
}

impl CheckpointKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckpointKind::LowerAtNu => "lower_at_nu",
            CheckpointKind::UpperAtMu => "upper_at_mu",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckpointReport {
    pub kind: CheckpointKind,
    pub j: usize,
    /// `ν_j` or `μ_j`.
    pub index: u64,
    /// Evaluation length.
    pub n: BigUint,
    pub window: u64,
    pub count: BigUint,
    pub ratio: BigRational,
    pub bound: BigRational,
    pub satisfied: bool,
    /// Symbols compared to obtain `count`.
    pub reads: u64,
}

/// Which ξ engine evaluates checkpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Piecewise-periodic run accounting; cost independent of `n`.
    #[default]
    Runs,
    /// Sequential scan of `n + t - 1` symbols.
    Streaming,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "runs" => Ok(Engine::Runs),
            "streaming" => Ok(Engine::Streaming),
            _ => Err(Error::InvalidParameter(format!("unknown engine {s:?}"))),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Runs => "runs",
            Engine::Streaming => "streaming",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyParams {
    /// `q` (cylinder), `t` (dense) or `R` (bounded type).
    pub lower_window: u64,
    pub budget: u64,
    pub engine: Engine,
    pub mode: PredicateMode,
    /// How far base or selector streams are scanned for a first disagreement.
    pub scan_cap: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            lower_window: 3,
            budget: DEFAULT_BUDGET,
            engine: Engine::Runs,
            mode: PredicateMode::Window,
            scan_cap: 1 << 16,
        }
    }
}

struct Task {
    kind: CheckpointKind,
    j: usize,
    index: u64,
    n: BigUint,
    window: u64,
    bound: BigRational,
}

fn mismatch(what: &str) -> Error {
    Error::ConstructionMismatch(what.into())
}

fn plan(x: &ScrambledPoint, y: &ScrambledPoint, js: &[usize], params: &VerifyParams) -> Result<Vec<Task>> {
    let count = js.iter().max().map_or(0, |&j| j + 1);
    let strict = u64::from(params.mode == PredicateMode::Strict);
    let lw = params.lower_window;
    let mut tasks = Vec::new();
    let mut push = |cp: &Checkpoints,
                    n_of: &dyn Fn(usize) -> BigUint,
                    lower: &dyn Fn(usize) -> Result<BigRational>,
                    upper_window: u64,
                    upper: &dyn Fn(usize) -> Result<BigRational>|
     -> Result<()> {
        for &j in js {
            let nu = cp.nu[j];
            tasks.push(Task {
                kind: CheckpointKind::LowerAtNu,
                j,
                index: nu,
                n: n_of(nu as usize),
                window: lw,
                bound: lower(nu as usize)?,
            });
            let mu = cp.mu[j];
            tasks.push(Task {
                kind: CheckpointKind::UpperAtMu,
                j,
                index: mu,
                n: n_of(mu as usize),
                window: upper_window,
                bound: upper(mu as usize)?,
            });
        }
        Ok(())
    };
    match (x, y) {
        (ScrambledPoint::Sft(a), ScrambledPoint::Sft(b)) => {
            if a.word().len() != b.word().len() || a.safe_symbol() != b.safe_symbol() {
                return Err(mismatch("cylinder points need equal |w| and safe symbol"));
            }
            let cp = checkpoint_indices(a.base(), b.base(), count, params.scan_cap)?;
            let s = a.schedule();
            let w_len = a.word().len() as u64;
            push(
                &cp,
                &|k| s.m(k),
                &|nu| bound_sft_lower(nu, lw + strict, s),
                1,
                &|mu| bound_sft_upper(mu, w_len, s),
            )?;
        }
        (ScrambledPoint::Dense(a), ScrambledPoint::Dense(b)) => {
            if a.safe_symbol() != b.safe_symbol() {
                return Err(mismatch("dense points need the same safe symbol"));
            }
            let cp = checkpoint_indices(a.base(), b.base(), count, params.scan_cap)?;
            let s = a.schedule();
            let p = a.p().max(b.p()) as u64;
            let shift = a.p().abs_diff(b.p()) as u64;
            push(
                &cp,
                &|k| s.m(k) + p + 1u32,
                &|nu| bound_dense_lower(nu, lw + strict, p, shift, s),
                1,
                &|mu| bound_dense_upper(mu, p, shift, s),
            )?;
        }
        (ScrambledPoint::Sbt(a), ScrambledPoint::Sbt(b)) => {
            let (sa, sb) = (a.seed(), b.seed());
            if sa.a() != sb.a() || sa.block(0) != sb.block(0) || sa.block(1) != sb.block(1) {
                return Err(mismatch("bounded-type points come from different seeds"));
            }
            let cp = checkpoint_indices(a.selector().stream(), b.selector().stream(), count, params.scan_cap)?;
            let s = a.schedule();
            push(
                &cp,
                &|k| s.m(k),
                &|nu| bound_sbt_lower(nu, lw + strict, s),
                sa.block_len() as u64,
                &|mu| bound_sbt_upper(mu, s),
            )?;
        }
        _ => {
            return Err(Error::VariantMismatch {
                expected: x.variant_name(),
                found: y.variant_name(),
            })
        }
    }
    Ok(tasks)
}

/// Evaluates `ξ / n` at the checkpoints `ν_j`, `μ_j` for every `j` in `js`
/// and compares each against the matching bound. Evaluation lengths include
/// the construction's head (`p + 1` for the dense family; the cylinder
/// schedule already counts `1 + |w|`).
pub fn checkpoint_verify(
    x: &ScrambledPoint,
    y: &ScrambledPoint,
    js: &[usize],
    params: &VerifyParams,
) -> Result<Vec<CheckpointReport>> {
    let tasks = plan(x, y, js, params)?;
    let needed = |t: &Task| &t.n + t.window;
    if params.engine == Engine::Streaming {
        let over = |t: &Task| needed(t) > BigUint::from(params.budget);
        if let Some(first) = tasks.iter().find(|t| over(t)) {
            let largest_feasible = js
                .iter()
                .copied()
                .filter(|&j| tasks.iter().filter(|t| t.j == j).all(|t| !over(t)))
                .max();
            return Err(Error::BudgetExceeded {
                j: first.j,
                needed: needed(first),
                budget: params.budget,
                largest_feasible,
            });
        }
    }
    let mut reports: Vec<CheckpointReport> = Vec::with_capacity(tasks.len());
    for task in tasks {
        let query = XiQuery {
            window: task.window,
            n: task.n.clone(),
            mode: params.mode,
        };
        let (count, reads) = match params.engine {
            Engine::Streaming => (xi_count(x.stream(), y.stream(), &query), needed(&task).to_u64().unwrap()),
            Engine::Runs => {
                let out = xi_count_runs(x.stream(), y.stream(), &query, params.budget).map_err(|e| {
                    // only checkpoints whose lower and upper reports both finished count as feasible
                    let done = reports.iter().map(|r| r.j).filter(|&j| j != task.j).max();
                    Error::BudgetExceeded {
                        j: task.j,
                        needed: BigUint::from(e.reads),
                        budget: params.budget,
                        largest_feasible: done,
                    }
                })?;
                (out.count, out.reads)
            }
        };
        let ratio = xi_ratio(&count, &task.n)?;
        let satisfied = match task.kind {
            CheckpointKind::LowerAtNu => ratio >= task.bound,
            CheckpointKind::UpperAtMu => ratio <= task.bound,
        };
        reports.push(CheckpointReport {
            kind: task.kind,
            j: task.j,
            index: task.index,
            n: task.n,
            window: task.window,
            count,
            ratio,
            bound: task.bound,
            satisfied,
            reads,
        });
    }
    Ok(reports)
}

pub const CSV_HEADER: [&str; 10] = [
    "n",
    "count",
    "ratio_num",
    "ratio_den",
    "ratio_float64",
    "bound_num",
    "bound_den",
    "kind",
    "j",
    "satisfied",
];

fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

fn float(r: &BigRational) -> String {
    r.to_f64().map_or_else(|| "nan".into(), |f| format!("{f}"))
}

fn report_record(r: &CheckpointReport) -> Vec<String> {
    vec![
        r.n.to_string(),
        r.count.to_string(),
        r.ratio.numer().to_string(),
        r.ratio.denom().to_string(),
        float(&r.ratio),
        r.bound.numer().to_string(),
        r.bound.denom().to_string(),
        r.kind.name().to_string(),
        r.j.to_string(),
        r.satisfied.to_string(),
    ]
}

/// Checkpoint table in the shared CSV layout.
pub fn write_reports_csv<W: Write>(reports: &[CheckpointReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for r in reports {
        w.write_record(report_record(r)).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// The shared layout plus a trailing `pair` column, for runs over several
/// point pairs.
pub fn write_pair_reports_csv<W: Write>(pairs: &[(usize, Vec<CheckpointReport>)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER.iter().chain(&["pair"])).map_err(csv_err)?;
    for (pair, reports) in pairs {
        for r in reports {
            let mut rec = report_record(r);
            rec.push(pair.to_string());
            w.write_record(rec).map_err(csv_err)?;
        }
    }
    w.flush()?;
    Ok(())
}

/// Trajectory in the shared CSV layout; bound columns are left empty.
pub fn write_trajectory_csv<W: Write>(points: &[TrajectoryPoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(csv_err)?;
    for p in points {
        w.write_record([
            p.n.to_string(),
            p.count.to_string(),
            p.ratio.numer().to_string(),
            p.ratio.denom().to_string(),
            float(&p.ratio),
            String::new(),
            String::new(),
            "trajectory".into(),
            String::new(),
            String::new(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}
