//! Exhaustive sweeps over parameter grids.
//!
//! A sweep expands its [`SweepConfig`] into an ordered list of tasks, runs
//! them (optionally on a thread pool) and concatenates the records in task
//! order, so output does not depend on the degree of parallelism.

mod report;
mod table;

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{euler_phi, exact_root, is_prime};
use crate::characters::{principal_character, CharacterGroup, UNIT_GROUP_BOUND};
use crate::error::{Error, Result};
use crate::identities::{
    char_shift_sum, cohen_partition, conductor_has_power_shape, generalized_rhs, generalized_sum,
    menon_rhs, menon_sum, prime_power_rhs, shift_sum_rhs, sth_power_divisors, sury_rhs, sury_sum,
    zhao_cao_rhs, zhao_cao_sum, SumKernel, COHEN_BOUND, SUM_BOUND, SURY_TUPLE_BOUND,
};

pub use report::{format_report, AuxParam, Expectation, IdentityReport, Record, Status, Summary};
pub use table::{character_table, format_character_table, CharacterRow, CHAR_TABLE_BOUND};

/// Default acceptance threshold on a sum's distance to its rounded value.
pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Upper bound on the estimated number of elementary steps in one sweep.
pub const WORK_BUDGET: u128 = 20_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Identity {
    Menon,
    Sury,
    ZhaoCao,
    Theorem1,
    Theorem2,
    Lemma31,
    Lemma33,
    Lemma34,
    CohenPartition,
    /// `Σ (k-1,n)_s χ(k) = Φ_s(n) τ_s(n/d)` with no restriction on `n` or
    /// the conductor `d`. Known to be false in general.
    StrictGen,
}

impl Identity {
    pub const ALL: [Identity; 10] = [
        Identity::Menon,
        Identity::Sury,
        Identity::ZhaoCao,
        Identity::Theorem1,
        Identity::Theorem2,
        Identity::Lemma31,
        Identity::Lemma33,
        Identity::Lemma34,
        Identity::CohenPartition,
        Identity::StrictGen,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Menon => "menon",
            Identity::Sury => "sury",
            Identity::ZhaoCao => "zhao_cao",
            Identity::Theorem1 => "theorem1",
            Identity::Theorem2 => "theorem2",
            Identity::Lemma31 => "lemma31",
            Identity::Lemma33 => "lemma33",
            Identity::Lemma34 => "lemma34",
            Identity::CohenPartition => "cohen_partition",
            Identity::StrictGen => "strict_gen",
        }
    }

    /// Largest `n_max` the identity's grid accepts.
    pub fn n_max_bound(self) -> u64 {
        match self {
            Identity::Lemma31 | Identity::Lemma33 | Identity::Lemma34 => UNIT_GROUP_BOUND,
            Identity::CohenPartition => COHEN_BOUND,
            _ => SUM_BOUND,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Identity::ALL.iter().map(|i| i.name()).collect();
                Error::Config(format!(
                    "unknown identity {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!(
                "unknown format {s:?}; expected text, csv or json"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub identity: Identity,
    pub n_max: u64,
    pub s_values: Vec<u32>,
    pub tolerance: f64,
    pub output: OutputFormat,
    pub parallelism: usize,
}

impl SweepConfig {
    pub fn new(identity: Identity, n_max: u64) -> SweepConfig {
        SweepConfig {
            identity,
            n_max,
            s_values: vec![1],
            tolerance: DEFAULT_TOLERANCE,
            output: OutputFormat::Text,
            parallelism: 1,
        }
    }

    pub fn with_s(mut self, s_values: impl Into<Vec<u32>>) -> SweepConfig {
        self.s_values = s_values.into();
        self
    }

    pub fn with_parallelism(mut self, jobs: usize) -> SweepConfig {
        self.parallelism = jobs;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if self.n_max == 0 {
            return bad("n_max must be at least 1".into());
        }
        if self.n_max > self.identity.n_max_bound() {
            return Err(Error::Resource(format!(
                "n_max {} exceeds the {} bound {}",
                self.n_max,
                self.identity,
                self.identity.n_max_bound()
            )));
        }
        if self.s_values.is_empty() || self.s_values.contains(&0) {
            return bad("s values must be a non-empty list of positive integers".into());
        }
        if !(self.tolerance > 0.0 && self.tolerance < 0.5) {
            return bad(format!("tolerance {} is not in (0, 0.5)", self.tolerance));
        }
        if self.parallelism == 0 {
            return bad("parallelism must be at least 1".into());
        }
        if self.identity == Identity::Sury {
            for &v in &self.s_values {
                if self
                    .n_max
                    .checked_pow(v)
                    .is_none_or(|t| t > SURY_TUPLE_BOUND)
                {
                    return Err(Error::Resource(format!(
                        "{}^{v} tuples exceed the bound {SURY_TUPLE_BOUND}",
                        self.n_max
                    )));
                }
            }
        }
        Ok(())
    }

    /// The s values that apply: identities without an `s` run at `s = 1`.
    fn effective_s(&self) -> Vec<u32> {
        match self.identity {
            Identity::Menon | Identity::ZhaoCao => vec![1],
            _ => {
                let mut s = self.s_values.clone();
                s.sort_unstable();
                s.dedup();
                s
            }
        }
    }
}

/// One unit of sweep work; records from a task are contiguous in the report.
#[derive(Debug, Clone, Copy)]
enum Task {
    Menon {
        n: u64,
    },
    Sury {
        n: u64,
        vars: u32,
    },
    /// Every character mod `n` through one of the character-sum identities.
    Characters {
        n: u64,
        s: u32,
    },
    Shift {
        p: u64,
        n_exp: u32,
        s: u32,
        m: u32,
    },
    Cohen {
        n: u64,
        s: u32,
        d: u64,
    },
}

impl Task {
    fn estimated_work(&self) -> u128 {
        let phi = |n: u64| u128::from(euler_phi(n).unwrap_or(n));
        match *self {
            Task::Menon { n } => u128::from(n),
            Task::Sury { n, vars } => u128::from(n).pow(vars),
            Task::Characters { n, .. } => phi(n) * phi(n) + u128::from(n),
            Task::Shift { p, n_exp, m, .. } => phi(p.pow(n_exp)) * u128::from(p.pow(n_exp - m)),
            Task::Cohen { n, .. } => u128::from(n) * 4,
        }
    }
}

fn primes_up_to(n: u64) -> impl Iterator<Item = u64> {
    (2..=n).filter(|&p| is_prime(p))
}

/// `(p, a)` with `p^a ≤ n_max`, ordered by `p` then `a`.
fn prime_powers_up_to(n_max: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for p in primes_up_to(n_max) {
        let mut a = 1;
        while p.checked_pow(a).is_some_and(|q| q <= n_max) {
            out.push((p, a));
            a += 1;
        }
    }
    out
}

fn grid(config: &SweepConfig) -> Vec<Task> {
    let n_max = config.n_max;
    let mut tasks = Vec::new();
    for s in config.effective_s() {
        match config.identity {
            Identity::Menon => tasks.extend((1..=n_max).map(|n| Task::Menon { n })),
            Identity::Sury => tasks.extend((1..=n_max).map(|n| Task::Sury { n, vars: s })),
            Identity::ZhaoCao | Identity::StrictGen => {
                tasks.extend((1..=n_max).map(|n| Task::Characters { n, s }))
            }
            Identity::Theorem1 => {
                // n must be an s-th power; m = 1 gives n = 1
                tasks.extend(
                    (1..=n_max)
                        .filter(|&n| exact_root(n, s).is_some())
                        .map(|n| Task::Characters { n, s }),
                )
            }
            Identity::Theorem2 => tasks.extend(
                (2..=n_max)
                    .filter(|&n| exact_root(n, s).is_some())
                    .map(|n| Task::Characters { n, s }),
            ),
            Identity::Lemma34 => tasks.extend(
                prime_powers_up_to(n_max)
                    .into_iter()
                    .filter(|&(_, a)| a % s == 0)
                    .map(|(p, a)| Task::Characters { n: p.pow(a), s }),
            ),
            Identity::Lemma31 | Identity::Lemma33 => {
                for (p, n_exp) in prime_powers_up_to(n_max) {
                    if n_exp % s != 0 {
                        continue;
                    }
                    for m in (s..n_exp).step_by(s as usize) {
                        tasks.push(Task::Shift { p, n_exp, s, m });
                    }
                }
            }
            Identity::CohenPartition => {
                for n in 1..=n_max {
                    for d in sth_power_divisors(n, s).expect("n is within the desk bound") {
                        tasks.push(Task::Cohen { n, s, d });
                    }
                }
            }
        }
    }
    tasks
}

fn run_task(identity: Identity, task: Task, tol: f64) -> Result<Vec<Record>> {
    match task {
        Task::Menon { n } => {
            let lhs = menon_sum(n)?;
            let rhs = menon_rhs(n)?;
            Ok(vec![Record::evaluated(
                identity, n, 1, None, lhs as i64, 0.0, rhs as i64, tol,
            )])
        }
        Task::Sury { n, vars } => {
            let lhs = sury_sum(n, vars)?;
            let rhs = sury_rhs(n, vars)?;
            Ok(vec![Record::evaluated(
                identity, n, vars, None, lhs as i64, 0.0, rhs as i64, tol,
            )])
        }
        Task::Characters { n, s } => character_task(identity, n, s, tol),
        Task::Shift { p, n_exp, s, m } => {
            let q = p.pow(n_exp);
            let group = CharacterGroup::new(q)?;
            let mut out = Vec::new();
            for chi in group.characters() {
                let d = chi.conductor();
                if identity == Identity::Lemma31 && d != q {
                    continue;
                }
                let label = Some(chi.label());
                let record = match shift_sum_rhs(p, n_exp, s, m, d)? {
                    Some(rhs) => {
                        let lhs = char_shift_sum(p, n_exp, s, m, &chi)?;
                        Record::evaluated(
                            identity,
                            q,
                            s,
                            label,
                            lhs.rounded,
                            lhs.residual,
                            rhs,
                            tol,
                        )
                    }
                    None => Record::skipped(identity, q, s, label),
                };
                out.push(record.with_aux("m", u64::from(m)));
            }
            Ok(out)
        }
        Task::Cohen { n, s, d } => {
            let part = cohen_partition(n, s, d)?;
            let mut record = Record::evaluated(
                identity,
                n,
                s,
                None,
                part.classes.len() as i64,
                0.0,
                part.expected_classes as i64,
                tol,
            );
            if !part.valid {
                record.status = Status::Fail;
            }
            Ok(vec![record.with_aux("d", d)])
        }
    }
}

fn character_task(identity: Identity, n: u64, s: u32, tol: f64) -> Result<Vec<Record>> {
    let group = CharacterGroup::new(n)?;
    let kernel = SumKernel::new(&group, s)?;
    let mut out = Vec::new();
    for chi in group.characters() {
        let d = chi.conductor();
        let rhs = match identity {
            Identity::ZhaoCao => Some(zhao_cao_rhs(n, d)? as i64),
            Identity::Theorem1 => {
                if d != n {
                    continue;
                }
                Some(generalized_rhs(n, s, d)? as i64)
            }
            Identity::Theorem2 => conductor_has_power_shape(n, s, d)
                .then(|| generalized_rhs(n, s, d))
                .transpose()?
                .map(|v| v as i64),
            Identity::Lemma34 => {
                let (p, a) = group.factorization().factors()[0];
                prime_power_rhs(p, a, s, d)?
            }
            Identity::StrictGen => Some(generalized_rhs(n, s, d)? as i64),
            _ => unreachable!("not a character-sum identity"),
        };
        let label = Some(chi.label());
        let record = match rhs {
            Some(rhs) => {
                let lhs = if identity == Identity::ZhaoCao {
                    zhao_cao_sum(n, &chi)?
                } else {
                    kernel.sum(&chi)?
                };
                Record::evaluated(identity, n, s, label, lhs.rounded, lhs.residual, rhs, tol)
            }
            None => Record::skipped(identity, n, s, label),
        };
        out.push(record);
    }
    Ok(out)
}

fn execute(config: &SweepConfig) -> Result<Vec<Record>> {
    config.validate()?;
    let tasks = grid(config);
    let work: u128 = tasks.iter().map(Task::estimated_work).sum();
    if work > WORK_BUDGET {
        return Err(Error::Resource(format!(
            "sweep needs about {work} steps, over the budget of {WORK_BUDGET}"
        )));
    }
    let identity = config.identity;
    let tol = config.tolerance;
    let chunks: Vec<Vec<Record>> = if config.parallelism == 1 {
        tasks
            .iter()
            .map(|&t| run_task(identity, t, tol))
            .collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.parallelism)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
        pool.install(|| {
            tasks
                .par_iter()
                .map(|&t| run_task(identity, t, tol))
                .collect::<Result<_>>()
        })?
    };
    Ok(chunks.into_iter().flatten().collect())
}

/// Runs every instance of the configured identity. Errors abort the whole
/// sweep; a partial report is never returned.
pub fn run_sweep(config: &SweepConfig) -> Result<IdentityReport> {
    let records = execute(config)?;
    let examined = records.len();
    Ok(IdentityReport::new(
        config.clone(),
        records,
        examined,
        Expectation::Holds,
    ))
}

/// Evaluates the generalized sum at `n = 4`, `s = 2` for the principal
/// character, where it is 5 while `Φ_2(4) τ_2(4) = 6`.
pub fn reproduce_remark() -> Result<IdentityReport> {
    let (n, s) = (4, 2);
    let chi = principal_character(n)?;
    let lhs = generalized_sum(n, s, &chi)?;
    let rhs = generalized_rhs(n, s, chi.conductor())? as i64;
    if lhs.rounded != 5 || rhs != 6 {
        return Err(Error::Integrity(format!(
            "expected lhs 5 and rhs 6 at n=4, s=2; got {} and {rhs}",
            lhs.rounded
        )));
    }
    let record = Record::evaluated(
        Identity::StrictGen,
        n,
        s,
        Some(chi.label()),
        lhs.rounded,
        lhs.residual,
        rhs,
        DEFAULT_TOLERANCE,
    );
    let config = SweepConfig::new(Identity::StrictGen, n).with_s([s]);
    Ok(IdentityReport::new(
        config,
        vec![record],
        1,
        Expectation::Falsifies,
    ))
}

/// Tests `Σ (k-1,n)_s χ(k) = Φ_s(n) τ_s(n/d)` for every `n ≤ n_max`, every
/// `s` and every character, keeping only the failing instances.
pub fn search_counterexamples(n_max: u64, s_values: &[u32]) -> Result<IdentityReport> {
    search_with(SweepConfig::new(Identity::StrictGen, n_max).with_s(s_values))
}

/// [`search_counterexamples`] with explicit tolerance and parallelism.
pub fn search_with(mut config: SweepConfig) -> Result<IdentityReport> {
    config.identity = Identity::StrictGen;
    let records = execute(&config)?;
    let examined = records.len();
    let failures = records
        .into_iter()
        .filter(|r| r.status == Status::Fail)
        .collect();
    Ok(IdentityReport::new(
        config,
        failures,
        examined,
        Expectation::Falsifies,
    ))
}
