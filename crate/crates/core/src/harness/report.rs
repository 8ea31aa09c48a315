use std::fmt::Write as _;

use serde::Serialize;

use super::{Identity, OutputFormat, SweepConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// A parameter beyond `(n, s, χ)`: the shift `m` of the lemma sums or the
/// divisor `d` of a partition check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AuxParam {
    pub name: &'static str,
    pub value: u64,
}

/// One instance of an identity. `lhs`, `residual` and `rhs` are absent on
/// skipped records, whose character falls outside the hypotheses.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub identity: Identity,
    pub n: u64,
    pub s: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aux: Option<AuxParam>,
    pub chi: Option<String>,
    pub lhs: Option<i64>,
    pub residual: Option<f64>,
    pub rhs: Option<i64>,
    pub status: Status,
}

impl Record {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn evaluated(
        identity: Identity,
        n: u64,
        s: u32,
        chi: Option<String>,
        lhs: i64,
        residual: f64,
        rhs: i64,
        tolerance: f64,
    ) -> Record {
        let status = if lhs == rhs && residual < tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Record {
            identity,
            n,
            s,
            aux: None,
            chi,
            lhs: Some(lhs),
            residual: Some(residual),
            rhs: Some(rhs),
            status,
        }
    }

    pub(crate) fn skipped(identity: Identity, n: u64, s: u32, chi: Option<String>) -> Record {
        Record {
            identity,
            n,
            s,
            aux: None,
            chi,
            lhs: None,
            residual: None,
            rhs: None,
            status: Status::Skipped,
        }
    }

    pub(crate) fn with_aux(mut self, name: &'static str, value: u64) -> Record {
        self.aux = Some(AuxParam { name, value });
        self
    }

    /// Identity name, with the auxiliary parameter appended as `@name=value`.
    pub fn tag(&self) -> String {
        match self.aux {
            Some(a) => format!("{}@{}={}", self.identity, a.name, a.value),
            None => self.identity.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn total(&self) -> usize {
        self.pass + self.fail + self.skipped
    }

    fn count(records: &[Record]) -> Summary {
        let mut s = Summary::default();
        for r in records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }
}

/// Whether failures in a report contradict a claimed identity or are the
/// expected outcome of a falsification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Expectation {
    /// Every evaluated instance should pass.
    Holds,
    /// Failures are findings. Only failures at `s = 1`, where the claim
    /// reduces to the Zhao–Cao identity, are unexpected.
    Falsifies,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub config: SweepConfig,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub worst_residual: f64,
    /// Number of instances evaluated, including ones not kept as records.
    pub examined: usize,
    #[serde(skip)]
    pub expectation: Expectation,
}

impl IdentityReport {
    pub(crate) fn new(
        config: SweepConfig,
        records: Vec<Record>,
        examined: usize,
        expectation: Expectation,
    ) -> IdentityReport {
        let summary = Summary::count(&records);
        let worst_residual = records
            .iter()
            .filter_map(|r| r.residual)
            .fold(0.0, f64::max);
        IdentityReport {
            config,
            records,
            summary,
            worst_residual,
            examined,
            expectation,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn expectations_met(&self) -> bool {
        match self.expectation {
            Expectation::Holds => self.summary.fail == 0,
            Expectation::Falsifies => self.failures().all(|r| r.s != 1),
        }
    }

    /// 0 when every expectation is met, 1 on an unexpected violation.
    pub fn exit_code(&self) -> i32 {
        if self.expectations_met() {
            0
        } else {
            1
        }
    }
}

fn fmt_residual(r: Option<f64>) -> String {
    r.map(|r| format!("{r:.3e}")).unwrap_or_default()
}

fn fmt_opt(v: Option<i64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

const CSV_HEADER: &str = "identity,n,s,chi,lhs,residual,rhs,status";

fn to_csv(report: &IdentityReport) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in &report.records {
        let chi = match &r.chi {
            Some(label) => format!("\"{}\"", label.replace('"', "\"\"")),
            None => String::new(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.tag(),
            r.n,
            r.s,
            chi,
            fmt_opt(r.lhs),
            fmt_residual(r.residual),
            fmt_opt(r.rhs),
            r.status.as_str()
        );
    }
    out
}

fn to_text(report: &IdentityReport) -> String {
    let header = [
        "identity", "n", "s", "chi", "lhs", "residual", "rhs", "status",
    ];
    let rows: Vec<[String; 8]> = report
        .records
        .iter()
        .map(|r| {
            [
                r.tag(),
                r.n.to_string(),
                r.s.to_string(),
                r.chi.clone().unwrap_or_else(|| "-".into()),
                fmt_opt(r.lhs),
                fmt_residual(r.residual),
                fmt_opt(r.rhs),
                r.status.as_str().to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let mut l = String::new();
        for (i, (cell, w)) in cells.iter().zip(widths).enumerate() {
            if i > 0 {
                l.push_str("  ");
            }
            // numeric columns right-aligned
            if (1..=2).contains(&i) || (4..=6).contains(&i) {
                let _ = write!(l, "{cell:>w$}");
            } else {
                let _ = write!(l, "{cell:<w$}");
            }
        }
        out.push_str(l.trim_end());
        out.push('\n');
    };
    line(&header);
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&cells);
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "summary: pass={} fail={} skipped={} examined={} worst_residual={:.3e}",
        s.pass, s.fail, s.skipped, report.examined, report.worst_residual
    );
    out
}

/// Serializes a report. Output depends only on the report contents.
pub fn format_report(report: &IdentityReport, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Text => to_text(report).into_bytes(),
        OutputFormat::Csv => to_csv(report).into_bytes(),
        OutputFormat::Json => {
            let mut v = serde_json::to_vec_pretty(report).expect("reports serialize");
            v.push(b'\n');
            v
        }
    }
}
