use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{CorpusEntry, HarnessError};
use crate::basis::{self, RemovalParameters};
use crate::bounds::{compare_all, BoundName, BoundValue};
use crate::error::Error;

/// Everything computed for one corpus entry.
#[derive(Clone, Debug, PartialEq)]
pub struct RemovalReport {
    pub name: String,
    /// `G(A)`.
    pub h: u64,
    /// `G(A \ X)`.
    pub exact: u64,
    pub params: RemovalParameters,
    pub ap_flag: bool,
    /// Ascending, as returned by [`compare_all`].
    pub bounds: Vec<BoundValue>,
    pub decomposition: bool,
    pub theorem5: bool,
    /// Empty unless a bound is beaten or a check fails.
    pub violations: Vec<String>,
}

impl RemovalReport {
    pub fn bound(&self, name: BoundName) -> Option<&BigUint> {
        self.bounds
            .iter()
            .find(|b| b.name == name)
            .and_then(BoundValue::exact_value)
    }

    pub fn min_bound(&self) -> &BoundValue {
        &self.bounds[0]
    }

    /// `min_bound - exact`.
    pub fn min_slack(&self) -> BigInt {
        self.slack(self.min_bound())
    }

    pub fn slack(&self, b: &BoundValue) -> BigInt {
        BigInt::from(b.exact_value().expect("certified bound").clone()) - BigInt::from(self.exact)
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SkipReason {
    NotABasis(String),
    CapExceeded(u64),
    Failed(String),
}

impl std::fmt::Display for SkipReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SkipReason::NotABasis(why) => write!(f, "NotABasis: {why}"),
            SkipReason::CapExceeded(cap) => write!(f, "CapExceeded: order above {cap}"),
            SkipReason::Failed(why) => write!(f, "error: {why}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum EntryOutcome {
    Report(RemovalReport),
    Skipped { name: String, reason: SkipReason },
}

impl EntryOutcome {
    pub fn name(&self) -> &str {
        match self {
            EntryOutcome::Report(r) => &r.name,
            EntryOutcome::Skipped { name, .. } => name,
        }
    }

    pub fn report(&self) -> Option<&RemovalReport> {
        match self {
            EntryOutcome::Report(r) => Some(r),
            EntryOutcome::Skipped { .. } => None,
        }
    }
}

fn skip(name: &str, what: &str, e: Error) -> EntryOutcome {
    let reason = match e {
        Error::NotABasis(why) => SkipReason::NotABasis(format!("{what}: {why}")),
        Error::CapExceeded(cap) => SkipReason::CapExceeded(cap),
        other => SkipReason::Failed(format!("{what}: {other}")),
    };
    EntryOutcome::Skipped {
        name: name.to_string(),
        reason,
    }
}

/// Computes `G(A)`, `G(A \ X)`, the parameters, every bound and both
/// structural checks for one entry.
pub fn run_entry(e: &CorpusEntry) -> EntryOutcome {
    let (a, x, cap) = (&e.basis, &e.remove, e.order_cap);
    let h = match basis::order(a, cap) {
        Ok(r) => r.order,
        Err(err) => return skip(&e.name, "A", err),
    };
    let exact = match basis::remove_and_order(a, x, cap) {
        Ok(r) => r.order,
        Err(err) => return skip(&e.name, "A \\ X", err),
    };
    let params = match basis::removal_parameters(a, x) {
        Ok(p) => p,
        Err(err) => return skip(&e.name, "parameters", err),
    };
    let bounds = compare_all(h, &params, e.ap_flag);

    let mut violations = Vec::new();
    for b in &bounds {
        let value = b.exact_value().expect("certified bound");
        if BigUint::from(exact) > *value {
            violations.push(format!("G(A\\X) = {exact} exceeds {} = {value}", b.name));
        }
    }
    let decomposition = basis::decomposition_check(a, x, h).unwrap_or_else(|err| {
        violations.push(format!("decomposition check failed: {err}"));
        false
    });
    if !decomposition {
        violations.push("hB ∪ ... ∪ (B + (h-1)X) is not cofinite".into());
    }
    let theorem5 = basis::theorem5_construction_check(a, x, cap).unwrap_or_else(|err| {
        violations.push(format!("μ construction failed: {err}"));
        false
    });
    if !theorem5 {
        violations.push("(A\\X) ∪ {±1} has order above hμ".into());
    }

    EntryOutcome::Report(RemovalReport {
        name: e.name.clone(),
        h,
        exact,
        params,
        ap_flag: e.ap_flag,
        bounds,
        decomposition,
        theorem5,
        violations,
    })
}

/// Runs every entry in parallel; the result is ordered by entry name.
pub fn run_corpus(entries: &[CorpusEntry]) -> Vec<EntryOutcome> {
    let mut out: Vec<EntryOutcome> = entries.par_iter().map(run_entry).collect();
    out.sort_by(|a, b| a.name().cmp(b.name()));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Markdown,
    Json,
}

impl FromStr for Format {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Markdown),
            "json" => Ok(Format::Json),
            other => Err(HarnessError::UnknownFormat(other.to_string())),
        }
    }
}

pub const COLUMNS: [&str; 15] = [
    "name",
    "h",
    "exact",
    "k",
    "d",
    "eta",
    "mu",
    "nash",
    "farhi_d",
    "farhi_eta",
    "farhi_mu",
    "remark_d",
    "cor2",
    "min_bound",
    "min_slack",
];

/// Integer cell: a JSON number when it fits in 64 bits, a string otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cell(BigInt);

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Serialize)]
struct Row {
    name: String,
    h: u64,
    exact: u64,
    k: u64,
    d: u64,
    eta: u64,
    mu: u64,
    nash: Option<Cell>,
    farhi_d: Option<Cell>,
    farhi_eta: Option<Cell>,
    farhi_mu: Option<Cell>,
    remark_d: Option<Cell>,
    cor2: Option<Cell>,
    min_bound: String,
    min_slack: Cell,
}

impl Row {
    fn new(r: &RemovalReport) -> Self {
        let cell = |n| r.bound(n).map(|v| Cell(BigInt::from(v.clone())));
        Row {
            name: r.name.clone(),
            h: r.h,
            exact: r.exact,
            k: r.params.k,
            d: r.params.d,
            eta: r.params.eta,
            mu: r.params.mu,
            nash: cell(BoundName::Nash),
            farhi_d: cell(BoundName::FarhiD),
            farhi_eta: cell(BoundName::FarhiEta),
            farhi_mu: cell(BoundName::FarhiMu),
            remark_d: cell(BoundName::RemarkD),
            cor2: cell(BoundName::Cor2),
            min_bound: r.min_bound().name.to_string(),
            min_slack: Cell(r.min_slack()),
        }
    }

    fn cells(&self) -> Vec<String> {
        let opt = |c: &Option<Cell>| c.as_ref().map_or_else(String::new, Cell::to_string);
        vec![
            self.name.clone(),
            self.h.to_string(),
            self.exact.to_string(),
            self.k.to_string(),
            self.d.to_string(),
            self.eta.to_string(),
            self.mu.to_string(),
            opt(&self.nash),
            opt(&self.farhi_d),
            opt(&self.farhi_eta),
            opt(&self.farhi_mu),
            opt(&self.remark_d),
            opt(&self.cor2),
            self.min_bound.clone(),
            self.min_slack.to_string(),
        ]
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Renders reports as a table sorted by entry name, with the columns in
/// [`COLUMNS`] order. Bounds that do not apply are left blank (`null` in JSON).
pub fn emit_report(reports: &[RemovalReport], format: Format) -> String {
    let mut sorted: Vec<&RemovalReport> = reports.iter().collect();
    sorted.sort_by(|a, b| a.name.cmp(&b.name));
    let rows: Vec<Row> = sorted.into_iter().map(Row::new).collect();
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(&COLUMNS.join(","));
            out.push('\n');
            for row in &rows {
                let cells: Vec<String> = row.cells().iter().map(|c| csv_field(c)).collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        Format::Markdown => {
            let _ = writeln!(out, "| {} |", COLUMNS.join(" | "));
            let _ = writeln!(out, "|{}", "---|".repeat(COLUMNS.len()));
            for row in &rows {
                let _ = writeln!(out, "| {} |", row.cells().join(" | "));
            }
        }
        Format::Json => {
            out = serde_json::to_string_pretty(&rows).expect("rows serialize");
            out.push('\n');
        }
    }
    out
}
