//! Certification sweeps over the catalog and their reports.
//!
//! Work is split into `(record, nu, beta)` slices that run on a rayon pool;
//! results are reduced in catalog and grid order, so the report body does
//! not depend on the thread count.

use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::catalog::{
    catalog, eval_margin, slice_supremum, slices, x_points, BoundRecord, MarginEval, Point, Sense,
};
use crate::error::{domain, Error, Result};
use crate::EvalConfig;

pub use crate::catalog::MARGIN_TOL;

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "BESSELCERT_THREADS";

/// Default golden-section rounds per slice.
pub const DEFAULT_REFINE_ROUNDS: u32 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    pub spacing: Spacing,
}

/// Grid of `(nu, beta, x)` points; each record keeps the part inside its
/// domain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub nu_values: Vec<f64>,
    pub beta_values: Vec<f64>,
    pub x_spec: XSpec,
}

impl Default for SweepGrid {
    fn default() -> Self {
        Self {
            nu_values: vec![
                -0.49, -0.45, -0.25, 0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.7, 10.0,
            ],
            beta_values: vec![-0.9, -0.5, 0.0, 0.5, 0.9],
            x_spec: XSpec {
                min: 1e-4,
                max: 50.0,
                count: 200,
                spacing: Spacing::Log,
            },
        }
    }
}

impl SweepGrid {
    pub fn validate(&self) -> Result<()> {
        let x = &self.x_spec;
        if x.count < 2 {
            return domain(format!("grid needs at least 2 x points, got {}", x.count));
        }
        if !(x.min >= 0.0 && x.min < x.max && x.max.is_finite()) {
            return domain(format!(
                "grid needs 0 <= x_min < x_max < inf, got [{}, {}]",
                x.min, x.max
            ));
        }
        if x.spacing == Spacing::Log && x.min <= 0.0 {
            return domain("log spacing needs x_min > 0");
        }
        if self.nu_values.is_empty() || self.beta_values.is_empty() {
            return domain("grid needs at least one nu and one beta value");
        }
        if let Some(nu) = self.nu_values.iter().find(|v| !v.is_finite()) {
            return domain(format!("grid nu values must be finite, got {nu}"));
        }
        if let Some(b) = self.beta_values.iter().find(|b| !(b.abs() < 1.0)) {
            return domain(format!("grid beta values must lie in (-1, 1), got {b}"));
        }
        Ok(())
    }

    /// The `x` points, ascending, with both ends exact.
    pub fn x_values(&self) -> Vec<f64> {
        let XSpec {
            min,
            max,
            count,
            spacing,
        } = self.x_spec;
        let last = (count - 1) as f64;
        let mut xs: Vec<f64> = (0..count)
            .map(|i| {
                let t = i as f64 / last;
                match spacing {
                    Spacing::Linear => min + t * (max - min),
                    Spacing::Log => (min.ln() + t * (max.ln() - min.ln())).exp(),
                }
            })
            .collect();
        xs[0] = min;
        xs[count - 1] = max;
        xs
    }

    pub fn describe(&self) -> String {
        let x = &self.x_spec;
        format!(
            "nu {:?}; beta {:?}; x {:?} {} points in [{}, {}]",
            self.nu_values, self.beta_values, x.spacing, x.count, x.min, x.max
        )
    }
}

/// Everything that determines a certification run except the thread count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertifyOptions {
    pub eval: EvalConfig,
    pub grid: SweepGrid,
    pub refine_rounds: u32,
    /// Record ids to run; `None` runs the whole catalog.
    pub records: Option<Vec<String>>,
    /// Test hook: multiply the right-hand sides of the named records.
    pub rhs_scale: Vec<(String, f64)>,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            eval: EvalConfig::default(),
            grid: SweepGrid::default(),
            refine_rounds: DEFAULT_REFINE_ROUNDS,
            records: None,
            rhs_scale: Vec::new(),
        }
    }
}

impl CertifyOptions {
    /// SHA-256 of the canonical JSON form of the options.
    pub fn config_hash(&self) -> String {
        let json = serde_json::to_vec(&(self, MARGIN_TOL)).expect("options serialize");
        Sha256::digest(&json)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }

    /// The selected records, with any right-hand-side scaling applied.
    pub fn selected_records(&self) -> Result<Vec<BoundRecord>> {
        let all = catalog();
        let mut chosen: Vec<BoundRecord> = match &self.records {
            None => all,
            Some(ids) => {
                let mut out = Vec::with_capacity(ids.len());
                for r in &all {
                    if ids.iter().any(|id| id == r.id) {
                        out.push(r.clone());
                    }
                }
                if let Some(missing) = ids
                    .iter()
                    .find(|id| !all.iter().any(|r| r.id == id.as_str()))
                {
                    return domain(format!("unknown record id {missing}"));
                }
                out
            }
        };
        for (id, factor) in &self.rhs_scale {
            let r = chosen
                .iter_mut()
                .find(|r| r.id == id.as_str())
                .ok_or_else(|| {
                    Error::Domain(format!("rhs scaling names unselected record {id}"))
                })?;
            *r = r.with_rhs_scale(*factor);
        }
        Ok(chosen)
    }
}

/// Thread count from `requested`, else [`THREADS_ENV`], else the number of
/// logical processors.
pub fn resolve_threads(requested: Option<usize>) -> Result<usize> {
    if let Some(n) = requested {
        return if n == 0 {
            domain("thread count must be positive")
        } else {
            Ok(n)
        };
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => domain(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            )),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// One evaluated point in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointReport {
    pub nu: f64,
    pub beta: f64,
    pub x: f64,
    pub case: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl PointReport {
    fn new(p: &Point, m: &MarginEval) -> Self {
        Self {
            nu: p.nu,
            beta: p.beta,
            x: p.x,
            case: m.case.clone(),
            lhs: m.lhs,
            rhs: m.rhs,
            margin: m.margin,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordEntry {
    pub id: String,
    pub anchor: String,
    pub sense: Sense,
    pub points_tested: u64,
    /// Margin at the point with the smallest margin relative to `max(1, |rhs|)`.
    pub min_margin: Option<f64>,
    pub min_margin_point: Option<PointReport>,
    pub sup_observed: Option<f64>,
    pub sup_point: Option<PointReport>,
    pub violations: Vec<PointReport>,
    /// Set when an evaluator failed; the entry then covers only the slices
    /// that completed.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportHeader {
    pub config_hash: String,
    pub grid: String,
    pub margin_tolerance: f64,
    pub refine_rounds: u32,
    pub tool_version: String,
    pub timestamp_unix: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub header: ReportHeader,
    pub entries: Vec<RecordEntry>,
}

impl CertReport {
    pub fn violation_count(&self) -> usize {
        self.entries.iter().map(|e| e.violations.len()).sum()
    }

    pub fn has_failures(&self) -> bool {
        self.entries.iter().any(|e| e.failure.is_some())
    }

    /// 0 when every bound holds, 1 on a violation, 2 on an evaluator failure.
    pub fn exit_code(&self) -> i32 {
        if self.has_failures() {
            2
        } else if self.violation_count() > 0 {
            1
        } else {
            0
        }
    }

    /// The deterministic part of the report: the entries and the config
    /// hash, without the timestamp.
    pub fn body_json(&self) -> String {
        serde_json::to_string_pretty(&(&self.header.config_hash, &self.entries))
            .expect("report serializes")
    }
}

struct SliceOutcome {
    points: u64,
    min: Option<(Point, MarginEval)>,
    sup: Option<(Point, MarginEval)>,
    violations: Vec<(Point, MarginEval)>,
    failure: Option<String>,
}

fn run_slice(
    record: &BoundRecord,
    nu: f64,
    beta: f64,
    xs: &[f64],
    rounds: u32,
    cfg: &EvalConfig,
) -> SliceOutcome {
    match slice_supremum(record, nu, beta, xs, rounds, cfg) {
        Err(e) => SliceOutcome {
            points: 0,
            min: None,
            sup: None,
            violations: Vec::new(),
            failure: Some(format!("slice nu = {nu}, beta = {beta}: {e}")),
        },
        Ok(s) => {
            let rel = |m: &MarginEval| m.margin / m.scale;
            let min = s
                .evaluated
                .iter()
                .fold(None::<&(Point, MarginEval)>, |acc, c| match acc {
                    Some(b) if rel(&b.1) <= rel(&c.1) => Some(b),
                    _ => Some(c),
                });
            SliceOutcome {
                points: s.evaluated.len() as u64,
                min: min.cloned(),
                sup: Some((s.argmax, s.sup)),
                violations: s
                    .evaluated
                    .iter()
                    .filter(|(_, m)| m.violates())
                    .cloned()
                    .collect(),
                failure: None,
            }
        }
    }
}

fn reduce_entry(record: &BoundRecord, outcomes: Vec<SliceOutcome>) -> RecordEntry {
    let mut entry = RecordEntry {
        id: record.id.to_string(),
        anchor: record.anchor.to_string(),
        sense: record.sense,
        points_tested: 0,
        min_margin: None,
        min_margin_point: None,
        sup_observed: None,
        sup_point: None,
        violations: Vec::new(),
        failure: None,
    };
    if outcomes.is_empty() {
        entry.failure = Some("grid does not meet the record domain".into());
        return entry;
    }
    let mut min: Option<(Point, MarginEval)> = None;
    let mut sup: Option<(Point, MarginEval)> = None;
    let mut failures = Vec::new();
    for o in outcomes {
        entry.points_tested += o.points;
        if let Some(c) = o.min {
            if min
                .as_ref()
                .is_none_or(|b| c.1.margin / c.1.scale < b.1.margin / b.1.scale)
            {
                min = Some(c);
            }
        }
        if let Some(c) = o.sup {
            let score = |m: &MarginEval| -m.margin / m.scale;
            if sup.as_ref().is_none_or(|b| score(&c.1) > score(&b.1)) {
                sup = Some(c);
            }
        }
        entry
            .violations
            .extend(o.violations.iter().map(|(p, m)| PointReport::new(p, m)));
        failures.extend(o.failure);
    }
    if let Some((p, m)) = min {
        entry.min_margin = Some(m.margin);
        entry.min_margin_point = Some(PointReport::new(&p, &m));
    }
    if let Some((p, m)) = sup {
        entry.sup_observed = Some(m.lhs);
        entry.sup_point = Some(PointReport::new(&p, &m));
    }
    if !failures.is_empty() {
        entry.failure = Some(failures.join("; "));
    }
    entry
}

/// Runs every selected record over its part of the grid.
pub fn certify(opts: &CertifyOptions, threads: usize) -> Result<CertReport> {
    opts.eval.validate()?;
    opts.grid.validate()?;
    let records = opts.selected_records()?;
    let mut tasks = Vec::new();
    let mut xs_per_record = Vec::with_capacity(records.len());
    for (ri, r) in records.iter().enumerate() {
        xs_per_record.push(x_points(&r.domain, &opts.grid));
        for (nu, beta) in slices(&r.domain, &opts.grid) {
            tasks.push((ri, nu, beta));
        }
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start {threads} worker threads: {e}")))?;
    let outcomes: Vec<(usize, SliceOutcome)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(ri, nu, beta)| {
                (
                    ri,
                    run_slice(
                        &records[ri],
                        nu,
                        beta,
                        &xs_per_record[ri],
                        opts.refine_rounds,
                        &opts.eval,
                    ),
                )
            })
            .collect()
    });
    let mut grouped: Vec<Vec<SliceOutcome>> = records.iter().map(|_| Vec::new()).collect();
    for (ri, o) in outcomes {
        grouped[ri].push(o);
    }
    let mut entries: Vec<RecordEntry> = records
        .iter()
        .zip(grouped)
        .map(|(r, outs)| reduce_entry(r, outs))
        .collect();
    entries.sort_by_key(|a| id_order(&a.id));
    let timestamp_unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs());
    Ok(CertReport {
        header: ReportHeader {
            config_hash: opts.config_hash(),
            grid: opts.grid.describe(),
            margin_tolerance: MARGIN_TOL,
            refine_rounds: opts.refine_rounds,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix,
        },
        entries,
    })
}

/// Sort key for ids such as `C9a` < `C10a`: letter prefix, number, suffix.
pub fn id_order(id: &str) -> (String, u32, String) {
    let prefix: String = id.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
    let rest = &id[prefix.len()..];
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    let suffix = rest[digits.len()..].to_string();
    (prefix, digits.parse().unwrap_or(0), suffix)
}

/// One row of a sweep file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub record_id: String,
    pub nu: f64,
    pub beta: f64,
    pub x: f64,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub margin: Option<f64>,
    /// Binding case, `limit` at `x = 0`, or the evaluator error.
    pub method_flags: String,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "record_id,nu,beta,x,lhs,rhs,margin,method_flags";

    pub fn failed(&self) -> bool {
        self.margin.is_none()
    }

    pub fn to_csv(&self) -> String {
        let num = |v: f64| format!("{v:.16e}");
        let opt = |v: Option<f64>| v.map_or_else(|| "NaN".to_string(), num);
        let flags = self.method_flags.replace('"', "'");
        let flags = if flags.contains(',') {
            format!("\"{flags}\"")
        } else {
            flags
        };
        format!(
            "{},{},{},{},{},{},{},{}",
            self.record_id,
            num(self.nu),
            num(self.beta),
            num(self.x),
            opt(self.lhs),
            opt(self.rhs),
            opt(self.margin),
            flags
        )
    }
}

/// Evaluates `record` at every grid point in its domain, ordered by `nu`,
/// then `beta`, then `x`. Failed points are kept as marked rows.
pub fn sweep(
    record: &BoundRecord,
    grid: &SweepGrid,
    cfg: &EvalConfig,
    threads: usize,
) -> Result<Vec<SweepRow>> {
    grid.validate()?;
    let mut sl = slices(&record.domain, grid);
    let xs = x_points(&record.domain, grid);
    if sl.is_empty() || xs.is_empty() {
        return domain(format!(
            "grid does not meet the domain of record {}",
            record.id
        ));
    }
    sl.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let points: Vec<Point> = sl
        .iter()
        .flat_map(|&(nu, beta)| xs.iter().map(move |&x| Point { nu, beta, x }))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start {threads} worker threads: {e}")))?;
    Ok(pool.install(|| {
        points
            .par_iter()
            .map(|p| {
                let base = SweepRow {
                    record_id: record.id.to_string(),
                    nu: p.nu,
                    beta: p.beta,
                    x: p.x,
                    lhs: None,
                    rhs: None,
                    margin: None,
                    method_flags: String::new(),
                };
                match eval_margin(record, p, cfg) {
                    Ok(m) => {
                        let mut flags = vec![];
                        if !m.case.is_empty() {
                            flags.push(m.case.clone());
                        }
                        if p.x == 0.0 {
                            flags.push("limit".into());
                        }
                        SweepRow {
                            lhs: Some(m.lhs),
                            rhs: Some(m.rhs),
                            margin: Some(m.margin),
                            method_flags: flags.join(";"),
                            ..base
                        }
                    }
                    Err(e) => SweepRow {
                        method_flags: format!("error: {e}"),
                        ..base
                    },
                }
            })
            .collect()
    }))
}

/// Looks a record up by id.
pub fn find_record(id: &str) -> Result<BoundRecord> {
    catalog()
        .into_iter()
        .find(|r| r.id == id)
        .ok_or_else(|| Error::Domain(format!("unknown record id {id}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(records: &[&str]) -> CertifyOptions {
        CertifyOptions {
            grid: SweepGrid {
                nu_values: vec![0.0, 0.5, 1.0],
                beta_values: vec![0.0],
                x_spec: XSpec {
                    min: 1e-3,
                    max: 10.0,
                    count: 12,
                    spacing: Spacing::Log,
                },
            },
            refine_rounds: 8,
            records: Some(records.iter().map(|s| s.to_string()).collect()),
            ..CertifyOptions::default()
        }
    }

    #[test]
    fn grid_ends_are_exact() {
        let g = SweepGrid::default();
        let xs = g.x_values();
        assert_eq!(xs.len(), 200);
        assert_eq!(xs[0], 1e-4);
        assert_eq!(xs[199], 50.0);
        assert!(xs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn grid_validation() {
        let mut g = SweepGrid::default();
        g.x_spec.count = 1;
        assert!(g.validate().is_err());
        let mut g = SweepGrid::default();
        g.x_spec.min = 0.0;
        assert!(g.validate().is_err());
        let mut g = SweepGrid::default();
        g.beta_values.push(1.0);
        assert!(g.validate().is_err());
    }

    #[test]
    fn id_order_is_numeric() {
        let mut ids = vec!["C10a", "C9b", "C9a", "A10", "A2", "C1a"];
        ids.sort_by_key(|s| id_order(s));
        assert_eq!(ids, vec!["A2", "A10", "C1a", "C9a", "C9b", "C10a"]);
    }

    #[test]
    fn report_body_independent_of_threads() {
        let opts = small(&["C4", "C6c", "A8"]);
        let a = certify(&opts, 1).unwrap();
        let b = certify(&opts, 3).unwrap();
        assert_eq!(a.body_json(), b.body_json());
        assert_eq!(a.exit_code(), 0);
    }

    #[test]
    fn scaled_rhs_fails_the_run() {
        let mut opts = small(&["C3a"]);
        opts.rhs_scale = vec![("C3a".into(), 0.5)];
        let r = certify(&opts, 1).unwrap();
        assert_eq!(r.exit_code(), 1);
        assert!(!r.entries[0].violations.is_empty());
        assert_ne!(r.header.config_hash, small(&["C3a"]).config_hash());
    }

    #[test]
    fn unknown_record_is_rejected() {
        assert!(small(&["Z9"]).selected_records().is_err());
    }

    #[test]
    fn report_round_trips() {
        let r = certify(&small(&["C6d"]), 1).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: CertReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn sweep_orders_points_and_marks_limits() {
        let r = find_record("C8").unwrap();
        let g = SweepGrid {
            nu_values: vec![1.0, 0.0],
            beta_values: vec![0.0],
            x_spec: XSpec {
                min: 1e-4,
                max: 1.0,
                count: 5,
                spacing: Spacing::Log,
            },
        };
        let rows = sweep(&r, &g, &EvalConfig::default(), 2).unwrap();
        assert_eq!(rows.len(), 12);
        assert_eq!(rows[0].nu, 0.0);
        assert_eq!(rows[0].x, 0.0);
        assert!(rows[0].method_flags.ends_with("limit"));
        assert!(rows.iter().all(|r| !r.failed()));
        assert!(rows[1].to_csv().starts_with("C8,0.0000000000000000e0,"));
    }

    #[test]
    fn sweep_outside_domain_is_an_error() {
        let r = find_record("C7a").unwrap();
        let g = SweepGrid {
            nu_values: vec![0.0],
            beta_values: vec![0.0],
            x_spec: XSpec {
                min: 0.1,
                max: 0.5,
                count: 3,
                spacing: Spacing::Linear,
            },
        };
        assert!(sweep(&r, &g, &EvalConfig::default(), 1).is_err());
    }
}
