//! The bound records: validity domains, evaluators, margins and the
//! supremum search.
//!
//! Pointwise inequalities whose right-hand side varies with `x` are stored
//! as the ratio `lhs / rhs` against `1`, so that the margin tolerance is
//! relative. Uniform bounds keep their literal sides.

use std::f64::consts::{E, PI};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::aux::{eval_aux, AuxFamily, AuxFunctionSpec};
use super::expr::{
    expr_deriv_tail_product, expr_k_normalized_gap, expr_repeated_deriv_product,
    expr_singular_difference,
};
use crate::certify::SweepGrid;
use crate::deriv::{deriv_i_ratio, deriv_k_ratio, deriv_tilted_i};
use crate::error::{Error, Result};
use crate::integral::{
    power_integral_i, repeated_integral_quad, repeated_integral_series, tail_integral_k,
    tail_integral_k_shifted,
};
use crate::special::{
    bessel_i, bessel_i_scaled, bessel_k, factorial, gamma, gamma_ratio, product_ik,
};
use crate::EvalConfig;

/// Relative margin tolerance: a point violates its record when
/// `rhs - lhs < -MARGIN_TOL * max(1, |rhs|)`.
pub const MARGIN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sense {
    LhsLeRhs,
    LhsLtRhs,
    /// `lhs <= rhs` everywhere and the supremum of `lhs` equals `rhs`.
    SupEquals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NuClass {
    Any,
    Integer,
    HalfIntegerOrInteger,
    NonInteger,
}

impl NuClass {
    fn admits(self, nu: f64) -> bool {
        match self {
            NuClass::Any => true,
            NuClass::Integer => nu.fract() == 0.0,
            NuClass::HalfIntegerOrInteger => (2.0 * nu).fract() == 0.0,
            NuClass::NonInteger => nu.fract() != 0.0,
        }
    }
}

/// A real interval; infinite ends are always open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub const fn closed(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_open: false,
            hi_open: false,
        }
    }

    pub const fn open(lo: f64, hi: f64) -> Self {
        Self {
            lo,
            hi,
            lo_open: true,
            hi_open: true,
        }
    }

    pub const fn point(v: f64) -> Self {
        Self::closed(v, v)
    }

    /// `[lo, ∞)`.
    pub const fn at_least(lo: f64) -> Self {
        Self {
            lo,
            hi: f64::INFINITY,
            lo_open: false,
            hi_open: true,
        }
    }

    /// `(lo, ∞)`.
    pub const fn above(lo: f64) -> Self {
        Self::open(lo, f64::INFINITY)
    }

    /// `(-∞, hi)`.
    pub const fn below(hi: f64) -> Self {
        Self::open(f64::NEG_INFINITY, hi)
    }

    pub const fn real_line() -> Self {
        Self::open(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn contains(&self, v: f64) -> bool {
        let above_lo = if self.lo_open {
            v > self.lo
        } else {
            v >= self.lo
        };
        let below_hi = if self.hi_open {
            v < self.hi
        } else {
            v <= self.hi
        };
        above_lo && below_hi
    }

    /// Finite closed endpoints.
    pub fn closed_ends(&self) -> Vec<f64> {
        let mut ends = Vec::new();
        if !self.lo_open && self.lo.is_finite() {
            ends.push(self.lo);
        }
        if !self.hi_open && self.hi.is_finite() && self.hi != self.lo {
            ends.push(self.hi);
        }
        ends
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            return write!(f, "{{{}}}", self.lo);
        }
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{}, {}{r}", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Domain3 {
    pub nu: Interval,
    pub beta: Interval,
    pub x: Interval,
    pub nu_class: NuClass,
}

impl Domain3 {
    pub fn contains(&self, p: &Point) -> bool {
        self.nu.contains(p.nu)
            && self.nu_class.admits(p.nu)
            && self.beta.contains(p.beta)
            && self.x.contains(p.x)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub nu: f64,
    pub beta: f64,
    pub x: f64,
}

/// Both sides of one case of a record at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct Side {
    pub case: String,
    pub lhs: f64,
    pub rhs: f64,
}

impl Side {
    fn new(case: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self {
            case: case.into(),
            lhs,
            rhs,
        }
    }

    fn single(lhs: f64, rhs: f64) -> Vec<Self> {
        vec![Self::new("", lhs, rhs)]
    }

    fn ratio(case: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Self::new(case, lhs / rhs, 1.0)
    }

    fn normalized_margin(&self) -> f64 {
        (self.rhs - self.lhs) / self.rhs.abs().max(1.0)
    }
}

type Evaluator = Arc<dyn Fn(&Point, &EvalConfig) -> Result<Vec<Side>> + Send + Sync>;

/// One uniform or pointwise inequality together with its hypotheses.
#[derive(Clone)]
pub struct BoundRecord {
    pub id: &'static str,
    pub description: &'static str,
    pub anchor: &'static str,
    pub strict: bool,
    pub sense: Sense,
    pub domain: Domain3,
    eval: Evaluator,
}

impl fmt::Debug for BoundRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundRecord")
            .field("id", &self.id)
            .field("sense", &self.sense)
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl BoundRecord {
    /// Every case of the record at `p`, without the domain check.
    pub fn evaluate(&self, p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
        (self.eval)(p, cfg)
    }

    /// The binding case's left-hand side.
    pub fn lhs(&self, p: &Point, cfg: &EvalConfig) -> Result<f64> {
        Ok(eval_margin(self, p, cfg)?.lhs)
    }

    /// The binding case's right-hand side.
    pub fn rhs(&self, p: &Point, cfg: &EvalConfig) -> Result<f64> {
        Ok(eval_margin(self, p, cfg)?.rhs)
    }

    /// A copy whose right-hand sides are multiplied by `factor`; used to
    /// exercise the failure path of the certification run.
    pub fn with_rhs_scale(&self, factor: f64) -> Self {
        let inner = Arc::clone(&self.eval);
        let mut out = self.clone();
        out.eval = Arc::new(move |p, cfg| {
            Ok(inner(p, cfg)?
                .into_iter()
                .map(|s| Side {
                    rhs: s.rhs * factor,
                    ..s
                })
                .collect())
        });
        out
    }
}

/// The binding case at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct MarginEval {
    pub case: String,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs - lhs`.
    pub margin: f64,
    /// `max(1, |rhs|)`.
    pub scale: f64,
}

impl MarginEval {
    pub fn violates(&self) -> bool {
        self.margin < -MARGIN_TOL * self.scale
    }
}

/// `rhs - lhs` for the case with the smallest relative margin.
pub fn eval_margin(record: &BoundRecord, p: &Point, cfg: &EvalConfig) -> Result<MarginEval> {
    let tag = |e: Error| Error::Record {
        id: record.id.to_string(),
        source: Box::new(e),
    };
    if !record.domain.contains(p) {
        return Err(tag(Error::Domain(format!(
            "point (nu = {}, beta = {}, x = {}) lies outside the record domain",
            p.nu, p.beta, p.x
        ))));
    }
    let sides = record.evaluate(p, cfg).map_err(tag)?;
    let worst = sides
        .into_iter()
        .min_by(|a, b| a.normalized_margin().total_cmp(&b.normalized_margin()))
        .ok_or_else(|| tag(Error::Domain("record produced no cases".into())))?;
    let margin = worst.rhs - worst.lhs;
    if !margin.is_finite() {
        return Err(tag(Error::Overflow(format!(
            "non-finite margin at (nu = {}, beta = {}, x = {})",
            p.nu, p.beta, p.x
        ))));
    }
    Ok(MarginEval {
        case: worst.case,
        lhs: worst.lhs,
        rhs: worst.rhs,
        margin,
        scale: worst.rhs.abs().max(1.0),
    })
}

/// The `x` values of `grid` inside the record domain, plus `x = 0` and the
/// closed domain ends inside the grid range. Sorted ascending.
pub fn x_points(domain: &Domain3, grid: &SweepGrid) -> Vec<f64> {
    let xs = grid.x_values();
    let (lo, hi) = (xs[0], xs[xs.len() - 1]);
    let mut out: Vec<f64> = xs.into_iter().filter(|&x| domain.x.contains(x)).collect();
    for e in domain.x.closed_ends() {
        if e == 0.0 || (lo..=hi).contains(&e) {
            out.push(e);
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// The `(nu, beta)` slices of `grid` inside the record domain, in grid order.
pub fn slices(domain: &Domain3, grid: &SweepGrid) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &nu in &grid.nu_values {
        if !(domain.nu.contains(nu) && domain.nu_class.admits(nu)) {
            continue;
        }
        for &beta in &grid.beta_values {
            if domain.beta.contains(beta) {
                out.push((nu, beta));
            }
        }
    }
    out
}

/// Result of maximizing the binding left-hand side over one slice.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceSup {
    pub sup: MarginEval,
    pub argmax: Point,
    /// Every evaluated point in evaluation order, grid points first.
    pub evaluated: Vec<(Point, MarginEval)>,
}

/// Grid scan of one `(nu, beta)` slice followed by golden-section
/// refinement in `x` around the best grid cell. The objective is the
/// relative violation `(lhs - rhs) / max(1, |rhs|)`, which equals the
/// left-hand side up to a constant for bounds with a fixed right side.
pub fn slice_supremum(
    record: &BoundRecord,
    nu: f64,
    beta: f64,
    xs: &[f64],
    refine_rounds: u32,
    cfg: &EvalConfig,
) -> Result<SliceSup> {
    let mut evaluated = Vec::with_capacity(xs.len() + refine_rounds as usize + 2);
    let at = |x: f64, evaluated: &mut Vec<(Point, MarginEval)>| -> Result<f64> {
        let p = Point { nu, beta, x };
        let m = eval_margin(record, &p, cfg)?;
        let score = -m.margin / m.scale;
        evaluated.push((p, m));
        Ok(score)
    };
    if xs.is_empty() {
        return Err(Error::Domain(format!(
            "record {}: no grid points in its domain",
            record.id
        )));
    }
    let mut best_i = 0;
    let mut best_score = f64::NEG_INFINITY;
    for (i, &x) in xs.iter().enumerate() {
        let s = at(x, &mut evaluated)?;
        if s > best_score {
            best_score = s;
            best_i = i;
        }
    }
    if xs.len() >= 2 && refine_rounds > 0 {
        let a = xs[best_i.saturating_sub(1)];
        let b = xs[(best_i + 1).min(xs.len() - 1)];
        golden_section(a, b, refine_rounds, |x| at(x, &mut evaluated))?;
    }
    let (argmax, sup) = evaluated
        .iter()
        .fold(None::<&(Point, MarginEval)>, |acc, cand| match acc {
            Some(b) if score_of(&b.1) >= score_of(&cand.1) => Some(b),
            _ => Some(cand),
        })
        .cloned()
        .expect("slice evaluated at least one point");
    Ok(SliceSup {
        sup,
        argmax,
        evaluated,
    })
}

fn score_of(m: &MarginEval) -> f64 {
    -m.margin / m.scale
}

/// Maximizes `f` on `[a, b]`, in `ln x` when both ends are positive.
fn golden_section(
    a: f64,
    b: f64,
    rounds: u32,
    mut f: impl FnMut(f64) -> Result<f64>,
) -> Result<()> {
    let log = a > 0.0;
    type Map = fn(f64) -> f64;
    let (to, from): (Map, Map) = if log {
        (f64::ln, f64::exp)
    } else {
        (|v| v, |v| v)
    };
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (to(a), to(b));
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let mut fc = f(from(c))?;
    let mut fd = f(from(d))?;
    for _ in 0..rounds {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(from(c))?;
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(from(d))?;
        }
    }
    Ok(())
}

/// Largest binding left-hand side over every slice of `grid` in the record
/// domain, with golden-section refinement per slice.
pub fn supremum_search(
    record: &BoundRecord,
    grid: &SweepGrid,
    refine_rounds: u32,
    cfg: &EvalConfig,
) -> Result<(f64, Point)> {
    let xs = x_points(&record.domain, grid);
    let mut best: Option<(MarginEval, Point)> = None;
    for (nu, beta) in slices(&record.domain, grid) {
        let s = slice_supremum(record, nu, beta, &xs, refine_rounds, cfg)?;
        if best
            .as_ref()
            .is_none_or(|(m, _)| score_of(&s.sup) > score_of(m))
        {
            best = Some((s.sup, s.argmax));
        }
    }
    best.map(|(m, p)| (m.lhs, p)).ok_or_else(|| {
        Error::Domain(format!(
            "record {}: grid does not meet its domain",
            record.id
        ))
    })
}

// ---------------------------------------------------------------------------
// Evaluator helpers.

fn iv(nu: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(bessel_i(nu, x, cfg)?.value)
}

fn kv(nu: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(bessel_k(nu, x, cfg)?.value)
}

fn ik(nu: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(product_ik(nu, x, cfg)?.value)
}

/// `Γ(a) / Γ(b)`, exact for small positive integers.
fn gratio(a: f64, b: f64) -> f64 {
    gamma_ratio(a, b)
}

fn label(name: &str, v: impl fmt::Display) -> String {
    format!("{name}={v}")
}

const fn unit_beta() -> Interval {
    Interval::open(-1.0, 1.0)
}

const NU_ABOVE_HALF: Interval = Interval::above(-0.5);
const BETA_ZERO: Interval = Interval::point(0.0);
const X_ALL: Interval = Interval::at_least(0.0);
const X_POSITIVE: Interval = Interval::above(0.0);
const X_UNIT: Interval = Interval::closed(0.0, 1.0);
const X_FROM_ONE: Interval = Interval::at_least(1.0);

fn dom(nu: Interval, beta: Interval, x: Interval) -> Domain3 {
    Domain3 {
        nu,
        beta,
        x,
        nu_class: NuClass::Any,
    }
}

fn classed(nu: Interval, x: Interval, nu_class: NuClass) -> Domain3 {
    Domain3 {
        nu,
        beta: BETA_ZERO,
        x,
        nu_class,
    }
}

struct Spec {
    id: &'static str,
    description: &'static str,
    anchor: &'static str,
    sense: Sense,
    domain: Domain3,
}

fn record(
    s: Spec,
    f: impl Fn(&Point, &EvalConfig) -> Result<Vec<Side>> + Send + Sync + 'static,
) -> BoundRecord {
    BoundRecord {
        id: s.id,
        description: s.description,
        anchor: s.anchor,
        strict: s.sense == Sense::LhsLtRhs,
        sense: s.sense,
        domain: s.domain,
        eval: Arc::new(f),
    }
}

// ---------------------------------------------------------------------------
// Bounds over the whole half-line.

/// `C1a`-`C1c`, as ratios. `which`: 0 uses `K_{nu+1}`, 1 uses `K_nu`, 2
/// the derivative factor `|beta K_nu + K_{nu+1}|`.
fn first_integral_product(which: u8) -> impl Fn(&Point, &EvalConfig) -> Result<Vec<Side>> {
    move |p, cfg| {
        let (nu, beta, x) = (p.nu, p.beta, p.x);
        let s = 2.0 * nu + 1.0;
        let c = if which == 2 {
            2.0 * (1.0 + beta.abs()) / s
        } else {
            2.0 / s
        };
        if x == 0.0 {
            // x K_{nu+1} I_nu -> 1 and the left sides tend to 1/(2nu+1) or 0.
            let lhs = if which == 1 { 0.0 } else { 1.0 / s };
            return Ok(vec![Side::ratio("", lhs, c)]);
        }
        let j = repeated_integral_quad(nu, beta, 1, x, cfg)?.value;
        let w = (-beta * x).exp() * x.powf(-nu) * j;
        let k1 = kv(nu + 1.0, x, cfg)?;
        let factor = match which {
            0 => k1,
            1 => kv(nu, x, cfg)?,
            _ => (beta * kv(nu, x, cfg)? + k1).abs(),
        };
        let rhs = c * x * k1 * iv(nu, x, cfg)?;
        Ok(vec![Side::ratio("", w * factor, rhs)])
    }
}

/// `C2a`/`C2b`: derivative-times-tail products for `n = 0..=4`.
fn deriv_tail_products(large_nu: bool) -> impl Fn(&Point, &EvalConfig) -> Result<Vec<Side>> {
    move |p, cfg| {
        let (nu, beta, x) = (p.nu, p.beta, p.x);
        let tail = tail_integral_k(nu, beta, x, cfg)?.value;
        (0..=4u32)
            .map(|n| {
                let d = deriv_tilted_i(n, nu, beta, x, cfg)?.value.abs();
                let pow = 2f64.powi(n as i32);
                let rhs = if large_nu {
                    pow * PI.sqrt() * gratio(nu + 0.5, nu + 1.0)
                        / (1.0 - beta * beta).powf(nu + 0.5)
                } else {
                    (E + 1.0) * pow * 2f64.sqrt() * gamma(nu + 0.5) / (1.0 - beta.abs())
                };
                Ok(Side::new(label("n", n), d * tail, rhs))
            })
            .collect()
    }
}

fn repeated_deriv_products(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    (1..=4u32)
        .map(|n| {
            let v = expr_repeated_deriv_product(n, p.nu, 0.0, p.x, cfg)?;
            Ok(Side::new(
                label("n", n),
                v,
                2f64.powi(n as i32 - 1) / (2.0 * p.nu + 1.0),
            ))
        })
        .collect()
}

fn first_repeated_times_k(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    let (nu, x) = (p.nu, p.x);
    let rhs = 1.0 / (2.0 * nu + 1.0);
    if x == 0.0 {
        return Ok(Side::single(0.0, rhs));
    }
    let v = repeated_integral_series(nu, 1, x, cfg)?.value * x.powf(-nu) * kv(nu, x, cfg)?;
    Ok(Side::single(v, rhs))
}

fn tail_sup_value(nu: f64) -> f64 {
    PI.sqrt() * gratio(nu + 0.5, nu + 1.0) / 2.0
}

fn ratio_tail_product(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    Ok(Side::single(
        expr_deriv_tail_product(0, p.nu, 0.0, p.x, cfg)?,
        tail_sup_value(p.nu),
    ))
}

/// `C5a`/`C5b`: even orders 2, 4 or odd orders 1, 3.
fn parity_tail_products(even: bool) -> impl Fn(&Point, &EvalConfig) -> Result<Vec<Side>> {
    move |p, cfg| {
        let nu = p.nu;
        let tail = tail_integral_k(nu, 0.0, p.x, cfg)?.value;
        let (orders, rhs) = if even {
            (
                [2u32, 4],
                1.0 / (2.0 * (nu + 2.0)) + PI.sqrt() / (2.0 * (2.0 * nu + 1.0)),
            )
        } else {
            ([1u32, 3], 1.0 / (2.0 * (nu + 1.0)))
        };
        orders
            .iter()
            .map(|&n| {
                Ok(Side::new(
                    label("n", n),
                    deriv_i_ratio(n, nu, p.x, cfg)?.value * tail,
                    rhs,
                ))
            })
            .collect()
    }
}

fn zero_order_repeated(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    (1..=4u32)
        .map(|n| {
            let v = if p.x == 0.0 {
                0.0
            } else {
                p.x * expr_repeated_deriv_product(n, 0.0, 0.0, p.x, cfg)?
            };
            Ok(Side::new(label("n", n), v, 2f64.powi(n as i32 - 1)))
        })
        .collect()
}

fn zero_order_repeated_k(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    if p.x == 0.0 {
        return Ok(Side::single(0.0, 1.0));
    }
    let v = p.x * repeated_integral_series(0.0, 1, p.x, cfg)?.value * kv(0.0, p.x, cfg)?;
    Ok(Side::single(v, 1.0))
}

fn zero_order_tail(order: f64, rhs: f64) -> impl Fn(&Point, &EvalConfig) -> Result<Vec<Side>> {
    move |p, cfg| {
        if p.x == 0.0 {
            return Ok(Side::single(0.0, rhs));
        }
        let v = p.x * iv(order, p.x, cfg)? * tail_integral_k(0.0, 0.0, p.x, cfg)?.value;
        Ok(Side::single(v, rhs))
    }
}

// ---------------------------------------------------------------------------
// Bounds for x >= 1.

fn shift_pairs() -> impl Iterator<Item = (u32, u32)> {
    (1..=4u32).flat_map(|n| (0..=n).map(move |k| (n, k)))
}

fn head_integral_products(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    let (nu, x) = (p.nu, p.x);
    shift_pairs()
        .map(|(n, k)| {
            let (nf, kf) = (n as f64, k as f64);
            let integral = power_integral_i(nu - kf, nu + nf, x, cfg)?.value;
            let v = kv(nu + nf + 1.0, x, cfg)? * x.powf(-nu) * integral;
            Ok(Side::new(
                format!("n={n},k={k}"),
                v,
                1.0 / (2.0 * nu + nf - kf + 1.0),
            ))
        })
        .collect()
}

fn tail_integral_products(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    let (nu, x) = (p.nu, p.x);
    shift_pairs()
        .map(|(n, k)| {
            let nf = n as f64;
            let tail = tail_integral_k_shifted(nu, k, n, x, cfg)?.value;
            let v = x.powf(-nu) * iv(nu + nf, x, cfg)? * tail;
            Ok(Side::new(
                format!("n={n},k={k}"),
                v,
                PI.sqrt() / (4.0 * (nu + nf) + 1.0).sqrt(),
            ))
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Singular differences on [0, 1] and for order zero.

fn first_kind_differences(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    (2..=4u32)
        .map(|n| {
            let v = expr_singular_difference(1, n, p.nu, p.x, cfg)?;
            Ok(Side::new(
                label("n", n),
                v,
                (1.0 + 2f64.powi(n as i32 - 1)) / (2.0 * p.nu + 1.0),
            ))
        })
        .collect()
}

/// The three order-dependent constants, integer and non-integer branches.
fn v_const(which: u8, nu: f64) -> f64 {
    let s = 2.0 * nu + 1.0;
    if nu.fract() == 0.0 && nu >= 0.0 {
        let m = nu as u64;
        match which {
            1 => 2f64.powf(2.0 * nu + 1.0) * factorial(m) * factorial(m + 2) * s,
            2 => 2f64.powf(2.0 * nu + 3.0) * factorial(m + 1) * factorial(m + 3) * s,
            _ => 2f64.powf(2.0 * nu + 2.0) * factorial(m) * factorial(m + 3) * s,
        }
    } else {
        let sin = (PI * nu).sin().abs();
        match which {
            1 => sin * 2f64.powf(2.0 * nu) * gamma(nu + 1.0) * gamma(nu + 4.0) * s,
            2 => sin * 2f64.powf(2.0 * nu + 2.0) * gamma(nu + 2.0) * gamma(nu + 5.0) * s,
            _ => sin * 2f64.powf(2.0 * nu + 1.0) * gamma(nu + 1.0) * gamma(nu + 5.0) * s,
        }
    }
}

/// `C9`-`C11`: singular differences of variant 2-4 against either the
/// general constant or the fast-path constant.
fn higher_difference(variant: u8, fast: bool) -> impl Fn(&Point, &EvalConfig) -> Result<Vec<Side>> {
    move |p, cfg| {
        let nu = p.nu;
        let s = 2.0 * nu + 1.0;
        let rhs = match (variant, fast) {
            (2, true) => 3.0 / s,
            (_, true) => 4.0 / s,
            (2, false) => 25.0 / (12.0 * s) + 1.0 / v_const(1, nu),
            (3, false) => 77.0 / (20.0 * s) + 1.0 / v_const(2, nu),
            (_, false) => 2779.0 / (768.0 * s) + 1.0 / v_const(3, nu),
        };
        Ok(Side::single(
            expr_singular_difference(variant, 0, nu, p.x, cfg)?,
            rhs,
        ))
    }
}

fn order_zero_difference(
    variant: u8,
    n: u32,
    rhs: f64,
) -> impl Fn(&Point, &EvalConfig) -> Result<Vec<Side>> {
    move |p, cfg| {
        Ok(Side::single(
            expr_singular_difference(variant, n, 0.0, p.x, cfg)?,
            rhs,
        ))
    }
}

const AUX_TRIPLES: [(u32, u32, u32); 3] = [(2, 1, 3), (2, 2, 4), (3, 1, 4)];
const AUX_PAIRS: [(u32, u32); 3] = [(1, 3), (2, 4), (1, 4)];

fn aux_bounds(family: AuxFamily) -> impl Fn(&Point, &EvalConfig) -> Result<Vec<Side>> {
    move |p, cfg| {
        let specs: Vec<AuxFunctionSpec> = match family {
            AuxFamily::Alpha | AuxFamily::BetaFn => AUX_TRIPLES
                .iter()
                .map(|&(pp, q, r)| AuxFunctionSpec {
                    family,
                    p: pp,
                    q,
                    r,
                    nu: p.nu,
                })
                .collect(),
            _ => AUX_PAIRS
                .iter()
                .map(|&(q, r)| AuxFunctionSpec {
                    family,
                    p: 0,
                    q,
                    r,
                    nu: p.nu,
                })
                .collect(),
        };
        specs
            .iter()
            .map(|s| {
                let case = if s.p > 0 {
                    format!("p={},q={},r={}", s.p, s.q, s.r)
                } else {
                    format!("q={},r={}", s.q, s.r)
                };
                Ok(Side::new(case, eval_aux(s, p.x, cfg)?, s.bound()?))
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Integral and product inequalities.

fn head_integral_ratio(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    let (nu, x) = (p.nu, p.x);
    (0..=3u32)
        .map(|n| {
            let nf = n as f64;
            let lhs = power_integral_i(nu, nu + nf, x, cfg)?.value;
            let rhs = 2.0 * (nu + nf + 1.0) / (2.0 * nu + nf + 1.0)
                * x.powf(nu)
                * iv(nu + nf + 1.0, x, cfg)?;
            Ok(Side::ratio(label("n", n), lhs, rhs))
        })
        .collect()
}

fn repeated_integral_ratio(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    let (nu, x) = (p.nu, p.x);
    (1..=4u32)
        .map(|n| {
            let prod: f64 = (1..=n)
                .map(|k| (2.0 * nu + 2.0 * k as f64) / (2.0 * nu + k as f64))
                .product();
            let lhs = repeated_integral_series(nu, n, x, cfg)?.value;
            let rhs = prod * x.powf(nu) * iv(nu + n as f64, x, cfg)?;
            Ok(Side::ratio(label("n", n), lhs, rhs))
        })
        .collect()
}

/// Tail integral against `factor(nu, beta) · e^{beta x} x^nu K_{order}(x)`.
fn tail_ratio(
    order_shift: f64,
    factor: fn(f64, f64) -> f64,
) -> impl Fn(&Point, &EvalConfig) -> Result<Vec<Side>> {
    move |p, cfg| {
        let (nu, beta, x) = (p.nu, p.beta, p.x);
        let lhs = tail_integral_k(nu, beta, x, cfg)?.value;
        let rhs = factor(nu, beta) * (beta * x).exp() * x.powf(nu) * kv(nu + order_shift, x, cfg)?;
        Ok(vec![Side::ratio("", lhs, rhs)])
    }
}

fn normalized_gap_upper(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    Ok(Side::single(
        expr_k_normalized_gap(p.nu, p.x, cfg)?,
        1.0 / (4.0 * (p.nu - 1.0)),
    ))
}

fn normalized_gap_positive(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    Ok(Side::single(0.0, expr_k_normalized_gap(p.nu, p.x, cfg)?))
}

fn ik_half_inverse(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    Ok(Side::single(ik(p.nu, p.x, cfg)?, 1.0 / (2.0 * p.nu)))
}

/// Ratio of the product at `1.05 x` to the product at `x`.
fn ik_decreasing(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    Ok(vec![Side::ratio(
        "x'=1.05x",
        ik(p.nu, 1.05 * p.x, cfg)?,
        ik(p.nu, p.x, cfg)?,
    )])
}

// ---------------------------------------------------------------------------
// Order monotonicity and classical inequalities.

const ORDER_GAPS: [f64; 3] = [0.5, 1.0, 2.0];

fn i_order_decreasing(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    let base = iv(p.nu, p.x, cfg)?;
    ORDER_GAPS
        .iter()
        .map(|&d| {
            Ok(Side::ratio(
                label("delta", d),
                iv(p.nu + d, p.x, cfg)?,
                base,
            ))
        })
        .collect()
}

fn i_step_down(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    Ok(vec![Side::ratio(
        "",
        iv(p.nu, p.x, cfg)?,
        iv(p.nu - 1.0, p.x, cfg)?,
    )])
}

fn k_order_increasing(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    let base = kv(p.nu, p.x, cfg)?;
    ORDER_GAPS
        .iter()
        .map(|&d| {
            Ok(Side::ratio(
                label("delta", d),
                base,
                kv(p.nu + d, p.x, cfg)?,
            ))
        })
        .collect()
}

fn k_step_down(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    Ok(vec![Side::ratio(
        "",
        kv(p.nu - 1.0, p.x, cfg)?,
        kv(p.nu, p.x, cfg)?,
    )])
}

/// `Γ(nu+1) (2/x)^nu I_nu(x) / cosh x`, both sides scaled by `e^{-x}`.
fn cosh_envelope(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    let (nu, x) = (p.nu, p.x);
    let lhs = gamma(nu + 1.0) * (2.0 / x).powf(nu) * bessel_i_scaled(nu, x, cfg)?.value;
    let rhs = 0.5 * (1.0 + (-2.0 * x).exp());
    Ok(vec![Side::ratio("", lhs, rhs)])
}

fn ik_order_decreasing(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    Ok(vec![Side::ratio(
        "",
        ik(p.nu + 1.0, p.x, cfg)?,
        ik(p.nu, p.x, cfg)?,
    )])
}

/// `I_{mu-1}(x) / ((mu + sqrt(mu^2 + 1)) I_mu(x))`; `I_{-1} = I_1`.
fn i_ratio_envelope(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    let mu = p.nu;
    let lower = if mu == 0.0 { 1.0 } else { mu - 1.0 };
    let rhs = (mu + (mu * mu + 1.0).sqrt()) * iv(mu, p.x, cfg)?;
    Ok(vec![Side::ratio("", iv(lower, p.x, cfg)?, rhs)])
}

fn gamma_ratio_bound(p: &Point, _cfg: &EvalConfig) -> Result<Vec<Side>> {
    let mu = p.nu;
    Ok(vec![Side::ratio(
        "",
        gratio(mu + 0.5, mu + 1.0),
        1.0 / (mu + 0.25).sqrt(),
    )])
}

// ---------------------------------------------------------------------------
// Derivative bounds.

fn k_deriv_denominator(m: u32, nu: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    Ok(x.powf(-nu) * kv(nu + m as f64, x, cfg)?)
}

fn i_deriv_denominator(m: u32, nu: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    let order = if m % 2 == 1 { nu + 1.0 } else { nu };
    Ok(x.powf(-nu) * iv(order, x, cfg)?)
}

fn k_deriv_magnitude(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    (1..=4u32)
        .map(|m| {
            let d = deriv_k_ratio(m, p.nu, p.x, cfg)?.value.abs();
            Ok(Side::ratio(
                label("m", m),
                d,
                k_deriv_denominator(m, p.nu, p.x, cfg)?,
            ))
        })
        .collect()
}

fn i_deriv_magnitude(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    (1..=4u32)
        .map(|m| {
            let d = deriv_i_ratio(m, p.nu, p.x, cfg)?.value;
            Ok(Side::ratio(
                label("m", m),
                d,
                i_deriv_denominator(m, p.nu, p.x, cfg)?,
            ))
        })
        .collect()
}

/// Signs: `(-1)^m d^m (x^{-nu} K_nu) > 0` and `d^m (x^{-nu} I_nu) > 0`,
/// each normalized by its magnitude bound.
fn deriv_signs(p: &Point, cfg: &EvalConfig) -> Result<Vec<Side>> {
    let mut out = Vec::with_capacity(8);
    for m in 1..=4u32 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let k = sign * deriv_k_ratio(m, p.nu, p.x, cfg)?.value
            / k_deriv_denominator(m, p.nu, p.x, cfg)?;
        out.push(Side::new(format!("K,m={m}"), 0.0, k));
        let i = deriv_i_ratio(m, p.nu, p.x, cfg)?.value / i_deriv_denominator(m, p.nu, p.x, cfg)?;
        out.push(Side::new(format!("I,m={m}"), 0.0, i));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------

/// The complete, fixed list of records in id order.
pub fn catalog() -> Vec<BoundRecord> {
    use Sense::*;
    let general = dom(NU_ABOVE_HALF, unit_beta(), X_ALL);
    let zero_beta = dom(NU_ABOVE_HALF, BETA_ZERO, X_ALL);
    let order_zero = dom(Interval::point(0.0), BETA_ZERO, X_ALL);
    let from_one = dom(NU_ABOVE_HALF, BETA_ZERO, X_FROM_ONE);
    let unit = dom(NU_ABOVE_HALF, BETA_ZERO, X_UNIT);
    let nonneg_int = Interval::at_least(0.0);
    let pointwise = |nu: Interval| dom(nu, BETA_ZERO, X_POSITIVE);

    let mut out = vec![
        record(
            Spec {
                id: "C1a",
                description: "e^{-bx} K_{nu+1} x^{-nu} ∫_0^x e^{bt} t^nu I_nu dt over 2/(2nu+1) x K_{nu+1} I_nu",
                anchor: "tilted first repeated integral against K_{nu+1}",
                sense: LhsLeRhs,
                domain: general,
            },
            first_integral_product(0),
        ),
        record(
            Spec {
                id: "C1b",
                description: "e^{-bx} K_nu x^{-nu} ∫_0^x e^{bt} t^nu I_nu dt over 2/(2nu+1) x K_{nu+1} I_nu",
                anchor: "tilted first repeated integral against K_nu",
                sense: LhsLeRhs,
                domain: general,
            },
            first_integral_product(1),
        ),
        record(
            Spec {
                id: "C1c",
                description: "|d/dx (e^{-bx} x^{-nu} K_nu)| ∫_0^x e^{bt} t^nu I_nu dt over 2(1+|b|)/(2nu+1) x K_{nu+1} I_nu",
                anchor: "tilted first repeated integral against the derivative of K",
                sense: LhsLeRhs,
                domain: general,
            },
            first_integral_product(2),
        ),
        record(
            Spec {
                id: "C2a",
                description: "|d^n (e^{-bx} x^{-nu} I_nu)| ∫_x^∞ e^{bt} t^nu K_nu dt, n = 0..4, nu >= 1/2",
                anchor: "derivative-tail product, orders nu >= 1/2",
                sense: LhsLtRhs,
                domain: dom(Interval::at_least(0.5), unit_beta(), X_ALL),
            },
            deriv_tail_products(true),
        ),
        record(
            Spec {
                id: "C2b",
                description: "|d^n (e^{-bx} x^{-nu} I_nu)| ∫_x^∞ e^{bt} t^nu K_nu dt, n = 0..4, |nu| < 1/2",
                anchor: "derivative-tail product, orders |nu| < 1/2",
                sense: LhsLtRhs,
                domain: dom(Interval::open(-0.5, 0.5), unit_beta(), X_ALL),
            },
            deriv_tail_products(false),
        ),
        record(
            Spec {
                id: "C3a",
                description: "I_(nu,0,n) |d^n (x^{-nu} K_nu)| <= 2^{n-1}/(2nu+1), n = 1..4",
                anchor: "repeated integral times K derivative",
                sense: LhsLeRhs,
                domain: zero_beta,
            },
            repeated_deriv_products,
        ),
        record(
            Spec {
                id: "C3b",
                description: "I_(nu,0,1) x^{-nu} K_nu < 1/(2nu+1)",
                anchor: "first repeated integral times K",
                sense: LhsLtRhs,
                domain: zero_beta,
            },
            first_repeated_times_k,
        ),
        record(
            Spec {
                id: "C4",
                description: "sup of x^{-nu} I_nu ∫_x^∞ t^nu K_nu dt equals sqrt(pi) Γ(nu+1/2) / (2 Γ(nu+1))",
                anchor: "I-K tail product supremum attained at the origin",
                sense: SupEquals,
                domain: zero_beta,
            },
            ratio_tail_product,
        ),
        record(
            Spec {
                id: "C5a",
                description: "d^n (x^{-nu} I_nu) ∫_x^∞ t^nu K_nu dt, n = 2, 4",
                anchor: "even-order derivative-tail product",
                sense: LhsLtRhs,
                domain: zero_beta,
            },
            parity_tail_products(true),
        ),
        record(
            Spec {
                id: "C5b",
                description: "d^n (x^{-nu} I_nu) ∫_x^∞ t^nu K_nu dt < 1/(2(nu+1)), n = 1, 3",
                anchor: "odd-order derivative-tail product",
                sense: LhsLtRhs,
                domain: zero_beta,
            },
            parity_tail_products(false),
        ),
        record(
            Spec {
                id: "C6a",
                description: "x I_(0,0,n) |K_0^(n)| <= 2^{n-1}, n = 1..4",
                anchor: "order-zero repeated integral times K_0 derivative",
                sense: LhsLeRhs,
                domain: order_zero,
            },
            zero_order_repeated,
        ),
        record(
            Spec {
                id: "C6b",
                description: "x I_(0,0,1) K_0 < 1",
                anchor: "order-zero first repeated integral times K_0",
                sense: LhsLtRhs,
                domain: order_zero,
            },
            zero_order_repeated_k,
        ),
        record(
            Spec {
                id: "C6c",
                description: "x I_0 ∫_x^∞ K_0 dt < 0.615",
                anchor: "order-zero tail product with I_0",
                sense: LhsLtRhs,
                domain: order_zero,
            },
            zero_order_tail(0.0, 0.615),
        ),
        record(
            Spec {
                id: "C6d",
                description: "x I_1 ∫_x^∞ K_0 dt <= 1/2",
                anchor: "order-zero tail product with I_1",
                sense: LhsLeRhs,
                domain: order_zero,
            },
            zero_order_tail(1.0, 0.5),
        ),
        record(
            Spec {
                id: "C7a",
                description: "K_{nu+n+1} x^{-nu} ∫_0^x t^{nu-k} I_{nu+n} dt <= 1/(2nu+n-k+1), x >= 1",
                anchor: "head integral of shifted I for x >= 1",
                sense: LhsLeRhs,
                domain: from_one,
            },
            head_integral_products,
        ),
        record(
            Spec {
                id: "C7b",
                description: "I_{nu+n} x^{-nu} ∫_x^∞ t^{nu-k} K_{nu+n} dt < sqrt(pi)/sqrt(4(nu+n)+1), x >= 1",
                anchor: "tail integral of shifted K for x >= 1",
                sense: LhsLtRhs,
                domain: from_one,
            },
            tail_integral_products,
        ),
        record(
            Spec {
                id: "C8",
                description: "|1/x - (-1)^n I_(nu,0,n-1) d^n (x^{-nu} K_nu)| < (1+2^{n-1})/(2nu+1), n = 2..4, x in [0, 1]",
                anchor: "first-kind singular difference on the unit interval",
                sense: LhsLtRhs,
                domain: unit,
            },
            first_kind_differences,
        ),
    ];

    let higher = [
        ("C9", 2u8, "|(2nu+2)/x^2 + I_(nu,0,1) d^3 (x^{-nu} K_nu)|"),
        ("C10", 3, "|(2nu+3)/x^2 - I_(nu,0,2) d^4 (x^{-nu} K_nu)|"),
        (
            "C11",
            4,
            "|(2nu+2)(2nu+3)/x^3 + 1/x - I_(nu,0,1) d^4 (x^{-nu} K_nu)|",
        ),
    ];
    for (stem, variant, what) in higher {
        let ids: [&'static str; 3] = match stem {
            "C9" => ["C9a", "C9b", "C9c"],
            "C10" => ["C10a", "C10b", "C10c"],
            _ => ["C11a", "C11b", "C11c"],
        };
        let anchors: [&'static str; 3] = match stem {
            "C9" => [
                "second singular difference, integer orders",
                "second singular difference, non-integer orders",
                "second singular difference, integer and half-integer orders",
            ],
            "C10" => [
                "third singular difference, integer orders",
                "third singular difference, non-integer orders",
                "third singular difference, integer and half-integer orders",
            ],
            _ => [
                "fourth singular difference, integer orders",
                "fourth singular difference, non-integer orders",
                "fourth singular difference, integer and half-integer orders",
            ],
        };
        let what: &'static str = what;
        let branches = [
            (nonneg_int, NuClass::Integer, false),
            (NU_ABOVE_HALF, NuClass::NonInteger, false),
            (nonneg_int, NuClass::HalfIntegerOrInteger, true),
        ];
        for (i, (nu, class, fast)) in branches.into_iter().enumerate() {
            out.push(record(
                Spec {
                    id: ids[i],
                    description: what,
                    anchor: anchors[i],
                    sense: LhsLtRhs,
                    domain: classed(nu, X_UNIT, class),
                },
                higher_difference(variant, fast),
            ));
        }
    }

    let order_zero_rows: [(&'static str, u8, u32, f64, &'static str); 6] = [
        ("C12a", 1, 2, 3.0, "|1/x - I_(0,0,1) K_0''| < 3"),
        ("C12b", 1, 3, 5.0, "|1/x + I_(0,0,2) K_0'''| < 5"),
        ("C12c", 1, 4, 9.0, "|1/x - I_(0,0,3) K_0''''| < 9"),
        ("C12d", 2, 0, 4.39, "|2/x^2 + I_(0,0,1) K_0'''| < 4.39"),
        ("C12e", 3, 0, 6.81, "|3/x^2 - I_(0,0,2) K_0''''| < 6.81"),
        (
            "C12f",
            4,
            0,
            14.61,
            "|6/x^3 + 1/x - I_(0,0,1) K_0''''| < 14.61",
        ),
    ];
    for (id, variant, n, rhs, description) in order_zero_rows {
        out.push(record(
            Spec {
                id,
                description,
                anchor: "order-zero singular difference on the half-line",
                sense: LhsLtRhs,
                domain: order_zero,
            },
            order_zero_difference(variant, n, rhs),
        ));
    }

    let aux_rows: [(&'static str, AuxFamily, NuClass, &'static str); 6] = [
        (
            "L1",
            AuxFamily::Alpha,
            NuClass::Any,
            "series tail of the repeated integral (alpha)",
        ),
        (
            "L2",
            AuxFamily::BetaFn,
            NuClass::Any,
            "singular part of the K expansion (beta)",
        ),
        (
            "L3",
            AuxFamily::GammaFn,
            NuClass::Integer,
            "logarithmic part, integer orders (gamma)",
        ),
        (
            "L4",
            AuxFamily::DeltaFn,
            NuClass::Integer,
            "harmonic-sum part, integer orders (delta)",
        ),
        (
            "L5",
            AuxFamily::EpsilonFn,
            NuClass::NonInteger,
            "reflected series part, non-integer orders (epsilon)",
        ),
        (
            "L6",
            AuxFamily::ZetaFn,
            NuClass::NonInteger,
            "reflected I part, non-integer orders (zeta)",
        ),
    ];
    for (id, family, class, anchor) in aux_rows {
        out.push(record(
            Spec {
                id,
                description: "auxiliary remainder function below its closed-form bound on [0, 1]",
                anchor,
                sense: LhsLtRhs,
                domain: classed(NU_ABOVE_HALF, X_UNIT, class),
            },
            aux_bounds(family),
        ));
    }

    out.extend([
        record(
            Spec {
                id: "A1",
                description: "∫_0^x t^nu I_{nu+n} dt over 2(nu+n+1)/(2nu+n+1) x^nu I_{nu+n+1}, n = 0..3",
                anchor: "head integral of I against the next order",
                sense: LhsLtRhs,
                domain: pointwise(NU_ABOVE_HALF),
            },
            head_integral_ratio,
        ),
        record(
            Spec {
                id: "A2",
                description: "I_(nu,0,n) over prod_k (2nu+2k)/(2nu+k) x^nu I_{nu+n}, n = 1..4",
                anchor: "repeated integral against I_{nu+n}",
                sense: LhsLtRhs,
                domain: pointwise(Interval::at_least(0.0)),
            },
            repeated_integral_ratio,
        ),
        record(
            Spec {
                id: "A3",
                description: "∫_x^∞ t^nu K_nu dt over x^nu K_{nu+1}",
                anchor: "tail integral of K against the next order",
                sense: LhsLtRhs,
                domain: pointwise(Interval::real_line()),
            },
            tail_ratio(1.0, |_, _| 1.0),
        ),
        record(
            Spec {
                id: "A4",
                description: "∫_x^∞ e^{bt} t^nu K_nu dt over e^{bx} x^nu K_nu / (1-|b|), nu < 1/2",
                anchor: "tilted tail integral of K, small orders",
                sense: LhsLtRhs,
                domain: dom(Interval::below(0.5), unit_beta(), X_POSITIVE),
            },
            tail_ratio(0.0, |_, b| 1.0 / (1.0 - b.abs())),
        ),
        record(
            Spec {
                id: "A5",
                description: "∫_x^∞ t^nu K_nu dt over sqrt(pi) Γ(nu+1/2)/Γ(nu) x^nu K_nu, nu >= 1/2",
                anchor: "tail integral of K, large orders",
                sense: LhsLtRhs,
                domain: pointwise(Interval::at_least(0.5)),
            },
            tail_ratio(0.0, |nu, _| PI.sqrt() * gratio(nu + 0.5, nu)),
        ),
        record(
            Spec {
                id: "A6",
                description: "∫_x^∞ e^{bt} t^nu K_nu dt over 2 sqrt(pi) Γ(nu+1/2)/((1-b^2)^{nu+1/2} Γ(nu)) e^{bx} x^nu K_nu",
                anchor: "tilted tail integral of K, large orders",
                sense: LhsLtRhs,
                domain: dom(Interval::at_least(0.5), unit_beta(), X_POSITIVE),
            },
            tail_ratio(0.0, |nu, b| 2.0 * PI.sqrt() * gratio(nu + 0.5, nu) / (1.0 - b * b).powf(nu + 0.5)),
        ),
        record(
            Spec {
                id: "A7",
                description: "1/x^2 - x^{mu-2} K_mu / (2^{mu-1} Γ(mu)) <= 1/(4(mu-1)), mu > 1",
                anchor: "normalized K gap, upper bound",
                sense: LhsLeRhs,
                domain: dom(Interval::above(1.0), BETA_ZERO, X_ALL),
            },
            normalized_gap_upper,
        ),
        record(
            Spec {
                id: "A8",
                description: "I_nu K_nu <= 1/(2nu), nu > 0",
                anchor: "I-K product against its limit at the origin",
                sense: LhsLeRhs,
                domain: pointwise(Interval::above(0.0)),
            },
            ik_half_inverse,
        ),
        record(
            Spec {
                id: "A9",
                description: "0 < 1/x^2 - x^{mu-2} K_mu / (2^{mu-1} Γ(mu)), mu > 1",
                anchor: "normalized K gap, positivity",
                sense: LhsLtRhs,
                domain: dom(Interval::above(1.0), BETA_ZERO, X_ALL),
            },
            normalized_gap_positive,
        ),
        record(
            Spec {
                id: "A10",
                description: "I_nu K_nu (1.05 x) over I_nu K_nu (x)",
                anchor: "I-K product decreasing in x",
                sense: LhsLtRhs,
                domain: pointwise(NU_ABOVE_HALF),
            },
            ik_decreasing,
        ),
        record(
            Spec {
                id: "X1",
                description: "I_{nu+d} over I_nu, d in {1/2, 1, 2}, nu >= 0",
                anchor: "I decreasing in the order",
                sense: LhsLtRhs,
                domain: pointwise(Interval::at_least(0.0)),
            },
            i_order_decreasing,
        ),
        record(
            Spec {
                id: "X2",
                description: "I_nu over I_{nu-1}, nu >= 1/2",
                anchor: "I against the previous order",
                sense: LhsLtRhs,
                domain: pointwise(Interval::at_least(0.5)),
            },
            i_step_down,
        ),
        record(
            Spec {
                id: "X3",
                description: "K_nu over K_{nu+d}, d in {1/2, 1, 2}, nu >= 0",
                anchor: "K increasing in the order",
                sense: LhsLtRhs,
                domain: pointwise(Interval::at_least(0.0)),
            },
            k_order_increasing,
        ),
        record(
            Spec {
                id: "X4",
                description: "K_{nu-1} over K_nu, nu >= 1/2",
                anchor: "K against the previous order",
                sense: LhsLeRhs,
                domain: pointwise(Interval::at_least(0.5)),
            },
            k_step_down,
        ),
        record(
            Spec {
                id: "X5",
                description: "Γ(nu+1) (2/x)^nu I_nu over cosh x",
                anchor: "cosh envelope of the normalized I",
                sense: LhsLtRhs,
                domain: pointwise(NU_ABOVE_HALF),
            },
            cosh_envelope,
        ),
        record(
            Spec {
                id: "X6",
                description: "I_{mu+1} K_{mu+1} over I_mu K_mu, mu > -1/2",
                anchor: "I-K product decreasing in the order",
                sense: LhsLtRhs,
                domain: pointwise(NU_ABOVE_HALF),
            },
            ik_order_decreasing,
        ),
        record(
            Spec {
                id: "X7",
                description: "I_{mu-1} over (mu + sqrt(mu^2+1)) I_mu, mu >= 0, x >= 1",
                anchor: "consecutive I ratio for x >= 1",
                sense: LhsLtRhs,
                domain: dom(Interval::at_least(0.0), BETA_ZERO, X_FROM_ONE),
            },
            i_ratio_envelope,
        ),
        record(
            Spec {
                id: "X8",
                description: "Γ(mu+1/2)/Γ(mu+1) over 1/sqrt(mu+1/4), mu > -1/4; independent of x",
                anchor: "gamma ratio square-root bound",
                sense: LhsLtRhs,
                domain: dom(Interval::above(-0.25), BETA_ZERO, Interval::point(1.0)),
            },
            gamma_ratio_bound,
        ),
        record(
            Spec {
                id: "D1",
                description: "|d^m (x^{-nu} K_nu)| over x^{-nu} K_{nu+m}, m = 1..4",
                anchor: "K derivative magnitude",
                sense: LhsLeRhs,
                domain: pointwise(Interval::at_least(-0.5)),
            },
            k_deriv_magnitude,
        ),
        record(
            Spec {
                id: "D2",
                description: "d^m (x^{-nu} I_nu) over x^{-nu} I_{nu+1} (odd m) or x^{-nu} I_nu (even m), m = 1..4",
                anchor: "I derivative magnitude",
                sense: LhsLeRhs,
                domain: pointwise(Interval::at_least(-0.5)),
            },
            i_deriv_magnitude,
        ),
        record(
            Spec {
                id: "D3",
                description: "(-1)^m d^m (x^{-nu} K_nu) > 0 and d^m (x^{-nu} I_nu) > 0, m = 1..4, normalized",
                anchor: "derivative signs",
                sense: LhsLtRhs,
                domain: pointwise(Interval::at_least(-0.5)),
            },
            deriv_signs,
        ),
    ]);
    out
}
