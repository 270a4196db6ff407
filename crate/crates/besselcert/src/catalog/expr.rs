//! Target expressions: derivative-times-integral products, the singular
//! differences on `(0, 1]` and the `K` normalization difference.

use crate::deriv::{deriv_k_ratio, deriv_tilted_i, deriv_tilted_k};
use crate::error::{domain, Error, Result};
use crate::expansion::{
    deriv_k_gs, eval_cancelled, k_times_pow_gs, repeated_integral_gs, GenSeries, CANCEL_TOL,
};
use crate::integral::{repeated_integral_quad, repeated_integral_series, tail_integral_k};
use crate::special::{gamma, product_ik};
use crate::EvalConfig;

/// Below this argument the singular differences are evaluated from their
/// symbolically cancelled small-`x` series.
pub const SERIES_SWITCH_X: f64 = 0.1;

/// Largest tolerated ratio between the singular terms and the result on the
/// direct path (half the working digits).
const MAX_DIRECT_LOSS: f64 = 1e8;

/// Above [`SERIES_SWITCH_X`] the series still replaces a direct evaluation
/// losing more than this factor, up to [`SERIES_MAX_X`].
const DIRECT_FALLBACK_LOSS: f64 = 1e4;

/// Largest argument at which the truncated small-`x` series is trusted.
const SERIES_MAX_X: f64 = 2.0;

fn check_nu(nu: f64) -> Result<()> {
    if !(nu > -0.5) || !nu.is_finite() {
        return domain(format!("expression requires nu > -1/2, got {nu}"));
    }
    Ok(())
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("expression requires finite x >= 0, got {x}"));
    }
    Ok(())
}

/// `|d^n/dx^n (e^{-beta x} x^{-nu} I_nu)| · ∫_x^∞ e^{beta t} t^nu K_nu(t) dt`.
pub fn expr_deriv_tail_product(
    n: u32,
    nu: f64,
    beta: f64,
    x: f64,
    cfg: &EvalConfig,
) -> Result<f64> {
    check_nu(nu)?;
    check_x(x)?;
    let d = deriv_tilted_i(n, nu, beta, x, cfg)?.value;
    let v = d.abs() * tail_integral_k(nu, beta, x, cfg)?.value;
    if !v.is_finite() {
        return Err(Error::Overflow(format!(
            "derivative-tail product at x = {x}"
        )));
    }
    Ok(v)
}

/// `I_(nu,beta,n)(x) · |d^n/dx^n (e^{-beta x} x^{-nu} K_nu)|` for `n >= 1`;
/// `beta` must vanish for `n >= 2`. At `x = 0` the finite limit is returned.
pub fn expr_repeated_deriv_product(
    n: u32,
    nu: f64,
    beta: f64,
    x: f64,
    cfg: &EvalConfig,
) -> Result<f64> {
    check_nu(nu)?;
    check_x(x)?;
    if n == 0 {
        return domain("the repeated-integral product needs n >= 1");
    }
    if n >= 2 && beta != 0.0 {
        return domain(format!(
            "the repeated-integral product needs beta = 0 for n >= 2, got beta = {beta}"
        ));
    }
    if x == 0.0 {
        let s = repeated_integral_gs(nu, n).mul(&deriv_k_gs(n, nu)?);
        return Ok(s.cancel_singular(CANCEL_TOL)?.limit_at_zero().abs());
    }
    let (p, d) = if beta == 0.0 {
        (
            repeated_integral_series(nu, n, x, cfg)?.value,
            deriv_k_ratio(n, nu, x, cfg)?.value,
        )
    } else {
        (
            repeated_integral_quad(nu, beta, n, x, cfg)?.value,
            deriv_tilted_k(n, nu, beta, x, cfg)?.value,
        )
    };
    Ok(p * d.abs())
}

/// Singular part and product structure of one difference expression:
/// `Σ c_i x^{-e_i} + sign · I_(nu,0,q)(x) · d^n/dx^n (x^{-nu} K_nu)`.
struct Singular {
    monomials: Vec<(i64, f64)>,
    sign: f64,
    q: u32,
    n: u32,
}

fn singular_shape(variant: u8, n: u32, nu: f64) -> Result<Singular> {
    let s = match variant {
        1 => {
            if n < 2 {
                return domain(format!("variant 1 needs n >= 2, got {n}"));
            }
            let sign = if n % 2 == 0 { -1.0 } else { 1.0 };
            Singular {
                monomials: vec![(-1, 1.0)],
                sign,
                q: n - 1,
                n,
            }
        }
        2 => Singular {
            monomials: vec![(-2, 2.0 * nu + 2.0)],
            sign: 1.0,
            q: 1,
            n: 3,
        },
        3 => Singular {
            monomials: vec![(-2, 2.0 * nu + 3.0)],
            sign: -1.0,
            q: 2,
            n: 4,
        },
        4 => Singular {
            monomials: vec![(-3, (2.0 * nu + 2.0) * (2.0 * nu + 3.0)), (-1, 1.0)],
            sign: -1.0,
            q: 1,
            n: 4,
        },
        _ => return domain(format!("variant must be 1..=4, got {variant}")),
    };
    Ok(s)
}

fn singular_series(shape: &Singular, nu: f64) -> Result<GenSeries> {
    let mut s = repeated_integral_gs(nu, shape.q)
        .mul(&deriv_k_gs(shape.n, nu)?)
        .scale(shape.sign);
    for &(e, c) in &shape.monomials {
        s = s.add(&GenSeries::monomial(nu, e, 0, c));
    }
    Ok(s)
}

fn singular_direct(shape: &Singular, nu: f64, x: f64, cfg: &EvalConfig) -> Result<(f64, f64)> {
    let sing: f64 = shape
        .monomials
        .iter()
        .map(|&(e, c)| c * x.powi(e as i32))
        .sum();
    let p = repeated_integral_series(nu, shape.q, x, cfg)?.value;
    let d = deriv_k_ratio(shape.n, nu, x, cfg)?.value;
    let prod = shape.sign * p * d;
    let v = sing + prod;
    let loss = sing.abs().max(prod.abs()) / v.abs();
    Ok((v.abs(), loss))
}

/// The singular differences, by variant:
///
/// 1. `|1/x - (-1)^n I_(nu,0,n-1) D_n|`, `n >= 2`
/// 2. `|(2nu+2)/x^2 + I_(nu,0,1) D_3|`
/// 3. `|(2nu+3)/x^2 - I_(nu,0,2) D_4|`
/// 4. `|(2nu+2)(2nu+3)/x^3 + 1/x - I_(nu,0,1) D_4|`
///
/// with `D_n = d^n/dx^n (x^{-nu} K_nu)`. `n` is ignored for variants 2-4.
/// Below [`SERIES_SWITCH_X`] the cancelled series is used; `x = 0` returns
/// the limit.
pub fn expr_singular_difference(
    variant: u8,
    n: u32,
    nu: f64,
    x: f64,
    cfg: &EvalConfig,
) -> Result<f64> {
    check_nu(nu)?;
    check_x(x)?;
    let shape = singular_shape(variant, n, nu)?;
    if x == 0.0 {
        let s = singular_series(&shape, nu)?;
        return Ok(s.cancel_singular(CANCEL_TOL)?.limit_at_zero().abs());
    }
    if x < SERIES_SWITCH_X {
        match singular_series(&shape, nu).and_then(|s| eval_cancelled(&s, x)) {
            Ok(v) => return Ok(v.abs()),
            Err(Error::CancellationLoss(msg)) => {
                let (v, loss) = singular_direct(&shape, nu, x, cfg)?;
                if loss <= MAX_DIRECT_LOSS {
                    return Ok(v);
                }
                return Err(Error::CancellationLoss(format!(
                    "series path failed ({msg}) and direct path loses {:.1} digits",
                    loss.log10()
                )));
            }
            Err(e) => return Err(e),
        }
    }
    let (v, loss) = singular_direct(&shape, nu, x, cfg)?;
    if loss > DIRECT_FALLBACK_LOSS && x <= SERIES_MAX_X {
        if let Ok(s) = singular_series(&shape, nu).and_then(|s| eval_cancelled(&s, x)) {
            return Ok(s.abs());
        }
    }
    Ok(v)
}

/// `1/x^2 - x^{mu-2} K_mu(x) / (2^{mu-1} Γ(mu))` for `mu > 1`, with the
/// limit at `x = 0`.
pub fn expr_k_normalized_gap(mu: f64, x: f64, cfg: &EvalConfig) -> Result<f64> {
    if !(mu > 1.0) {
        return domain(format!("normalized K gap requires mu > 1, got {mu}"));
    }
    check_x(x)?;
    let norm = 1.0 / (2f64.powf(mu - 1.0) * gamma(mu));
    let series = || -> Result<GenSeries> {
        Ok(k_times_pow_gs(mu, 0, -2, 1)?
            .scale(-norm)
            .add(&GenSeries::monomial(mu, -2, 0, 1.0)))
    };
    if x == 0.0 {
        return Ok(series()?.cancel_singular(CANCEL_TOL)?.limit_at_zero());
    }
    if x < SERIES_SWITCH_X {
        if let Ok(v) = series().and_then(|s| eval_cancelled(&s, x)) {
            return Ok(v);
        }
    }
    let k = crate::special::bessel_k_scaled(mu, x, cfg)?.value;
    let second = norm * ((mu - 2.0) * x.ln() - x + k.ln()).exp();
    let first = 1.0 / (x * x);
    let v = first - second;
    if first / v.abs() > MAX_DIRECT_LOSS {
        return Err(Error::CancellationLoss(format!(
            "normalized K gap at x = {x}"
        )));
    }
    Ok(v)
}

/// The six constants `1 + (2+√5) I_2K_2 + I_1K_1`, ... bounding the
/// zero-order singular differences for `x >= 1`, all products at `x = 1`.
pub fn zero_order_constants(cfg: &EvalConfig) -> Result<[f64; 6]> {
    let ik = |n: f64| product_ik(n, 1.0, cfg).map(|v| v.value);
    let (ik1, ik2, ik3, ik4) = (ik(1.0)?, ik(2.0)?, ik(3.0)?, ik(4.0)?);
    let g = |m: f64| m + (m * m + 1.0).sqrt();
    let (g2, g3, g4) = (g(2.0), g(3.0), g(4.0));
    Ok([
        1.0 + g2 * ik2 + ik1,
        1.0 + g3 * ik3 + ik2,
        1.0 + g4 * ik4 + 7.0 * ik3,
        2.0 + 0.5 * g2 * g3 * ik3 + 1.5 * ik1,
        3.0 + 0.5 * g3 * g4 * ik4 + 3.5 * ik2,
        7.0 + 0.25 * g2 * g3 * g4 * ik4 + g2 * ik2 + 0.75 * ik1,
    ])
}
