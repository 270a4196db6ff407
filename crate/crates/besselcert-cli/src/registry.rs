//! Named evaluators reachable from `besselcert eval`.

use besselcert::catalog::{
    expr_deriv_tail_product, expr_k_normalized_gap, expr_repeated_deriv_product,
    expr_singular_difference,
};
use besselcert::oracle::{brute_quadrature, fd_derivative, nested_integral};
use besselcert::special::{
    bessel_i, bessel_i_scaled, bessel_k, bessel_k_scaled, bessel_k_series, gamma, log_gamma,
    product_ik,
};
use besselcert::{deriv, integral, EvalConfig, FunctionValue, OracleConfig};
use serde::Serialize;

/// Parameters collected from the command line; each function reads the
/// ones it needs.
#[derive(Debug, Clone, Copy, Default)]
pub struct Params {
    pub nu: Option<f64>,
    pub x: Option<f64>,
    pub n: Option<u32>,
    pub beta: Option<f64>,
    pub variant: Option<u8>,
    pub k: Option<u32>,
    pub p: Option<f64>,
}

pub struct FunctionInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub summary: &'static str,
}

pub const FUNCTIONS: &[FunctionInfo] = &[
    FunctionInfo {
        name: "bessel_i",
        params: "--nu --x",
        summary: "I_nu(x)",
    },
    FunctionInfo {
        name: "bessel_i_scaled",
        params: "--nu --x",
        summary: "e^{-x} I_nu(x)",
    },
    FunctionInfo {
        name: "bessel_k",
        params: "--nu --x",
        summary: "K_nu(x)",
    },
    FunctionInfo {
        name: "bessel_k_scaled",
        params: "--nu --x",
        summary: "e^{x} K_nu(x)",
    },
    FunctionInfo {
        name: "bessel_k_series",
        params: "--nu --x",
        summary: "K_nu(x) from the explicit series",
    },
    FunctionInfo {
        name: "product_ik",
        params: "--nu --x",
        summary: "I_nu(x) K_nu(x)",
    },
    FunctionInfo {
        name: "gamma",
        params: "--x",
        summary: "Gamma(x)",
    },
    FunctionInfo {
        name: "log_gamma",
        params: "--x",
        summary: "ln |Gamma(x)|",
    },
    FunctionInfo {
        name: "deriv_i_ratio",
        params: "--n --nu --x",
        summary: "d^n/dx^n x^{-nu} I_nu(x)",
    },
    FunctionInfo {
        name: "deriv_k_ratio",
        params: "--n --nu --x",
        summary: "d^n/dx^n x^{-nu} K_nu(x)",
    },
    FunctionInfo {
        name: "deriv_tilted_i",
        params: "--n --nu --beta --x",
        summary: "d^n/dx^n e^{-beta x} x^{-nu} I_nu(x)",
    },
    FunctionInfo {
        name: "deriv_tilted_k",
        params: "--n --nu --beta --x",
        summary: "d^n/dx^n e^{-beta x} x^{-nu} K_nu(x)",
    },
    FunctionInfo {
        name: "repeated_integral",
        params: "--nu --beta --n --x",
        summary: "n-fold integral from 0 of e^{beta t} t^nu I_nu(t)",
    },
    FunctionInfo {
        name: "power_integral_i",
        params: "--p --nu --x",
        summary: "int_0^x t^p I_nu(t) dt",
    },
    FunctionInfo {
        name: "tail_integral",
        params: "--nu --beta --x",
        summary: "int_x^inf e^{beta t} t^nu K_nu(t) dt",
    },
    FunctionInfo {
        name: "tail_integral_shifted",
        params: "--nu --k --n --x",
        summary: "int_x^inf t^{nu-k} K_{nu+n}(t) dt",
    },
    FunctionInfo {
        name: "expr_deriv_tail_product",
        params: "--n --nu --beta --x",
        summary: "|tilted I derivative| times the K tail integral",
    },
    FunctionInfo {
        name: "expr_repeated_deriv_product",
        params: "--n --nu --beta --x",
        summary: "repeated I integral times |tilted K derivative|",
    },
    FunctionInfo {
        name: "expr_singular_difference",
        params: "--variant --n --nu --x",
        summary: "cancellation-safe singular differences, variants 1-4",
    },
    FunctionInfo {
        name: "expr_k_normalized_gap",
        params: "--nu --x",
        summary: "1/x^2 - x^{nu-2} K_nu(x) / (2^{nu-1} Gamma(nu))",
    },
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Evaluation {
    pub function: String,
    pub value: f64,
    /// Absent for composite expressions without an error model.
    pub abs_err_est: Option<f64>,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleCheck {
    pub value: f64,
    pub rel_diff: f64,
}

fn need<T: Copy>(v: Option<T>, flag: &str, function: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("{function} requires {flag}"))
}

fn method_name(fv: &FunctionValue) -> String {
    serde_json::to_value(fv.method)
        .ok()
        .and_then(|v| v.as_str().map(str::to_owned))
        .unwrap_or_default()
}

fn unknown(name: &str) -> String {
    let names: Vec<&str> = FUNCTIONS.iter().map(|f| f.name).collect();
    format!("unknown function {name}; available: {}", names.join(", "))
}

pub fn evaluate(name: &str, p: &Params, cfg: &EvalConfig) -> Result<Evaluation, String> {
    let nu = || need(p.nu, "--nu", name);
    let x = || need(p.x, "--x", name);
    let n = || need(p.n, "--n", name);
    let beta = p.beta.unwrap_or(0.0);
    let fv: Result<FunctionValue, besselcert::Error> = match name {
        "bessel_i" => bessel_i(nu()?, x()?, cfg),
        "bessel_i_scaled" => bessel_i_scaled(nu()?, x()?, cfg),
        "bessel_k" => bessel_k(nu()?, x()?, cfg),
        "bessel_k_scaled" => bessel_k_scaled(nu()?, x()?, cfg),
        "bessel_k_series" => bessel_k_series(nu()?, x()?, cfg),
        "product_ik" => product_ik(nu()?, x()?, cfg),
        "deriv_i_ratio" => deriv::deriv_i_ratio(n()?, nu()?, x()?, cfg),
        "deriv_k_ratio" => deriv::deriv_k_ratio(n()?, nu()?, x()?, cfg),
        "deriv_tilted_i" => deriv::deriv_tilted_i(n()?, nu()?, beta, x()?, cfg),
        "deriv_tilted_k" => deriv::deriv_tilted_k(n()?, nu()?, beta, x()?, cfg),
        "repeated_integral" if beta == 0.0 => {
            integral::repeated_integral_series(nu()?, n()?, x()?, cfg)
        }
        "repeated_integral" => integral::repeated_integral_quad(nu()?, beta, n()?, x()?, cfg),
        "power_integral_i" => integral::power_integral_i(need(p.p, "--p", name)?, nu()?, x()?, cfg),
        "tail_integral" => integral::tail_integral_k(nu()?, beta, x()?, cfg),
        "tail_integral_shifted" => {
            integral::tail_integral_k_shifted(nu()?, need(p.k, "--k", name)?, n()?, x()?, cfg)
        }
        _ => {
            let value = match name {
                "gamma" => Ok(gamma(x()?)),
                "log_gamma" => log_gamma(x()?),
                "expr_deriv_tail_product" => expr_deriv_tail_product(n()?, nu()?, beta, x()?, cfg),
                "expr_repeated_deriv_product" => {
                    expr_repeated_deriv_product(n()?, nu()?, beta, x()?, cfg)
                }
                "expr_singular_difference" => {
                    let variant = need(p.variant, "--variant", name)?;
                    expr_singular_difference(variant, p.n.unwrap_or(0), nu()?, x()?, cfg)
                }
                "expr_k_normalized_gap" => expr_k_normalized_gap(nu()?, x()?, cfg),
                _ => return Err(unknown(name)),
            }
            .map_err(|e| e.to_string())?;
            return Ok(Evaluation {
                function: name.to_owned(),
                value,
                abs_err_est: None,
                method: "expression".to_owned(),
            });
        }
    };
    let fv = fv.map_err(|e| e.to_string())?;
    Ok(Evaluation {
        function: name.to_owned(),
        value: fv.value,
        abs_err_est: Some(fv.abs_err_est),
        method: method_name(&fv),
    })
}

/// Recomputes `name` with a brute-force oracle where one applies.
pub fn oracle_check(
    name: &str,
    p: &Params,
    value: f64,
    cfg: &EvalConfig,
    ocfg: &OracleConfig,
) -> Result<OracleCheck, String> {
    let nu = need(p.nu, "--nu", name)?;
    let x = need(p.x, "--x", name)?;
    let beta = p.beta.unwrap_or(0.0);
    let i_ratio = move |t: f64| bessel_i(nu, t, cfg).map_or(f64::NAN, |v| v.value * t.powf(-nu));
    let k_ratio = move |t: f64| bessel_k(nu, t, cfg).map_or(f64::NAN, |v| v.value * t.powf(-nu));
    let reference = match name {
        "deriv_i_ratio" => {
            fd_derivative(&i_ratio, need(p.n, "--n", name)?, x, ocfg).map(|e| e.value)
        }
        "deriv_k_ratio" => {
            fd_derivative(&k_ratio, need(p.n, "--n", name)?, x, ocfg).map(|e| e.value)
        }
        "deriv_tilted_i" => {
            let f = |t: f64| (-beta * t).exp() * i_ratio(t);
            fd_derivative(&f, need(p.n, "--n", name)?, x, ocfg).map(|e| e.value)
        }
        "deriv_tilted_k" => {
            let f = |t: f64| (-beta * t).exp() * k_ratio(t);
            fd_derivative(&f, need(p.n, "--n", name)?, x, ocfg).map(|e| e.value)
        }
        "repeated_integral" => {
            let f = |t: f64| {
                let iv = bessel_i(nu, t, cfg).map_or(f64::NAN, |v| v.value);
                (beta * t).exp() * t.powf(nu) * iv
            };
            nested_integral(&f, need(p.n, "--n", name)?, x, ocfg)
        }
        "tail_integral" => {
            let f = |t: f64| {
                let ks = bessel_k_scaled(nu, t, cfg).map_or(f64::NAN, |v| v.value);
                ((beta - 1.0) * t).exp() * t.powf(nu) * ks
            };
            brute_quadrature(&f, x, None, ocfg)
        }
        _ => return Err(format!("no oracle for {name}")),
    }
    .map_err(|e| e.to_string())?;
    let rel_diff = ((value - reference) / reference.abs().max(f64::MIN_POSITIVE)).abs();
    Ok(OracleCheck {
        value: reference,
        rel_diff,
    })
}
