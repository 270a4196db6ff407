//! Acceptance criteria, one line per criterion.
//!
//! Criteria listed in `KNOWN_DEFECTS` are stated with values that the
//! defining expressions do not produce. They are reported as FAIL; the run
//! only errors if one of them fails differently from the recorded analysis,
//! or if any other criterion fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use besselcert::catalog::{
    expr_singular_difference, supremum_search, x_points, zero_order_constants,
};
use besselcert::certify::{
    certify, find_record, CertReport, CertifyOptions, Spacing, SweepGrid, XSpec,
};
use besselcert::deriv::{coeff_a, coeff_b, deriv_i_ratio, deriv_k_ratio, deriv_tilted_i};
use besselcert::integral::{repeated_integral_quad, tail_integral_k};
use besselcert::oracle::{brute_quadrature, fd_derivative};
use besselcert::special::{bessel_i, bessel_k, bessel_k_scaled, gamma, product_ik};
use besselcert::{EvalConfig, OracleConfig};

const KNOWN_DEFECTS: &[(u32, &str)] = &[
    (4, "the stated product uses K_1(1); the quoted 0.614 is 1.1 I_0(1.1) K_0(1)"),
    (5, "the second and fourth quoted constants disagree with their own expressions (2.1907, 4.5649)"),
    (7, "the even-order tail bound is violated at x = 0 for nu = -0.49 and -0.45"),
    (8, "at x = 50 the n = 4 product is still 1.57e-3 below its limit (next asymptotic term -(4n^2-1)/(16x^2))"),
];

struct Outcome {
    pass: bool,
    /// For a known defect: whether the failure matches the recorded analysis.
    signature_ok: bool,
    detail: String,
}

impl Outcome {
    fn plain(pass: bool, detail: String) -> Self {
        Self {
            pass,
            signature_ok: pass,
            detail,
        }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn cfg() -> EvalConfig {
    EvalConfig::default()
}

fn default_grid_nus() -> Vec<f64> {
    SweepGrid::default().nu_values
}

fn coefficient_identities() -> Outcome {
    let mut worst: f64 = 0.0;
    for nu in [-0.49, -0.25, 0.0, 0.5, 1.0, 2.7, 10.0]
        .into_iter()
        .chain(default_grid_nus())
    {
        for m in 0..=12u32 {
            let sa: f64 = (0..=m).map(|k| coeff_a(m, k, nu).unwrap()).sum();
            let sb: f64 = (0..=m).map(|k| coeff_b(m, k, nu).unwrap()).sum();
            worst = worst.max((sa - 1.0).abs()).max((sb - 1.0).abs());
        }
    }
    let mut first: f64 = 0.0;
    for nu in default_grid_nus() {
        let want = (2.0 * nu + 1.0) / (2.0 * (nu + 1.0));
        first = first.max(rel(coeff_a(1, 1, nu).unwrap(), want));
    }
    Outcome::plain(
        worst <= 1e-12 && first <= 4.0 * f64::EPSILON,
        format!("max |sum - 1| = {worst:.1e}, max rel err of A(1,1) = {first:.1e}"),
    )
}

fn derivative_correctness() -> Outcome {
    let c = cfg();
    let o = OracleConfig::default();
    let mut worst: (f64, String) = (0.0, String::new());
    let mut note = |err: f64, what: String| {
        if err > worst.0 {
            worst = (err, what);
        }
    };
    for nu in [-0.4, 0.0, 0.5, 1.0, 2.7] {
        let i_ratio = |t: f64| t.powf(-nu) * bessel_i(nu, t, &c).unwrap().value;
        let k_ratio = |t: f64| t.powf(-nu) * bessel_k(nu, t, &c).unwrap().value;
        for x in [0.5, 1.0, 2.0, 3.5, 5.0, 7.5, 10.0] {
            for n in 1..=4u32 {
                let fd = fd_derivative(&i_ratio, n, x, &o).unwrap().value;
                note(
                    rel(deriv_i_ratio(n, nu, x, &c).unwrap().value, fd),
                    format!("I n={n} nu={nu} x={x}"),
                );
                let fd = fd_derivative(&k_ratio, n, x, &o).unwrap().value;
                note(
                    rel(deriv_k_ratio(n, nu, x, &c).unwrap().value, fd),
                    format!("K n={n} nu={nu} x={x}"),
                );
                for beta in [-0.5, 0.0, 0.5] {
                    let f = |t: f64| (-beta * t).exp() * i_ratio(t);
                    let fd = fd_derivative(&f, n, x, &o).unwrap().value;
                    let v = deriv_tilted_i(n, nu, beta, x, &c).unwrap().value;
                    note(
                        rel(v, fd),
                        format!("tilted n={n} nu={nu} beta={beta} x={x}"),
                    );
                }
            }
        }
    }
    Outcome::plain(
        worst.0 <= 1e-6,
        format!("max rel err {:.1e} ({})", worst.0, worst.1),
    )
}

fn closed_form_integrals() -> Outcome {
    let c = cfg();
    let o = OracleConfig::default();
    let mut worst: (f64, String) = (0.0, String::new());
    let mut note = |err: f64, what: String| {
        if err > worst.0 {
            worst = (err, what);
        }
    };
    for nu in [-0.4, 0.5, 1.0, 3.0] {
        // ∫_0^x e^{-t} t^nu I_nu(t) dt = e^{-x} x^{nu+1} (I_nu + I_{nu+1}) / (2nu+1)
        for x in [0.1f64, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0] {
            let want = (-x).exp() * x.powf(nu + 1.0) / (2.0 * nu + 1.0)
                * (bessel_i(nu, x, &c).unwrap().value + bessel_i(nu + 1.0, x, &c).unwrap().value);
            let f = |t: f64| (-t).exp() * t.powf(nu) * bessel_i(nu, t, &c).unwrap().value;
            note(
                rel(brute_quadrature(&f, 0.0, Some(x), &o).unwrap(), want),
                format!("exp-weighted I nu={nu} x={x}"),
            );
            note(
                rel(
                    repeated_integral_quad(nu, -1.0, 1, x, &c).unwrap().value,
                    want,
                ),
                format!("exp-weighted I (adaptive) nu={nu} x={x}"),
            );
        }
        // ∫_R e^{beta t} |t|^nu K_nu(|t|) dt = sqrt(pi) Γ(nu+1/2) 2^nu / (1-beta^2)^{nu+1/2}
        for beta in [0.0f64, 0.5, -0.5] {
            let whole =
                PI.sqrt() * gamma(nu + 0.5) * 2f64.powf(nu) / (1.0 - beta * beta).powf(nu + 0.5);
            let half = |b: f64| {
                let f = |t: f64| {
                    ((b - 1.0) * t).exp()
                        * t.powf(nu)
                        * bessel_k_scaled(nu, t, &c).map_or(f64::NAN, |v| v.value)
                };
                brute_quadrature(&f, 0.0, None, &o).unwrap()
            };
            note(
                rel(half(beta) + half(-beta), whole),
                format!("whole line nu={nu} beta={beta}"),
            );
            let lib = tail_integral_k(nu, beta, 0.0, &c).unwrap().value
                + tail_integral_k(nu, -beta, 0.0, &c).unwrap().value;
            note(
                rel(lib, whole),
                format!("whole line (adaptive) nu={nu} beta={beta}"),
            );
            if beta == 0.0 {
                note(rel(half(0.0), 0.5 * whole), format!("half line nu={nu}"));
                note(
                    rel(
                        tail_integral_k(nu, 0.0, 0.0, &c).unwrap().value,
                        0.5 * whole,
                    ),
                    format!("half line (adaptive) nu={nu}"),
                );
            }
        }
    }
    Outcome::plain(
        worst.0 <= 1e-8,
        format!("max rel err {:.1e} ({})", worst.0, worst.1),
    )
}

fn i0_k1_constant() -> Outcome {
    let c = cfg();
    let i0 = bessel_i(0.0, 1.1, &c).unwrap().value;
    let stated = 1.1 * i0 * bessel_k(1.0, 1.0, &c).unwrap().value;
    let with_k0 = 1.1 * i0 * bessel_k(0.0, 1.0, &c).unwrap().value;
    let inside = |v: f64| (0.6140..=0.6150).contains(&v);
    Outcome {
        pass: inside(stated),
        signature_ok: !inside(stated) && inside(with_k0),
        detail: format!("1.1 I0(1.1) K1(1) = {stated:.6}; with K0(1) instead: {with_k0:.6}"),
    }
}

fn order_zero_constants() -> Outcome {
    let got = zero_order_constants(&cfg()).unwrap();
    let quoted = [2.274, 2.631, 3.085, 4.385, 6.802, 14.607];
    let ok: Vec<bool> = got
        .iter()
        .zip(quoted)
        .map(|(g, q)| (g - q).abs() <= 0.002)
        .collect();
    let shown: Vec<String> = got.iter().map(|g| format!("{g:.4}")).collect();
    Outcome {
        pass: ok.iter().all(|&b| b),
        signature_ok: ok == [true, false, true, false, true, true]
            && (got[1] - 2.1907).abs() < 1e-4
            && (got[3] - 4.5649).abs() < 1e-4,
        detail: format!("computed [{}]", shown.join(", ")),
    }
}

fn tail_product_supremum() -> Outcome {
    let c = cfg();
    let record = find_record("C4").unwrap();
    let mut worst: f64 = 0.0;
    let mut at_smallest = true;
    let mut detail = Vec::new();
    for nu in [0.5, 1.0, 2.0] {
        let grid = SweepGrid {
            nu_values: vec![nu],
            beta_values: vec![0.0],
            x_spec: XSpec {
                min: 1e-8,
                max: 50.0,
                count: 200,
                spacing: Spacing::Log,
            },
        };
        let (sup, argmax) = supremum_search(&record, &grid, 30, &c).unwrap();
        let want = PI.sqrt() * gamma(nu + 0.5) / (2.0 * gamma(nu + 1.0));
        worst = worst.max((sup - want).abs());
        let smallest = x_points(&record.domain, &grid)[0];
        at_smallest &= argmax.x == smallest;
        detail.push(format!("nu={nu}: {sup:.9} at x={}", argmax.x));
    }
    Outcome::plain(
        worst <= 1e-6 && at_smallest,
        format!("max abs err {worst:.1e}; {}", detail.join(", ")),
    )
}

fn full_certification(report: &CertReport, elapsed: Duration) -> Outcome {
    let violations: Vec<(String, f64)> = report
        .entries
        .iter()
        .flat_map(|e| e.violations.iter().map(move |v| (e.id.clone(), v.nu)))
        .collect();
    let failures = report
        .entries
        .iter()
        .filter(|e| e.failure.is_some())
        .count();
    let enough = report.entries.len() >= 30;
    let fast = elapsed < Duration::from_secs(300);
    let only_known = violations
        .iter()
        .all(|(id, nu)| id == "C5a" && (*nu == -0.49 || *nu == -0.45));
    let listed: Vec<String> = violations
        .iter()
        .map(|(id, nu)| format!("{id}@nu={nu}"))
        .collect();
    Outcome {
        pass: violations.is_empty() && failures == 0 && enough && fast,
        signature_ok: !violations.is_empty() && only_known && failures == 0 && enough && fast,
        detail: format!(
            "{} records, {} violations [{}], {} evaluator failures, {:.1}s",
            report.entries.len(),
            violations.len(),
            listed.join(", "),
            failures,
            elapsed.as_secs_f64()
        ),
    }
}

fn large_argument_limit() -> Outcome {
    let c = cfg();
    let errs: Vec<f64> = (1..=4)
        .map(|n| 50.0 * product_ik(n as f64, 50.0, &c).unwrap().value - 0.5)
        .collect();
    let worst = errs.iter().map(|e| e.abs()).fold(0.0, f64::max);
    // Thirty-digit value of 50 I_4(50) K_4(50) - 1/2.
    let n4_ref = -0.001_568_524_212_087_892_6;
    Outcome {
        pass: worst <= 1e-3,
        signature_ok: errs[..3].iter().all(|e| e.abs() <= 1e-3) && rel(errs[3], n4_ref) < 1e-9,
        detail: format!(
            "x I_n K_n - 1/2 at x = 50 for n = 1..4: [{}]",
            errs.iter()
                .map(|e| format!("{e:.4e}"))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    }
}

// Thirty-digit subtraction of the defining expressions at x = 1e-3:
// (variant, n, nu, value).
const SUBTRACTION_REF: &[(u8, u32, f64, f64)] = &[
    (1, 2, -0.25, 0.085_277_358_652_499_43),
    (1, 3, -0.25, 0.0010285222184368474),
    (1, 4, -0.25, 0.00021589248176852432),
    (2, 0, -0.25, 1.5999262448241776),
    (3, 0, -0.25, 0.571_477_243_627_168_1),
    (4, 0, -0.25, 0.073_044_087_112_766_23),
    (1, 2, 0.0, 0.003_345_178_494_415_41),
    (1, 3, 0.0, 0.00029166528305845356),
    (1, 4, 0.0, 0.00010833373838540259),
    (2, 0, 0.0, 0.666_663_924_450_125_3),
    (3, 0, 0.0, 0.375_001_221_108_609),
    (4, 0, 0.0, 0.002_475_550_653_324_544),
    (1, 2, 0.5, 8.316_679_438_057_991e-5),
    (1, 3, 0.5, 4.9999959557126907e-5),
    (1, 4, 0.5, 3.3333333920245043e-5),
    (2, 0, 0.5, 0.24999988343328142),
    (3, 0, 0.5, 0.20000000472859926),
    (4, 0, 0.5, 3.3233417217874505e-5),
    (1, 2, 1.0, 8.333_478_469_718_322e-6),
    (1, 3, 1.0, 8.333_327_157_757_612e-6),
    (1, 4, 1.0, 1.07142843997981e-5),
    (2, 0, 1.0, 0.133_333_308_928_648_9),
    (3, 0, 1.0, 0.12499999412200628),
    (4, 0, 1.0, 1.3690546968825687e-5),
    (1, 2, 2.7, 1.2177355545485769e-5),
    (1, 3, 2.7, 5.925_853_656_915_112e-6),
    (1, 4, 2.7, 2.659_311_227_732_967e-6),
    (2, 0, 2.7, 0.037_202_380_119_974_96),
    (3, 0, 2.7, 0.043_128_233_760_289_54),
    (4, 0, 2.7, 6.321_897_738_192_259e-6),
];

fn cancellation_safety() -> Outcome {
    let c = cfg();
    let mut worst: (f64, String) = (0.0, String::new());
    for &(variant, n, nu, want) in SUBTRACTION_REF {
        let got = expr_singular_difference(variant, n, nu, 1e-3, &c).unwrap();
        let err = rel(got, want);
        if err > worst.0 {
            worst = (err, format!("variant {variant} n={n} nu={nu}"));
        }
    }
    Outcome::plain(
        worst.0 <= 1e-6,
        format!("max rel err {:.1e} ({})", worst.0, worst.1),
    )
}

fn determinism(serial: &CertReport) -> Outcome {
    let parallel = certify(&CertifyOptions::default(), 8).unwrap();
    let same = parallel.body_json() == serial.body_json();
    Outcome::plain(
        same,
        format!(
            "report bodies at 1 and 8 threads {}",
            if same { "identical" } else { "differ" }
        ),
    )
}

fn timed(f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let t = Instant::now();
    let o = f();
    (o, t.elapsed())
}

fn main() {
    let mut results: Vec<(u32, &str, Option<Duration>, Outcome, Duration)> = Vec::new();
    let mut push = |id, title, limit, (o, d)| results.push((id, title, limit, o, d));

    push(
        1,
        "coefficient sums and first coefficient",
        Some(Duration::from_secs(1)),
        timed(coefficient_identities),
    );
    push(
        2,
        "derivatives against finite differences",
        Some(Duration::from_secs(30)),
        timed(derivative_correctness),
    );
    push(
        3,
        "closed-form integrals against quadrature",
        Some(Duration::from_secs(30)),
        timed(closed_form_integrals),
    );
    push(
        4,
        "1.1 I0(1.1) K1(1) in [0.6140, 0.6150]",
        None,
        timed(i0_k1_constant),
    );
    push(
        5,
        "order-zero bound constants within 0.002",
        None,
        timed(order_zero_constants),
    );
    push(
        6,
        "tail product supremum at the smallest x",
        None,
        timed(tail_product_supremum),
    );

    let start = Instant::now();
    let serial = certify(&CertifyOptions::default(), 1).expect("default certification runs");
    let elapsed = start.elapsed();
    push(
        7,
        "full certification on the default grid",
        None,
        (full_certification(&serial, elapsed), elapsed),
    );

    push(
        8,
        "x I_n K_n near 1/2 at x = 50",
        None,
        timed(large_argument_limit),
    );
    push(
        9,
        "singular differences at x = 1e-3",
        None,
        timed(cancellation_safety),
    );
    push(
        10,
        "report body independent of threads",
        None,
        timed(|| determinism(&serial)),
    );

    let mut unexpected = Vec::new();
    let mut failed = 0;
    for (id, title, limit, mut o, d) in results {
        if let Some(l) = limit {
            if d > l {
                o.pass = false;
                o.signature_ok = false;
                o.detail
                    .push_str(&format!("; over the {}s limit", l.as_secs()));
            }
        }
        let known = KNOWN_DEFECTS.iter().find(|k| k.0 == id);
        let status = if o.pass { "PASS" } else { "FAIL" };
        let note = match known {
            Some((_, why)) if !o.pass && o.signature_ok => format!(" [known: {why}]"),
            Some(_) => {
                unexpected.push(id);
                " [known defect did not fail as recorded]".to_string()
            }
            None if !o.pass => {
                unexpected.push(id);
                String::new()
            }
            None => String::new(),
        };
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {status} {title}: {} ({:.2}s){note}",
            o.detail,
            d.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed, {} unexpected",
        10 - failed,
        unexpected.len()
    );
    if !unexpected.is_empty() {
        eprintln!("unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
