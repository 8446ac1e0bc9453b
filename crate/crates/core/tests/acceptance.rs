//! Acceptance gate. Runs every criterion at its pinned tolerance and runtime
//! budget, printing one PASS/FAIL line each; exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radial_masa_core::algebra::{
    chi_norm_squared, rational, sweep_lemma21_expansion, sweep_lemma21_inner, sweep_lemma22,
    BetaVector, Epsilon, FreeGroupAlgebra, Perturbation,
};
use radial_masa_core::density::{
    f_closed, f_series, interior_grid, pairing_sweep, series_tail_bound, zero_scan,
};
use radial_masa_core::spectral::{chi_table, quad_lambda, trig_sum, SpectralParams};

const RANKS: [usize; 2] = [2, 3];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn standard_betas(rank: usize) -> Vec<BetaVector> {
    Epsilon::BOTH
        .iter()
        .flat_map(|&e| BetaVector::standard_family(rank, e).unwrap())
        .collect()
}

fn exact_recurrence() -> Outcome {
    for rank in RANKS {
        let alg = FreeGroupAlgebra::new(rank).unwrap();
        let chi: Vec<_> = (0..=6).map(|n| alg.chi(n).unwrap()).collect();
        let first = &(&alg.multiply(&chi[1], &chi[1]).unwrap() - &chi[2])
            - &chi[0].scale(&rational(2 * rank as i64));
        if !first.is_zero() {
            return outcome(false, format!("N={rank}: chi1 chi1 - chi2 - 2N != 0"));
        }
        for n in 2..=5 {
            let res = &(&alg.multiply(&chi[1], &chi[n]).unwrap() - &chi[n + 1])
                - &chi[n - 1].scale(&rational(2 * rank as i64 - 1));
            if !res.is_zero() {
                return outcome(
                    false,
                    format!("N={rank}, n={n}: residual has {} terms", res.support_len()),
                );
            }
        }
    }
    outcome(true, "all residuals are the zero element")
}

fn exact_norms() -> Outcome {
    for rank in RANKS {
        let alg = FreeGroupAlgebra::new(rank).unwrap();
        for n in 1..=6 {
            let c = alg.chi(n).unwrap();
            let got = alg.inner_product(&c, &c).unwrap();
            if got != chi_norm_squared(rank, n) {
                return outcome(false, format!("N={rank}, n={n}: got {got}"));
            }
        }
    }
    outcome(true, "<chi_n, chi_n> = 2N(2N-1)^(n-1), n <= 6")
}

fn inner_and_expansion() -> Outcome {
    let mut checks = 0;
    for rank in RANKS {
        let alg = FreeGroupAlgebra::new(rank).unwrap();
        let betas = standard_betas(rank);
        let inner = sweep_lemma21_inner(&alg, &betas, 6).unwrap();
        let expansion = sweep_lemma21_expansion(&alg, &betas, 6, Perturbation::None).unwrap();
        if let Some(bad) = inner.iter().chain(&expansion).find(|r| !r.pass) {
            return outcome(false, format!("{} failed at {:?}", bad.lemma, bad.params));
        }
        checks += inner.len() + expansion.len();
    }
    outcome(true, format!("{checks} exact checks"))
}

fn six_case_formula() -> Outcome {
    let mut checks = 0;
    let mut zero_cases = 0;
    for rank in RANKS {
        let alg = FreeGroupAlgebra::new(rank).unwrap();
        let reports = sweep_lemma22(&alg, &standard_betas(rank), 6).unwrap();
        if let Some(bad) = reports.iter().find(|r| !r.pass) {
            return outcome(
                false,
                format!("failed at {:?}: {} vs {}", bad.params, bad.lhs, bad.rhs),
            );
        }
        checks += reports.len();
        zero_cases += reports.iter().filter(|r| r.rhs == "0/1").count();
    }
    outcome(
        true,
        format!("{checks} exact checks, {zero_cases} of them zero cases"),
    )
}

fn spectral_oracle() -> Outcome {
    let mut worst: f64 = 0.0;
    for rank in RANKS {
        let alg = FreeGroupAlgebra::new(rank).unwrap();
        let p = SpectralParams::new(rank).unwrap();
        for k in 0..=10 {
            let exact = alg.moment(k).unwrap().to_f64().unwrap();
            let quad = quad_lambda(|t| t.powi(k as i32), &p, 1e-9).unwrap();
            let err = (quad - exact).abs();
            worst = worst.max(err);
            if err > 1e-8 {
                return outcome(
                    false,
                    format!("N={rank}, k={k}: quad {quad} vs exact {exact}"),
                );
            }
        }
        for n in 0..=8 {
            for m in 0..=8 {
                let g = quad_lambda(
                    |t| {
                        let c = chi_table(8, t, &p);
                        c[n] * c[m]
                    },
                    &p,
                    1e-9,
                )
                .unwrap();
                let expect = if n == m {
                    chi_norm_squared(rank, n).to_f64().unwrap()
                } else {
                    0.0
                };
                let err = (g - expect).abs();
                worst = worst.max(err);
                if err > 1e-8 {
                    return outcome(
                        false,
                        format!("N={rank}, G[{n}][{m}] = {g}, expected {expect}"),
                    );
                }
            }
        }
    }
    outcome(true, format!("max abs error {worst:.2e} (tol 1e-8)"))
}

fn trig_closed_form() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let mut worst_ratio: f64 = 0.0;
    for i in 0..10_000 {
        let x: f64 = rng.gen_range(-0.999..0.999);
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let r = rng.gen_range(-10i32..=10) as f64;
        let mut partial = 0.0;
        let mut xn = 1.0;
        for n in 0..=200 {
            let n = n as f64;
            partial += xn * (n * theta).sin() * ((n + r) * phi).sin();
            xn *= x;
        }
        let bound = x.abs().powi(201) / (1.0 - x.abs()) + 1e-12;
        let diff = (trig_sum(x, theta, phi, r) - partial).abs();
        worst_ratio = worst_ratio.max(diff / bound);
        if diff > bound {
            return outcome(
                false,
                format!(
                    "sample {i}: x={x} theta={theta} phi={phi} r={r}, diff {diff:e} > {bound:e}"
                ),
            );
        }
    }
    outcome(
        true,
        format!("10^4 samples, worst diff/bound {worst_ratio:.3}"),
    )
}

fn closed_vs_series() -> Outcome {
    let mut worst_excess = f64::NEG_INFINITY;
    for rank in RANKS {
        let p = SpectralParams::new(rank).unwrap();
        let g = interior_grid(200, &p);
        for &t in &g {
            for &s in &g {
                let c = f_closed(t, s, &p).unwrap();
                let ser = f_series(t, s, 60, &p).unwrap();
                let diff = (c.value - ser.value).abs();
                worst_excess = worst_excess.max(diff - ser.tail_bound);
                if diff > ser.tail_bound + 1e-10 {
                    return outcome(
                        false,
                        format!(
                            "N={rank} ({t}, {s}): closed {} series {}",
                            c.value, ser.value
                        ),
                    );
                }
                for k in [20, 40, 60] {
                    let a = f_series(t, s, k, &p).unwrap();
                    let b = f_series(t, s, 2 * k, &p).unwrap();
                    if (a.value - b.value).abs() > series_tail_bound(k, &p) {
                        return outcome(
                            false,
                            format!(
                                "N={rank} ({t}, {s}) K={k}: |f_K - f_2K| = {:e} > {:e}",
                                (a.value - b.value).abs(),
                                a.tail_bound
                            ),
                        );
                    }
                }
            }
        }
    }
    outcome(
        true,
        format!("2 x 200^2 points, worst |closed - series| - tail = {worst_excess:.2e}"),
    )
}

fn pairing_triple() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut normalization = Vec::new();
    for rank in RANKS {
        let alg = FreeGroupAlgebra::new(rank).unwrap();
        let p = SpectralParams::new(rank).unwrap();
        let reports = pairing_sweep(&alg, &p, 6, 1e-6).unwrap();
        for r in &reports {
            worst = worst.max(r.quad_error);
            if r.value_exact != r.value_case || r.quad_error > 1e-6 {
                return outcome(
                    false,
                    format!(
                        "N={rank} (j,k)=({},{}): exact {} case {} quad {}",
                        r.j, r.k, r.value_exact, r.value_case, r.value_quad
                    ),
                );
            }
            if r.j == 0 && r.k == 0 {
                let err = (r.value_quad - 1.0).abs();
                normalization.push(err);
                if err > 1e-8 {
                    return outcome(false, format!("N={rank}: int int f = {}", r.value_quad));
                }
            }
        }
        if reports
            .iter()
            .any(|r| r.value_case.is_zero() && r.value_exact != r.value_case)
        {
            return outcome(false, "zero case mismatch");
        }
    }
    outcome(
        true,
        format!(
            "worst quad error {worst:.2e}, |int int f - 1| <= {:.2e}",
            normalization.iter().cloned().fold(0.0, f64::max)
        ),
    )
}

fn zero_scan_sanity() -> Outcome {
    let p = SpectralParams::new(2).unwrap();
    let r = zero_scan(512, &[1e-1, 1e-3, 1e-5], &p).unwrap();
    let f: Vec<f64> = r.levels.iter().map(|l| l.fraction).collect();
    let pass = f[0] >= f[1] && f[1] >= f[2] && r.max_abs >= 1.0;
    outcome(
        pass,
        format!(
            "fractions {f:?}, min |f| {:.4} at {:?}, max |f| {:.4}",
            r.min_abs, r.min_at, r.max_abs
        ),
    )
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            "1 exact recurrence",
            exact_recurrence,
            Duration::from_secs(5),
        ),
        ("2 exact norms", exact_norms, Duration::from_secs(10)),
        (
            "3 inner-product and expansion identities",
            inner_and_expansion,
            Duration::from_secs(300),
        ),
        (
            "4 six-case pairing formula",
            six_case_formula,
            Duration::from_secs(300),
        ),
        (
            "5 spectral moment and Gram oracle",
            spectral_oracle,
            Duration::from_secs(30),
        ),
        (
            "6 trigonometric closed form",
            trig_closed_form,
            Duration::from_secs(10),
        ),
        (
            "7 closed form vs series",
            closed_vs_series,
            Duration::from_secs(120),
        ),
        (
            "8 pairing triple agreement",
            pairing_triple,
            Duration::from_secs(180),
        ),
        (
            "9 zero-scan sanity",
            zero_scan_sanity,
            Duration::from_secs(60),
        ),
    ];
    let mut failures = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let pass = out.pass && in_time;
        if !pass {
            failures += 1;
        }
        println!(
            "[{}] {name}: {} ({:.2}s / {}s budget{})",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64(),
            budget.as_secs(),
            if in_time { "" } else { ", over budget" },
        );
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
