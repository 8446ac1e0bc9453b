use super::{AngleCoordinate, SpectralParams};

/// Below this `|sin theta|` the trigonometric formula switches to its limit.
pub const ENDPOINT_GUARD: f64 = 1e-8;

/// Value of `chi_n(t)`; `in_spectrum` is false when `t` lies outside `[-a_N, a_N]`,
/// where the recurrence grows exponentially.
#[derive(Clone, Copy, Debug, PartialEq)]
#[must_use]
pub struct ChiValue {
    pub value: f64,
    pub in_spectrum: bool,
}

/// `chi_0, ..., chi_k_max` at `t` from the three-term recurrence
/// `chi_2 = t^2 - 2N`, `chi_{k+1} = t chi_k - (2N-1) chi_{k-1}`.
pub fn chi_table(k_max: usize, t: f64, p: &SpectralParams) -> Vec<f64> {
    let mut v = Vec::with_capacity(k_max + 1);
    v.push(1.0);
    if k_max == 0 {
        return v;
    }
    v.push(t);
    if k_max == 1 {
        return v;
    }
    v.push(t * t - p.two_n());
    for k in 2..k_max {
        let next = t * v[k] - p.b() * v[k - 1];
        v.push(next);
    }
    v
}

pub fn chi_eval_recurrence(n: usize, t: f64, p: &SpectralParams) -> ChiValue {
    ChiValue {
        value: chi_table(n, t, p)[n],
        in_spectrum: p.contains(t),
    }
}

/// `u_n = chi_n / ||chi_n||_2^2` for `n = 0..=k_max`, via the scaled recurrence
/// `u_0 = 1`, `u_1 = t / 2N`, `u_{n+1} = (t u_n - u_{n-1}) / b`.
///
/// The scaled form stays bounded on the spectrum, so large orders do not overflow.
pub fn normalized_chi_table(k_max: usize, t: f64, p: &SpectralParams) -> Vec<f64> {
    let mut u = Vec::with_capacity(k_max + 1);
    u.push(1.0);
    if k_max == 0 {
        return u;
    }
    u.push(t / p.two_n());
    let inv_b = 1.0 / p.b();
    for n in 1..k_max {
        let next = (t * u[n] - u[n - 1]) * inv_b;
        u.push(next);
    }
    u
}

/// `3 n b^(-n/2)`, the uniform bound on `|chi_n(t)| / ||chi_n||_2^2` for `n >= 1`.
pub fn normalized_amplitude_bound(n: usize, p: &SpectralParams) -> f64 {
    3.0 * n as f64 * p.b().powf(-(n as f64) / 2.0)
}

/// `sin(k theta) / sin(theta)`, any integer `k`, with the endpoint limits
/// `k` at `theta = 0` and `(-1)^(k+1) k` at `theta = pi`.
pub fn sin_ratio(k: i64, angle: &AngleCoordinate) -> f64 {
    let s = angle.sin_theta();
    if s.abs() < ENDPOINT_GUARD {
        let sign = if angle.theta() < std::f64::consts::FRAC_PI_2 || k.rem_euclid(2) == 1 {
            1.0
        } else {
            -1.0
        };
        return sign * k as f64;
    }
    (k as f64 * angle.theta()).sin() / s
}

/// `chi_n(t) = b^(n/2) (2 cos(theta) sin(n theta) - (2N/b) sin((n-1) theta)) / sin(theta)`.
pub fn chi_eval_trig(n: usize, angle: &AngleCoordinate, p: &SpectralParams) -> f64 {
    let n = n as i64;
    let inner =
        2.0 * angle.cos_theta() * sin_ratio(n, angle) - p.two_n() / p.b() * sin_ratio(n - 1, angle);
    p.b().powf(n as f64 / 2.0) * inner
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(rank: usize) -> SpectralParams {
        SpectralParams::new(rank).unwrap()
    }

    #[test]
    fn low_order_values() {
        let p = params(2);
        assert_eq!(chi_eval_recurrence(2, 0.0, &p).value, -4.0);
        for rank in 2..=4 {
            let p = params(rank);
            let n = rank as f64;
            for &t in &[-1.3, 0.0, 0.7, 2.2] {
                // chi_3 = t^3 - (4N - 1) t, expanded by hand from the recurrence
                let expect = t * t * t - (4.0 * n - 1.0) * t;
                assert!((chi_eval_recurrence(3, t, &p).value - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn endpoint_positivity() {
        for rank in 2..=3 {
            let p = params(rank);
            let v = chi_table(12, p.edge(), &p);
            assert!(v.iter().all(|&x| x > 0.0), "{v:?}");
        }
    }

    #[test]
    fn outside_spectrum_flagged() {
        let p = params(2);
        assert!(!chi_eval_recurrence(3, 10.0, &p).in_spectrum);
        assert!(chi_eval_recurrence(3, 1.0, &p).in_spectrum);
    }

    #[test]
    fn normalized_table_matches_division() {
        let p = params(3);
        for &t in &[-4.4, -1.0, 0.0, 2.5, p.edge()] {
            let raw = chi_table(20, t, &p);
            let u = normalized_chi_table(20, t, &p);
            for n in 0..=20 {
                let expect = raw[n] / p.chi_norm_squared(n);
                assert!(
                    (u[n] - expect).abs() <= 1e-12 * expect.abs().max(1e-3),
                    "n={n}"
                );
            }
        }
    }

    #[test]
    fn trig_special_cases() {
        let p = params(2);
        for &theta in &[0.0, 0.3, 1.0, 2.0, std::f64::consts::PI] {
            let a = AngleCoordinate::from_theta(theta, &p).unwrap();
            assert!((chi_eval_trig(1, &a, &p) - a.t()).abs() < 1e-12);
        }
        let mid = AngleCoordinate::from_theta(std::f64::consts::FRAC_PI_2, &p).unwrap();
        assert!((chi_eval_trig(2, &mid, &p) + 4.0).abs() < 1e-12);
    }

    fn rel_err(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1.0)
    }

    #[test]
    fn trig_matches_recurrence_on_grid() {
        for rank in 2..=3 {
            let p = params(rank);
            for i in 0..=1000 {
                let theta = std::f64::consts::PI * i as f64 / 1000.0;
                let a = AngleCoordinate::from_theta(theta, &p).unwrap();
                let rec = chi_table(10, a.t(), &p);
                for (n, &r) in rec.iter().enumerate().skip(1) {
                    let tr = chi_eval_trig(n, &a, &p);
                    assert!(
                        rel_err(tr, r) < 1e-9,
                        "N={rank} n={n} theta={theta}: {tr} vs {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn trig_matches_recurrence_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = params(2);
        for _ in 0..2000 {
            let theta: f64 = rng.gen_range(0.0..std::f64::consts::PI);
            let n = rng.gen_range(1..=10);
            let a = AngleCoordinate::from_theta(theta, &p).unwrap();
            let rec = chi_eval_recurrence(n, a.t(), &p).value;
            assert!(rel_err(chi_eval_trig(n, &a, &p), rec) < 1e-9);
        }
    }

    #[test]
    fn endpoint_limits_of_sin_ratio() {
        let p = params(2);
        let zero = AngleCoordinate::from_theta(0.0, &p).unwrap();
        let pi = AngleCoordinate::from_theta(std::f64::consts::PI, &p).unwrap();
        for k in -3i64..=6 {
            assert_eq!(sin_ratio(k, &zero), k as f64);
            let expect = if k.rem_euclid(2) == 1 {
                k as f64
            } else {
                -(k as f64)
            };
            assert_eq!(sin_ratio(k, &pi), expect);
        }
    }

    #[test]
    fn amplitude_bound_holds() {
        for rank in 2..=3 {
            let p = params(rank);
            for i in 0..=2000 {
                let t = -p.edge() + 2.0 * p.edge() * i as f64 / 2000.0;
                let u = normalized_chi_table(30, t, &p);
                for (n, un) in u.iter().enumerate().skip(1) {
                    assert!(
                        un.abs() <= normalized_amplitude_bound(n, &p),
                        "N={rank} n={n} t={t}"
                    );
                }
            }
        }
    }
}
