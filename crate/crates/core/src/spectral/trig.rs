use num_complex::Complex64;

/// `sum_{n>=0} x^n sin(n theta) sin((n + r) phi)` in closed form, `|x| < 1`:
///
/// `(cos(r phi) - x cos(theta + (r-1) phi)) / (2 (1 - 2x cos(theta - phi) + x^2))
///  - (cos(r phi) - x cos(theta - (r-1) phi)) / (2 (1 - 2x cos(theta + phi) + x^2))`.
///
/// Both denominators are at least `(1 - |x|)^2`.
pub fn trig_sum(x: f64, theta: f64, phi: f64, r: f64) -> f64 {
    assert!(x.abs() < 1.0, "trig_sum needs |x| < 1, got {x}");
    let crp = (r * phi).cos();
    let d1 = 1.0 - 2.0 * x * (theta - phi).cos() + x * x;
    let d2 = 1.0 - 2.0 * x * (theta + phi).cos() + x * x;
    let n1 = crp - x * (theta + (r - 1.0) * phi).cos();
    let n2 = crp - x * (theta - (r - 1.0) * phi).cos();
    0.5 * (n1 / d1 - n2 / d2)
}

/// The same sum for complex `x`, assembled from the four geometric series of
/// `-(1/4) sum x^n (e^{in theta} - e^{-in theta})(e^{i(n+r)phi} - e^{-i(n+r)phi})`.
pub fn trig_sum_complex(x: Complex64, theta: f64, phi: f64, r: f64) -> Complex64 {
    assert!(x.norm() < 1.0, "trig_sum_complex needs |x| < 1, got {x}");
    let one = Complex64::new(1.0, 0.0);
    let e = |a: f64| Complex64::from_polar(1.0, a);
    let geo = |a: f64| one / (one - x * e(a));
    let t1 = e(r * phi) * geo(theta + phi);
    let t2 = e(r * phi) * geo(-(theta - phi));
    let t3 = e(-r * phi) * geo(theta - phi);
    let t4 = e(-r * phi) * geo(-(theta + phi));
    -0.25 * (t1 - t2 - t3 + t4)
}

/// Finite head `sum_{n=0}^{last} x^n sin(n theta) sin((n + r) phi)`; empty when `last < 0`.
pub fn trig_head_sum(x: f64, theta: f64, phi: f64, r: f64, last: i64) -> f64 {
    let mut acc = 0.0;
    let mut xn = 1.0;
    for n in 0..=last {
        let n = n as f64;
        acc += xn * (n * theta).sin() * ((n + r) * phi).sin();
        xn *= x;
    }
    acc
}
