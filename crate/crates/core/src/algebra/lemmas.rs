//! Brute-force checks of the length-1 vector identities: the inner products of
//! `beta_{n,m}`, the expansion of `chi_n beta chi_m` into `beta_{r,s}` pieces,
//! and the six-case formula for `<chi_n beta chi_m, beta>_2`.

use std::collections::HashMap;
use std::time::Instant;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use super::beta::{BetaVector, Epsilon};
use super::element::{rational, rational_to_string, GroupAlgebraElement};
use super::FreeGroupAlgebra;
use crate::error::Result;

/// Outcome of one exact identity check.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub lemma: String,
    pub params: Map<String, Value>,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
    pub elapsed_ms: f64,
}

/// Test-mode corruption of the brute-force side, used to prove that the
/// checks actually catch a wrong coefficient.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Perturbation {
    #[default]
    None,
    /// Add 1 to the first coefficient of the first expansion product checked.
    FlipFirstCoefficient,
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn pow(base: &BigRational, e: usize) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// `delta_{eps,eps'} delta_{n+m,n'+m'} (2N-1)^{n+m} (-eps(2N-1))^{-|n-n'|} <beta, beta'>_2`.
#[allow(clippy::too_many_arguments)]
pub fn lemma21_inner_closed(
    rank: usize,
    eps: Epsilon,
    eps2: Epsilon,
    n: usize,
    m: usize,
    n2: usize,
    m2: usize,
    beta_inner: &BigRational,
) -> BigRational {
    if eps != eps2 || n + m != n2 + m2 {
        return BigRational::zero();
    }
    let b = rational(2 * rank as i64 - 1);
    let ratio = -eps.as_rational() * &b;
    pow(&b, n + m) / pow(&ratio, n.abs_diff(n2)) * beta_inner
}

/// The six-case value of `<chi_n beta chi_m, beta>_2`.
pub fn lemma22_closed(eps: Epsilon, n: usize, m: usize, norm2: &BigRational) -> BigRational {
    let e = eps.as_rational();
    let minus_e = -e.clone();
    let total = n + m;
    if total > 2 && n.abs_diff(m) == 2 {
        pow(&minus_e, total / 2) * &e * norm2
    } else if total > 2 && n == m {
        rational(2) * pow(&minus_e, n) * norm2
    } else if total == 2 && (n, m) != (1, 1) {
        -norm2.clone()
    } else if (n, m) == (1, 1) {
        -e * norm2
    } else if (n, m) == (0, 0) {
        norm2.clone()
    } else {
        BigRational::zero()
    }
}

/// Right-hand side of the expansion of `chi_n beta chi_m` in terms of the
/// `beta_{r,s}`, with `xi(r, s)` supplying `beta_{r,s}` (zero for negative indices).
fn expansion_rhs<F>(
    rank: usize,
    eps: Epsilon,
    n: usize,
    m: usize,
    mut xi: F,
) -> Result<GroupAlgebraElement>
where
    F: FnMut(i64, i64) -> Result<GroupAlgebraElement>,
{
    let (n, m) = (n as i64, m as i64);
    let e = eps.as_rational();
    let minus_e = -e.clone();
    let two = rational(2);

    let mut acc = xi(n, m)?;
    let inner = &(&xi(n - 2, m)? + &xi(n, m - 2)?) + &xi(n - 1, m - 1)?.scale(&e);
    acc = &acc - &inner;
    let mut sign = BigRational::one();
    for k in 1..=(n + m + 2) {
        sign *= &minus_e;
        if k < 2 {
            continue;
        }
        // every index negative from here on
        if n - k + 1 < 0 || m - k + 1 < 0 {
            break;
        }
        let term = &(&xi(n - k - 1, m - k + 1)? + &xi(n - k + 1, m - k - 1)?).scale(&e)
            + &xi(n - k, m - k)?.scale(&two);
        acc = &acc + &term.scale(&sign);
    }
    debug_assert_eq!(acc.rank(), rank);
    Ok(acc)
}

fn params_inner(
    rank: usize,
    beta: &BetaVector,
    beta2: &BetaVector,
    idx: [usize; 4],
) -> Map<String, Value> {
    let mut p = Map::new();
    p.insert("N".into(), json!(rank));
    p.insert("beta".into(), json!(beta.label()));
    p.insert("epsilon".into(), json!(beta.epsilon().value()));
    p.insert("beta2".into(), json!(beta2.label()));
    p.insert("epsilon2".into(), json!(beta2.epsilon().value()));
    p.insert("n".into(), json!(idx[0]));
    p.insert("m".into(), json!(idx[1]));
    p.insert("n2".into(), json!(idx[2]));
    p.insert("m2".into(), json!(idx[3]));
    p
}

fn params_single(rank: usize, beta: &BetaVector, n: usize, m: usize) -> Map<String, Value> {
    let mut p = Map::new();
    p.insert("N".into(), json!(rank));
    p.insert("beta".into(), json!(beta.label()));
    p.insert("epsilon".into(), json!(beta.epsilon().value()));
    p.insert("n".into(), json!(n));
    p.insert("m".into(), json!(m));
    p
}

fn rational_report(
    lemma: &str,
    params: Map<String, Value>,
    lhs: &BigRational,
    rhs: &BigRational,
    start: Instant,
) -> CheckReport {
    CheckReport {
        lemma: lemma.into(),
        params,
        lhs: rational_to_string(lhs).into(),
        rhs: rational_to_string(rhs).into(),
        pass: lhs == rhs,
        elapsed_ms: elapsed_ms(start),
    }
}

/// Brute-force `<beta_{n,m}, beta'_{n',m'}>_2` against its closed form.
#[allow(clippy::too_many_arguments)]
pub fn verify_lemma21_inner(
    alg: &FreeGroupAlgebra,
    beta: &BetaVector,
    beta2: &BetaVector,
    n: usize,
    m: usize,
    n2: usize,
    m2: usize,
) -> Result<CheckReport> {
    let start = Instant::now();
    let x = alg.xi_rs(beta.base(), n as i64, m as i64)?;
    let y = alg.xi_rs(beta2.base(), n2 as i64, m2 as i64)?;
    let lhs = alg.inner_product(&x, &y)?;
    let ip = alg.inner_product(beta.base(), beta2.base())?;
    let rhs = lemma21_inner_closed(
        alg.rank(),
        beta.epsilon(),
        beta2.epsilon(),
        n,
        m,
        n2,
        m2,
        &ip,
    );
    Ok(rational_report(
        "lemma21_inner",
        params_inner(alg.rank(), beta, beta2, [n, m, n2, m2]),
        &lhs,
        &rhs,
        start,
    ))
}

/// Brute-force `chi_n beta chi_m` against its expansion into `beta_{r,s}` terms.
pub fn verify_lemma21_expansion(
    alg: &FreeGroupAlgebra,
    beta: &BetaVector,
    n: usize,
    m: usize,
) -> Result<CheckReport> {
    let start = Instant::now();
    let lhs = alg.product(&[&alg.chi(n)?, beta.base(), &alg.chi(m)?])?;
    let rhs = expansion_rhs(alg.rank(), beta.epsilon(), n, m, |r, s| {
        alg.xi_rs(beta.base(), r, s)
    })?;
    Ok(element_report(
        "lemma21_expansion",
        params_single(alg.rank(), beta, n, m),
        &lhs,
        &rhs,
        start,
    ))
}

/// Brute-force `<chi_n beta chi_m, beta>_2` against the six-case formula.
pub fn verify_lemma22(
    alg: &FreeGroupAlgebra,
    beta: &BetaVector,
    n: usize,
    m: usize,
) -> Result<CheckReport> {
    let start = Instant::now();
    let prod = alg.product(&[&alg.chi(n)?, beta.base(), &alg.chi(m)?])?;
    let lhs = alg.inner_product(&prod, beta.base())?;
    let norm2 = alg.norm_squared(beta.base())?;
    let rhs = lemma22_closed(beta.epsilon(), n, m, &norm2);
    Ok(rational_report(
        "lemma22",
        params_single(alg.rank(), beta, n, m),
        &lhs,
        &rhs,
        start,
    ))
}

fn element_report(
    lemma: &str,
    params: Map<String, Value>,
    lhs: &GroupAlgebraElement,
    rhs: &GroupAlgebraElement,
    start: Instant,
) -> CheckReport {
    CheckReport {
        lemma: lemma.into(),
        params,
        lhs: lhs.to_json(),
        rhs: rhs.to_json(),
        pass: lhs == rhs,
        elapsed_ms: elapsed_ms(start),
    }
}

/// Cached `chi_n beta chi_m` and `beta_{n,m}` for all `n + m <= max_total`.
pub struct XiTable {
    beta: BetaVector,
    max_total: usize,
    products: HashMap<(usize, usize), GroupAlgebraElement>,
    xis: HashMap<(usize, usize), GroupAlgebraElement>,
    zero: GroupAlgebraElement,
}

impl XiTable {
    pub fn build(alg: &FreeGroupAlgebra, beta: &BetaVector, max_total: usize) -> Result<Self> {
        let chis: Vec<GroupAlgebraElement> = (0..=max_total)
            .into_par_iter()
            .map(|n| alg.chi(n))
            .collect::<Result<_>>()?;
        let left: Vec<GroupAlgebraElement> = chis
            .par_iter()
            .map(|c| alg.multiply(c, beta.base()))
            .collect::<Result<_>>()?;
        let index: Vec<(usize, usize)> = (0..=max_total)
            .flat_map(|n| (0..=max_total - n).map(move |m| (n, m)))
            .collect();
        let products: Vec<GroupAlgebraElement> = index
            .par_iter()
            .map(|&(n, m)| alg.multiply(&left[n], &chis[m]))
            .collect::<Result<_>>()?;
        let mut prod_map = HashMap::new();
        let mut xi_map = HashMap::new();
        for (&(n, m), p) in index.iter().zip(products) {
            xi_map.insert((n, m), p.project_length(n + m + 1));
            prod_map.insert((n, m), p);
        }
        Ok(XiTable {
            beta: beta.clone(),
            max_total,
            products: prod_map,
            xis: xi_map,
            zero: alg.zero(),
        })
    }

    pub fn beta(&self) -> &BetaVector {
        &self.beta
    }

    pub fn max_total(&self) -> usize {
        self.max_total
    }

    pub fn product(&self, n: usize, m: usize) -> &GroupAlgebraElement {
        &self.products[&(n, m)]
    }

    /// `beta_{r,s}`; the zero element when either index is negative.
    pub fn xi(&self, r: i64, s: i64) -> &GroupAlgebraElement {
        if r < 0 || s < 0 {
            return &self.zero;
        }
        &self.xis[&(r as usize, s as usize)]
    }
}

fn index_pairs(max_total: usize) -> Vec<(usize, usize)> {
    (0..=max_total)
        .flat_map(|t| (0..=t).map(move |n| (n, t - n)))
        .collect()
}

/// Inner-product identity check over every pair of vectors in `betas` and
/// every `n + m <= max_total`, `n' + m' <= max_total`.
pub fn sweep_lemma21_inner(
    alg: &FreeGroupAlgebra,
    betas: &[BetaVector],
    max_total: usize,
) -> Result<Vec<CheckReport>> {
    let tables: Vec<XiTable> = betas
        .iter()
        .map(|b| XiTable::build(alg, b, max_total))
        .collect::<Result<_>>()?;
    let pairs = index_pairs(max_total);
    let mut tasks = Vec::new();
    for (i, _) in betas.iter().enumerate() {
        for (j, _) in betas.iter().enumerate() {
            for &(n, m) in &pairs {
                for &(n2, m2) in &pairs {
                    tasks.push((i, j, n, m, n2, m2));
                }
            }
        }
    }
    tasks
        .par_iter()
        .map(|&(i, j, n, m, n2, m2)| {
            let start = Instant::now();
            let x = tables[i].xi(n as i64, m as i64);
            let y = tables[j].xi(n2 as i64, m2 as i64);
            let lhs = alg.inner_product(x, y)?;
            let ip = alg.inner_product(betas[i].base(), betas[j].base())?;
            let rhs = lemma21_inner_closed(
                alg.rank(),
                betas[i].epsilon(),
                betas[j].epsilon(),
                n,
                m,
                n2,
                m2,
                &ip,
            );
            Ok(rational_report(
                "lemma21_inner",
                params_inner(alg.rank(), &betas[i], &betas[j], [n, m, n2, m2]),
                &lhs,
                &rhs,
                start,
            ))
        })
        .collect()
}

/// Expansion identity check for each vector and every `n + m <= max_total`.
pub fn sweep_lemma21_expansion(
    alg: &FreeGroupAlgebra,
    betas: &[BetaVector],
    max_total: usize,
    perturbation: Perturbation,
) -> Result<Vec<CheckReport>> {
    let pairs = index_pairs(max_total);
    let mut out = Vec::new();
    for (bi, beta) in betas.iter().enumerate() {
        let table = XiTable::build(alg, beta, max_total)?;
        let reports: Vec<CheckReport> = pairs
            .par_iter()
            .enumerate()
            .map(|(pi, &(n, m))| {
                let start = Instant::now();
                let mut lhs = table.product(n, m).clone();
                if perturbation == Perturbation::FlipFirstCoefficient && bi == 0 && pi == 0 {
                    let w = lhs.sorted_terms()[0].0.clone();
                    lhs.add_term(w, BigRational::one());
                }
                let rhs = expansion_rhs(alg.rank(), beta.epsilon(), n, m, |r, s| {
                    Ok(table.xi(r, s).clone())
                })?;
                Ok(element_report(
                    "lemma21_expansion",
                    params_single(alg.rank(), beta, n, m),
                    &lhs,
                    &rhs,
                    start,
                ))
            })
            .collect::<Result<_>>()?;
        out.extend(reports);
    }
    Ok(out)
}

/// Six-case formula check for each vector and every `n + m <= max_total`,
/// including the cases where the formula predicts zero.
pub fn sweep_lemma22(
    alg: &FreeGroupAlgebra,
    betas: &[BetaVector],
    max_total: usize,
) -> Result<Vec<CheckReport>> {
    let pairs = index_pairs(max_total);
    let mut out = Vec::new();
    for beta in betas {
        let table = XiTable::build(alg, beta, max_total)?;
        let norm2 = alg.norm_squared(beta.base())?;
        let reports: Vec<CheckReport> = pairs
            .par_iter()
            .map(|&(n, m)| {
                let start = Instant::now();
                let lhs = alg.inner_product(table.product(n, m), beta.base())?;
                let rhs = lemma22_closed(beta.epsilon(), n, m, &norm2);
                Ok(rational_report(
                    "lemma22",
                    params_single(alg.rank(), beta, n, m),
                    &lhs,
                    &rhs,
                    start,
                ))
            })
            .collect::<Result<_>>()?;
        out.extend(reports);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(rank: usize) -> FreeGroupAlgebra {
        FreeGroupAlgebra::new(rank).unwrap()
    }

    #[test]
    fn six_cases_of_the_closed_form() {
        let norm = rational(2);
        let m1 = Epsilon::Minus;
        assert_eq!(lemma22_closed(m1, 1, 1, &norm), rational(2));
        assert_eq!(lemma22_closed(m1, 2, 2, &norm), rational(4));
        assert_eq!(lemma22_closed(m1, 2, 1, &norm), rational(0));
        assert_eq!(lemma22_closed(m1, 0, 0, &norm), rational(2));
        assert_eq!(lemma22_closed(m1, 2, 0, &norm), rational(-2));
        assert_eq!(lemma22_closed(m1, 0, 2, &norm), rational(-2));
        // |n - m| = 2, n + m = 4: (-eps)^2 eps ||beta||^2
        assert_eq!(lemma22_closed(m1, 1, 3, &norm), rational(-2));
        assert_eq!(lemma22_closed(Epsilon::Plus, 1, 3, &norm), rational(2));
        assert_eq!(lemma22_closed(Epsilon::Plus, 3, 3, &norm), rational(-4));
        assert_eq!(lemma22_closed(Epsilon::Plus, 1, 1, &norm), rational(-2));
        assert_eq!(lemma22_closed(m1, 4, 0, &norm), rational(0));
    }

    #[test]
    fn lemma21_inner_example() {
        // (n, m, n', m') = (1, 1, 2, 0), beta = a1 - a1^-1, N = 2:
        // brute force gives 6; closed form 3^2 * 3^-1 * 2.
        let a = alg(2);
        let b = BetaVector::antisymmetric(2, 1).unwrap();
        let r = verify_lemma21_inner(&a, &b, &b, 1, 1, 2, 0).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, json!("6/1"));
    }

    #[test]
    fn lemma21_inner_vanishing_cases() {
        let a = alg(2);
        let bm = BetaVector::antisymmetric(2, 1).unwrap();
        let bp = BetaVector::symmetric_pair(2, 1, 2).unwrap();
        let r = verify_lemma21_inner(&a, &bm, &bp, 1, 1, 1, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, json!("0/1"));
        let r = verify_lemma21_inner(&a, &bm, &bm, 1, 1, 2, 1).unwrap();
        assert!(r.pass);
        assert_eq!(r.rhs, json!("0/1"));
    }

    #[test]
    fn beta21_norm() {
        // ||beta_{2,1}||^2 = (2N-1)^3 ||beta||^2
        let a = alg(2);
        let b = BetaVector::antisymmetric(2, 1).unwrap();
        let prod = a
            .product(&[&a.chi(2).unwrap(), b.base(), &a.chi(1).unwrap()])
            .unwrap();
        let x = prod.project_length(4);
        assert_eq!(x, a.xi_rs(b.base(), 2, 1).unwrap());
        assert_eq!(a.norm_squared(&x).unwrap(), rational(54));
    }

    #[test]
    fn expansion_examples() {
        let a = alg(2);
        let bm = BetaVector::antisymmetric(2, 1).unwrap();
        let r = verify_lemma21_expansion(&a, &bm, 0, 0).unwrap();
        assert!(r.pass);
        assert_eq!(r.lhs, bm.base().to_json());
        let r = verify_lemma21_expansion(&a, &bm, 1, 1).unwrap();
        assert!(r.pass);
        let lhs_lengths: Vec<usize> = {
            let p = a
                .product(&[&a.chi(1).unwrap(), bm.base(), &a.chi(1).unwrap()])
                .unwrap();
            p.lengths()
        };
        assert_eq!(lhs_lengths, vec![1, 3]);
        let bp = BetaVector::symmetric_pair(2, 1, 2).unwrap();
        assert!(verify_lemma21_expansion(&a, &bp, 3, 2).unwrap().pass);
    }

    #[test]
    fn lemma22_examples() {
        let a = alg(2);
        let b = BetaVector::antisymmetric(2, 1).unwrap();
        for (n, m, v) in [(1, 1, "2/1"), (2, 2, "4/1"), (2, 1, "0/1")] {
            let r = verify_lemma22(&a, &b, n, m).unwrap();
            assert!(r.pass, "{n},{m}");
            assert_eq!(r.lhs, json!(v));
        }
    }

    #[test]
    fn sweeps_agree_with_single_checks() {
        let a = alg(2);
        let betas: Vec<BetaVector> = Epsilon::BOTH
            .iter()
            .flat_map(|&e| BetaVector::standard_family(2, e).unwrap())
            .collect();
        let sweep = sweep_lemma22(&a, &betas, 3).unwrap();
        assert!(sweep.iter().all(|r| r.pass));
        let r = &sweep[5];
        let n = r.params["n"].as_u64().unwrap() as usize;
        let m = r.params["m"].as_u64().unwrap() as usize;
        let single = verify_lemma22(&a, &betas[0], n, m).unwrap();
        assert_eq!(single.lhs, r.lhs);
        assert!(sweep_lemma21_inner(&a, &betas, 2)
            .unwrap()
            .iter()
            .all(|r| r.pass));
        assert!(sweep_lemma21_expansion(&a, &betas, 3, Perturbation::None)
            .unwrap()
            .iter()
            .all(|r| r.pass));
    }

    #[test]
    fn perturbation_is_caught() {
        let a = alg(2);
        let betas = BetaVector::standard_family(2, Epsilon::Minus).unwrap();
        let reports =
            sweep_lemma21_expansion(&a, &betas, 2, Perturbation::FlipFirstCoefficient).unwrap();
        assert_eq!(reports.iter().filter(|r| !r.pass).count(), 1);
    }

    #[test]
    fn non_standard_beta() {
        // 2(a1 - a1^-1) - 3(a3 - a3^-1) in rank 3
        let base = &BetaVector::antisymmetric(3, 1)
            .unwrap()
            .base()
            .scale(&rational(2))
            - &BetaVector::antisymmetric(3, 3)
                .unwrap()
                .base()
                .scale(&rational(3));
        let b = BetaVector::new(base, Epsilon::Minus).unwrap();
        let a = alg(3);
        for (n, m) in [(0, 2), (1, 1), (2, 2), (1, 3), (3, 0)] {
            assert!(verify_lemma22(&a, &b, n, m).unwrap().pass);
            assert!(verify_lemma21_expansion(&a, &b, n, m).unwrap().pass);
        }
    }
}
