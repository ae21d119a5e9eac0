use brunel_core::coeffs::psi_eval;
use brunel_core::operator::*;

fn close(a: &DenseMatrix, b: &DenseMatrix, tol: f64) -> bool {
    a.max_abs_diff(b) <= tol
}

#[test]
fn powers() {
    let t = appendix_matrix();
    assert_eq!(matrix_power(&t, 0).unwrap(), DenseMatrix::identity(2));
    assert_eq!(matrix_power(&DenseMatrix::identity(3), 7).unwrap(), DenseMatrix::identity(3));
    for n in 1..=20u64 {
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        let want = DenseMatrix::from_rows(&[vec![s, -2.0 * n as f64 * s], vec![0.0, s]]).unwrap();
        assert_eq!(matrix_power(&t, n).unwrap(), want);
    }
    let big = DenseMatrix::from_rows(&[vec![1e200]]).unwrap();
    assert_eq!(matrix_power(&big, 3), Err(OperatorError::NonFinite));
}

#[test]
fn cesaro_examples() {
    let t = appendix_matrix();
    assert_eq!(cesaro(&t, 1), DenseMatrix::identity(2));
    assert_eq!(cesaro(&DenseMatrix::identity(4), 9), DenseMatrix::identity(4));
    assert_eq!(cesaro(&t, 2), DenseMatrix::from_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap());
}

#[test]
fn cesaro_telescoping() {
    let t = random_row_stochastic(4, 9);
    for n in 1..40u64 {
        let lhs = &cesaro(&t, n + 1).scale((n + 1) as f64) - &cesaro(&t, n).scale(n as f64);
        let tn = matrix_power(&t, n).unwrap();
        assert!(close(&lhs, &tn, 1e-12 * (n as f64 + 1.0)), "N = {n}");
    }
}

#[test]
fn brunel_examples() {
    let opts = BrunelOptions::default();
    let z = brunel(&DenseMatrix::zeros(3), 1, &opts).unwrap();
    assert_eq!(z.matrix, DenseMatrix::identity(3).scale(0.5));
    assert_eq!(z.tail_bound, 0.0);
    let id = brunel(&DenseMatrix::identity(2), 1, &opts).unwrap();
    assert!(close(&id.matrix, &DenseMatrix::identity(2), 1e-10));
    assert!(id.tail_bound <= 1e-10);
}

#[test]
fn brunel_matches_scalar_series() {
    let opts = BrunelOptions::default();
    for x in [-0.9, -0.3, 0.0, 0.4, 0.95] {
        let t = DenseMatrix::from_rows(&[vec![x]]).unwrap();
        for n in [1, 2, 5] {
            let r = brunel(&t, n, &opts).unwrap();
            assert!(r.tail_bound <= 1e-10);
            assert!((r.matrix.get(0, 0) - psi_eval(x, n)).abs() <= 1e-10 + 1e-13, "{x} {n}");
        }
    }
}

#[test]
fn brunel_reports_nonconvergence_and_explosion() {
    let opts = BrunelOptions::default();
    assert_eq!(
        brunel(&appendix_matrix(), 1, &opts),
        Err(OperatorError::NonConvergence { cap: opts.cap })
    );
    let grow = DenseMatrix::identity(2).scale(2.0);
    assert!(matches!(brunel(&grow, 1, &opts), Err(OperatorError::SpectralExplosion { .. })));
}

#[test]
fn commutes_with_t() {
    let opts = BrunelOptions::default();
    for t in [random_doubly_stochastic(5, 1), random_symmetric(4, 2, 0.8), rotation(1.0)] {
        let r = brunel(&t, 3, &BrunelOptions { truncation: Truncation::Fixed(5000), ..opts.clone() }).unwrap();
        let gap = (&(&r.matrix * &t) - &(&t * &r.matrix)).norm(Norm::OpInf);
        assert!(gap <= 2.0 * r.tail_bound + 1e-10, "{gap}");
    }
}

#[test]
fn semigroup() {
    let opts = BrunelOptions::default();
    let tight = BrunelOptions { eps: 1e-13, ..opts.clone() };
    for seed in 0..3 {
        let t = random_symmetric(4, seed, 0.7);
        let one = brunel(&t, 1, &tight).unwrap().matrix;
        let mut prod = one.clone();
        for n in 2..=6 {
            prod = &prod * &one;
            let direct = brunel(&t, n, &opts).unwrap();
            assert!(close(&prod, &direct.matrix, direct.tail_bound + 1e-11 * n as f64), "{seed} {n}");
        }
    }
}

#[test]
fn spectral_mapping() {
    let opts = BrunelOptions::default();
    for seed in 0..5 {
        let t = random_symmetric(5, seed, 0.9);
        let lam = symmetric_eigenvalues(&t).unwrap();
        let a = brunel(&t, 1, &opts).unwrap();
        // symmetrize away the rounding asymmetry
        let sym = (&a.matrix + &a.matrix.transpose()).scale(0.5);
        let mu = symmetric_eigenvalues(&sym).unwrap();
        let mut want: Vec<f64> = lam.iter().map(|&l| psi_eval(l, 1)).collect();
        want.sort_by(f64::total_cmp);
        for (m, w) in mu.iter().zip(&want) {
            assert!((m - w).abs() <= 1e-8, "{m} {w}");
        }
    }
}

#[test]
fn family_agrees_with_single_powers() {
    let t = random_doubly_stochastic(4, 5);
    let opts = BrunelOptions { truncation: Truncation::Fixed(3000), ..BrunelOptions::default() };
    let fam = brunel_family(&t, 6, &opts).unwrap();
    for n in 1..=7 {
        let single = brunel(&t, n, &opts).unwrap();
        assert!(close(fam.power(n).0, &single.matrix, 1e-9));
    }
}

#[test]
fn max_norm_uses_row_sum_envelopes() {
    let t = rotation(0.3).scale(0.5);
    let opts = BrunelOptions { norm: Norm::Max, ..BrunelOptions::default() };
    let r = brunel(&t, 2, &opts).unwrap();
    assert_eq!(r.norm_used, Norm::Max);
    assert!(r.tail_bound <= 1e-10);
}

#[test]
fn averaging_accelerates_alternating_series() {
    let t = DenseMatrix::from_rows(&[vec![-1.0]]).unwrap();
    let plain = BrunelOptions { truncation: Truncation::Fixed(2000), ..BrunelOptions::default() };
    let averaged = BrunelOptions { averaging: 6, ..plain.clone() };
    let want = core::f64::consts::SQRT_2 - 1.0;
    let a = brunel(&t, 1, &plain).unwrap().matrix.get(0, 0);
    let b = brunel(&t, 1, &averaged).unwrap().matrix.get(0, 0);
    assert!((b - want).abs() < 1e-12);
    assert!((b - want).abs() < (a - want).abs());
}

#[test]
fn appendix_mean_bounded_not_power_bounded() {
    let t = appendix_matrix();
    let mut power = DenseMatrix::identity(2);
    let mut sum = DenseMatrix::zeros(2);
    for n in 1..=500u64 {
        sum.add_scaled(&power, 1.0);
        assert!(sum.norm(Norm::OpInf) / n as f64 <= 1.0 + 1e-12);
        power = &power * &t;
        assert_eq!(power.norm(Norm::OpInf), (2 * n + 1) as f64);
    }
}

#[test]
fn appendix_example_agrees() {
    let ex = appendix_example(1);
    assert!((ex.closed_form.get(0, 0) - (core::f64::consts::SQRT_2 - 1.0)).abs() < 1e-15);
    for n in 1..=12 {
        let ex = appendix_example(n);
        assert!(ex.agreement <= 1e-8, "n = {n}: {}", ex.agreement);
        let oracle = appendix_s_closed_form(n);
        assert!((ex.s_n - oracle).abs() <= 1e-12 * oracle.abs(), "{} {oracle}", ex.s_n);
        assert!(ex.s_bracket.0 <= oracle && oracle <= ex.s_bracket.1);
    }
}

#[test]
fn appendix_trend_stays_below_limit() {
    let limit = 4.0 * (1.0f64 / 12.0).exp() * (2.0 / core::f64::consts::PI).sqrt() + 0.5;
    let worst = (1..=60u64)
        .map(|n| n as f64 * 2f64.powi(1 - n as i32) * appendix_s_closed_form(n).abs())
        .fold(0.0, f64::max);
    assert!(worst <= limit);
    assert!((worst - 0.12132034355964257).abs() < 1e-12);
}

#[test]
fn theorem_checks() {
    let opts = BrunelOptions::default();
    let rep = check_power_bound_theorem(&DenseMatrix::identity(3), 40, &opts).unwrap();
    assert!(rep.passed());
    assert!(check_power_bound_theorem(&rotation(1.0), 40, &opts).unwrap().passed());
    assert!(check_power_bound_theorem(&random_doubly_stochastic(5, 2), 40, &opts).unwrap().passed());
    assert!(check_mean_bound_theorem(&appendix_matrix(), 30, &opts).unwrap().passed());
    assert!(check_mean_bound_theorem(&random_row_stochastic(4, 1), 30, &opts).unwrap().passed());
    assert!(check_cesaro_domination(&random_column_stochastic(3, 4), 200, &opts).unwrap().passed());
    assert!(check_cesaro_domination(&DenseMatrix::zeros(3), 50, &opts).unwrap().passed());
    assert_eq!(
        check_cesaro_domination(&appendix_matrix(), 10, &opts),
        Err(OperatorError::NegativeEntries)
    );
}

#[test]
fn matrix_json_round_trip() {
    let m = random_row_stochastic(3, 1);
    let v = serde_json::to_string(&m).unwrap();
    assert!(v.starts_with("{\"dim\":3,\"rows\":[["));
    assert_eq!(serde_json::from_str::<DenseMatrix>(&v).unwrap(), m);
    assert!(serde_json::from_str::<DenseMatrix>("{\"dim\":2,\"rows\":[[1,2]]}").is_err());
    assert!(serde_json::from_str::<DenseMatrix>("{\"dim\":1,\"rows\":[[1,2]]}").is_err());
}
