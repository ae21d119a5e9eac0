use brunel_core::arith::{pow2, Rational};
use brunel_core::coeffs::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[test]
fn beta_values() {
    assert_eq!(beta(3, 2), Rational::zero());
    assert_eq!(beta(1, 1), r(1, 2));
    for p in 2..=20 {
        assert_eq!(beta(2, p), Rational::from(2) * beta(1, p), "p={p}");
    }
}

#[test]
fn alpha_values() {
    for n in 1..=30 {
        assert_eq!(alpha(n, 0), pow2(-(n as i64)));
    }
    assert_eq!(alpha(1, 1), r(1, 8));
    assert_eq!(alpha(2, 1), r(1, 8));
    assert_eq!(alpha(5, 0), r(1, 32));
}

#[test]
fn alpha_matches_convolution_oracle() {
    for n in 1..=30 {
        let series = oracle_alpha(n, 30);
        assert_eq!(series.coeffs().len(), 31);
        for p in 0..=30 {
            assert_eq!(series.coeffs()[p as usize], alpha(n, p), "n={n} p={p}");
        }
    }
    assert_eq!(oracle_alpha(1, 0).coeffs()[0], r(1, 2));
    assert_eq!(oracle_alpha(2, 0).coeffs()[0], r(1, 4));
    let three = oracle_alpha(3, 25);
    for p in 0..=25 {
        assert_eq!(three.coeffs()[p as usize], alpha(3, p));
    }
}

#[test]
fn beta_is_shifted_alpha() {
    for n in 1..=40 {
        for p in 0..=100 {
            assert_eq!(beta(n, p + n), alpha(n, p), "n={n} p={p}");
        }
        for p in 0..n {
            assert!(beta(n, p).is_zero());
        }
    }
}

#[test]
fn ratio_formula() {
    assert_eq!(alpha_ratio(1, 0), r(1, 4));
    for n in 1..=50 {
        for p in 0..=50 {
            assert_eq!(alpha_ratio(n, p), alpha(n, p + 1) / alpha(n, p), "n={n} p={p}");
        }
    }
    let far = alpha_ratio(1, 1_000_000).to_f64();
    assert!((far - 1.0).abs() < 1e-5);
}

#[test]
fn recurrences() {
    assert!(alpha_recurrence_check(2, 0));
    assert!(alpha_recurrence_check(10, 57));
    for n in 2..=40 {
        for p in 0..=200 {
            assert!(alpha_recurrence_check(n, p), "alpha n={n} p={p}");
        }
        for p in 0..=120 {
            assert!(beta_recurrence_check(n, p), "beta n={n} p={p}");
        }
    }
}

#[test]
fn closed_sum() {
    assert_eq!(sum_alpha(1, 0), r(1, 2));
    for p in 0..=40 {
        assert_eq!(sum_alpha(1, p), alpha(1, p));
    }
    for p in 0..=100 {
        let mut direct = Rational::zero();
        for big_n in 1..=40 {
            direct += alpha(big_n, p);
            assert_eq!(sum_alpha(big_n, p), direct, "N={big_n} p={p}");
        }
    }
}

#[test]
fn psi_values() {
    for n in 1..=8 {
        assert!((psi_eval(1.0, n) - 1.0).abs() < 1e-15);
    }
    assert_eq!(psi_eval(0.0, 3), 0.125);
    assert!((psi_eval(-1.0, 1) - (2f64.sqrt() - 1.0)).abs() < 1e-15);
    // tiny arguments must not lose digits to cancellation
    let x = 1e-12;
    assert!((psi_eval(x, 1) - (0.5 + x / 8.0)).abs() < 2e-16);
}

#[test]
fn partial_sums_converge() {
    for n in 1..=5 {
        assert_eq!(psi_partial_sum(0.0, n, 17), pow2(-(n as i64)).to_f64());
    }
    assert!((psi_partial_sum(0.5, 1, 200) - psi_eval(0.5, 1)).abs() < 1e-12);
    let at_minus_one = psi_partial_sum(-1.0, 2, 5000);
    let exact = (2f64.sqrt() - 1.0).powi(2);
    assert!((at_minus_one - exact).abs() < 1e-4);
    assert!((at_minus_one - exact).abs() <= alpha_tail_bound(2, 5000));
    assert!((psi_partial_sum(1.0, 1, 5000) - 1.0).abs() <= alpha_tail_bound(1, 5000));
}

#[test]
fn tail_bound_dominates_exact_tail() {
    // compare against the complement of a long partial sum at x = 1
    for n in [1u64, 3, 7] {
        for big_p in [10u64, 100, 1000] {
            let head: f64 = alpha_row_f64(n, big_p as usize).iter().sum();
            let tail = 1.0 - head;
            assert!(tail <= alpha_tail_bound(n, big_p), "n={n} P={big_p}");
        }
    }
}

#[test]
fn f64_rows_track_exact_values() {
    let row = alpha_row_f64(7, 300);
    for p in [0usize, 1, 10, 150, 300] {
        let exact = alpha(7, p as u64).to_f64();
        assert!(((row[p] - exact) / exact).abs() < 1e-12, "p={p}");
    }
}

#[test]
fn scaled_stream_is_integral_alpha() {
    let stream: Vec<_> = ScaledAlpha::new(4).take(60).collect();
    for (p, d) in stream.iter().enumerate() {
        let p = p as u64;
        let value = Rational::from(d.clone()) * pow2(-(4 + 2 * p as i64));
        assert_eq!(value, alpha(4, p));
    }
}

#[test]
fn table_invariants() {
    let alphas = CoeffTable::new(CoeffKind::Alpha);
    alphas.fill(12, 40);
    assert_eq!(alphas.extent(), (12, 40));
    for (n, p, v) in alphas.entries() {
        assert!(v.is_positive(), "n={n} p={p}");
    }
    let betas = CoeffTable::new(CoeffKind::Beta);
    betas.fill(12, 40);
    for (n, p, v) in betas.entries() {
        if p < n {
            assert!(v.is_zero());
        } else {
            assert_eq!(v, alphas.get(n, p - n));
        }
    }
    assert_eq!(betas.get(3, 2), Rational::zero());
}

#[test]
fn table_concurrent_readers_agree() {
    let table = std::sync::Arc::new(CoeffTable::new(CoeffKind::Alpha));
    let handles: Vec<_> = (0..8)
        .map(|t| {
            let table = table.clone();
            std::thread::spawn(move || {
                let mut out = Vec::new();
                for n in 1..=10u64 {
                    for p in (0..=60u64).rev() {
                        if (n + p + t) % 3 == 0 {
                            out.push((n, p, table.get(n, p)));
                        }
                    }
                }
                out
            })
        })
        .collect();
    for h in handles {
        for (n, p, v) in h.join().unwrap() {
            assert_eq!(v, alpha(n, p));
        }
    }
}
