use alloc::vec::Vec;

use super::matrix::DenseMatrix;

/// Eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations
/// until the off-diagonal mass drops below `1e-12` of the total.
pub fn symmetric_eigenvalues(m: &DenseMatrix) -> Option<Vec<f64>> {
    if !m.is_symmetric() {
        return None;
    }
    let d = m.dim();
    let mut a = m.clone();
    let total = a.norm(super::Norm::Frobenius).max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let off: f64 = (0..d)
            .flat_map(|i| (0..d).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j) * a.get(i, j))
            .sum();
        if libm::sqrt(off) <= 1e-12 * total {
            break;
        }
        for p in 0..d {
            for q in p + 1..d {
                let apq = a.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (a.get(q, q) - a.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + libm::sqrt(theta * theta + 1.0));
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(t * t + 1.0);
                let s = t * c;
                for k in 0..d {
                    let (akp, akq) = (a.get(k, p), a.get(k, q));
                    a.set(k, p, c * akp - s * akq);
                    a.set(k, q, s * akp + c * akq);
                }
                for k in 0..d {
                    let (apk, aqk) = (a.get(p, k), a.get(q, k));
                    a.set(p, k, c * apk - s * aqk);
                    a.set(q, k, s * apk + c * aqk);
                }
            }
        }
    }
    let mut eig: Vec<f64> = (0..d).map(|i| a.get(i, i)).collect();
    eig.sort_by(f64::total_cmp);
    Some(eig)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let m = DenseMatrix::from_rows(&[alloc::vec![2.0, 1.0], alloc::vec![1.0, 2.0]]).unwrap();
        let e = symmetric_eigenvalues(&m).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-12 && (e[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn trace_and_nonsymmetric() {
        let m = crate::operator::random_symmetric(7, 5, 1.0);
        let e = symmetric_eigenvalues(&m).unwrap();
        let trace: f64 = (0..7).map(|i| m.get(i, i)).sum();
        assert!((e.iter().sum::<f64>() - trace).abs() < 1e-12);
        let n = DenseMatrix::from_rows(&[alloc::vec![0.0, 1.0], alloc::vec![0.0, 0.0]]).unwrap();
        assert!(symmetric_eigenvalues(&n).is_none());
    }
}
