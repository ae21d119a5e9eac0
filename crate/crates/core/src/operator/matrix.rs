use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::OperatorError;

/// Matrix norm used for every bound in this module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Norm {
    /// Operator norm induced by the max norm: largest absolute row sum.
    #[default]
    #[serde(alias = "opinf")]
    OpInf,
    #[serde(alias = "fro")]
    Frobenius,
    /// Largest absolute entry. Not submultiplicative.
    Max,
}

impl Norm {
    pub fn is_submultiplicative(self) -> bool {
        !matches!(self, Norm::Max)
    }
}

impl fmt::Display for Norm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Norm::OpInf => "opinf",
            Norm::Frobenius => "fro",
            Norm::Max => "max",
        })
    }
}

/// Square matrix of finite doubles, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self, OperatorError> {
        if dim == 0 {
            return Err(OperatorError::Shape("dimension must be positive".into()));
        }
        if data.len() != dim * dim {
            return Err(OperatorError::Shape(alloc::format!(
                "expected {} entries for dimension {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(OperatorError::NonFinite);
        }
        Ok(DenseMatrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, OperatorError> {
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(OperatorError::Shape("matrix rows must form a square".into()));
        }
        DenseMatrix::new(dim, rows.concat())
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = DenseMatrix::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0);
        DenseMatrix {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|&v| v >= 0.0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn norm(&self, norm: Norm) -> f64 {
        match norm {
            Norm::OpInf => self
                .data
                .chunks(self.dim)
                .map(|r| r.iter().map(|v| v.abs()).sum::<f64>())
                .fold(0.0, f64::max),
            Norm::Frobenius => libm::sqrt(self.data.iter().map(|v| v * v).sum()),
            Norm::Max => self.data.iter().fold(0.0, |m, v| m.max(v.abs())),
        }
    }

    pub fn scale(&self, s: f64) -> DenseMatrix {
        DenseMatrix {
            dim: self.dim,
            data: self.data.iter().map(|v| v * s).collect(),
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &DenseMatrix, s: f64) {
        assert_eq!(self.dim, other.dim);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.data[j * self.dim + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn matmul(&self, other: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = vec![0.0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == 0.0 {
                    continue;
                }
                let row = &other.data[k * d..(k + 1) * d];
                for (o, b) in out[i * d..(i + 1) * d].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        DenseMatrix { dim: d, data: out }
    }
}

impl<'a, 'b> Add<&'b DenseMatrix> for &'a DenseMatrix {
    type Output = DenseMatrix;
    fn add(self, rhs: &'b DenseMatrix) -> DenseMatrix {
        let mut out = self.clone();
        out.add_scaled(rhs, 1.0);
        out
    }
}

impl<'a, 'b> Sub<&'b DenseMatrix> for &'a DenseMatrix {
    type Output = DenseMatrix;
    fn sub(self, rhs: &'b DenseMatrix) -> DenseMatrix {
        let mut out = self.clone();
        out.add_scaled(rhs, -1.0);
        out
    }
}

impl<'a, 'b> Mul<&'b DenseMatrix> for &'a DenseMatrix {
    type Output = DenseMatrix;
    fn mul(self, rhs: &'b DenseMatrix) -> DenseMatrix {
        self.matmul(rhs)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    rows: Vec<Vec<f64>>,
}

impl Serialize for DenseMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixJson {
            dim: self.dim,
            rows: self.rows(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DenseMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(d)?;
        if raw.rows.len() != raw.dim {
            return Err(serde::de::Error::custom(alloc::format!(
                "dim is {} but {} rows were given",
                raw.dim,
                raw.rows.len()
            )));
        }
        DenseMatrix::from_rows(&raw.rows).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        let m = DenseMatrix::from_rows(&[vec![1.0, -2.0], vec![3.0, 0.5]]).unwrap();
        assert_eq!(m.norm(Norm::OpInf), 3.5);
        assert_eq!(m.norm(Norm::Max), 3.0);
        assert!((m.norm(Norm::Frobenius) - (14.25f64).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(DenseMatrix::new(2, vec![1.0; 3]).is_err());
        assert_eq!(DenseMatrix::new(1, vec![f64::NAN]), Err(OperatorError::NonFinite));
        assert!(DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![1.0]]).is_err());
    }

    #[test]
    fn product() {
        let a = DenseMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let b = &a * &DenseMatrix::identity(2);
        assert_eq!(a, b);
        let sq = &a * &a;
        assert_eq!(sq.rows(), vec![vec![7.0, 10.0], vec![15.0, 22.0]]);
    }
}
