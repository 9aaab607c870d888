//! 2-rational sequences: `u(n) = lambda * A[n_l] * ... * A[n_0] * gamma`
//! where `n_l ... n_0` is the binary expansion of `n`, most significant bit
//! first. `u(0)` is the empty product `lambda * gamma`.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoRationalError {
    #[error("representation dimension must be at least 1")]
    ZeroDimension,
    #[error("{what} has the wrong shape for dimension {dim}")]
    Shape { what: &'static str, dim: usize },
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("digit {0} is not a binary digit")]
    BadDigit(u8),
}

pub type Matrix = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRepresentation {
    lambda: Vec<BigInt>,
    a0: Matrix,
    a1: Matrix,
    gamma: Vec<BigInt>,
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn matrix(rows: &[&[i64]]) -> Matrix {
    rows.iter().map(|r| ints(r)).collect()
}

impl LinearRepresentation {
    pub fn new(lambda: Vec<BigInt>, a0: Matrix, a1: Matrix, gamma: Vec<BigInt>) -> Result<Self, TwoRationalError> {
        let dim = lambda.len();
        if dim == 0 {
            return Err(TwoRationalError::ZeroDimension);
        }
        let square = |m: &Matrix| m.len() == dim && m.iter().all(|r| r.len() == dim);
        if !square(&a0) {
            return Err(TwoRationalError::Shape { what: "A0", dim });
        }
        if !square(&a1) {
            return Err(TwoRationalError::Shape { what: "A1", dim });
        }
        if gamma.len() != dim {
            return Err(TwoRationalError::Shape { what: "gamma", dim });
        }
        Ok(Self { lambda, a0, a1, gamma })
    }

    pub fn from_i64s(lambda: &[i64], a0: &[&[i64]], a1: &[&[i64]], gamma: &[i64]) -> Result<Self, TwoRationalError> {
        Self::new(ints(lambda), matrix(a0), matrix(a1), ints(gamma))
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[BigInt] {
        &self.lambda
    }

    pub fn a0(&self) -> &Matrix {
        &self.a0
    }

    pub fn a1(&self) -> &Matrix {
        &self.a1
    }

    pub fn gamma(&self) -> &[BigInt] {
        &self.gamma
    }

    /// `lambda * A[d_0] * ... * A[d_last] * gamma` for an explicit digit
    /// string, most significant digit first. Leading zeros are *not* dropped.
    pub fn eval_digits(&self, digits: &[u8]) -> Result<BigInt, TwoRationalError> {
        let mut v = self.gamma.clone();
        for &digit in digits.iter().rev() {
            let m = match digit {
                0 => &self.a0,
                1 => &self.a1,
                d => return Err(TwoRationalError::BadDigit(d)),
            };
            v = mat_vec(m, &v);
        }
        Ok(dot(&self.lambda, &v))
    }

    /// `u(n)`, using exactly the binary digits of `n` (none for `n = 0`).
    pub fn eval(&self, n: u64) -> BigInt {
        let mut v = self.gamma.clone();
        let mut rest = n;
        while rest > 0 {
            let m = if rest & 1 == 1 { &self.a1 } else { &self.a0 };
            v = mat_vec(m, &v);
            rest >>= 1;
        }
        dot(&self.lambda, &v)
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()
}

fn mat_vec(m: &Matrix, v: &[BigInt]) -> Vec<BigInt> {
    m.iter().map(|row| dot(row, v)).collect()
}

pub fn eval_linear_rep(rep: &LinearRepresentation, n: u64) -> BigInt {
    rep.eval(n)
}

/// Dimension-2 representation of `a(0) = 0, a(2n) = alpha a(n) + c,
/// a(2n+1) = alpha a(n) + d`.
///
/// The row vector `lambda * A[n_l] * ... * A[n_j]` equals `(1, a(m))` where
/// `m` is the prefix `n_l ... n_j`, so `gamma = (0, 1)` reads off `a(n)`.
/// Padding `n` with leading zeros changes the value whenever `c != 0`.
pub fn rep_for_affine(alpha: i64, c: i64, d: i64) -> Result<LinearRepresentation, TwoRationalError> {
    if alpha == 0 {
        return Err(TwoRationalError::ZeroAlpha);
    }
    LinearRepresentation::from_i64s(&[1, 0], &[&[1, c], &[0, alpha]], &[&[1, d], &[0, alpha]], &[0, 1])
}

/// `u(n) = e1(n)`.
pub fn ones_count_rep() -> LinearRepresentation {
    LinearRepresentation::from_i64s(&[0, 1], &[&[1, 0], &[0, 1]], &[&[1, 0], &[1, 1]], &[1, 0]).expect("well-formed")
}
