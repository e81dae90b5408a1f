use std::fmt;

use serde::{Deserialize, Serialize};

use super::SeriesError;
use crate::quiver::Quiver;

/// Exponent vector of a monomial `y^alpha`. Entries may be negative when the
/// vector is used as a series offset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExpVec(pub Vec<i64>);

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl From<Vec<i64>> for ExpVec {
    fn from(v: Vec<i64>) -> Self {
        ExpVec(v)
    }
}

impl ExpVec {
    pub fn zero(n: usize) -> Self {
        ExpVec(vec![0; n])
    }

    /// The unit vector `e_i` (0-based).
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ExpVec(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Total degree `sum_i alpha_i`.
    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        ExpVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn meet(&self, other: &Self) -> Self {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// An antisymmetric integer form `lambda(e_i, e_j) = m[i][j]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SkewForm {
    n: usize,
    m: Vec<Vec<i64>>,
}

impl SkewForm {
    pub fn new(m: Vec<Vec<i64>>) -> Result<Self, SeriesError> {
        let n = m.len();
        for i in 0..n {
            if m[i].len() != n {
                return Err(SeriesError::NotAntisymmetric);
            }
            for j in 0..n {
                if m[i][j] != -m[j][i] {
                    return Err(SeriesError::NotAntisymmetric);
                }
            }
        }
        Ok(Self { n, m })
    }

    pub fn zero(n: usize) -> Self {
        Self { n, m: vec![vec![0; n]; n] }
    }

    /// `lambda(e_i, e_j) = #(i -> j) - #(j -> i)`.
    pub fn from_quiver(q: &Quiver) -> Result<Self, SeriesError> {
        q.check_loop_free()?;
        let n = q.n();
        let m = (0..n)
            .map(|i| (0..n).map(|j| q.arrows(i, j) as i64 - q.arrows(j, i) as i64).collect())
            .collect();
        Ok(Self { n, m })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.m[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.m
    }

    /// `lambda(alpha, beta)`; lengths are assumed to match.
    pub fn pair(&self, a: &ExpVec, b: &ExpVec) -> i64 {
        let mut s = 0;
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.m[i];
            for (j, &bj) in b.0.iter().enumerate() {
                s += ai * row[j] * bj;
            }
        }
        s
    }

    pub(crate) fn check_len(&self, a: &ExpVec) -> Result<(), SeriesError> {
        if a.len() != self.n {
            return Err(SeriesError::DimensionMismatch { expected: self.n, got: a.len() });
        }
        Ok(())
    }
}

/// `skew_from_quiver`.
pub fn skew_from_quiver(q: &Quiver) -> Result<SkewForm, SeriesError> {
    SkewForm::from_quiver(q)
}

/// `y^alpha y^beta = (q^{1/2})^{lambda(alpha, beta)} y^{alpha + beta}`; returns the
/// exponent of `q^{1/2}` and `alpha + beta`.
pub fn monomial_mul(form: &SkewForm, a: &ExpVec, b: &ExpVec) -> Result<(i64, ExpVec), SeriesError> {
    form.check_len(a)?;
    form.check_len(b)?;
    Ok((form.pair(a, b), a.add(b)))
}
