use std::collections::BTreeMap;
use std::fmt;

use super::dilog::dilog;
use super::series::{QSeries, Verdict};
use super::skew::{ExpVec, SkewForm};
use super::word::{eval_word, Factor, Word};
use super::SeriesError;
use crate::coeffs::QRat;

/// Beyond this degree the factors hidden in the displayed Kronecker product
/// start to contribute, so the identity cannot be checked as written.
pub const KRONECKER_MAX_DEPTH: u32 = 5;

fn one_var() -> SkewForm {
    SkewForm::zero(1)
}

/// `1 + c y` on the one-variable form.
fn linear(depth: u32, c: QRat) -> Result<QSeries, SeriesError> {
    QSeries::from_terms(one_var(), depth, ExpVec::zero(1), [(ExpVec(vec![0]), QRat::one()), (ExpVec(vec![1]), c)])
}

/// Both sides of `E(y)(1 + q^{1/2} y) = E(q y)`.
pub fn shift_identity_sides(depth: u32) -> Result<(QSeries, QSeries), SeriesError> {
    let y = ExpVec(vec![1]);
    let lhs = dilog(&one_var(), &QRat::one(), &y, depth)?.mul(&linear(depth, QRat::v_pow(1))?)?;
    let rhs = dilog(&one_var(), &QRat::v_pow(2), &y, depth)?;
    Ok((lhs, rhs))
}

pub fn shift_identity_check(depth: u32) -> Result<Verdict, SeriesError> {
    let (l, r) = shift_identity_sides(depth)?;
    l.compare(&r)
}

/// Both sides of `E(q^m y) E(y)^{-1} = prod_{j=1}^m (1 + q^{j - 1/2} y)` for
/// `m >= 0`, and of `E(q^{-m} y) E(y)^{-1} = prod_{j=1}^m (1 + q^{j - m - 1/2} y)^{-1}`
/// for negative shifts.
pub fn conj_factor_sides(m: i64, depth: u32) -> Result<(QSeries, QSeries), SeriesError> {
    let y = ExpVec(vec![1]);
    let f = one_var();
    let lhs = dilog(&f, &QRat::v_pow(2 * m), &y, depth)?.mul(&dilog(&f, &QRat::one(), &y, depth)?.inv()?)?;
    let k = m.abs();
    let mut prod = QSeries::one(f, depth);
    for j in 1..=k {
        let half = if m >= 0 { 2 * j - 1 } else { 2 * j - 2 * k - 1 };
        prod = prod.mul(&linear(depth, QRat::v_pow(half))?)?;
    }
    let rhs = if m >= 0 { prod } else { prod.inv()? };
    Ok((lhs, rhs))
}

pub fn conj_factor_check(m: i64, depth: u32) -> Result<Verdict, SeriesError> {
    let (l, r) = conj_factor_sides(m, depth)?;
    l.compare(&r)
}

/// A Laurent polynomial in one commuting variable `z` over `Q(q^{1/2})`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentZ(BTreeMap<i64, QRat>);

impl LaurentZ {
    pub fn one() -> Self {
        Self::monomial(0, QRat::one())
    }

    pub fn monomial(k: i64, c: QRat) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert(k, c);
        }
        LaurentZ(m)
    }

    /// `1 + c z^k`.
    pub fn one_plus(c: QRat, k: i64) -> Self {
        Self::one().add(&Self::monomial(k, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut m = self.0.clone();
        for (k, c) in &other.0 {
            let e = m.entry(*k).or_insert_with(QRat::zero);
            *e = &*e + c;
        }
        m.retain(|_, c| !c.is_zero());
        LaurentZ(m)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut acc = LaurentZ::default();
        for (a, x) in &self.0 {
            for (b, y) in &other.0 {
                acc = acc.add(&Self::monomial(a + b, x * y));
            }
        }
        acc
    }

    pub fn coeff(&self, k: i64) -> QRat {
        self.0.get(&k).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn terms(&self) -> &BTreeMap<i64, QRat> {
        &self.0
    }
}

impl fmt::Display for LaurentZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*z^{k}")?;
        }
        Ok(())
    }
}

/// Both sides of `prod_{j=1}^m (1 + q^{j-1/2} z) = q^{m^2/2} z^m prod_{j=1}^m (1 + q^{j-m-1/2} z^{-1})`.
///
/// This is what remains of the two-step adjoint action of `E(y_k)` and
/// `E(y_k^{-1})` on `y_i` once both rational factors are written as
/// polynomials in `z = y_k` (which commutes with itself).
pub fn twist_involution_sides(m: u32) -> (LaurentZ, LaurentZ) {
    let m = m as i64;
    let mut lhs = LaurentZ::one();
    let mut rhs = LaurentZ::monomial(m, QRat::v_pow(m * m));
    for j in 1..=m {
        lhs = lhs.mul(&LaurentZ::one_plus(QRat::v_pow(2 * j - 1), 1));
        rhs = rhs.mul(&LaurentZ::one_plus(QRat::v_pow(2 * j - 2 * m - 1), -1));
    }
    (lhs, rhs)
}

pub fn twist_involution_check(m: u32) -> bool {
    let (l, r) = twist_involution_sides(m);
    l == r
}

/// `[[0,2],[-2,0]]`.
pub fn kronecker_form() -> SkewForm {
    SkewForm::new(vec![vec![0, 2], vec![-2, 0]]).expect("antisymmetric")
}

/// The displayed right-hand product, keeping every shown factor of degree
/// at most `depth`.
pub fn kronecker_right_word(depth: u32) -> Word {
    let d = depth as i64;
    let mut w = Vec::new();
    let mut k = 0;
    while 2 * k < d.max(1) {
        w.push(Factor::new(ExpVec(vec![k, k + 1]), 1));
        k += 1;
    }
    w.push(Factor::new(ExpVec(vec![1, 1]), 4));
    w.push(Factor::new(ExpVec(vec![2, 2]), -2));
    for k in (0..k).rev() {
        w.push(Factor::new(ExpVec(vec![k + 1, k]), 1));
    }
    Word(w)
}

/// Left and right Kronecker products, on `[[0,2],[-2,0]]`.
pub fn kronecker_sides(depth: u32) -> Result<(QSeries, QSeries), SeriesError> {
    if depth > KRONECKER_MAX_DEPTH {
        return Err(SeriesError::DepthTooLarge {
            max: KRONECKER_MAX_DEPTH,
            got: depth,
            reason: "the right-hand product elides factors such as E(3,4) and E(4,3) and the rest of the \
                     middle factor, which contribute from degree 6 on"
                .into(),
        });
    }
    let form = kronecker_form();
    let lhs = eval_word(&form, &"E(1,0) E(0,1)".parse()?, depth)?;
    let rhs = eval_word(&form, &kronecker_right_word(depth), depth)?;
    Ok((lhs, rhs))
}

pub fn kronecker_identity(depth: u32) -> Result<Verdict, SeriesError> {
    let (l, r) = kronecker_sides(depth)?;
    l.compare(&r)
}
