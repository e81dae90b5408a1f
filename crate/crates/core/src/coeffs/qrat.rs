use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::{div_rem_dense, gcd_dense, pow_rat, HalfLaurent};
use super::CoeffError;

/// An element of `Q(q^{1/2})` in canonical form `num / den`.
///
/// * `den` is a polynomial in `v = q^{1/2}` with nonzero constant term and
///   leading coefficient 1 (so any power of `v` lives in `num`);
/// * `num` and `den` have no nonconstant common factor;
/// * zero is `0 / 1`.
///
/// Under these rules two values are equal exactly when their fields are.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QRat {
    num: HalfLaurent,
    den: HalfLaurent,
}

impl fmt::Debug for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QRat({self})")
    }
}

fn lc_inv(p: &HalfLaurent) -> BigRational {
    p.leading_coeff().expect("nonzero polynomial").recip()
}

/// Strips the power of `v` from a Laurent polynomial: `p = v^k * rest`.
fn split_v_power(p: &HalfLaurent) -> (i64, Vec<BigRational>) {
    p.to_dense()
}

/// `a / g` where `g` divides `a` exactly (`g` a polynomial with `g(0) != 0`).
fn exact_div(a: &HalfLaurent, g: &[BigRational]) -> HalfLaurent {
    let (shift, dense) = split_v_power(a);
    let (q, r) = div_rem_dense(&dense, g);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    HalfLaurent::from_dense(shift, q)
}

fn dense_is_one(g: &[BigRational]) -> bool {
    g.len() == 1
}

fn laurent_gcd(a: &HalfLaurent, den: &HalfLaurent) -> Vec<BigRational> {
    if a.as_monomial().is_some() || den.is_constant() {
        return vec![BigRational::one()];
    }
    let (_, da) = split_v_power(a);
    let (_, dd) = split_v_power(den);
    gcd_dense(&da, &dd)
}

impl QRat {
    pub fn zero() -> Self {
        Self { num: HalfLaurent::zero(), den: HalfLaurent::one() }
    }

    pub fn one() -> Self {
        Self { num: HalfLaurent::one(), den: HalfLaurent::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self { num: HalfLaurent::constant(c), den: HalfLaurent::one() }
    }

    /// `v^k = q^{k/2}`.
    pub fn v_pow(k: i64) -> Self {
        Self { num: HalfLaurent::monomial(k, BigRational::one()), den: HalfLaurent::one() }
    }

    /// `c * v^k`.
    pub fn monomial(k: i64, c: BigRational) -> Self {
        Self { num: HalfLaurent::monomial(k, c), den: HalfLaurent::one() }
    }

    pub fn from_laurent(p: HalfLaurent) -> Self {
        Self { num: p, den: HalfLaurent::one() }
    }

    /// Builds the canonical form of `num / den`.
    pub fn new(num: HalfLaurent, den: HalfLaurent) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let dl = den.low_exp().unwrap();
        let den = den.shift(-dl);
        let num = num.shift(-dl);
        Ok(Self::reduce(num, den))
    }

    /// `den` must be a nonzero polynomial with nonzero constant term.
    fn reduce(num: HalfLaurent, den: HalfLaurent) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = laurent_gcd(&num, &den);
        let (num, den) = if dense_is_one(&g) {
            (num, den)
        } else {
            (exact_div(&num, &g), exact_div(&den, &g))
        };
        Self::normalize_lead(num, den)
    }

    fn normalize_lead(num: HalfLaurent, den: HalfLaurent) -> Self {
        if den.leading_coeff().is_some_and(|c| c.is_one()) {
            return Self { num, den };
        }
        let s = lc_inv(&den);
        Self { num: num.scale(&s), den: den.scale(&s) }
    }

    pub fn numer(&self) -> &HalfLaurent {
        &self.num
    }

    pub fn denom(&self) -> &HalfLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// Returns `(k, c)` when the value is `c * v^k`.
    pub fn as_monomial(&self) -> Option<(i64, &BigRational)> {
        if self.den.is_one() {
            self.num.as_monomial()
        } else {
            None
        }
    }

    /// Multiplies by `v^k`; never needs a gcd.
    pub fn mul_v_pow(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        // num = v^k * p with p(0) != 0; 1/(v^k p) = v^{-k} den / p
        let k = self.num.low_exp().unwrap();
        let p = self.num.shift(-k);
        Ok(Self::normalize_lead(self.den.shift(-k), p))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CoeffError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self, CoeffError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Self::reduce(self.num.add(&other.num), self.den.clone());
        }
        let g = laurent_gcd(&self.den, &other.den);
        if dense_is_one(&g) {
            let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            if num.is_zero() {
                return Self::zero();
            }
            return Self { num, den: self.den.mul(&other.den) };
        }
        // Henrici: with b = g b', d = g d', only g can share factors with the
        // new numerator.
        let b1 = exact_div(&self.den, &g);
        let d1 = exact_div(&other.den, &g);
        let num = self.num.mul(&d1).add(&other.num.mul(&b1));
        if num.is_zero() {
            return Self::zero();
        }
        let gpoly = HalfLaurent::from_dense(0, g);
        let h = laurent_gcd(&num, &gpoly);
        let den = b1.mul(&d1).mul(&gpoly);
        if dense_is_one(&h) {
            Self::normalize_lead(num, den)
        } else {
            Self::normalize_lead(exact_div(&num, &h), exact_div(&den, &h))
        }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((k, c)) = self.as_monomial() {
            return other.scale(c).mul_v_pow(k);
        }
        if let Some((k, c)) = other.as_monomial() {
            return self.scale(c).mul_v_pow(k);
        }
        let g1 = laurent_gcd(&self.num, &other.den);
        let g2 = laurent_gcd(&other.num, &self.den);
        let (a, d) = if dense_is_one(&g1) {
            (self.num.clone(), other.den.clone())
        } else {
            (exact_div(&self.num, &g1), exact_div(&other.den, &g1))
        };
        let (c, b) = if dense_is_one(&g2) {
            (other.num.clone(), self.den.clone())
        } else {
            (exact_div(&other.num, &g2), exact_div(&self.den, &g2))
        };
        Self::normalize_lead(a.mul(&c), b.mul(&d))
    }

    /// Value at `v = q^{1/2} = t`.
    pub fn specialize(&self, t: &BigRational) -> Result<BigRational, CoeffError> {
        let pole = || CoeffError::Pole { at: t.to_string() };
        let d = self.den.eval(t).ok_or_else(pole)?;
        if d.is_zero() {
            return Err(pole());
        }
        let n = self.num.eval(t).ok_or_else(pole)?;
        Ok(n / d)
    }

    /// Total degree in `v` (numerator high exponent minus denominator degree);
    /// used only for reporting.
    pub fn degree(&self) -> Option<i64> {
        Some(self.num.high_exp()? - self.den.high_exp()?)
    }

    /// Checks the canonical-form invariants (used by tests and by the parser).
    pub fn is_canonical(&self) -> bool {
        let Some(dl) = self.den.low_exp() else { return false };
        if dl != 0 || !self.den.leading_coeff().is_some_and(|c| c.is_one()) {
            return false;
        }
        if self.num.is_zero() {
            return self.den.is_one();
        }
        dense_is_one(&laurent_gcd(&self.num, &self.den))
    }
}

/// `(v^{2k} - 1)` style helper: `q^k - 1` as a canonical value.
pub fn q_pow_minus_one(k: i64) -> QRat {
    QRat::from_laurent(HalfLaurent::from_terms([
        (2 * k, BigRational::one()),
        (0, -BigRational::one()),
    ]))
}

/// Rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn rat_pow(t: &BigRational, e: i64) -> BigRational {
    pow_rat(t, e)
}

impl Zero for QRat {
    fn zero() -> Self {
        QRat::zero()
    }
    fn is_zero(&self) -> bool {
        QRat::is_zero(self)
    }
}

impl One for QRat {
    fn one() -> Self {
        QRat::one()
    }
}

impl<'a> Add<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        self.add_impl(rhs)
    }
}

impl Add for QRat {
    type Output = QRat;
    fn add(self, rhs: QRat) -> QRat {
        self.add_impl(&rhs)
    }
}

impl<'a> Sub<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self.add_impl(&-rhs)
    }
}

impl Sub for QRat {
    type Output = QRat;
    fn sub(self, rhs: QRat) -> QRat {
        self.add_impl(&-rhs)
    }
}

impl<'a> Mul<&'a QRat> for &'a QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        self.mul_impl(rhs)
    }
}

impl Mul for QRat {
    type Output = QRat;
    fn mul(self, rhs: QRat) -> QRat {
        self.mul_impl(&rhs)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q_minus_1() -> QRat {
        q_pow_minus_one(1)
    }

    #[test]
    fn half_powers_add_exponents() {
        assert_eq!(&QRat::v_pow(1) * &QRat::v_pow(1), QRat::v_pow(2));
    }

    #[test]
    fn inverse_of_q_minus_one() {
        let x = q_minus_1();
        assert!((&x.inv().unwrap() * &x).is_one());
        assert_eq!(QRat::zero().inv(), Err(CoeffError::DivisionByZero));
    }

    #[test]
    fn sum_of_equal_fractions() {
        let f = QRat::v_pow(1).checked_div(&q_minus_1()).unwrap();
        let s = &f + &f;
        assert_eq!(s, QRat::monomial(1, rat(2)).checked_div(&q_minus_1()).unwrap());
        assert!(s.is_canonical());
    }

    #[test]
    fn canonical_moves_v_powers_to_numerator() {
        // 1 / (v^2 (q - 1)) has denominator q - 1 and numerator v^-2
        let den = q_minus_1().numer().shift(2);
        let x = QRat::new(HalfLaurent::one(), den).unwrap();
        assert_eq!(x.numer(), &HalfLaurent::monomial(-2, rat(1)));
        assert_eq!(x.denom(), q_minus_1().numer());
    }

    #[test]
    fn cancellation_to_zero() {
        let f = QRat::v_pow(3).checked_div(&q_minus_1()).unwrap();
        assert!((&f - &f).is_zero());
        assert_eq!(&f - &f, QRat::zero());
    }

    #[test]
    fn specialization_examples() {
        let f = QRat::v_pow(1).checked_div(&q_minus_1()).unwrap();
        assert_eq!(f.specialize(&rat(2)).unwrap(), BigRational::new(2.into(), 3.into()));
        assert_eq!(QRat::one().specialize(&rat(7)).unwrap(), rat(1));
        // (q^2 - 1)/(q - 1) at q = 9
        let g = q_pow_minus_one(2).checked_div(&q_minus_1()).unwrap();
        assert_eq!(g.specialize(&rat(3)).unwrap(), rat(10));
        let h = QRat::one().checked_div(&q_minus_1()).unwrap();
        assert!(matches!(h.specialize(&rat(1)), Err(CoeffError::Pole { .. })));
    }
}
