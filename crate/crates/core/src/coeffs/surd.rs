use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::HalfLaurent;
use super::qrat::{rat_pow, QRat};
use super::CoeffError;

/// A value `a + b * sqrt(q)` for a fixed positive integer `q`.
///
/// This is what an element of `Q(q^{1/2})` becomes once `q` is fixed to a
/// prime power: when `q` is not a perfect square the half power stays
/// symbolic, otherwise `b` is folded into `a` and stays zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SurdValue {
    q: BigInt,
    a: BigRational,
    b: BigRational,
}

fn exact_sqrt(q: &BigInt) -> Option<BigInt> {
    let s = q.sqrt();
    (&s * &s == *q).then_some(s)
}

impl SurdValue {
    pub fn new(q: BigInt, a: BigRational, b: BigRational) -> Self {
        assert!(q.is_positive(), "radicand must be positive");
        match exact_sqrt(&q) {
            Some(s) if !b.is_zero() => {
                let a = a + b * BigRational::from_integer(s);
                Self { q, a, b: BigRational::zero() }
            }
            _ => Self { q, a, b },
        }
    }

    pub fn rational(q: BigInt, a: BigRational) -> Self {
        Self::new(q, a, BigRational::zero())
    }

    pub fn zero(q: BigInt) -> Self {
        Self::rational(q, BigRational::zero())
    }

    pub fn one(q: BigInt) -> Self {
        Self::rational(q, BigRational::one())
    }

    /// `(q^{1/2})^k`.
    pub fn half_power(q: BigInt, k: i64) -> Self {
        let qq = BigRational::from_integer(q.clone());
        let e = k.div_euclid(2);
        let whole = rat_pow(&qq, e);
        if k.rem_euclid(2) == 0 {
            Self::rational(q, whole)
        } else {
            Self::new(q, BigRational::zero(), whole)
        }
    }

    pub fn radicand(&self) -> &BigInt {
        &self.q
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Squared norm `a^2 - q b^2`; zero only for the zero value when `q` is
    /// not a square.
    fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(self.q.clone()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::new(self.q.clone(), &self.a / &n, -&self.b / &n))
    }

    fn eval_laurent(p: &HalfLaurent, q: &BigInt) -> Self {
        p.terms().iter().fold(Self::zero(q.clone()), |acc, (e, c)| {
            let t = Self::half_power(q.clone(), *e);
            acc + Self::new(q.clone(), &t.a * c, &t.b * c)
        })
    }

    /// Specializes `f` at `q = radicand`, keeping `q^{1/2}` symbolic.
    pub fn from_qrat(f: &QRat, q: &BigInt) -> Result<Self, CoeffError> {
        let n = Self::eval_laurent(f.numer(), q);
        let d = Self::eval_laurent(f.denom(), q);
        let dinv = d.inv().map_err(|_| CoeffError::Pole { at: format!("q={q}") })?;
        Ok(&n * &dinv)
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.q, other.q, "surd values over different radicands");
    }
}

impl fmt::Display for SurdValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}*sqrt({})", self.b, self.q)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.q)
        }
    }
}

impl<'a> Add<&'a SurdValue> for &'a SurdValue {
    type Output = SurdValue;
    fn add(self, rhs: &SurdValue) -> SurdValue {
        self.check_same(rhs);
        SurdValue::new(self.q.clone(), &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Add for SurdValue {
    type Output = SurdValue;
    fn add(self, rhs: SurdValue) -> SurdValue {
        &self + &rhs
    }
}

impl<'a> Sub<&'a SurdValue> for &'a SurdValue {
    type Output = SurdValue;
    fn sub(self, rhs: &SurdValue) -> SurdValue {
        self + &(-rhs)
    }
}

impl Neg for &SurdValue {
    type Output = SurdValue;
    fn neg(self) -> SurdValue {
        SurdValue::new(self.q.clone(), -&self.a, -&self.b)
    }
}

impl<'a> Mul<&'a SurdValue> for &'a SurdValue {
    type Output = SurdValue;
    fn mul(self, rhs: &SurdValue) -> SurdValue {
        self.check_same(rhs);
        let q = BigRational::from_integer(self.q.clone());
        let a = &self.a * &rhs.a + q * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        SurdValue::new(self.q.clone(), a, b)
    }
}
