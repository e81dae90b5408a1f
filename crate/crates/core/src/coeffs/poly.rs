//! Sparse Laurent polynomials in `v = q^{1/2}` over the rationals, plus the
//! one-variable Euclidean machinery used to keep fractions reduced.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A finite sum `sum_k c_k v^k` with `k` ranging over all integers.
///
/// Terms are kept sorted by ascending exponent and no zero coefficient is
/// ever stored, so structural equality is value equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct HalfLaurent {
    terms: Vec<(i64, BigRational)>,
}

impl fmt::Debug for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HalfLaurent({})", super::render::render_laurent(self))
    }
}

impl HalfLaurent {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    pub fn monomial(exp: i64, coeff: BigRational) -> Self {
        if coeff.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(exp, coeff)] }
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    /// Builds a value from arbitrary `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, BigRational)>>(iter: I) -> Self {
        let mut terms: Vec<(i64, BigRational)> = iter.into_iter().collect();
        terms.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i64, BigRational)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc += c,
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Self { terms: out }
    }

    /// Dense coefficients (ascending) starting at exponent `shift`.
    pub fn from_dense(shift: i64, coeffs: Vec<BigRational>) -> Self {
        let terms = coeffs
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (shift + i as i64, c))
            .collect();
        Self { terms }
    }

    pub fn terms(&self) -> &[(i64, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0 == 0)
    }

    /// Single term `c v^k`.
    pub fn as_monomial(&self) -> Option<(i64, &BigRational)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((*e, c)),
            _ => None,
        }
    }

    pub fn low_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn high_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.last().map(|(_, c)| c)
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    /// Multiplies by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match ea.cmp(eb) {
                Ordering::Less => {
                    out.push((*ea, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*eb, cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = ca + cb;
                    if !s.is_zero() {
                        out.push((*ea, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Self { terms: out }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if let Some((e, c)) = self.as_monomial() {
            return other.shift(e).scale(c);
        }
        if let Some((e, c)) = other.as_monomial() {
            return self.shift(e).scale(c);
        }
        let lo = self.terms[0].0 + other.terms[0].0;
        let hi = self.high_exp().unwrap() + other.high_exp().unwrap();
        let mut dense = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        Self::from_dense(lo, dense)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Evaluates at `v = t`. Returns `None` when `t = 0` and a negative power
    /// is present.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        if t.is_zero() && self.low_exp().is_some_and(|e| e < 0) {
            return None;
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * pow_rat(t, *e);
        }
        Some(acc)
    }

    /// Dense ascending coefficients from exponent `low_exp()`.
    pub(crate) fn to_dense(&self) -> (i64, Vec<BigRational>) {
        let Some(lo) = self.low_exp() else {
            return (0, Vec::new());
        };
        let hi = self.high_exp().unwrap();
        let mut dense = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        (lo, dense)
    }
}

pub(crate) fn pow_rat(t: &BigRational, e: i64) -> BigRational {
    let base = if e < 0 { t.recip() } else { t.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

// --- dense integer polynomials, used only for gcd and exact division ---

/// Ascending coefficients over `Z`, trailing zeros trimmed.
type ZPoly = Vec<BigInt>;

fn trim(p: &mut ZPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &ZPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(mut p: ZPoly) -> ZPoly {
    trim(&mut p);
    let c = content(&p);
    if !c.is_zero() && !c.is_one() {
        for x in p.iter_mut() {
            *x /= &c;
        }
    }
    if p.last().is_some_and(|c| c.is_negative()) {
        for x in p.iter_mut() {
            *x = -&*x;
        }
    }
    p
}

/// Clears denominators of a dense rational polynomial; the result is
/// primitive with positive leading coefficient.
fn to_primitive_z(dense: &[BigRational]) -> ZPoly {
    let l = dense.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let p: ZPoly = dense.iter().map(|c| (c * BigRational::from_integer(l.clone())).to_integer()).collect();
    primitive(p)
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn prem(mut a: ZPoly, b: &ZPoly) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    trim(&mut a);
    while !a.is_empty() && a.len() > db {
        let da = a.len() - 1;
        let la = a[da].clone();
        for x in a.iter_mut() {
            *x *= lb;
        }
        let off = da - db;
        for (i, bc) in b.iter().enumerate() {
            a[off + i] -= &la * bc;
        }
        trim(&mut a);
    }
    a
}

fn zgcd(a: ZPoly, b: ZPoly) -> ZPoly {
    let (mut a, mut b) = (primitive(a), primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = primitive(prem(a, &b));
        a = b;
        b = r;
    }
    a
}

/// Monic gcd over `Q` of two polynomials given in dense ascending form
/// (index = exponent). Either input may be zero; gcd(0, 0) = 0.
pub(crate) fn gcd_dense(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let za = to_primitive_z(a);
    let zb = to_primitive_z(b);
    let g = match (za.is_empty(), zb.is_empty()) {
        (true, true) => return Vec::new(),
        (true, false) => zb,
        (false, true) => za,
        _ => zgcd(za, zb),
    };
    let lead = BigRational::from_integer(g.last().unwrap().clone());
    g.into_iter().map(|c| BigRational::from_integer(c) / &lead).collect()
}

/// Quotient and remainder over `Q` in dense ascending form.
pub(crate) fn div_rem_dense(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r: Vec<BigRational> = a.to_vec();
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    let db = b.len() - 1;
    let lb = &b[db];
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let dr = r.len() - 1;
        let f = &r[dr] / lb;
        let off = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[off + i] -= &f * bc;
        }
        q[off] = f;
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    (q, r)
}
