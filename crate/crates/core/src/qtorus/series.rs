use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::skew::{ExpVec, SkewForm};
use super::SeriesError;
use crate::coeffs::QRat;

/// A truncated element `y^offset * sum_gamma c_gamma y^gamma` of the formal
/// quantum affine space, where `gamma` runs over `N^n` with `|gamma| <= depth`.
///
/// The offset may have negative entries; it does not count toward the
/// truncation degree.
#[derive(Clone, Debug)]
pub struct QSeries {
    form: SkewForm,
    offset: ExpVec,
    depth: u32,
    terms: BTreeMap<ExpVec, QRat>,
}

/// First monomial at which two series disagree, written in a common frame
/// `y^frame * y^exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub frame: ExpVec,
    pub exponent: ExpVec,
    pub left: QRat,
    pub right: QRat,
}

impl Mismatch {
    /// Absolute exponent `frame + exponent`.
    pub fn monomial(&self) -> ExpVec {
        self.frame.add(&self.exponent)
    }

    pub fn degree(&self) -> i64 {
        self.exponent.degree()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Mismatch),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn mismatch(&self) -> Option<&Mismatch> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(m) => Some(m),
        }
    }
}

/// All `gamma in N^n` with `|gamma| <= depth`, ordered by degree then
/// lexicographically.
pub fn cone_exponents(n: usize, depth: u32) -> Vec<ExpVec> {
    fn rec(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<ExpVec>) {
        if cur.len() == n {
            out.push(ExpVec(cur.clone()));
            return;
        }
        for x in 0..=left {
            cur.push(x);
            rec(n, left - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, depth as i64, &mut Vec::with_capacity(n), &mut out);
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out
}

impl QSeries {
    pub fn one(form: SkewForm, depth: u32) -> Self {
        let n = form.dim();
        let mut terms = BTreeMap::new();
        terms.insert(ExpVec::zero(n), QRat::one());
        Self { form, offset: ExpVec::zero(n), depth, terms }
    }

    /// The monomial `c * y^exp`; `exp` may have negative entries.
    pub fn monomial(form: SkewForm, depth: u32, exp: ExpVec, c: QRat) -> Result<Self, SeriesError> {
        form.check_len(&exp)?;
        let n = form.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ExpVec::zero(n), c);
        }
        Ok(Self { form, offset: exp, depth, terms })
    }

    /// Builds `y^offset * sum c_gamma y^gamma`, dropping zero coefficients and
    /// terms beyond the truncation degree.
    pub fn from_terms<I>(form: SkewForm, depth: u32, offset: ExpVec, terms: I) -> Result<Self, SeriesError>
    where
        I: IntoIterator<Item = (ExpVec, QRat)>,
    {
        form.check_len(&offset)?;
        let mut map: BTreeMap<ExpVec, QRat> = BTreeMap::new();
        for (g, c) in terms {
            form.check_len(&g)?;
            if !g.is_nonneg() {
                return Err(SeriesError::NegativeExponent(g));
            }
            if g.degree() > depth as i64 {
                continue;
            }
            let slot = map.entry(g).or_insert_with(QRat::zero);
            *slot = &*slot + &c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Self { form, offset, depth, terms: map })
    }

    pub fn form(&self) -> &SkewForm {
        &self.form
    }

    pub fn offset(&self) -> &ExpVec {
        &self.offset
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Cone terms `gamma -> c_gamma`, relative to the offset.
    pub fn terms(&self) -> &BTreeMap<ExpVec, QRat> {
        &self.terms
    }

    pub fn coeff(&self, gamma: &ExpVec) -> QRat {
        self.terms.get(gamma).cloned().unwrap_or_else(QRat::zero)
    }

    pub fn is_one(&self) -> bool {
        self.offset.is_zero() && self.terms.len() == 1 && self.coeff(&ExpVec::zero(self.form.dim())).is_one()
    }

    fn check_compatible(&self, other: &Self) -> Result<(), SeriesError> {
        if self.form != other.form {
            return Err(SeriesError::FormMismatch);
        }
        if self.depth != other.depth {
            return Err(SeriesError::DepthMismatch { left: self.depth, right: other.depth });
        }
        Ok(())
    }

    pub fn scale(&self, c: &QRat) -> Self {
        let mut out = self.clone();
        out.terms = self.terms.iter().map(|(g, x)| (g.clone(), x * c)).filter(|(_, x)| !x.is_zero()).collect();
        out
    }

    /// `(y^a F)(y^b G) = q^{lambda(a,b)/2} y^{a+b} F' G` with
    /// `F'_gamma = q^{lambda(gamma, b)} F_gamma`.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_compatible(other)?;
        let form = &self.form;
        let b = &other.offset;
        let front = form.pair(&self.offset, b);
        let depth = self.depth as i64;
        let mut acc: BTreeMap<ExpVec, Vec<QRat>> = BTreeMap::new();
        for (g1, c1) in &self.terms {
            let d1 = g1.degree();
            let c1 = c1.mul_v_pow(2 * form.pair(g1, b) + front);
            for (g2, c2) in &other.terms {
                if d1 + g2.degree() > depth {
                    continue;
                }
                let c = (&c1 * c2).mul_v_pow(form.pair(g1, g2));
                acc.entry(g1.add(g2)).or_default().push(c);
            }
        }
        let terms = acc
            .into_iter()
            .filter_map(|(g, cs)| {
                let s = sum_qrat(cs);
                (!s.is_zero()).then_some((g, s))
            })
            .collect();
        Ok(Self { form: self.form.clone(), offset: self.offset.add(b), depth: self.depth, terms })
    }

    /// Two-sided inverse up to the truncation degree.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let n = self.form.dim();
        let zero = ExpVec::zero(n);
        let c0 = self.terms.get(&zero).ok_or(SeriesError::NotInvertible)?;
        let c0_inv = c0.inv()?;
        let mut g: BTreeMap<ExpVec, QRat> = BTreeMap::new();
        g.insert(zero.clone(), c0_inv.clone());
        let support: Vec<(&ExpVec, &QRat)> = self.terms.iter().filter(|(a, _)| !a.is_zero()).collect();
        for gamma in cone_exponents(n, self.depth).into_iter().skip(1) {
            let mut parts = Vec::new();
            for (alpha, fa) in &support {
                if !alpha.leq(&gamma) {
                    continue;
                }
                let rest = gamma.sub(alpha);
                if let Some(gr) = g.get(&rest) {
                    parts.push((*fa * gr).mul_v_pow(self.form.pair(alpha, &rest)));
                }
            }
            let s = sum_qrat(parts);
            if !s.is_zero() {
                g.insert(gamma, -(&s * &c0_inv));
            }
        }
        // f = y^a F, so f^{-1} = F^{-1} y^{-a} = y^{-a} G'
        // with G'_gamma = q^{lambda(gamma, -a)} G_gamma.
        let neg = self.offset.neg();
        let terms = g
            .into_iter()
            .map(|(gamma, c)| {
                let k = 2 * self.form.pair(&gamma, &neg);
                (gamma, c.mul_v_pow(k))
            })
            .collect();
        Ok(Self { form: self.form.clone(), offset: neg, depth: self.depth, terms })
    }

    /// `self^e` for any integer `e`.
    pub fn powi(&self, e: i64) -> Result<Self, SeriesError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.form.clone(), self.depth);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// Rewrites the series over a smaller offset `m <= offset`; terms pushed past
    /// the truncation degree are dropped.
    pub fn rebase(&self, m: &ExpVec) -> Result<Self, SeriesError> {
        self.form.check_len(m)?;
        if !m.leq(&self.offset) {
            return Err(SeriesError::BadRebase { from: self.offset.clone(), to: m.clone() });
        }
        let shift = self.offset.sub(m);
        let mut terms = BTreeMap::new();
        for (g, c) in &self.terms {
            let g2 = g.add(&shift);
            if g2.degree() > self.depth as i64 {
                continue;
            }
            // y^off y^g = q^{lambda(off,g)/2} y^{off+g} = q^{(lambda(off,g) - lambda(m,g2))/2} y^m y^{g2}
            let k = self.form.pair(&self.offset, g) - self.form.pair(m, &g2);
            terms.insert(g2, c.mul_v_pow(k));
        }
        Ok(Self { form: self.form.clone(), offset: m.clone(), depth: self.depth, terms })
    }

    /// Compares two series after moving both to their componentwise-minimum
    /// offset. The mismatch reported is the lowest-degree one.
    pub fn compare(&self, other: &Self) -> Result<Verdict, SeriesError> {
        self.check_compatible(other)?;
        let m = self.offset.meet(&other.offset);
        let a = self.rebase(&m)?;
        let b = other.rebase(&m)?;
        let mut keys: Vec<&ExpVec> = a.terms.keys().chain(b.terms.keys()).collect();
        keys.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.cmp(y)));
        keys.dedup();
        for k in keys {
            let (l, r) = (a.coeff(k), b.coeff(k));
            if l != r {
                return Ok(Verdict::Fails(Mismatch { frame: m, exponent: k.clone(), left: l, right: r }));
            }
        }
        Ok(Verdict::Holds)
    }

    /// Restricts to a smaller truncation degree.
    pub fn truncate(&self, depth: u32) -> Self {
        let mut out = self.clone();
        out.depth = depth.min(self.depth);
        out.terms.retain(|g, _| g.degree() <= out.depth as i64);
        out
    }

    pub fn to_json(&self) -> SeriesJson {
        SeriesJson {
            offset: self.offset.0.clone(),
            depth: self.depth,
            terms: self
                .terms
                .iter()
                .map(|(g, c)| TermJson { exp: g.0.clone(), coeff: c.to_string() })
                .collect(),
        }
    }

    pub fn from_json(form: SkewForm, j: &SeriesJson) -> Result<Self, SeriesError> {
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            terms.push((ExpVec(t.exp.clone()), t.coeff.parse::<QRat>()?));
        }
        Self::from_terms(form, j.depth, ExpVec(j.offset.clone()), terms)
    }
}

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        matches!(self.compare(other), Ok(Verdict::Holds))
    }
}

/// `{"offset": [..], "D": d, "terms": [{"exp": [..], "coeff": ".."}]}`,
/// terms in lexicographic exponent order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub offset: Vec<i64>,
    #[serde(rename = "D")]
    pub depth: u32,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coeff: String,
}

/// Pairwise summation keeps intermediate denominators small.
pub(crate) fn sum_qrat(mut xs: Vec<QRat>) -> QRat {
    if xs.is_empty() {
        return QRat::zero();
    }
    while xs.len() > 1 {
        let mut next = Vec::with_capacity(xs.len().div_ceil(2));
        let mut it = xs.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        xs = next;
    }
    xs.pop().unwrap()
}

/// Product of two series with matching form and depth.
pub fn series_mul(f: &QSeries, g: &QSeries) -> Result<QSeries, SeriesError> {
    f.mul(g)
}

pub fn series_inv(f: &QSeries) -> Result<QSeries, SeriesError> {
    f.inv()
}
