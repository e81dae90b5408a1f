use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::algebra::{HallAlgebra, HallElement, IsoClass};
use super::euler::euler_form;
use crate::coeffs::{QRat, SurdValue};
use crate::dynkinrep::{first_collinear_pair, indecomposable, CentralCharge, DynkinQuiver, RepError};
use crate::qtorus::{dilog_coeff, skew_from_quiver, ExpVec, QSeries, SeriesError};

/// A coefficient that differs once `q` is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecializedMismatch {
    pub exponent: ExpVec,
    pub left: SurdValue,
    pub right: SurdValue,
}

fn specialize(c: &QRat, q: &BigInt) -> Result<SurdValue, RepError> {
    SurdValue::from_qrat(c, q).map_err(|e| RepError::Series(SeriesError::Coeff(e)))
}

/// Compares two series after substituting `q`; `q^{1/2}` stays symbolic.
pub fn compare_at(a: &QSeries, b: &QSeries, q: &BigInt) -> Result<Option<SpecializedMismatch>, RepError> {
    let m = a.offset().meet(b.offset());
    let (a, b) = (a.rebase(&m)?, b.rebase(&m)?);
    let mut keys: Vec<&ExpVec> = a.terms().keys().chain(b.terms().keys()).collect();
    keys.sort_by(|x, y| x.degree().cmp(&y.degree()).then_with(|| x.cmp(y)));
    keys.dedup();
    for k in keys {
        let (l, r) = (specialize(&a.coeff(k), q)?, specialize(&b.coeff(k), q)?);
        if l != r {
            return Ok(Some(SpecializedMismatch { exponent: m.add(k), left: l, right: r }));
        }
    }
    Ok(None)
}

/// `[M] -> q^{<d,d>/2} y^d / |Aut M|` with `q = p^m`, extended linearly.
///
/// Only `m = 1` is available since representations live over the prime field.
/// The result keeps `q^{1/2}` symbolic; use [`compare_at`] with `q = p`.
pub fn integrate(alg: &HallAlgebra, h: &HallElement, m: u32) -> Result<QSeries, RepError> {
    if m != 1 {
        return Err(RepError::Input(format!("q = p^{m} needs the field F_(p^{m}); only prime fields are supported")));
    }
    let q = alg.quiver().quiver();
    let form = skew_from_quiver(q)?;
    let depth = alg.bound().degree() as u32;
    let mut terms: BTreeMap<ExpVec, QRat> = BTreeMap::new();
    for (c, x) in &h.terms {
        let d = alg.dim(c);
        let aut = BigRational::from_integer(alg.aut_order(c)?.into());
        let coeff = QRat::v_pow(euler_form(q, &d, &d)).scale(&(x / aut));
        let slot = terms.entry(d).or_insert_with(QRat::zero);
        *slot = &*slot + &coeff;
    }
    Ok(QSeries::from_terms(form, depth, ExpVec::zero(q.n()), terms)?)
}

/// Checks `int(x y) = int(x) int(y)` on every pair of classes whose
/// dimensions add up to something within the bound; returns the first
/// failing pair.
pub fn check_integration_homomorphism(alg: &HallAlgebra) -> Result<Option<(IsoClass, IsoClass)>, RepError> {
    let q = BigInt::from(alg.p());
    let images: Vec<QSeries> =
        alg.classes().iter().map(|c| integrate(alg, &HallElement::class(c.clone()), 1)).collect::<Result<_, _>>()?;
    for (i, x) in alg.classes().iter().enumerate() {
        for (j, y) in alg.classes().iter().enumerate() {
            if !alg.dim(x).add(&alg.dim(y)).leq(alg.bound()) {
                continue;
            }
            let prod = alg.mul(&HallElement::class(x.clone()), &HallElement::class(y.clone()));
            let lhs = integrate(alg, &prod, 1)?;
            let rhs = images[i].mul(&images[j])?;
            if compare_at(&lhs, &rhs, &q)?.is_some() {
                return Ok(Some((x.clone(), y.clone())));
            }
        }
    }
    Ok(None)
}

/// For `M = V(alpha)` with `End M = F_p`: the coefficient of `y^{n alpha}`
/// in `int sum_n [M^n]` against the `n`-th dilogarithm coefficient at `q = p`,
/// for `n <= n_max`. Returns the first failing `n` with both values.
pub fn verify_exp_sum(
    d: &DynkinQuiver,
    alpha: &ExpVec,
    p: u32,
    n_max: u32,
) -> Result<Option<(u32, SurdValue, SurdValue)>, RepError> {
    let m = indecomposable(d, alpha, p)?;
    let q = BigInt::from(p);
    let self_pair = euler_form(d.quiver(), alpha, alpha);
    for n in 0..=n_max {
        let aut = m.power(n as usize)?.aut_order()?;
        let n = n as i64;
        let lhs = QRat::v_pow(n * n * self_pair).scale(&BigRational::new(BigInt::one(), aut.into()));
        let rhs = dilog_coeff(n as u32);
        let (l, r) = (specialize(&lhs, &q)?, specialize(&rhs, &q)?);
        if l != r {
            return Ok(Some((n as u32, l, r)));
        }
    }
    Ok(None)
}

/// Both sides of the Harder-Narasimhan identity in the truncated Hall algebra.
#[derive(Clone, Debug)]
pub struct HnIdentity {
    pub left: HallElement,
    pub right: HallElement,
    /// Semistable classes grouped by phase, in decreasing phase order.
    pub phases: Vec<Vec<IsoClass>>,
}

impl HnIdentity {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }

    /// First class where the sides differ.
    pub fn first_difference(&self) -> Option<(IsoClass, BigRational, BigRational)> {
        let mut keys: Vec<&IsoClass> = self.left.terms.keys().chain(self.right.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .map(|k| (k.clone(), self.left.coeff(k), self.right.coeff(k)))
            .find(|(_, a, b)| a != b)
    }
}

/// `sum_[M] [M]` against the product, over phases in decreasing order, of the
/// sums of semistable classes of each phase.
pub fn verify_hn_identity(alg: &HallAlgebra, z: &CentralCharge) -> Result<HnIdentity, RepError> {
    let n = alg.quiver().n();
    if z.n() != n {
        return Err(RepError::Input(format!("charge has {} entries for a quiver on {n} vertices", z.n())));
    }
    if let Some((a, b)) = first_collinear_pair(z, alg.roots()) {
        return Err(RepError::NotGeneric(a, b));
    }
    let mut semistable: Vec<(ExpVec, IsoClass)> = Vec::new();
    for c in alg.classes() {
        if c.is_zero() {
            continue;
        }
        let d = alg.dim(c);
        let subs = alg.representative(c)?.subrep_dims()?;
        if subs.iter().all(|e| z.phase_cmp(e, &d).is_le()) {
            semistable.push((d, c.clone()));
        }
    }
    semistable.sort_by(|(a, _), (b, _)| z.phase_cmp(b, a));
    let mut phases: Vec<Vec<IsoClass>> = Vec::new();
    let mut last: Option<ExpVec> = None;
    for (d, c) in semistable {
        match &last {
            Some(l) if z.phase_cmp(l, &d).is_eq() => phases.last_mut().expect("group").push(c),
            _ => phases.push(vec![c]),
        }
        last = Some(d);
    }
    let unit = HallElement::class(IsoClass::zero(alg.roots().len()));
    let mut right = unit.clone();
    for group in &phases {
        let mut factor = unit.clone();
        for c in group {
            factor.terms.insert(c.clone(), BigRational::one());
        }
        right = alg.mul(&right, &factor);
    }
    Ok(HnIdentity { left: alg.total(), right, phases })
}
