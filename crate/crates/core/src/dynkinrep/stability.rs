use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::diagram::{positive_roots, DynkinQuiver};
use super::rep::indecomposable;
use super::RepError;
use crate::qtorus::{eval_word, skew_from_quiver, ExpVec, QSeries, Word};

/// Exact central charge: `Z(S_i) = x_i + i y_i` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralCharge {
    z: Vec<(BigRational, BigRational)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargeJson {
    #[serde(rename = "Z")]
    pub z: Vec<[String; 2]>,
}

fn parse_rat(s: &str) -> Result<BigRational, RepError> {
    s.trim().parse::<BigRational>().map_err(|_| RepError::Input(format!("bad rational {s:?}")))
}

impl CentralCharge {
    /// Charges of the simples; every charge must lie in the upper half plane
    /// or on the positive real axis.
    pub fn new(z: Vec<(BigRational, BigRational)>) -> Result<Self, RepError> {
        let n = z.len();
        for (i, (x, y)) in z.iter().enumerate() {
            if y.is_negative() || (y.is_zero() && !x.is_positive()) {
                return Err(RepError::BadCharge(ExpVec::unit(n, i)));
            }
        }
        Ok(Self { z })
    }

    pub fn from_ints(z: &[(i64, i64)]) -> Result<Self, RepError> {
        Self::new(z.iter().map(|&(x, y)| (BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))).collect())
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn simples(&self) -> &[(BigRational, BigRational)] {
        &self.z
    }

    /// `Z(alpha) = sum alpha_i Z(S_i)`.
    pub fn of(&self, alpha: &ExpVec) -> (BigRational, BigRational) {
        let mut x = BigRational::zero();
        let mut y = BigRational::zero();
        for (a, (zx, zy)) in alpha.0.iter().zip(&self.z) {
            let a = BigRational::from_integer((*a).into());
            x += &a * zx;
            y += &a * zy;
        }
        (x, y)
    }

    /// Compares phases of two nonzero classes in the half plane.
    pub fn phase_cmp(&self, a: &ExpVec, b: &ExpVec) -> Ordering {
        let c = cross(&self.of(a), &self.of(b));
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    }

    pub fn to_json(&self) -> ChargeJson {
        ChargeJson { z: self.z.iter().map(|(x, y)| [x.to_string(), y.to_string()]).collect() }
    }

    pub fn from_json(j: &ChargeJson) -> Result<Self, RepError> {
        Self::new(j.z.iter().map(|[x, y]| Ok((parse_rat(x)?, parse_rat(y)?))).collect::<Result<_, RepError>>()?)
    }
}

/// `Im(conj(a) b)`: positive iff the phase of `a` is below that of `b`.
fn cross(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn checked_charge(z: &CentralCharge, alpha: &ExpVec) -> Result<(BigRational, BigRational), RepError> {
    if alpha.len() != z.n() {
        return Err(RepError::Input(format!("{alpha} has {} entries, the charge has {}", alpha.len(), z.n())));
    }
    if alpha.is_zero() || !alpha.is_nonneg() {
        return Err(RepError::BadCharge(alpha.clone()));
    }
    Ok(z.of(alpha))
}

/// `arg Z(alpha) < arg Z(beta)`.
pub fn phase_lt(z: &CentralCharge, alpha: &ExpVec, beta: &ExpVec) -> Result<bool, RepError> {
    let (a, b) = (checked_charge(z, alpha)?, checked_charge(z, beta)?);
    Ok(cross(&a, &b).is_positive())
}

fn proportional(a: &ExpVec, b: &ExpVec) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| a.0[i] * b.0[j] == a.0[j] * b.0[i]))
}

pub(crate) fn first_collinear_pair(z: &CentralCharge, roots: &[ExpVec]) -> Option<(ExpVec, ExpVec)> {
    let charges: Vec<_> = roots.iter().map(|r| z.of(r)).collect();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if cross(&charges[i], &charges[j]).is_zero() && !proportional(&roots[i], &roots[j]) {
                return Some((roots[i].clone(), roots[j].clone()));
            }
        }
    }
    None
}

/// No two non-proportional roots have collinear charges.
pub fn is_generic(z: &CentralCharge, roots: &[ExpVec]) -> bool {
    first_collinear_pair(z, roots).is_none()
}

fn check_generic(d: &DynkinQuiver, z: &CentralCharge) -> Result<Vec<ExpVec>, RepError> {
    if z.n() != d.n() {
        return Err(RepError::Input(format!("charge has {} entries for a quiver on {} vertices", z.n(), d.n())));
    }
    let roots = positive_roots(d);
    match first_collinear_pair(z, &roots) {
        Some((a, b)) => Err(RepError::NotGeneric(a, b)),
        None => Ok(roots),
    }
}

/// Dimension vectors of the proper nonzero subrepresentations of each
/// indecomposable, computed over `F_2`.
pub fn root_subreps(d: &DynkinQuiver) -> Result<Vec<(ExpVec, BTreeSet<ExpVec>)>, RepError> {
    positive_roots(d)
        .into_iter()
        .map(|a| {
            let subs = indecomposable(d, &a, 2)?.subrep_dims()?;
            Ok((a, subs))
        })
        .collect()
}

/// Stable roots from precomputed subrepresentation data, by decreasing phase.
pub fn stables_from(
    d: &DynkinQuiver,
    z: &CentralCharge,
    data: &[(ExpVec, BTreeSet<ExpVec>)],
) -> Result<Vec<ExpVec>, RepError> {
    check_generic(d, z)?;
    let mut out: Vec<ExpVec> = data
        .iter()
        .filter(|(a, subs)| {
            let za = z.of(a);
            subs.iter().all(|e| cross(&z.of(e), &za).is_positive())
        })
        .map(|(a, _)| a.clone())
        .collect();
    out.sort_by(|a, b| z.phase_cmp(b, a));
    Ok(out)
}

/// Stable indecomposables for a generic charge, sorted by strictly
/// decreasing phase.
pub fn stables(d: &DynkinQuiver, z: &CentralCharge) -> Result<Vec<ExpVec>, RepError> {
    check_generic(d, z)?;
    stables_from(d, z, &root_subreps(d)?)
}

/// `E(y^{a_1}) ... E(y^{a_k})` over the stables in decreasing phase.
pub fn reineke_word(d: &DynkinQuiver, z: &CentralCharge) -> Result<Word, RepError> {
    Ok(Word::from_exps(stables(d, z)?.into_iter().map(|a| (a, 1))))
}

pub fn reineke_product(d: &DynkinQuiver, z: &CentralCharge, depth: u32) -> Result<QSeries, RepError> {
    let form = skew_from_quiver(d.quiver())?;
    Ok(eval_word(&form, &reineke_word(d, z)?, depth)?)
}

/// A seeded random generic charge with `x` in `[-20, 20]` and `y` in `[1, 20]`.
pub fn random_generic_charge(d: &DynkinQuiver, seed: u64) -> Result<CentralCharge, RepError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let roots = positive_roots(d);
    for _ in 0..1000 {
        let z: Vec<(i64, i64)> = (0..d.n()).map(|_| (rng.gen_range(-20..=20), rng.gen_range(1..=20))).collect();
        let z = CentralCharge::from_ints(&z)?;
        if is_generic(&z, &roots) {
            return Ok(z);
        }
    }
    Err(RepError::Internal("no generic charge found in 1000 draws".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkinrep::DynkinType;

    fn a2() -> DynkinQuiver {
        DynkinQuiver::standard(DynkinType::A(2)).unwrap()
    }

    fn e(v: &[i64]) -> ExpVec {
        ExpVec(v.to_vec())
    }

    #[test]
    fn phase_comparisons() {
        let z = CentralCharge::from_ints(&[(1, 1), (-1, 1)]).unwrap();
        assert!(phase_lt(&z, &e(&[1, 0]), &e(&[0, 1])).unwrap());
        assert!(!phase_lt(&z, &e(&[1, 0]), &e(&[2, 0])).unwrap());
        assert!(!phase_lt(&z, &e(&[2, 0]), &e(&[1, 0])).unwrap());
        let z = CentralCharge::from_ints(&[(-1, 1), (1, 1)]).unwrap();
        assert!(phase_lt(&z, &e(&[0, 1]), &e(&[1, 1])).unwrap());
        assert!(phase_lt(&z, &e(&[1, 1]), &e(&[1, 0])).unwrap());
        assert!(phase_lt(&z, &e(&[0, 0]), &e(&[1, 0])).is_err());
        // argument zero is allowed, pi is not
        assert!(CentralCharge::from_ints(&[(1, 0), (0, 1)]).is_ok());
        assert!(CentralCharge::from_ints(&[(-1, 0), (0, 1)]).is_err());
        assert!(CentralCharge::from_ints(&[(0, 0), (0, 1)]).is_err());
    }

    #[test]
    fn genericity() {
        let roots = positive_roots(&a2());
        assert!(is_generic(&CentralCharge::from_ints(&[(-1, 1), (1, 1)]).unwrap(), &roots));
        assert!(!is_generic(&CentralCharge::from_ints(&[(1, 1), (1, 1)]).unwrap(), &roots));
        let a3 = DynkinQuiver::standard(DynkinType::A(3)).unwrap();
        let roots = positive_roots(&a3);
        // Z(e1 + e2 + e3) = (1, 3) is not collinear with any other root charge
        let z = CentralCharge::from_ints(&[(-2, 1), (0, 1), (3, 1)]).unwrap();
        assert!(is_generic(&z, &roots));
        // Z(e1 + e3) = (0, 2) is collinear with Z(e2) = (0, 1)
        let z = CentralCharge::from_ints(&[(-2, 1), (0, 1), (2, 1)]).unwrap();
        assert!(!is_generic(&z, &roots));
    }

    #[test]
    fn a2_stables_for_both_charges() {
        let z = CentralCharge::from_ints(&[(-1, 1), (1, 1)]).unwrap();
        assert_eq!(stables(&a2(), &z).unwrap(), vec![e(&[1, 0]), e(&[0, 1])]);
        let z = CentralCharge::from_ints(&[(1, 1), (-1, 1)]).unwrap();
        assert_eq!(stables(&a2(), &z).unwrap(), vec![e(&[0, 1]), e(&[1, 1]), e(&[1, 0])]);
        let z = CentralCharge::from_ints(&[(1, 1), (1, 1)]).unwrap();
        assert!(matches!(stables(&a2(), &z), Err(RepError::NotGeneric(..))));
        let a1 = DynkinQuiver::standard(DynkinType::A(1)).unwrap();
        assert_eq!(stables(&a1, &CentralCharge::from_ints(&[(3, 2)]).unwrap()).unwrap(), vec![e(&[1])]);
    }

    #[test]
    fn a2_reineke_words_are_pentagon_sides() {
        let z = CentralCharge::from_ints(&[(-1, 1), (1, 1)]).unwrap();
        assert_eq!(reineke_word(&a2(), &z).unwrap().to_string(), "E(1,0) E(0,1)");
        let z = CentralCharge::from_ints(&[(1, 1), (-1, 1)]).unwrap();
        assert_eq!(reineke_word(&a2(), &z).unwrap().to_string(), "E(0,1) E(1,1) E(1,0)");
    }

    #[test]
    fn simples_are_stable_and_phases_decrease() {
        let d = DynkinQuiver::standard(DynkinType::D(4)).unwrap();
        let data = root_subreps(&d).unwrap();
        for seed in 0..4 {
            let z = random_generic_charge(&d, seed).unwrap();
            let st = stables_from(&d, &z, &data).unwrap();
            for i in 0..4 {
                assert!(st.contains(&ExpVec::unit(4, i)));
            }
            for w in st.windows(2) {
                assert!(phase_lt(&z, &w[1], &w[0]).unwrap());
            }
        }
    }

    #[test]
    fn charge_json_round_trip() {
        let z = CentralCharge::from_ints(&[(-1, 1), (1, 2)]).unwrap();
        let j = z.to_json();
        assert_eq!(serde_json::to_string(&j).unwrap(), r#"{"Z":[["-1","1"],["1","2"]]}"#);
        assert_eq!(CentralCharge::from_json(&j).unwrap(), z);
        let bad: ChargeJson = serde_json::from_str(r#"{"Z":[["1/0","1"]]}"#).unwrap();
        assert!(CentralCharge::from_json(&bad).is_err());
    }
}
