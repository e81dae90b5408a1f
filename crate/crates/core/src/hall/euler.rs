use crate::dynkinrep::{ext1_dim, hom_dim, indecomposable, positive_roots, DynkinQuiver, RepError};
use crate::qtorus::{skew_from_quiver, ExpVec};
use crate::quiver::Quiver;

/// `<a, b> = sum a_i b_i - sum_{arrows i -> j} a_i b_j`.
///
/// For representations of `Q^op` this is `dim Hom(V_b, V_a) - dim Ext^1(V_b, V_a)`:
/// the arguments trade places against the homological form.
pub fn euler_form(q: &Quiver, a: &ExpVec, b: &ExpVec) -> i64 {
    let mut s: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
    for (i, j, m) in q.arrow_list() {
        s -= m as i64 * a.0[i] * b.0[j];
    }
    s
}

/// A pair where the formula and the homological form disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerMismatch {
    pub alpha: ExpVec,
    pub beta: ExpVec,
    pub formula: i64,
    pub hom: usize,
    pub ext: usize,
}

/// Compares [`euler_form`] with `dim Hom - dim Ext^1` on every pair of
/// indecomposables over `F_p`.
pub fn validate_euler_form(d: &DynkinQuiver, p: u32) -> Result<Option<EulerMismatch>, RepError> {
    let roots = positive_roots(d);
    let reps = roots.iter().map(|a| indecomposable(d, a, p)).collect::<Result<Vec<_>, _>>()?;
    for (i, a) in roots.iter().enumerate() {
        for (j, b) in roots.iter().enumerate() {
            let (hom, ext) = (hom_dim(&reps[j], &reps[i])?, ext1_dim(&reps[j], &reps[i])?);
            let formula = euler_form(d.quiver(), a, b);
            if formula != hom as i64 - ext as i64 {
                return Ok(Some(EulerMismatch { alpha: a.clone(), beta: b.clone(), formula, hom, ext }));
            }
        }
    }
    Ok(None)
}

/// Whether `<e_j, e_i> - <e_i, e_j>` is the skew form of the quiver for all `i, j`.
pub fn skew_matches_euler(q: &Quiver) -> Result<bool, RepError> {
    let form = skew_from_quiver(q)?;
    let n = q.n();
    Ok((0..n).all(|i| {
        (0..n).all(|j| {
            let (ei, ej) = (ExpVec::unit(n, i), ExpVec::unit(n, j));
            euler_form(q, &ej, &ei) - euler_form(q, &ei, &ej) == form.entry(i, j)
        })
    }))
}
