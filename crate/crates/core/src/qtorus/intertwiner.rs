use super::dilog::dilog;
use super::series::QSeries;
use super::skew::{ExpVec, SkewForm};
use super::SeriesError;
use crate::coeffs::QRat;
use crate::quiver::Quiver;

fn check_vertices(q: &Quiver, k: usize, i: usize) -> Result<(), SeriesError> {
    for v in [k, i] {
        if v >= q.n() {
            return Err(SeriesError::VertexOutOfRange { vertex: v + 1, n: q.n() });
        }
    }
    q.check_loop_free()?;
    q.check_no_two_cycle_at(k)?;
    Ok(())
}

/// Image of `y'_i` under the change of lattice at vertex `k`, as
/// `(power of q^{1/2}, exponent)` of a single normal-ordered monomial.
///
/// `q^{-m^2/2} y_i y_k^m` is rewritten with the commutation rule, which gives
/// the power `m lambda(e_i, e_k) - m^2` (zero when there is no 2-cycle).
pub fn phi_plus_image(q: &Quiver, k: usize, i: usize) -> Result<(i64, ExpVec), SeriesError> {
    check_vertices(q, k, i)?;
    let n = q.n();
    if i == k {
        return Ok((0, ExpVec::unit(n, k).neg()));
    }
    let m = q.arrows(i, k) as i64;
    if m == 0 {
        return Ok((0, ExpVec::unit(n, i)));
    }
    let form = SkewForm::from_quiver(q)?;
    let lam = form.entry(i, k);
    Ok((m * lam - m * m, ExpVec::unit(n, i).add(&ExpVec::unit(n, k).scale(m))))
}

/// Closed form of `Ad(E(y_k))(phi_+(y'_i))`, truncated at `depth`.
pub fn fg_generator_image(q: &Quiver, k: usize, i: usize, depth: u32) -> Result<QSeries, SeriesError> {
    check_vertices(q, k, i)?;
    let form = SkewForm::from_quiver(q)?;
    let n = q.n();
    let (ek, ei) = (ExpVec::unit(n, k), ExpVec::unit(n, i));
    if i == k {
        return QSeries::monomial(form, depth, ek.neg(), QRat::one());
    }
    let r = q.arrows(k, i) as i64;
    let s = q.arrows(i, k) as i64;
    let linear = |half: i64| {
        QSeries::from_terms(
            form.clone(),
            depth,
            ExpVec::zero(n),
            [(ExpVec::zero(n), QRat::one()), (ek.clone(), QRat::v_pow(half))],
        )
    };
    let mut prod = QSeries::one(form.clone(), depth);
    if r > 0 {
        for j in 1..=r {
            prod = prod.mul(&linear(2 * j - 1)?)?;
        }
        QSeries::monomial(form, depth, ei, QRat::one())?.mul(&prod)
    } else if s > 0 {
        for j in 1..=s {
            prod = prod.mul(&linear(1 - 2 * j)?)?;
        }
        // y_i y_k^s q^{-s^2/2} = q^{(s lambda(e_i,e_k) - s^2)/2} y^{e_i + s e_k}
        let half = s * form.entry(i, k) - s * s;
        let mono = QSeries::monomial(form, depth, ei.add(&ek.scale(s)), QRat::v_pow(half))?;
        mono.mul(&prod.inv()?)
    } else {
        QSeries::monomial(form, depth, ei, QRat::one())
    }
}

/// The same image computed as `E(y_k) phi_+(y'_i) E(y_k)^{-1}` by series
/// multiplication.
pub fn fg_generator_image_by_conjugation(q: &Quiver, k: usize, i: usize, depth: u32) -> Result<QSeries, SeriesError> {
    let (half, exp) = phi_plus_image(q, k, i)?;
    let form = SkewForm::from_quiver(q)?;
    let e = dilog(&form, &QRat::one(), &ExpVec::unit(q.n(), k), depth)?;
    let mono = QSeries::monomial(form, depth, exp, QRat::v_pow(half))?;
    e.mul(&mono)?.mul(&e.inv()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::QRat;

    #[test]
    fn phi_plus_cases() {
        let a2 = Quiver::linear_a(2);
        assert_eq!(phi_plus_image(&a2, 1, 1).unwrap(), (0, ExpVec(vec![0, -1])));
        assert_eq!(phi_plus_image(&a2, 0, 1).unwrap(), (0, ExpVec(vec![0, 1])));
        assert_eq!(phi_plus_image(&a2, 1, 0).unwrap(), (0, ExpVec(vec![1, 1])));
        let two = Quiver::from_arrows(2, &[(0, 1, 1), (1, 0, 1)]).unwrap();
        assert!(phi_plus_image(&two, 1, 0).is_err());
    }

    #[test]
    fn a2_images_by_hand() {
        let a2 = Quiver::linear_a(2);
        let form = SkewForm::from_quiver(&a2).unwrap();
        // k = 1, i = 2: one arrow k -> i, so y_2 (1 + q^{1/2} y_1)
        let img = fg_generator_image(&a2, 0, 1, 3).unwrap();
        let expected = QSeries::from_terms(
            form.clone(),
            3,
            ExpVec(vec![0, 1]),
            [(ExpVec(vec![0, 0]), QRat::one()), (ExpVec(vec![1, 0]), QRat::v_pow(1))],
        )
        .unwrap();
        assert_eq!(img, expected);
        // k = 2, i = 1: one arrow i -> k, so y^{(1,1)} (1 + q^{-1/2} y_2)^{-1}
        let img = fg_generator_image(&a2, 1, 0, 3).unwrap();
        assert_eq!(img.offset(), &ExpVec(vec![1, 1]));
        for t in 0..=2 {
            let sign = if t % 2 == 0 { 1 } else { -1 };
            assert_eq!(img.coeff(&ExpVec(vec![0, t])), QRat::v_pow(-t).scale(&crate::coeffs::rat(sign)));
        }
        // isolated vertex
        let q = Quiver::empty(2);
        assert_eq!(fg_generator_image(&q, 0, 1, 2).unwrap().offset(), &ExpVec(vec![0, 1]));
    }

    #[test]
    fn closed_form_matches_conjugation() {
        let quivers = [
            Quiver::linear_a(2),
            Quiver::multi_arrow(2),
            Quiver::multi_arrow(3),
            Quiver::from_arrows(3, &[(0, 1, 1), (2, 1, 2), (0, 2, 1)]).unwrap(),
        ];
        for q in &quivers {
            for k in 0..q.n() {
                for i in 0..q.n() {
                    let a = fg_generator_image(q, k, i, 6).unwrap();
                    let b = fg_generator_image_by_conjugation(q, k, i, 6).unwrap();
                    assert!(a.compare(&b).unwrap().holds(), "{q:?} k={k} i={i}");
                }
            }
        }
    }
}
