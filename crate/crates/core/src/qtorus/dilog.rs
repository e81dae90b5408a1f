use super::series::QSeries;
use super::skew::{ExpVec, SkewForm};
use super::SeriesError;
use crate::coeffs::{q_pow_minus_one, QRat};

/// The n-th coefficient of the quantum dilogarithm,
/// `q^{n/2} / prod_{j=1}^n (q^j - 1)`.
pub fn dilog_coeff(n: u32) -> QRat {
    let mut den = QRat::one();
    for j in 1..=n as i64 {
        den = &den * &q_pow_minus_one(j);
    }
    QRat::v_pow(n as i64).checked_div(&den).expect("q^j - 1 is nonzero")
}

/// `[n]! = prod_{k=1}^n (q^k - 1)/(q - 1)`.
pub fn q_factorial(n: u32) -> QRat {
    let qm1 = q_pow_minus_one(1);
    let mut acc = QRat::one();
    for k in 1..=n as i64 {
        acc = &acc * &q_pow_minus_one(k).checked_div(&qm1).expect("q - 1 is nonzero");
    }
    acc
}

fn check_args(form: &SkewForm, c: &QRat, alpha: &ExpVec) -> Result<(), SeriesError> {
    form.check_len(alpha)?;
    if c.is_zero() {
        return Err(SeriesError::ZeroCoefficient);
    }
    if !alpha.is_nonneg() {
        return Err(SeriesError::NegativeExponent(alpha.clone()));
    }
    if alpha.is_zero() {
        return Err(SeriesError::ZeroExponent);
    }
    Ok(())
}

fn power_series(
    form: &SkewForm,
    depth: u32,
    c: &QRat,
    alpha: &ExpVec,
    coeff: impl Fn(u32) -> QRat,
) -> Result<QSeries, SeriesError> {
    check_args(form, c, alpha)?;
    let d = alpha.degree();
    let n_max = (depth as i64 / d) as u32;
    let mut cn = QRat::one();
    let mut terms = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        terms.push((alpha.scale(n as i64), &cn * &coeff(n)));
        cn = &cn * c;
    }
    QSeries::from_terms(form.clone(), depth, ExpVec::zero(form.dim()), terms)
}

/// `E(c y^alpha)` truncated at total degree `depth`. Since `lambda(alpha, alpha) = 0`,
/// `(y^alpha)^n = y^{n alpha}`.
pub fn dilog(form: &SkewForm, c: &QRat, alpha: &ExpVec, depth: u32) -> Result<QSeries, SeriesError> {
    power_series(form, depth, c, alpha, dilog_coeff)
}

/// `exp_q(c y^alpha) = sum (c y^alpha)^n / [n]!`.
pub fn quantum_exp(form: &SkewForm, c: &QRat, alpha: &ExpVec, depth: u32) -> Result<QSeries, SeriesError> {
    power_series(form, depth, c, alpha, |n| q_factorial(n).inv().expect("[n]! is nonzero"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::rat;
    use crate::qtorus::Verdict;

    /// `q^{n^2/2} / prod_{k=0}^{n-1} (q^n - q^k)` evaluated literally.
    fn literal_coeff(n: i64) -> QRat {
        let mut den = QRat::one();
        for k in 0..n {
            den = &den * &(QRat::v_pow(2 * n) - QRat::v_pow(2 * k));
        }
        QRat::v_pow(n * n).checked_div(&den).unwrap()
    }

    #[test]
    fn coefficients_match_the_defining_product() {
        for n in 0..=8 {
            assert_eq!(dilog_coeff(n as u32), literal_coeff(n), "n = {n}");
        }
        let first = QRat::v_pow(1).checked_div(&q_pow_minus_one(1)).unwrap();
        assert_eq!(dilog_coeff(1), first);
        let second = QRat::v_pow(4)
            .checked_div(&(&q_pow_minus_one(2) * &(QRat::v_pow(4) - QRat::v_pow(2))))
            .unwrap();
        assert_eq!(dilog_coeff(2), second);
    }

    #[test]
    fn dilog_is_quantum_exp_of_rescaled_variable() {
        let f = SkewForm::zero(2);
        let c = QRat::v_pow(1).checked_div(&q_pow_minus_one(1)).unwrap();
        for alpha in [ExpVec(vec![1, 0]), ExpVec(vec![1, 1]), ExpVec(vec![2, 1])] {
            for d in 0..=8 {
                let a = dilog(&f, &QRat::one(), &alpha, d).unwrap();
                let b = quantum_exp(&f, &c, &alpha, d).unwrap();
                assert_eq!(a.compare(&b).unwrap(), Verdict::Holds);
            }
        }
    }

    #[test]
    fn second_factorial_is_q_plus_one() {
        assert_eq!(q_factorial(2), QRat::v_pow(2) + QRat::one());
        let f = SkewForm::zero(1);
        let c = QRat::from_rational(rat(3));
        let e = quantum_exp(&f, &c, &ExpVec(vec![1]), 2).unwrap();
        let expected = QRat::from_int(9).checked_div(&(QRat::v_pow(2) + QRat::one())).unwrap();
        assert_eq!(e.coeff(&ExpVec(vec![2])), expected);
        assert!(quantum_exp(&f, &c, &ExpVec(vec![1]), 0).unwrap().is_one());
    }

    #[test]
    fn truncation_and_bad_arguments() {
        let f = SkewForm::zero(2);
        assert!(dilog(&f, &QRat::one(), &ExpVec(vec![2, 1]), 2).unwrap().is_one());
        assert_eq!(dilog(&f, &QRat::zero(), &ExpVec(vec![1, 0]), 2).unwrap_err(), SeriesError::ZeroCoefficient);
        assert_eq!(dilog(&f, &QRat::one(), &ExpVec(vec![0, 0]), 2).unwrap_err(), SeriesError::ZeroExponent);
        assert!(dilog(&f, &QRat::one(), &ExpVec(vec![1]), 2).is_err());
    }
}
