use super::green::{first_maximal, GreenSeq};
use super::{FramedQuiver, Quiver, QuiverError};
use crate::qtorus::{eval_word, Factor, QSeries, SeriesError, Word};

/// `E(eps_1 beta_1)^{eps_1} ... E(eps_N beta_N)^{eps_N}`.
pub fn tropical_word(seq: &GreenSeq) -> Word {
    Word(seq.steps.iter().map(|s| Factor::new(s.beta.scale(s.eps as i64), s.eps as i32)).collect())
}

/// Runs `seq` from `start` and evaluates its product on the form of the
/// mutable part of `start`.
pub fn tropical_e(start: &FramedQuiver, seq: &[usize], depth: u32) -> Result<(GreenSeq, QSeries), SeriesError> {
    let g = GreenSeq::run(start, seq)?;
    let s = eval_word(&start.skew_form(), &tropical_word(&g), depth)?;
    Ok((g, s))
}

/// A permutation `sigma` of the mutable vertices, fixing the frozen ones, with
/// `b2[sigma(i)][sigma(j)] = b1[i][j]`; `sigma[i]` is the image of `i`.
pub fn frozen_iso(f1: &FramedQuiver, f2: &FramedQuiver) -> Option<Vec<usize>> {
    let n = f1.n();
    if f2.n() != n {
        return None;
    }
    let full = |sigma: &[usize], v: usize| if v < n { sigma[v] } else { v };
    let fits = |sigma: &[usize]| {
        (0..2 * n).all(|i| (0..2 * n).all(|j| f2.entry(full(sigma, i), full(sigma, j)) == f1.entry(i, j)))
    };
    let mut sigma: Vec<usize> = (0..n).collect();
    // lexicographic enumeration of permutations, identity first
    loop {
        if fits(&sigma) {
            return Some(sigma);
        }
        let i = (1..n).rev().find(|&i| sigma[i - 1] < sigma[i])?;
        let j = (i..n).rev().find(|&j| sigma[j] > sigma[i - 1]).expect("pivot has a successor");
        sigma.swap(i - 1, j);
        sigma[i..].reverse();
    }
}

/// A refined DT invariant computed from the first maximal green sequence found.
#[derive(Clone, Debug)]
pub struct DtResult {
    pub seq: GreenSeq,
    pub series: QSeries,
}

/// Searches for a maximal green sequence of length at most `max_len`
/// (default `4n`) and returns its product.
pub fn dt_invariant(q: &Quiver, depth: u32, max_len: Option<usize>) -> Result<DtResult, SeriesError> {
    let f = FramedQuiver::frame(q)?;
    let max_len = max_len.unwrap_or(4 * q.n());
    let seq = first_maximal(&f, max_len)?.ok_or(QuiverError::NoMaximalGreen { depth: max_len })?;
    let series = eval_word(&f.skew_form(), &tropical_word(&seq), depth)?;
    Ok(DtResult { seq, series })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qtorus::ExpVec;

    fn a2() -> FramedQuiver {
        FramedQuiver::frame(&Quiver::linear_a(2)).unwrap()
    }

    #[test]
    fn a2_words() {
        let (g, _) = tropical_e(&a2(), &[0, 1], 2).unwrap();
        assert_eq!(tropical_word(&g).to_string(), "E(1,0) E(0,1)");
        let (g, _) = tropical_e(&a2(), &[1, 0, 1], 2).unwrap();
        assert_eq!(tropical_word(&g).to_string(), "E(0,1) E(1,1) E(1,0)");
        let (g, _) = tropical_e(&a2(), &[0, 1, 0], 2).unwrap();
        assert_eq!(tropical_word(&g).to_string(), "E(1,0) E(0,1) E(1,0)^-1");
    }

    #[test]
    fn a2_endpoints_are_related_by_a_transposition() {
        let f = a2();
        let e1 = f.mutate_seq(&[0, 1]).unwrap();
        let e2 = f.mutate_seq(&[1, 0, 1]).unwrap();
        assert_eq!(frozen_iso(&e1, &e2), Some(vec![1, 0]));
        assert_eq!(frozen_iso(&f, &f), Some(vec![0, 1]));
        assert_eq!(frozen_iso(&e1, &f), None);
    }

    #[test]
    fn dt_of_small_quivers() {
        let r = dt_invariant(&Quiver::linear_a(2), 4, None).unwrap();
        assert_eq!(r.seq.seq(), vec![0, 1]);
        let r = dt_invariant(&Quiver::empty(1), 3, None).unwrap();
        assert_eq!(r.seq.seq(), vec![0]);
        assert!(!r.series.coeff(&ExpVec(vec![3])).is_zero());
        let cyclic = Quiver::from_arrows(3, &[(0, 1, 2), (1, 2, 2), (2, 0, 2)]).unwrap();
        assert!(matches!(
            dt_invariant(&cyclic, 2, Some(6)),
            Err(SeriesError::Quiver(QuiverError::NoMaximalGreen { depth: 6 }))
        ));
    }
}
