use super::diagram::{positive_roots, source_sequence, DynkinQuiver};
use super::rep::{hom_dim, indecomposable};
use super::RepError;
use crate::coeffs::QRat;
use crate::qtorus::{dilog, eval_word, skew_from_quiver, ExpVec, Mismatch, QSeries, Word};

/// Decreasing linear extensions beyond this count are not all checked.
pub const MAX_EXTENSIONS: usize = 1000;

/// The order on positive roots generated by `Hom(V(a), V(b)) != 0`.
#[derive(Clone, Debug)]
pub struct HomOrder {
    pub roots: Vec<ExpVec>,
    /// `leq[i][j]` iff `roots[i] <= roots[j]`.
    pub leq: Vec<Vec<bool>>,
}

impl HomOrder {
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    /// Strict covering-free description: pairs `i < j` in the order.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.roots.len();
        (0..n).flat_map(|i| (0..n).filter(move |&j| i != j).map(move |j| (i, j))).filter(|&(i, j)| self.leq[i][j]).collect()
    }
}

pub fn hom_order(d: &DynkinQuiver) -> Result<HomOrder, RepError> {
    let roots = positive_roots(d);
    let reps = roots.iter().map(|a| indecomposable(d, a, 2)).collect::<Result<Vec<_>, _>>()?;
    let n = roots.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = i == j || hom_dim(&reps[i], &reps[j])? > 0;
        }
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i][k] {
                for j in 0..n {
                    if leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if leq[i][j] && leq[j][i] {
                return Err(RepError::NotAntisymmetric(roots[i].clone(), roots[j].clone()));
            }
        }
    }
    Ok(HomOrder { roots, leq })
}

/// Orderings of all roots where larger roots come first, smallest index
/// first among the available ones. Stops after `cap` extensions; the flag
/// tells whether the list is complete.
pub fn decreasing_extensions(order: &HomOrder, cap: usize) -> (Vec<Vec<usize>>, bool) {
    let mut out = Vec::new();
    let mut placed = vec![false; order.roots.len()];
    let mut cur = Vec::new();
    let complete = extend(order, &mut placed, &mut cur, &mut |ext| {
        if out.len() == cap {
            return false;
        }
        out.push(ext.to_vec());
        true
    });
    (out, complete)
}

/// Roots that may come next: nothing strictly above them is still unplaced.
fn available(order: &HomOrder, placed: &[bool]) -> Vec<usize> {
    let n = placed.len();
    (0..n).filter(|&i| !placed[i] && (0..n).all(|j| j == i || placed[j] || !order.leq[i][j])).collect()
}

fn extend(order: &HomOrder, placed: &mut [bool], cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == placed.len() {
        return visit(cur);
    }
    for i in available(order, placed) {
        placed[i] = true;
        cur.push(i);
        let go_on = extend(order, placed, cur, visit);
        cur.pop();
        placed[i] = false;
        if !go_on {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug)]
pub struct CorollaryReport {
    pub source_sequence: Vec<usize>,
    pub source_word: Word,
    /// The first decreasing enumeration of the roots.
    pub root_word: Word,
    pub extensions_checked: usize,
    /// `false` when there are more than [`MAX_EXTENSIONS`] extensions.
    pub all_extensions: bool,
    pub failure: Option<(Word, Mismatch)>,
}

impl CorollaryReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Compares the source-sequence product of simple dilogarithms with the
/// product over the roots in decreasing order, for every decreasing linear
/// extension when there are at most [`MAX_EXTENSIONS`] of them and for the
/// first one otherwise.
pub fn verify_corollary(d: &DynkinQuiver, depth: u32) -> Result<CorollaryReport, RepError> {
    let q = d.quiver();
    let n = q.n();
    let form = skew_from_quiver(q)?;
    let seq = source_sequence(q)?;
    let source_word = Word::from_exps(seq.iter().map(|&i| (ExpVec::unit(n, i), 1)));
    let lhs = eval_word(&form, &source_word, depth)?;
    let order = hom_order(d)?;
    let (exts, complete) = decreasing_extensions(&order, MAX_EXTENSIONS + 1);
    let all = complete && exts.len() <= MAX_EXTENSIONS;
    let to_check = if all { &exts[..] } else { &exts[..1] };
    let factors = order
        .roots
        .iter()
        .map(|a| dilog(&form, &QRat::one(), a, depth))
        .collect::<Result<Vec<_>, _>>()?;
    let word_of = |ext: &[usize]| Word::from_exps(ext.iter().map(|&i| (order.roots[i].clone(), 1)));

    // products share prefixes: consecutive extensions usually differ at the end
    let mut stack: Vec<QSeries> = vec![QSeries::one(form.clone(), depth)];
    let mut prev: &[usize] = &[];
    let mut failure = None;
    for ext in to_check {
        let common = prev.iter().zip(ext).take_while(|(a, b)| a == b).count();
        stack.truncate(common + 1);
        for &i in &ext[common..] {
            let next = stack.last().expect("nonempty").mul(&factors[i])?;
            stack.push(next);
        }
        prev = ext;
        if let Some(m) = lhs.compare(stack.last().expect("nonempty"))?.mismatch() {
            failure = Some((word_of(ext), m.clone()));
            break;
        }
    }
    Ok(CorollaryReport {
        source_sequence: seq,
        source_word,
        root_word: word_of(&exts[0]),
        extensions_checked: to_check.len(),
        all_extensions: all,
        failure,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkinrep::DynkinType;

    #[test]
    fn a2_order_is_a_chain() {
        let d = DynkinQuiver::standard(DynkinType::A(2)).unwrap();
        let o = hom_order(&d).unwrap();
        let idx = |v: &[i64]| o.roots.iter().position(|r| r.0 == v).unwrap();
        let (s1, s2, p2) = (idx(&[1, 0]), idx(&[0, 1]), idx(&[1, 1]));
        assert!(o.le(s1, p2) && o.le(p2, s2) && o.le(s1, s2));
        assert!(!o.le(s2, s1) && !o.le(p2, s1));
        let (exts, complete) = decreasing_extensions(&o, 10);
        assert!(complete);
        assert_eq!(exts, vec![vec![s2, p2, s1]]);
    }

    #[test]
    fn a1_order_is_trivial() {
        let d = DynkinQuiver::standard(DynkinType::A(1)).unwrap();
        let o = hom_order(&d).unwrap();
        assert_eq!(o.strict_pairs(), vec![]);
        let r = verify_corollary(&d, 4).unwrap();
        assert!(r.holds());
        assert_eq!(r.root_word.to_string(), "E(1)");
    }

    #[test]
    fn a2_corollary_is_the_pentagon() {
        let d = DynkinQuiver::standard(DynkinType::A(2)).unwrap();
        let r = verify_corollary(&d, 6).unwrap();
        assert_eq!(r.source_word.to_string(), "E(1,0) E(0,1)");
        assert_eq!(r.root_word.to_string(), "E(0,1) E(1,1) E(1,0)");
        assert!(r.holds() && r.all_extensions);
    }

    #[test]
    fn extensions_respect_the_order_and_are_distinct() {
        for d in DynkinQuiver::all_orientations(DynkinType::A(3)).unwrap() {
            let o = hom_order(&d).unwrap();
            let (exts, complete) = decreasing_extensions(&o, 1000);
            assert!(complete);
            let set: std::collections::BTreeSet<_> = exts.iter().collect();
            assert_eq!(set.len(), exts.len());
            for ext in &exts {
                for (a, &i) in ext.iter().enumerate() {
                    for &j in &ext[a + 1..] {
                        assert!(!o.le(i, j) || i == j, "larger root placed later");
                    }
                }
            }
        }
    }

    #[test]
    fn cap_stops_enumeration() {
        let d = DynkinQuiver::standard(DynkinType::A(3)).unwrap();
        let o = hom_order(&d).unwrap();
        let (all, _) = decreasing_extensions(&o, 1000);
        if all.len() > 1 {
            let (some, complete) = decreasing_extensions(&o, 1);
            assert_eq!(some.len(), 1);
            assert!(!complete);
        }
    }
}
