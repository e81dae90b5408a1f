use std::collections::HashSet;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use super::{FramedQuiver, QuiverError};
use crate::qtorus::ExpVec;

/// One mutation: the vertex and the c-vector read just before mutating.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub vertex: usize,
    pub beta: ExpVec,
    pub eps: i8,
}

/// A mutation sequence with its c-vectors and the resulting framed quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenSeq {
    pub steps: Vec<Step>,
    pub end: FramedQuiver,
}

/// `{"seq": [k1, ...], "steps": [{"beta": [...], "eps": 1}, ...]}`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenSeqJson {
    pub seq: Vec<usize>,
    #[serde(default)]
    pub steps: Vec<StepJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepJson {
    pub beta: Vec<i64>,
    pub eps: i8,
}

impl GreenSeq {
    /// Applies `seq` (0-based vertices) to `start`, recording c-vectors. Red
    /// vertices are allowed; their steps carry `eps = -1`.
    pub fn run(start: &FramedQuiver, seq: &[usize]) -> Result<Self, QuiverError> {
        let mut cur = start.clone();
        let mut steps = Vec::with_capacity(seq.len());
        for &k in seq {
            let (beta, eps) = cur.c_vector(k)?;
            steps.push(Step { vertex: k, beta, eps });
            cur = cur.mutate(k)?;
        }
        Ok(Self { steps, end: cur })
    }

    /// The vertex sequence, 0-based.
    pub fn seq(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.vertex).collect()
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_green_only(&self) -> bool {
        self.steps.iter().all(|s| s.eps == 1)
    }

    pub fn is_maximal(&self) -> bool {
        self.is_green_only() && self.end.is_maximal()
    }

    pub fn to_json(&self) -> GreenSeqJson {
        GreenSeqJson {
            seq: self.steps.iter().map(|s| s.vertex + 1).collect(),
            steps: self.steps.iter().map(|s| StepJson { beta: s.beta.0.clone(), eps: s.eps }).collect(),
        }
    }
}

/// 1-based sequence from JSON to 0-based vertices.
pub fn seq_from_json(j: &GreenSeqJson, n: usize) -> Result<Vec<usize>, QuiverError> {
    j.seq
        .iter()
        .map(|&k| {
            if k == 0 || k > n {
                Err(QuiverError::VertexOutOfRange { vertex: k, n })
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}

/// Depth-first walk over green mutations, children in ascending vertex order.
/// Quivers already on the current path are not re-entered.
pub(crate) fn walk_green<B>(
    start: &FramedQuiver,
    max_len: usize,
    visit: &mut impl FnMut(&[usize], &FramedQuiver) -> ControlFlow<B>,
) -> Result<Option<B>, QuiverError> {
    fn rec<B>(
        cur: &FramedQuiver,
        path: &mut Vec<usize>,
        on_path: &mut HashSet<FramedQuiver>,
        max_len: usize,
        visit: &mut impl FnMut(&[usize], &FramedQuiver) -> ControlFlow<B>,
    ) -> Result<Option<B>, QuiverError> {
        if let ControlFlow::Break(b) = visit(path, cur) {
            return Ok(Some(b));
        }
        if path.len() == max_len {
            return Ok(None);
        }
        for k in 0..cur.n() {
            // reading the c-vector also certifies sign coherence
            let (_, eps) = cur.c_vector(k)?;
            if eps != 1 {
                continue;
            }
            let next = cur.mutate(k)?;
            if on_path.contains(&next) {
                continue;
            }
            path.push(k);
            on_path.insert(next.clone());
            let r = rec(&next, path, on_path, max_len, visit)?;
            on_path.remove(&next);
            path.pop();
            if r.is_some() {
                return Ok(r);
            }
        }
        Ok(None)
    }
    let mut on_path = HashSet::from([start.clone()]);
    rec(start, &mut Vec::new(), &mut on_path, max_len, visit)
}

/// All green sequences of length at most `max_len` (nonempty ones, or only the
/// maximal ones when `maximal_only`), in lexicographic order.
pub fn green_search(start: &FramedQuiver, max_len: usize, maximal_only: bool) -> Result<Vec<GreenSeq>, QuiverError> {
    let mut found = Vec::new();
    walk_green::<()>(start, max_len, &mut |path, cur| {
        let keep = if maximal_only { cur.is_maximal() } else { !path.is_empty() };
        if keep {
            found.push(path.to_vec());
        }
        ControlFlow::Continue(())
    })?;
    found.iter().map(|s| GreenSeq::run(start, s)).collect()
}

/// The first maximal green sequence in search order, if any.
pub fn first_maximal(start: &FramedQuiver, max_len: usize) -> Result<Option<GreenSeq>, QuiverError> {
    let hit = walk_green(start, max_len, &mut |path, cur| {
        if cur.is_maximal() {
            ControlFlow::Break(path.to_vec())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    hit.map(|s| GreenSeq::run(start, &s)).transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn framed(q: &Quiver) -> FramedQuiver {
        FramedQuiver::frame(q).unwrap()
    }

    #[test]
    fn a2_has_two_maximal_sequences() {
        let f = framed(&Quiver::linear_a(2));
        let seqs: Vec<_> = green_search(&f, 6, true).unwrap().iter().map(|g| g.seq()).collect();
        assert_eq!(seqs, vec![vec![0, 1], vec![1, 0, 1]]);
    }

    #[test]
    fn single_vertex() {
        let f = framed(&Quiver::empty(1));
        let all = green_search(&f, 4, false).unwrap();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].seq(), vec![0]);
        assert!(all[0].is_maximal());
    }

    #[test]
    fn run_records_red_steps() {
        let f = framed(&Quiver::linear_a(2));
        let g = GreenSeq::run(&f, &[0, 1, 0]).unwrap();
        assert_eq!(g.steps[2].eps, -1);
        assert_eq!(g.steps[2].beta, ExpVec(vec![-1, 0]));
        assert!(!g.is_green_only());
        let j = g.to_json();
        assert_eq!(j.seq, vec![1, 2, 1]);
        assert_eq!(seq_from_json(&j, 2).unwrap(), vec![0, 1, 0]);
    }

    #[test]
    fn first_maximal_is_lexicographically_first() {
        let f = framed(&Quiver::linear_a(3));
        let first = first_maximal(&f, 12).unwrap().unwrap();
        let all = green_search(&f, 12, true).unwrap();
        assert_eq!(first.seq(), all[0].seq());
        // a source sequence is always maximal green
        let kr = first_maximal(&framed(&Quiver::multi_arrow(3)), 8).unwrap().unwrap();
        assert_eq!(kr.seq(), vec![0, 1]);
        assert!(first_maximal(&framed(&Quiver::linear_a(3)), 2).unwrap().is_none());
    }
}
