use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use super::RepError;
use crate::qtorus::ExpVec;
use crate::quiver::{Quiver, QuiverError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }

    /// Number of positive roots.
    pub fn root_count(&self) -> usize {
        match *self {
            DynkinType::A(n) => n * (n + 1) / 2,
            DynkinType::D(n) => n * (n - 1),
            DynkinType::E(6) => 36,
            DynkinType::E(7) => 63,
            DynkinType::E(8) => 120,
            DynkinType::E(_) => unreachable!("validated on construction"),
        }
    }

    fn validate(self) -> Result<Self, RepError> {
        let ok = match self {
            DynkinType::A(n) => n >= 1,
            DynkinType::D(n) => n >= 4,
            DynkinType::E(n) => (6..=8).contains(&n),
        };
        if ok {
            Ok(self)
        } else {
            Err(RepError::NotDynkin(format!("no diagram of type {self}")))
        }
    }

    /// Edges of the standard labelled diagram (0-based): a path `0 - 1 - ...`
    /// with the extra vertex `n-1` attached to `n-3` for `D_n` and to `2` for `E_n`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        match *self {
            DynkinType::A(n) => (1..n).map(|i| (i - 1, i)).collect(),
            DynkinType::D(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((n - 3, n - 1));
                e
            }
            DynkinType::E(n) => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
                e.push((2, n - 1));
                e
            }
        }
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

impl FromStr for DynkinType {
    type Err = RepError;

    fn from_str(s: &str) -> Result<Self, RepError> {
        let s = s.trim();
        let bad = || RepError::Input(format!("unknown Dynkin type '{s}'"));
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().trim_start_matches('_').parse().map_err(|_| bad())?;
        let ty = match letter {
            'A' => DynkinType::A(n),
            'D' => DynkinType::D(n),
            'E' => DynkinType::E(n),
            _ => return Err(bad()),
        };
        ty.validate()
    }
}

/// An orientation of a Dynkin diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinQuiver {
    ty: DynkinType,
    quiver: Quiver,
}

impl DynkinQuiver {
    /// Classifies `q` by the shape of its underlying graph.
    pub fn from_quiver(q: &Quiver) -> Result<Self, RepError> {
        let ty = classify(q)?;
        Ok(Self { ty, quiver: q.clone() })
    }

    /// The standard labelled diagram with every edge oriented `i -> j` for
    /// `i < j` in [`DynkinType::edges`].
    pub fn standard(ty: DynkinType) -> Result<Self, RepError> {
        Self::oriented(ty, &vec![true; ty.validate()?.rank() - 1])
    }

    /// `forward[e]` orients edge `e` of [`DynkinType::edges`] from its first
    /// to its second vertex.
    pub fn oriented(ty: DynkinType, forward: &[bool]) -> Result<Self, RepError> {
        let ty = ty.validate()?;
        let edges = ty.edges();
        if forward.len() != edges.len() {
            return Err(RepError::Input(format!("{ty} has {} edges, got {} orientations", edges.len(), forward.len())));
        }
        let arrows: Vec<_> =
            edges.iter().zip(forward).map(|(&(a, b), &f)| if f { (a, b, 1) } else { (b, a, 1) }).collect();
        Ok(Self { ty, quiver: Quiver::from_arrows(ty.rank(), &arrows)? })
    }

    /// Orientation from a string of `R` (forward) and `L` (backward), one
    /// letter per edge.
    pub fn from_orientation_string(ty: DynkinType, s: &str) -> Result<Self, RepError> {
        let forward = s
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'R' => Ok(true),
                'L' => Ok(false),
                _ => Err(RepError::Input(format!("orientation letters are R or L, got '{c}'"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::oriented(ty, &forward)
    }

    /// All `2^(n-1)` orientations of the standard diagram.
    pub fn all_orientations(ty: DynkinType) -> Result<Vec<Self>, RepError> {
        let e = ty.validate()?.rank() - 1;
        (0..1u32 << e)
            .map(|mask| Self::oriented(ty, &(0..e).map(|i| mask >> i & 1 == 0).collect::<Vec<_>>()))
            .collect()
    }

    pub fn ty(&self) -> DynkinType {
        self.ty
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    /// Orientation letters relative to the standard edge list, when the
    /// quiver uses the standard labelling.
    pub fn orientation_string(&self) -> Option<String> {
        self.ty
            .edges()
            .iter()
            .map(|&(a, b)| match (self.quiver.arrows(a, b), self.quiver.arrows(b, a)) {
                (1, 0) => Some('R'),
                (0, 1) => Some('L'),
                _ => None,
            })
            .collect()
    }
}

fn classify(q: &Quiver) -> Result<DynkinType, RepError> {
    let n = q.n();
    if n == 0 {
        return Err(RepError::NotDynkin("empty quiver".into()));
    }
    q.check_loop_free().map_err(|e| RepError::NotDynkin(e.to_string()))?;
    let mut adj = vec![Vec::new(); n];
    let mut edges = 0;
    for (i, j, m) in q.arrow_list() {
        if m > 1 || q.arrows(j, i) > 0 {
            return Err(RepError::NotDynkin(format!("multiple edges between {} and {}", i + 1, j + 1)));
        }
        adj[i].push(j);
        adj[j].push(i);
        edges += 1;
    }
    if edges != n - 1 {
        return Err(RepError::NotDynkin("underlying graph is not a tree".into()));
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(RepError::NotDynkin("underlying graph is not connected".into()));
    }
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() > 2).collect();
    match branch.as_slice() {
        [] => Ok(DynkinType::A(n)),
        [c] if adj[*c].len() == 3 => {
            // arm lengths from the branch vertex
            let mut arms: Vec<usize> = adj[*c]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while adj[cur].len() == 2 {
                        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, _] => Ok(DynkinType::D(n)),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Ok(DynkinType::E(n)),
                _ => Err(RepError::NotDynkin(format!("branch arms {arms:?} are not of type D or E"))),
            }
        }
        _ => Err(RepError::NotDynkin("more than one branch point".into())),
    }
}

/// `q(x) = sum x_i^2 - sum_{arrows} x_i x_j`.
pub fn tits_form(q: &Quiver, x: &ExpVec) -> i64 {
    let mut s: i64 = x.0.iter().map(|a| a * a).sum();
    for (i, j, m) in q.arrow_list() {
        s -= m as i64 * x.0[i] * x.0[j];
    }
    s
}

/// Positive roots, ordered by degree and then with earlier coordinates
/// weighing more (so `e_1` comes before `e_2`).
pub fn positive_roots(d: &DynkinQuiver) -> Vec<ExpVec> {
    let q = d.quiver();
    let n = q.n();
    let mut found: BTreeSet<ExpVec> = (0..n).map(|i| ExpVec::unit(n, i)).collect();
    let mut queue: VecDeque<ExpVec> = found.iter().cloned().collect();
    while let Some(a) = queue.pop_front() {
        for i in 0..n {
            let b = a.add(&ExpVec::unit(n, i));
            if tits_form(q, &b) == 1 && found.insert(b.clone()) {
                queue.push_back(b);
            }
        }
    }
    let mut roots: Vec<ExpVec> = found.into_iter().collect();
    roots.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    roots
}

/// Each vertex is a source once its predecessors are removed; the smallest
/// admissible vertex is taken first.
pub fn source_sequence(q: &Quiver) -> Result<Vec<usize>, QuiverError> {
    let n = q.n();
    let mut done = vec![false; n];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let next = (0..n).find(|&v| !done[v] && (0..n).all(|u| done[u] || q.arrows(u, v) == 0));
        match next {
            Some(v) => {
                done[v] = true;
                out.push(v);
            }
            None => return Err(QuiverError::Cyclic),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closure of the simple roots under simple reflections.
    fn reflection_closure(d: &DynkinQuiver) -> BTreeSet<ExpVec> {
        let q = d.quiver();
        let n = q.n();
        let cartan = |i: usize, j: usize| -> i64 {
            if i == j {
                2
            } else {
                -((q.arrows(i, j) + q.arrows(j, i)) as i64)
            }
        };
        let mut found: BTreeSet<ExpVec> = (0..n).map(|i| ExpVec::unit(n, i)).collect();
        let mut queue: Vec<ExpVec> = found.iter().cloned().collect();
        while let Some(a) = queue.pop() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| cartan(i, j) * a.0[j]).sum();
                let mut b = a.clone();
                b.0[i] -= pairing;
                if b.is_nonneg() && !b.is_zero() && found.insert(b.clone()) {
                    queue.push(b);
                }
            }
        }
        found
    }

    #[test]
    fn root_counts_match_reflection_closure() {
        for ty in ["A1", "A2", "A3", "A5", "D4", "D5", "E6", "E7", "E8"] {
            let ty: DynkinType = ty.parse().unwrap();
            let d = DynkinQuiver::standard(ty).unwrap();
            let roots = positive_roots(&d);
            assert_eq!(roots.len(), ty.root_count(), "{ty}");
            let set: BTreeSet<_> = roots.iter().cloned().collect();
            assert_eq!(set, reflection_closure(&d), "{ty}");
        }
    }

    #[test]
    fn a2_roots_in_order() {
        let d = DynkinQuiver::standard(DynkinType::A(2)).unwrap();
        assert_eq!(positive_roots(&d), vec![ExpVec(vec![1, 0]), ExpVec(vec![0, 1]), ExpVec(vec![1, 1])]);
    }

    #[test]
    fn classification() {
        for ty in ["A4", "D4", "D6", "E6", "E7", "E8"] {
            let ty: DynkinType = ty.parse().unwrap();
            for d in DynkinQuiver::all_orientations(ty).unwrap().iter().take(5) {
                assert_eq!(DynkinQuiver::from_quiver(d.quiver()).unwrap().ty(), ty);
            }
        }
        assert!(DynkinQuiver::from_quiver(&Quiver::multi_arrow(2)).is_err());
        let cycle = Quiver::from_arrows(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert!(DynkinQuiver::from_quiver(&cycle).is_err());
        let e9_like = Quiver::from_arrows(9, &(1..8).map(|i| (i - 1, i, 1)).chain([(2, 8, 1)]).collect::<Vec<_>>()).unwrap();
        assert!(DynkinQuiver::from_quiver(&e9_like).is_err());
        assert!("E9".parse::<DynkinType>().is_err());
        assert!("D3".parse::<DynkinType>().is_err());
    }

    #[test]
    fn orientations() {
        let all = DynkinQuiver::all_orientations(DynkinType::A(3)).unwrap();
        assert_eq!(all.len(), 4);
        let d = DynkinQuiver::from_orientation_string(DynkinType::A(3), "RL").unwrap();
        assert_eq!(d.quiver().arrow_list(), vec![(0, 1, 1), (2, 1, 1)]);
        assert_eq!(d.orientation_string().unwrap(), "RL");
    }

    #[test]
    fn source_sequences() {
        assert_eq!(source_sequence(&Quiver::linear_a(2)).unwrap(), vec![0, 1]);
        assert_eq!(source_sequence(&Quiver::empty(3)).unwrap(), vec![0, 1, 2]);
        assert_eq!(source_sequence(&Quiver::linear_a(3)).unwrap(), vec![0, 1, 2]);
        let rev = Quiver::linear_a(3).opposite();
        assert_eq!(source_sequence(&rev).unwrap(), vec![2, 1, 0]);
        let cycle = Quiver::from_arrows(2, &[(0, 1, 1), (1, 0, 1)]).unwrap();
        assert_eq!(source_sequence(&cycle), Err(QuiverError::Cyclic));
    }
}
