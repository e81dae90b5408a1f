use serde::{Deserialize, Serialize};

use super::QuiverError;

/// A finite quiver on vertices `0..n`; `mult[i][j]` counts arrows `i -> j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    mult: Vec<Vec<u32>>,
}

/// Wire form: `{"n": n, "arrows": [[i, j, mult], ...]}`, 1-based vertices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverJson {
    pub n: usize,
    pub arrows: Vec<[u32; 3]>,
}

impl Quiver {
    pub fn empty(n: usize) -> Self {
        Self { n, mult: vec![vec![0; n]; n] }
    }

    /// Arrows given 0-based as `(source, target, multiplicity)`.
    pub fn from_arrows(n: usize, arrows: &[(usize, usize, u32)]) -> Result<Self, QuiverError> {
        let mut q = Self::empty(n);
        for &(i, j, m) in arrows {
            if i >= n || j >= n {
                return Err(QuiverError::VertexOutOfRange { vertex: i.max(j) + 1, n });
            }
            q.mult[i][j] += m;
        }
        Ok(q)
    }

    /// The linearly oriented `A_n` quiver `1 -> 2 -> ... -> n`.
    pub fn linear_a(n: usize) -> Self {
        let arrows: Vec<_> = (1..n).map(|i| (i - 1, i, 1)).collect();
        Self::from_arrows(n, &arrows).unwrap()
    }

    /// Two vertices with `m` parallel arrows `1 -> 2` (`m = 2` is the Kronecker quiver).
    pub fn multi_arrow(m: u32) -> Self {
        Self::from_arrows(2, &[(0, 1, m)]).unwrap()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arrows(&self, i: usize, j: usize) -> u32 {
        self.mult[i][j]
    }

    /// All arrows as `(source, target, multiplicity)`, 0-based, row-major order.
    pub fn arrow_list(&self) -> Vec<(usize, usize, u32)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.mult[i][j] > 0 {
                    out.push((i, j, self.mult[i][j]));
                }
            }
        }
        out
    }

    pub fn check_loop_free(&self) -> Result<(), QuiverError> {
        match (0..self.n).find(|&i| self.mult[i][i] > 0) {
            Some(i) => Err(QuiverError::Loop { vertex: i + 1 }),
            None => Ok(()),
        }
    }

    /// Fails if some vertex has arrows both to and from `k`.
    pub fn check_no_two_cycle_at(&self, k: usize) -> Result<(), QuiverError> {
        match (0..self.n).find(|&i| self.mult[i][k] > 0 && self.mult[k][i] > 0) {
            Some(i) => Err(QuiverError::TwoCycle { vertex: k + 1, other: i + 1 }),
            None => Ok(()),
        }
    }

    pub fn opposite(&self) -> Self {
        let mut q = Self::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                q.mult[j][i] = self.mult[i][j];
            }
        }
        q
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            n: self.n,
            arrows: self
                .arrow_list()
                .into_iter()
                .map(|(i, j, m)| [i as u32 + 1, j as u32 + 1, m])
                .collect(),
        }
    }

    pub fn from_json(j: &QuiverJson) -> Result<Self, QuiverError> {
        let mut arrows = Vec::with_capacity(j.arrows.len());
        for &[i, j2, m] in &j.arrows {
            if i == 0 || j2 == 0 {
                return Err(QuiverError::VertexOutOfRange { vertex: 0, n: j.n });
            }
            arrows.push((i as usize - 1, j2 as usize - 1, m));
        }
        Self::from_arrows(j.n, &arrows)
    }
}
