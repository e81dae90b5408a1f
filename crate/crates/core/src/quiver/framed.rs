use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Quiver, QuiverError};
use crate::qtorus::{ExpVec, SkewForm};

/// A quiver on mutable vertices `0..n` together with frozen copies `n..2n`,
/// stored as its signed exchange matrix `b[i][j] = #(i -> j) - #(j -> i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedQuiver {
    n: usize,
    b: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Green,
    Red,
}

/// `{"n": n, "arrows": [[i, j, mult], ...], "b": [[...]]}` over all `2n`
/// vertices, 1-based, frozen vertices numbered `n+1..2n`. On input `b` is
/// authoritative and `arrows` may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramedJson {
    pub n: usize,
    #[serde(default)]
    pub arrows: Vec<[u32; 3]>,
    pub b: Vec<Vec<i64>>,
}

impl FramedQuiver {
    /// Adds a frozen vertex `i'` and an arrow `i -> i'` for each vertex.
    pub fn frame(q: &Quiver) -> Result<Self, QuiverError> {
        q.check_loop_free()?;
        let n = q.n();
        let mut b = vec![vec![0; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                b[i][j] = q.arrows(i, j) as i64 - q.arrows(j, i) as i64;
            }
            b[i][n + i] = 1;
            b[n + i][i] = -1;
        }
        Ok(Self { n, b })
    }

    /// Validates antisymmetry and the absence of arrows between frozen vertices.
    pub fn from_matrix(n: usize, b: Vec<Vec<i64>>) -> Result<Self, QuiverError> {
        if b.len() != 2 * n || b.iter().any(|r| r.len() != 2 * n) {
            return Err(QuiverError::BadMatrix(format!("expected a {0}x{0} matrix", 2 * n)));
        }
        for i in 0..2 * n {
            for j in 0..2 * n {
                if b[i][j] != -b[j][i] {
                    return Err(QuiverError::BadMatrix(format!("entries ({}, {}) are not antisymmetric", i + 1, j + 1)));
                }
                if i >= n && j >= n && b[i][j] != 0 {
                    return Err(QuiverError::BadMatrix(format!("arrow between frozen vertices {} and {}", i + 1, j + 1)));
                }
            }
        }
        Ok(Self { n, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i][j]
    }

    fn check_mutable(&self, k: usize) -> Result<(), QuiverError> {
        if k >= 2 * self.n {
            return Err(QuiverError::VertexOutOfRange { vertex: k + 1, n: 2 * self.n });
        }
        if k >= self.n {
            return Err(QuiverError::FrozenVertex { vertex: k + 1 });
        }
        Ok(())
    }

    /// Matrix mutation at the mutable vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Self, QuiverError> {
        self.check_mutable(k)?;
        let m = 2 * self.n;
        let b = &self.b;
        let mut out = b.clone();
        for i in 0..m {
            for j in 0..m {
                out[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
                };
            }
        }
        Ok(Self { n: self.n, b: out })
    }

    pub fn mutate_seq(&self, seq: &[usize]) -> Result<Self, QuiverError> {
        seq.iter().try_fold(self.clone(), |f, &k| f.mutate(k))
    }

    /// The frozen row of `k` and its common sign.
    pub fn c_vector(&self, k: usize) -> Result<(ExpVec, i8), QuiverError> {
        self.check_mutable(k)?;
        let row: Vec<i64> = self.b[k][self.n..].to_vec();
        let eps = if row.iter().all(|&x| x >= 0) && row.iter().any(|&x| x > 0) {
            1
        } else if row.iter().all(|&x| x <= 0) && row.iter().any(|&x| x < 0) {
            -1
        } else {
            return Err(QuiverError::SignCoherence { vertex: k + 1, row });
        };
        Ok((ExpVec(row), eps))
    }

    /// Green iff no arrow from a frozen vertex ends at `k`.
    pub fn is_green(&self, k: usize) -> bool {
        k < self.n && {
            let row = &self.b[k][self.n..];
            row.iter().all(|&x| x >= 0) && row.iter().any(|&x| x > 0)
        }
    }

    pub fn colors(&self) -> Vec<Color> {
        (0..self.n).map(|k| if self.is_green(k) { Color::Green } else { Color::Red }).collect()
    }

    /// All mutable vertices are red.
    pub fn is_maximal(&self) -> bool {
        (0..self.n).all(|k| !self.is_green(k))
    }

    /// The full quiver on `2n` vertices.
    pub fn quiver(&self) -> Quiver {
        let m = 2 * self.n;
        let mut arrows = Vec::new();
        for i in 0..m {
            for j in 0..m {
                if self.b[i][j] > 0 {
                    arrows.push((i, j, self.b[i][j] as u32));
                }
            }
        }
        Quiver::from_arrows(m, &arrows).expect("indices in range")
    }

    /// The quiver on the mutable vertices.
    pub fn mutable_part(&self) -> Quiver {
        let mut arrows = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.b[i][j] > 0 {
                    arrows.push((i, j, self.b[i][j] as u32));
                }
            }
        }
        Quiver::from_arrows(self.n, &arrows).expect("indices in range")
    }

    /// `lambda(e_i, e_j) = b[i][j]` on the mutable vertices.
    pub fn skew_form(&self) -> SkewForm {
        let m = (0..self.n).map(|i| self.b[i][..self.n].to_vec()).collect();
        SkewForm::new(m).expect("exchange matrix is antisymmetric")
    }

    pub fn to_json(&self) -> FramedJson {
        FramedJson { n: self.n, arrows: self.quiver().to_json().arrows, b: self.b.clone() }
    }

    pub fn from_json(j: &FramedJson) -> Result<Self, QuiverError> {
        Self::from_matrix(j.n, j.b.clone())
    }

    fn label(&self, v: usize) -> String {
        if v < self.n {
            format!("{}", v + 1)
        } else {
            format!("{}'", v - self.n + 1)
        }
    }
}

/// Arrow list such as `{1->2, 1->1', 2->2'}`, mutable sources first.
impl fmt::Display for FramedQuiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for i in 0..2 * self.n {
            for j in 0..2 * self.n {
                let m = self.b[i][j];
                if m > 0 {
                    let mult = if m > 1 { format!("{m}x") } else { String::new() };
                    parts.push(format!("{mult}{}->{}", self.label(i), self.label(j)));
                }
            }
        }
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> FramedQuiver {
        FramedQuiver::frame(&Quiver::linear_a(2)).unwrap()
    }

    #[test]
    fn framing_a2() {
        assert_eq!(a2().to_string(), "{1->2, 1->1', 2->2'}");
        assert_eq!(FramedQuiver::frame(&Quiver::empty(1)).unwrap().to_string(), "{1->1'}");
        let kr = FramedQuiver::frame(&Quiver::multi_arrow(2)).unwrap();
        assert_eq!(kr.entry(0, 1), 2);
        assert!(a2().colors().iter().all(|c| *c == Color::Green));
    }

    #[test]
    fn a2_mutations_by_hand() {
        let m1 = a2().mutate(0).unwrap();
        assert_eq!(m1.to_string(), "{2->1, 2->2', 1'->1}");
        assert_eq!(m1.colors(), vec![Color::Red, Color::Green]);
        assert_eq!(m1.c_vector(0).unwrap(), (ExpVec(vec![-1, 0]), -1));
        let m2 = a2().mutate(1).unwrap();
        assert_eq!(m2.to_string(), "{1->1', 1->2', 2->1, 2'->2}");
        let m12 = m1.mutate(1).unwrap();
        assert_eq!(m12.to_string(), "{1->2, 1'->1, 2'->2}");
        assert!(m12.is_maximal());
        let m21 = m2.mutate(0).unwrap();
        assert_eq!(m21.c_vector(1).unwrap(), (ExpVec(vec![1, 0]), 1));
        let m212 = m21.mutate(1).unwrap();
        assert_eq!(m212.to_string(), "{2->1, 1'->2, 2'->1}");
        assert!(m212.is_maximal());
    }

    #[test]
    fn mutation_is_an_involution_and_rejects_frozen() {
        let f = FramedQuiver::frame(&Quiver::multi_arrow(3)).unwrap();
        for k in 0..2 {
            assert_eq!(f.mutate(k).unwrap().mutate(k).unwrap(), f);
        }
        assert_eq!(f.mutate(2), Err(QuiverError::FrozenVertex { vertex: 3 }));
        assert!(f.mutate(4).is_err());
    }

    #[test]
    fn json_round_trip_and_validation() {
        let f = a2().mutate(0).unwrap();
        let j = f.to_json();
        assert_eq!(FramedQuiver::from_json(&j).unwrap(), f);
        let mut bad = j.clone();
        bad.b[2][3] = 1;
        bad.b[3][2] = -1;
        assert!(FramedQuiver::from_json(&bad).is_err());
        let mut bad = j;
        bad.b[0][1] = 5;
        assert!(FramedQuiver::from_json(&bad).is_err());
    }

    #[test]
    fn mixed_row_is_reported() {
        let f = FramedQuiver::from_matrix(
            2,
            vec![vec![0, 0, 1, -1], vec![0, 0, 0, 1], vec![-1, 0, 0, 0], vec![1, -1, 0, 0]],
        )
        .unwrap();
        assert!(matches!(f.c_vector(0), Err(QuiverError::SignCoherence { vertex: 1, .. })));
        assert!(!f.is_green(0));
    }
}
