//! Dense linear algebra over a prime field `F_p`.

/// A dense matrix over `F_p`, entries in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    p: u32,
    data: Vec<u32>,
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is prime and a != 0
    let mut r: u64 = 1;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize, p: u32) -> Self {
        Self { rows, cols, p, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize, p: u32) -> Self {
        let mut m = Self::zeros(n, n, p);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>], cols: usize, p: u32) -> Self {
        let mut m = Self::zeros(rows.len(), cols, p);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x.rem_euclid(p as i64) as u32);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let p = self.p as u64;
        let mut out = Mat::zeros(self.rows, other.cols, self.p);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (x, y) in out.data.iter_mut().zip(&other.data) {
            *x = (*x + *y) % self.p;
        }
        out
    }

    pub fn scale(&self, c: u32) -> Mat {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = ((*x as u64 * c as u64) % self.p as u64) as u32;
        }
        out
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows, self.p);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Rows `r0..r1` and columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        let mut out = Mat::zeros(r1 - r0, c1 - c0, self.p);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j));
            }
        }
        out
    }

    pub fn hstack(parts: &[&Mat], rows: usize, p: u32) -> Mat {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Mat::zeros(rows, cols, p);
        let mut c0 = 0;
        for m in parts {
            assert_eq!(m.rows, rows);
            for i in 0..rows {
                for j in 0..m.cols {
                    out.set(i, c0 + j, m.get(i, j));
                }
            }
            c0 += m.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Mat], cols: usize, p: u32) -> Mat {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Mat::zeros(rows, cols, p);
        let mut r0 = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            for i in 0..m.rows {
                for j in 0..cols {
                    out.set(r0 + i, j, m.get(i, j));
                }
            }
            r0 += m.rows;
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, r * self.cols + j);
                }
            }
            let inv = inv_mod(self.get(r, c), self.p) as u64;
            for j in 0..self.cols {
                let idx = r * self.cols + j;
                self.data[idx] = (self.data[idx] as u64 * inv % p) as u32;
            }
            for i in 0..self.rows {
                let f = self.get(i, c) as u64;
                if i == r || f == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let sub = f * self.get(r, j) as u64 % p;
                    let idx = i * self.cols + j;
                    self.data[idx] = ((self.data[idx] as u64 + p - sub) % p) as u32;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let piv = m.rref_in_place();
        (m, piv)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}` as the columns of the returned matrix.
    pub fn nullspace(&self) -> Mat {
        let (r, piv) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        let mut out = Mat::zeros(self.cols, free.len(), self.p);
        for (k, &f) in free.iter().enumerate() {
            out.set(f, k, 1);
            for (i, &pc) in piv.iter().enumerate() {
                let x = r.get(i, f);
                if x != 0 {
                    out.set(pc, k, self.p - x);
                }
            }
        }
        out
    }

    /// Basis of `{y : y A = 0}` as the rows of the returned matrix.
    pub fn left_nullspace(&self) -> Mat {
        self.transpose().nullspace().transpose()
    }

    /// A row basis of the row space, in reduced echelon form.
    pub fn row_space(&self) -> Mat {
        let (r, piv) = self.rref();
        r.block(0, piv.len(), 0, self.cols)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Mat::hstack(&[self, &Mat::identity(n, self.p)], n, self.p);
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        Some(r.block(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }
}

/// All subspaces of `F_p^d` of dimension `k`, each as a `k x d` matrix in
/// reduced row echelon form.
pub fn subspaces_of_dim(d: usize, k: usize, p: u32) -> Vec<Mat> {
    let mut out = Vec::new();
    // choose pivot columns, then fill the free entries right of each pivot
    fn choose(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..d {
            cur.push(c);
            choose(c + 1, d, k, cur, out);
            cur.pop();
        }
    }
    let mut pivot_sets = Vec::new();
    choose(0, d, k, &mut Vec::new(), &mut pivot_sets);
    for piv in pivot_sets {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|i| (piv[i] + 1..d).filter(|c| !piv.contains(c)).map(move |c| (i, c)))
            .collect();
        let total = (p as u64).pow(free.len() as u32);
        for mut code in 0..total {
            let mut m = Mat::zeros(k, d, p);
            for (i, &c) in piv.iter().enumerate() {
                m.set(i, c, 1);
            }
            for &(i, c) in &free {
                m.set(i, c, (code % p as u64) as u32);
                code /= p as u64;
            }
            out.push(m);
        }
    }
    out
}

/// All subspaces of `F_p^d`, by increasing dimension.
pub fn all_subspaces(d: usize, p: u32) -> Vec<Mat> {
    (0..=d).flat_map(|k| subspaces_of_dim(d, k, p)).collect()
}

/// Gaussian binomial `[d choose k]_p`, the number of `k`-dimensional subspaces.
pub fn gaussian_binomial(d: usize, k: usize, p: u64) -> u64 {
    if k > d {
        return 0;
    }
    let mut num: u64 = 1;
    let mut den: u64 = 1;
    for i in 0..k {
        num *= p.pow((d - i) as u32) - 1;
        den *= p.pow((i + 1) as u32) - 1;
    }
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_nullspace_and_inverse() {
        let a = Mat::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]], 3, 5);
        assert_eq!(a.rank(), 1);
        let n = a.nullspace();
        assert_eq!(n.cols(), 2);
        assert!(a.mul(&n).is_zero());
        let l = a.left_nullspace();
        assert_eq!(l.rows(), 1);
        assert!(l.mul(&a).is_zero());
        let b = Mat::from_rows(&[vec![1, 1], vec![0, 1]], 2, 2);
        let bi = b.inverse().unwrap();
        assert_eq!(b.mul(&bi), Mat::identity(2, 2));
        assert!(Mat::from_rows(&[vec![1, 1], vec![1, 1]], 2, 2).inverse().is_none());
    }

    #[test]
    fn subspace_counts_are_gaussian_binomials() {
        for p in [2u32, 3] {
            for d in 0..=4 {
                for k in 0..=d {
                    let subs = subspaces_of_dim(d, k, p);
                    assert_eq!(subs.len() as u64, gaussian_binomial(d, k, p as u64));
                    assert!(subs.iter().all(|s| s.rank() == k));
                }
            }
        }
        // F_2^2 has 5 subspaces
        assert_eq!(all_subspaces(2, 2).len(), 5);
    }

    #[test]
    fn stacking() {
        let a = Mat::from_rows(&[vec![1, 0]], 2, 3);
        let b = Mat::from_rows(&[vec![0, 2]], 2, 3);
        let v = Mat::vstack(&[&a, &b], 2, 3);
        assert_eq!(v.to_rows(), vec![vec![1, 0], vec![0, 2]]);
        let h = Mat::hstack(&[&a, &b], 1, 3);
        assert_eq!(h.to_rows(), vec![vec![1, 0, 0, 2]]);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
    }
}
