use super::diagram::{positive_roots, DynkinQuiver};
use super::RepError;
use crate::guard::{dimension_guard, MAX_ENUMERATION};
use crate::linalg::{all_subspaces, is_prime, Mat};
use crate::qtorus::ExpVec;
use crate::quiver::Quiver;

/// A representation over `F_p` of a quiver `G` given by its arrow list;
/// `maps[a]` is a `dims[t] x dims[s]` matrix for the arrow `a = (s, t)`.
///
/// For reps built from a quiver `Q` the arrow list is that of `Q^op`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqRep {
    p: u32,
    dims: Vec<usize>,
    arrows: Vec<(usize, usize)>,
    maps: Vec<Mat>,
}

/// A subrepresentation given by a row basis of `U_v` at each vertex.
#[derive(Clone, Debug)]
pub struct Subrep {
    pub bases: Vec<Mat>,
}

impl Subrep {
    pub fn dims(&self) -> ExpVec {
        ExpVec(self.bases.iter().map(|b| b.rows() as i64).collect())
    }
}

/// Arrows of `Q^op`: one arrow `j -> i` per arrow `i -> j` of `Q`.
pub fn opposite_arrows(q: &Quiver) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, j, m) in q.arrow_list() {
        for _ in 0..m {
            out.push((j, i));
        }
    }
    out
}

fn check_prime(p: u32) -> Result<(), RepError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(RepError::NotPrime(p))
    }
}

impl FqRep {
    /// `maps` follow [`opposite_arrows`]: the map for `Q`-arrow `i -> j` goes `V_j -> V_i`.
    pub fn new(q: &Quiver, p: u32, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self, RepError> {
        Self::on_arrows(opposite_arrows(q), p, dims, maps)
    }

    pub fn on_arrows(arrows: Vec<(usize, usize)>, p: u32, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self, RepError> {
        check_prime(p)?;
        if maps.len() != arrows.len() {
            return Err(RepError::ShapeMismatch(format!("{} maps for {} arrows", maps.len(), arrows.len())));
        }
        for (&(s, t), m) in arrows.iter().zip(&maps) {
            if s >= dims.len() || t >= dims.len() {
                return Err(RepError::ShapeMismatch(format!("arrow {}->{} out of range", s + 1, t + 1)));
            }
            if m.rows() != dims[t] || m.cols() != dims[s] || m.modulus() != p {
                return Err(RepError::ShapeMismatch(format!("map on arrow {}->{} has the wrong shape", s + 1, t + 1)));
            }
        }
        Ok(Self { p, dims, arrows, maps })
    }

    pub fn zero(arrows: Vec<(usize, usize)>, n: usize, p: u32) -> Self {
        let maps = arrows.iter().map(|_| Mat::zeros(0, 0, p)).collect();
        Self { p, dims: vec![0; n], arrows, maps }
    }

    /// The simple representation at vertex `j`.
    pub fn simple(arrows: Vec<(usize, usize)>, n: usize, j: usize, p: u32) -> Self {
        let mut dims = vec![0; n];
        dims[j] = 1;
        let maps = arrows.iter().map(|&(s, t)| Mat::zeros(dims[t], dims[s], p)).collect();
        Self { p, dims, arrows, maps }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_vector(&self) -> ExpVec {
        ExpVec(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn maps(&self) -> &[Mat] {
        &self.maps
    }

    fn check_same_quiver(&self, other: &Self) -> Result<(), RepError> {
        if self.p != other.p || self.arrows != other.arrows || self.dims.len() != other.dims.len() {
            return Err(RepError::ShapeMismatch("different quivers or fields".into()));
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self, RepError> {
        self.check_same_quiver(other)?;
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| {
                let mut m = Mat::zeros(dims[t], dims[s], self.p);
                let (x, y) = (&self.maps[a], &other.maps[a]);
                for i in 0..x.rows() {
                    for j in 0..x.cols() {
                        m.set(i, j, x.get(i, j));
                    }
                }
                for i in 0..y.rows() {
                    for j in 0..y.cols() {
                        m.set(x.rows() + i, x.cols() + j, y.get(i, j));
                    }
                }
                m
            })
            .collect();
        Ok(Self { p: self.p, dims, arrows: self.arrows.clone(), maps })
    }

    pub fn power(&self, n: usize) -> Result<Self, RepError> {
        let mut acc = Self::zero(self.arrows.clone(), self.dims.len(), self.p);
        for _ in 0..n {
            acc = acc.direct_sum(self)?;
        }
        Ok(acc)
    }

    /// Offsets of the unknown blocks `phi_v` (a `dims_N[v] x dims_M[v]` matrix).
    fn hom_system(&self, other: &Self) -> (Mat, Vec<usize>) {
        let n = self.dims.len();
        let mut offs = Vec::with_capacity(n + 1);
        offs.push(0);
        for v in 0..n {
            offs.push(offs[v] + other.dims[v] * self.dims[v]);
        }
        let unknowns = offs[n];
        let eqs: usize = self.arrows.iter().map(|&(s, t)| other.dims[t] * self.dims[s]).sum();
        let mut sys = Mat::zeros(eqs, unknowns, self.p);
        let var = |v: usize, r: usize, c: usize| offs[v] + r * self.dims[v] + c;
        let mut row = 0;
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            let (ma, na) = (&self.maps[a], &other.maps[a]);
            // N_a phi_s - phi_t M_a = 0
            for r in 0..other.dims[t] {
                for c in 0..self.dims[s] {
                    for l in 0..other.dims[s] {
                        let x = na.get(r, l);
                        if x != 0 {
                            let idx = var(s, l, c);
                            sys.set(row, idx, (sys.get(row, idx) + x) % self.p);
                        }
                    }
                    for l in 0..self.dims[t] {
                        let x = ma.get(l, c);
                        if x != 0 {
                            let idx = var(t, r, l);
                            sys.set(row, idx, (sys.get(row, idx) + self.p - x) % self.p);
                        }
                    }
                    row += 1;
                }
            }
        }
        (sys, offs)
    }

    /// A basis of `Hom(self, other)`, each element given by its vertex maps.
    pub fn hom_basis(&self, other: &Self) -> Result<Vec<Vec<Mat>>, RepError> {
        self.check_same_quiver(other)?;
        let (sys, offs) = self.hom_system(other);
        let null = sys.nullspace();
        let n = self.dims.len();
        Ok((0..null.cols())
            .map(|k| {
                (0..n)
                    .map(|v| {
                        let mut m = Mat::zeros(other.dims[v], self.dims[v], self.p);
                        for r in 0..other.dims[v] {
                            for c in 0..self.dims[v] {
                                m.set(r, c, null.get(offs[v] + r * self.dims[v] + c, k));
                            }
                        }
                        m
                    })
                    .collect()
            })
            .collect())
    }

    fn is_stable_pair(&self, a: usize, bs: &Mat, bt: &Mat) -> bool {
        // M_a(U_s) inside U_t
        if bs.rows() == 0 {
            return true;
        }
        let img = self.maps[a].mul(&bs.transpose()).transpose();
        let stacked = Mat::vstack(&[bt, &img], bt.cols(), self.p);
        stacked.rank() == bt.rows()
    }

    fn check_guard(&self) -> Result<(), RepError> {
        let limit = dimension_guard();
        if self.total_dim() > limit {
            return Err(RepError::Guard { what: "representation dimension".into(), got: self.total_dim(), limit });
        }
        Ok(())
    }

    /// Every subrepresentation, including `0` and the whole representation.
    pub fn subreps(&self) -> Result<Vec<Subrep>, RepError> {
        self.check_guard()?;
        let n = self.dims.len();
        let choices: Vec<Vec<Mat>> = self.dims.iter().map(|&d| all_subspaces(d, self.p)).collect();
        let mut out = Vec::new();
        let mut cur: Vec<Mat> = Vec::with_capacity(n);
        self.subreps_rec(&choices, &mut cur, &mut out);
        Ok(out)
    }

    fn subreps_rec(&self, choices: &[Vec<Mat>], cur: &mut Vec<Mat>, out: &mut Vec<Subrep>) {
        let v = cur.len();
        if v == choices.len() {
            out.push(Subrep { bases: cur.clone() });
            return;
        }
        for u in &choices[v] {
            cur.push(u.clone());
            // check arrows whose endpoints are both chosen, one of them being v
            let ok = self.arrows.iter().enumerate().all(|(a, &(s, t))| {
                if s.max(t) != v {
                    return true;
                }
                self.is_stable_pair(a, &cur[s], &cur[t])
            });
            if ok {
                self.subreps_rec(choices, cur, out);
            }
            cur.pop();
        }
    }

    /// Dimension vectors of the nonzero proper subrepresentations.
    pub fn subrep_dims(&self) -> Result<std::collections::BTreeSet<ExpVec>, RepError> {
        let total = self.dim_vector();
        Ok(self
            .subreps()?
            .into_iter()
            .map(|s| s.dims())
            .filter(|d| !d.is_zero() && *d != total)
            .collect())
    }

    /// The subrepresentation `U` and the quotient `self / U`, in bases adapted
    /// to `U`.
    pub fn split(&self, sub: &Subrep) -> (FqRep, FqRep) {
        let n = self.dims.len();
        let mut change = Vec::with_capacity(n); // columns: basis of U then complement
        let mut change_inv = Vec::with_capacity(n);
        for v in 0..n {
            let b = &sub.bases[v];
            let (_, piv) = b.rref();
            let d = self.dims[v];
            let mut full = Mat::zeros(d, d, self.p);
            for i in 0..b.rows() {
                for j in 0..d {
                    full.set(i, j, b.get(i, j));
                }
            }
            for (r, c) in (b.rows()..).zip((0..d).filter(|c| !piv.contains(c))) {
                full.set(r, c, 1);
            }
            let pt = full.transpose();
            change_inv.push(pt.inverse().expect("adapted basis is invertible"));
            change.push(pt);
        }
        let k: Vec<usize> = sub.bases.iter().map(|b| b.rows()).collect();
        let mut sub_maps = Vec::new();
        let mut quo_maps = Vec::new();
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            let m = change_inv[t].mul(&self.maps[a]).mul(&change[s]);
            debug_assert!(m.block(k[t], self.dims[t], 0, k[s]).is_zero());
            sub_maps.push(m.block(0, k[t], 0, k[s]));
            quo_maps.push(m.block(k[t], self.dims[t], k[s], self.dims[s]));
        }
        let qd: Vec<usize> = self.dims.iter().zip(&k).map(|(d, k)| d - k).collect();
        (
            FqRep { p: self.p, dims: k, arrows: self.arrows.clone(), maps: sub_maps },
            FqRep { p: self.p, dims: qd, arrows: self.arrows.clone(), maps: quo_maps },
        )
    }

    /// Number of invertible endomorphisms, by enumerating `End`.
    pub fn aut_order(&self) -> Result<u64, RepError> {
        self.check_guard()?;
        let basis = self.hom_basis(self)?;
        let size = (self.p as u64).checked_pow(basis.len() as u32).filter(|&s| s <= MAX_ENUMERATION);
        let Some(size) = size else {
            return Err(RepError::Guard { what: "endomorphism algebra size".into(), got: basis.len(), limit: 22 });
        };
        let n = self.dims.len();
        let mut count = 0;
        for code in 0..size {
            let mut ok = true;
            for v in 0..n {
                let mut m = Mat::zeros(self.dims[v], self.dims[v], self.p);
                let mut c = code;
                for b in &basis {
                    let coef = (c % self.p as u64) as u32;
                    c /= self.p as u64;
                    if coef != 0 {
                        m = m.add(&b[v].scale(coef));
                    }
                }
                if !m.is_invertible() {
                    ok = false;
                    break;
                }
            }
            if ok {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Reflection at a sink `k`: `V'_k` is the kernel of `sum_a V_{s(a)} -> V_k`.
    pub fn reflect_at_sink(&self, k: usize) -> Self {
        let incoming: Vec<usize> = (0..self.arrows.len()).filter(|&a| self.arrows[a].1 == k).collect();
        let parts: Vec<&Mat> = incoming.iter().map(|&a| &self.maps[a]).collect();
        let phi = Mat::hstack(&parts, self.dims[k], self.p);
        let kernel = phi.nullspace();
        let c = kernel.cols();
        let mut out = self.clone();
        out.dims[k] = c;
        let mut off = 0;
        for &a in &incoming {
            let s = self.arrows[a].0;
            out.arrows[a] = (k, s);
            out.maps[a] = kernel.block(off, off + self.dims[s], 0, c);
            off += self.dims[s];
        }
        out
    }

    /// Reflection at a source `k`: `V'_k` is the cokernel of `V_k -> sum_a V_{t(a)}`.
    pub fn reflect_at_source(&self, k: usize) -> Self {
        let outgoing: Vec<usize> = (0..self.arrows.len()).filter(|&a| self.arrows[a].0 == k).collect();
        let parts: Vec<&Mat> = outgoing.iter().map(|&a| &self.maps[a]).collect();
        let psi = Mat::vstack(&parts, self.dims[k], self.p);
        let coker = psi.left_nullspace();
        let c = coker.rows();
        let mut out = self.clone();
        out.dims[k] = c;
        let mut off = 0;
        for &a in &outgoing {
            let t = self.arrows[a].1;
            out.arrows[a] = (t, k);
            out.maps[a] = coker.block(0, c, off, off + self.dims[t]);
            off += self.dims[t];
        }
        out
    }
}

fn is_sink(arrows: &[(usize, usize)], v: usize) -> bool {
    arrows.iter().all(|&(s, _)| s != v)
}

/// Vertices ordered so that each is a sink after reflecting at the previous ones.
fn sink_order(arrows: &[(usize, usize)], n: usize) -> Option<Vec<usize>> {
    let mut done = vec![false; n];
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = (0..n).find(|&v| !done[v] && arrows.iter().all(|&(s, t)| s != v || done[t]))?;
        done[v] = true;
        out.push(v);
    }
    Some(out)
}

fn reflect_dims(arrows: &[(usize, usize)], alpha: &ExpVec, k: usize) -> ExpVec {
    let mut b = alpha.clone();
    let neigh: i64 = arrows
        .iter()
        .map(|&(s, t)| if t == k { alpha.0[s] } else if s == k { alpha.0[t] } else { 0 })
        .sum();
    b.0[k] = neigh - alpha.0[k];
    b
}

/// The indecomposable representation with dimension vector `alpha`, built by
/// reflecting `alpha` down to a simple root at sinks and lifting the simple
/// back with source reflections.
pub fn indecomposable(d: &DynkinQuiver, alpha: &ExpVec, p: u32) -> Result<FqRep, RepError> {
    check_prime(p)?;
    let n = d.n();
    if !positive_roots(d).contains(alpha) {
        return Err(RepError::NotARoot(alpha.clone()));
    }
    let start = opposite_arrows(d.quiver());
    let order = sink_order(&start, n).ok_or_else(|| RepError::NotDynkin("oriented cycle".into()))?;
    let mut arrows = start.clone();
    let mut a = alpha.clone();
    let mut steps = Vec::new();
    let limit = 4 * n * n + 8;
    'outer: loop {
        for &k in &order {
            if a.degree() == 1 {
                break 'outer;
            }
            debug_assert!(is_sink(&arrows, k));
            a = reflect_dims(&arrows, &a, k);
            for arr in arrows.iter_mut() {
                if arr.1 == k {
                    *arr = (k, arr.0);
                }
            }
            steps.push(k);
            if steps.len() > limit || !a.is_nonneg() {
                return Err(RepError::Internal(format!("reflection sequence for {alpha} did not reach a simple root")));
            }
        }
    }
    let j = a.0.iter().position(|&x| x == 1).expect("simple root");
    let mut rep = FqRep::simple(arrows, n, j, p);
    for &k in steps.iter().rev() {
        rep = rep.reflect_at_source(k);
    }
    debug_assert_eq!(rep.arrows, start);
    if rep.dim_vector() != *alpha {
        return Err(RepError::Internal(format!("built dimension {} instead of {alpha}", rep.dim_vector())));
    }
    let end = rep.hom_basis(&rep)?.len();
    if end != 1 {
        return Err(RepError::Internal(format!("End of V{alpha} has dimension {end}")));
    }
    Ok(rep)
}

/// `dim Ext^1(m, n)`, as the cokernel of the standard resolution map
/// `sum_v Hom(M_v, N_v) -> sum_{a: s -> t} Hom(M_s, N_t)`.
pub fn ext1_dim(m: &FqRep, n: &FqRep) -> Result<usize, RepError> {
    m.check_same_quiver(n)?;
    let (sys, _) = m.hom_system(n);
    Ok(sys.rows() - sys.rank())
}

/// `dim Hom(m, n)` over `F_p`.
pub fn hom_dim(m: &FqRep, n: &FqRep) -> Result<usize, RepError> {
    m.check_same_quiver(n)?;
    let (sys, _) = m.hom_system(n);
    Ok(sys.cols() - sys.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkinrep::DynkinType;

    fn a2() -> DynkinQuiver {
        DynkinQuiver::standard(DynkinType::A(2)).unwrap()
    }

    #[test]
    fn a2_projective_is_identity_map() {
        let p2 = indecomposable(&a2(), &ExpVec(vec![1, 1]), 2).unwrap();
        assert_eq!(p2.arrows(), &[(1, 0)]);
        assert_eq!(p2.maps()[0], Mat::identity(1, 2));
        let s1 = indecomposable(&a2(), &ExpVec(vec![1, 0]), 2).unwrap();
        assert_eq!(s1.dims(), &[1, 0]);
        assert!(indecomposable(&a2(), &ExpVec(vec![2, 1]), 2).is_err());
        assert!(indecomposable(&a2(), &ExpVec(vec![1, 1]), 4).is_err());
    }

    #[test]
    fn a2_hom_dimensions() {
        let d = a2();
        let s1 = indecomposable(&d, &ExpVec(vec![1, 0]), 2).unwrap();
        let s2 = indecomposable(&d, &ExpVec(vec![0, 1]), 2).unwrap();
        let p2 = indecomposable(&d, &ExpVec(vec![1, 1]), 2).unwrap();
        assert_eq!(hom_dim(&s1, &p2).unwrap(), 1);
        assert_eq!(hom_dim(&s2, &p2).unwrap(), 0);
        assert_eq!(hom_dim(&p2, &s2).unwrap(), 1);
        assert_eq!(hom_dim(&s1, &s2).unwrap(), 0);
        assert_eq!(hom_dim(&p2, &p2).unwrap(), 1);
    }

    #[test]
    fn a2_subreps() {
        let d = a2();
        let p2 = indecomposable(&d, &ExpVec(vec![1, 1]), 2).unwrap();
        assert_eq!(p2.subrep_dims().unwrap().into_iter().collect::<Vec<_>>(), vec![ExpVec(vec![1, 0])]);
        let s1 = indecomposable(&d, &ExpVec(vec![1, 0]), 2).unwrap();
        let s2 = indecomposable(&d, &ExpVec(vec![0, 1]), 2).unwrap();
        assert!(s1.subrep_dims().unwrap().is_empty());
        let sum = s1.direct_sum(&s2).unwrap();
        let dims: Vec<_> = sum.subrep_dims().unwrap().into_iter().collect();
        assert_eq!(dims, vec![ExpVec(vec![0, 1]), ExpVec(vec![1, 0])]);
    }

    #[test]
    fn split_gives_sub_and_quotient() {
        let d = a2();
        let p2 = indecomposable(&d, &ExpVec(vec![1, 1]), 3).unwrap();
        for s in p2.subreps().unwrap() {
            let (u, q) = p2.split(&s);
            assert_eq!(u.dim_vector().add(&q.dim_vector()), p2.dim_vector());
            assert_eq!(u.dim_vector(), s.dims());
        }
    }

    #[test]
    fn automorphism_counts() {
        let d = a2();
        let s1 = indecomposable(&d, &ExpVec(vec![1, 0]), 2).unwrap();
        assert_eq!(s1.aut_order().unwrap(), 1);
        assert_eq!(indecomposable(&d, &ExpVec(vec![1, 0]), 3).unwrap().aut_order().unwrap(), 2);
        assert_eq!(s1.power(2).unwrap().aut_order().unwrap(), 6);
        assert_eq!(s1.power(3).unwrap().aut_order().unwrap(), 168);
    }

    #[test]
    fn gabriel_bijection_small_types() {
        for ty in ["A3", "A4", "D4", "D5"] {
            let ty: DynkinType = ty.parse().unwrap();
            for dq in DynkinQuiver::all_orientations(ty).unwrap() {
                for alpha in positive_roots(&dq) {
                    let v = indecomposable(&dq, &alpha, 2).unwrap();
                    assert_eq!(v.dim_vector(), alpha);
                }
            }
        }
    }

    #[test]
    fn sink_then_source_reflection_returns_the_module() {
        let d = DynkinQuiver::standard(DynkinType::A(3)).unwrap();
        let v = indecomposable(&d, &ExpVec(vec![1, 1, 1]), 3).unwrap();
        let k = (0..3).find(|&k| v.arrows().iter().all(|&(s, _)| s != k)).unwrap();
        let r = v.reflect_at_sink(k);
        assert_eq!(r.total_dim(), 2);
        assert_eq!(r.hom_basis(&r).unwrap().len(), 1);
        let back = r.reflect_at_source(k);
        assert_eq!(back.dim_vector(), v.dim_vector());
        assert_eq!(hom_dim(&back, &v).unwrap(), 1);
        assert_eq!(back.arrows(), v.arrows());
    }

    #[test]
    fn hom_dims_agree_over_two_fields() {
        for dq in DynkinQuiver::all_orientations(DynkinType::A(3)).unwrap() {
            let roots = positive_roots(&dq);
            let r2: Vec<_> = roots.iter().map(|a| indecomposable(&dq, a, 2).unwrap()).collect();
            let r3: Vec<_> = roots.iter().map(|a| indecomposable(&dq, a, 3).unwrap()).collect();
            for i in 0..roots.len() {
                assert_eq!(r2[i].subrep_dims().unwrap(), r3[i].subrep_dims().unwrap());
                for j in 0..roots.len() {
                    assert_eq!(hom_dim(&r2[i], &r2[j]).unwrap(), hom_dim(&r3[i], &r3[j]).unwrap());
                }
            }
        }
    }

    #[test]
    fn e6_indecomposables_exist() {
        let dq = DynkinQuiver::standard(DynkinType::E(6)).unwrap();
        for alpha in positive_roots(&dq) {
            assert_eq!(indecomposable(&dq, &alpha, 2).unwrap().dim_vector(), alpha);
        }
    }
}
