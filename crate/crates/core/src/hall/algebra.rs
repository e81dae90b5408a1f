use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::dynkinrep::{hom_dim, indecomposable, positive_roots, DynkinQuiver, FqRep, RepError};
use crate::guard::dimension_guard;
use crate::qtorus::ExpVec;

/// An isomorphism class, as the multiplicity of each positive root in a
/// Krull-Schmidt decomposition. Indices refer to [`positive_roots`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoClass(pub Vec<usize>);

impl IsoClass {
    pub fn zero(roots: usize) -> Self {
        IsoClass(vec![0; roots])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }

    pub fn dim(&self, roots: &[ExpVec]) -> ExpVec {
        let n = roots.first().map_or(0, |r| r.len());
        self.0.iter().zip(roots).fold(ExpVec::zero(n), |acc, (&m, r)| acc.add(&r.scale(m as i64)))
    }

    pub fn display<'a>(&'a self, roots: &'a [ExpVec]) -> impl fmt::Display + 'a {
        ClassDisplay { class: self, roots }
    }
}

struct ClassDisplay<'a> {
    class: &'a IsoClass,
    roots: &'a [ExpVec],
}

impl fmt::Display for ClassDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.class.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, r) in self.class.0.iter().zip(self.roots) {
            if *m == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "V{r}")?;
            if *m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}

/// Classes of total dimension vector at most `bound`, componentwise.
pub fn iso_classes(d: &DynkinQuiver, bound: &ExpVec) -> Vec<IsoClass> {
    let roots = positive_roots(d);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(roots.len());
    fn rec(roots: &[ExpVec], left: &ExpVec, cur: &mut Vec<usize>, out: &mut Vec<IsoClass>) {
        let i = cur.len();
        if i == roots.len() {
            out.push(IsoClass(cur.clone()));
            return;
        }
        let mut left = left.clone();
        let mut m = 0;
        loop {
            cur.push(m);
            rec(roots, &left, cur, out);
            cur.pop();
            left = left.sub(&roots[i]);
            if !left.is_nonneg() {
                break;
            }
            m += 1;
        }
    }
    if bound.is_nonneg() {
        rec(&roots, bound, &mut cur, &mut out);
    }
    out.sort_by(|a, b| {
        let (da, db) = (a.dim(&roots), b.dim(&roots));
        let (sa, sb): (usize, usize) = (a.0.iter().sum(), b.0.iter().sum());
        da.degree().cmp(&db.degree()).then_with(|| db.cmp(&da)).then_with(|| sa.cmp(&sb)).then_with(|| b.cmp(a))
    });
    out
}

/// A finite rational combination of isomorphism classes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HallElement {
    pub terms: BTreeMap<IsoClass, BigRational>,
}

impl HallElement {
    pub fn class(c: IsoClass) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(c, BigRational::one());
        Self { terms }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (c, x) in &other.terms {
            let slot = out.terms.entry(c.clone()).or_insert_with(BigRational::zero);
            *slot += x;
        }
        out.terms.retain(|_, x| !x.is_zero());
        out
    }

    pub fn coeff(&self, c: &IsoClass) -> BigRational {
        self.terms.get(c).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Hall algebra of a Dynkin quiver over `F_p`, truncated at a dimension
/// bound. Hall numbers are tabulated once by enumerating the
/// subrepresentations of a representative of every class in the bound.
pub struct HallAlgebra {
    quiver: DynkinQuiver,
    p: u32,
    bound: ExpVec,
    roots: Vec<ExpVec>,
    indecs: Vec<FqRep>,
    classes: Vec<IsoClass>,
    fingerprints: BTreeMap<Vec<usize>, IsoClass>,
    /// `table[N][(L, M)] = c^N_{LM}`.
    table: BTreeMap<IsoClass, BTreeMap<(IsoClass, IsoClass), u64>>,
}

impl HallAlgebra {
    pub fn new(d: &DynkinQuiver, p: u32, bound: &ExpVec) -> Result<Self, RepError> {
        if bound.len() != d.n() || !bound.is_nonneg() {
            return Err(RepError::Input(format!("bound {bound} does not fit a quiver on {} vertices", d.n())));
        }
        let limit = dimension_guard();
        if bound.degree() as usize > limit {
            return Err(RepError::Guard { what: "dimension bound".into(), got: bound.degree() as usize, limit });
        }
        let roots = positive_roots(d);
        let indecs = roots.iter().map(|a| indecomposable(d, a, p)).collect::<Result<Vec<_>, _>>()?;
        let mut alg = Self {
            quiver: d.clone(),
            p,
            bound: bound.clone(),
            roots,
            indecs,
            classes: iso_classes(d, bound),
            fingerprints: BTreeMap::new(),
            table: BTreeMap::new(),
        };
        for c in alg.classes.clone() {
            let fp = alg.fingerprint(&alg.representative(&c)?)?;
            if let Some(prev) = alg.fingerprints.insert(fp, c.clone()) {
                return Err(RepError::Internal(format!("classes {prev:?} and {c:?} share a fingerprint")));
            }
        }
        for n in alg.classes.clone() {
            let rep = alg.representative(&n)?;
            let mut counts: BTreeMap<(IsoClass, IsoClass), u64> = BTreeMap::new();
            for sub in rep.subreps()? {
                let (u, q) = rep.split(&sub);
                let key = (alg.classify(&u)?, alg.classify(&q)?);
                *counts.entry(key).or_insert(0) += 1;
            }
            alg.table.insert(n, counts);
        }
        Ok(alg)
    }

    pub fn quiver(&self) -> &DynkinQuiver {
        &self.quiver
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn bound(&self) -> &ExpVec {
        &self.bound
    }

    pub fn roots(&self) -> &[ExpVec] {
        &self.roots
    }

    pub fn classes(&self) -> &[IsoClass] {
        &self.classes
    }

    pub fn indecomposables(&self) -> &[FqRep] {
        &self.indecs
    }

    pub fn dim(&self, c: &IsoClass) -> ExpVec {
        c.dim(&self.roots)
    }

    pub fn name(&self, c: &IsoClass) -> String {
        c.display(&self.roots).to_string()
    }

    /// The class of the indecomposable with dimension vector `alpha`.
    pub fn indecomposable_class(&self, alpha: &ExpVec) -> Result<IsoClass, RepError> {
        let i = self.roots.iter().position(|r| r == alpha).ok_or_else(|| RepError::NotARoot(alpha.clone()))?;
        let mut c = IsoClass::zero(self.roots.len());
        c.0[i] = 1;
        Ok(c)
    }

    /// `sum_i m_i c_i` as a class.
    pub fn combine(&self, parts: &[(&IsoClass, usize)]) -> IsoClass {
        let mut out = IsoClass::zero(self.roots.len());
        for (c, k) in parts {
            for (o, m) in out.0.iter_mut().zip(&c.0) {
                *o += m * k;
            }
        }
        out
    }

    pub fn representative(&self, c: &IsoClass) -> Result<FqRep, RepError> {
        let arrows = self.indecs.first().map(|r| r.arrows().to_vec()).unwrap_or_default();
        let mut acc = FqRep::zero(arrows, self.quiver.n(), self.p);
        for (m, v) in c.0.iter().zip(&self.indecs) {
            acc = acc.direct_sum(&v.power(*m)?)?;
        }
        Ok(acc)
    }

    /// `dim Hom(V(beta), m)` for every positive root `beta`; this determines
    /// the isomorphism class of a representation of a Dynkin quiver.
    pub fn fingerprint(&self, m: &FqRep) -> Result<Vec<usize>, RepError> {
        self.indecs.iter().map(|v| hom_dim(v, m)).collect()
    }

    pub fn classify(&self, m: &FqRep) -> Result<IsoClass, RepError> {
        let fp = self.fingerprint(m)?;
        self.fingerprints
            .get(&fp)
            .cloned()
            .ok_or_else(|| RepError::Input(format!("representation of dimension {} is outside the bound", m.dim_vector())))
    }

    /// `c^N_{LM}`: submodules of `N` isomorphic to `L` with quotient isomorphic to `M`.
    pub fn hall_number(&self, l: &IsoClass, m: &IsoClass, n: &IsoClass) -> Result<u64, RepError> {
        let row = self.table.get(n).ok_or_else(|| RepError::Input(format!("class {} is outside the bound", self.name(n))))?;
        Ok(row.get(&(l.clone(), m.clone())).copied().unwrap_or(0))
    }

    /// Hall product, truncated at the bound.
    pub fn mul(&self, x: &HallElement, y: &HallElement) -> HallElement {
        let mut out = HallElement::default();
        for (n, row) in &self.table {
            let mut acc = BigRational::zero();
            for ((l, m), count) in row {
                if let (Some(a), Some(b)) = (x.terms.get(l), y.terms.get(m)) {
                    acc += a * b * BigRational::from_integer((*count).into());
                }
            }
            if !acc.is_zero() {
                out.terms.insert(n.clone(), acc);
            }
        }
        out
    }

    /// `sum_[M] [M]` over every class in the bound.
    pub fn total(&self) -> HallElement {
        let mut out = HallElement::default();
        for c in &self.classes {
            out.terms.insert(c.clone(), BigRational::one());
        }
        out
    }

    pub fn aut_order(&self, c: &IsoClass) -> Result<u64, RepError> {
        self.representative(c)?.aut_order()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkinrep::DynkinType;

    fn a2() -> DynkinQuiver {
        DynkinQuiver::standard(DynkinType::A(2)).unwrap()
    }

    /// Multisets of roots with sum at most `bound`, counted by a coin-change
    /// recursion over dimension vectors.
    fn count_oracle(roots: &[ExpVec], bound: &ExpVec) -> usize {
        let n = bound.len();
        let boxes: Vec<ExpVec> = {
            let mut v = vec![ExpVec::zero(n)];
            for i in 0..n {
                v = v
                    .into_iter()
                    .flat_map(|e| (0..=bound.0[i]).map(move |x| { let mut f = e.clone(); f.0[i] = x; f }))
                    .collect();
            }
            v
        };
        let mut ways: BTreeMap<ExpVec, usize> = boxes.iter().map(|b| (b.clone(), usize::from(b.is_zero()))).collect();
        for r in roots {
            let mut sorted = boxes.clone();
            sorted.sort_by_key(|b| b.degree());
            for b in sorted {
                let prev = b.sub(r);
                if prev.is_nonneg() {
                    let add = ways[&prev];
                    *ways.get_mut(&b).unwrap() += add;
                }
            }
        }
        ways.values().sum()
    }

    #[test]
    fn class_enumeration() {
        let d = a2();
        let roots = positive_roots(&d);
        let cls = iso_classes(&d, &ExpVec(vec![1, 1]));
        let names: Vec<String> = cls.iter().map(|c| c.display(&roots).to_string()).collect();
        assert_eq!(names, vec!["0", "V(1,0)", "V(0,1)", "V(1,1)", "V(1,0)+V(0,1)"]);
        assert_eq!(iso_classes(&d, &ExpVec(vec![0, 0])).len(), 1);
        let a3 = DynkinQuiver::standard(DynkinType::A(3)).unwrap();
        let r3 = positive_roots(&a3);
        for b in [vec![1, 1, 1], vec![2, 1, 2], vec![2, 2, 2]] {
            let b = ExpVec(b);
            assert_eq!(iso_classes(&a3, &b).len(), count_oracle(&r3, &b), "bound {b}");
        }
        assert_eq!(iso_classes(&a3, &ExpVec(vec![1, 1, 1])).len(), 13);
    }

    #[test]
    fn a2_hall_numbers() {
        let d = a2();
        let h = HallAlgebra::new(&d, 2, &ExpVec(vec![1, 1])).unwrap();
        let s1 = h.indecomposable_class(&ExpVec(vec![1, 0])).unwrap();
        let s2 = h.indecomposable_class(&ExpVec(vec![0, 1])).unwrap();
        let p2 = h.indecomposable_class(&ExpVec(vec![1, 1])).unwrap();
        let sum = h.combine(&[(&s1, 1), (&s2, 1)]);
        let zero = IsoClass::zero(3);
        assert_eq!(h.hall_number(&s1, &s2, &p2).unwrap(), 1);
        assert_eq!(h.hall_number(&s1, &s2, &sum).unwrap(), 1);
        assert_eq!(h.hall_number(&s2, &s1, &sum).unwrap(), 1);
        assert_eq!(h.hall_number(&s2, &s1, &p2).unwrap(), 0);
        for n in h.classes() {
            assert_eq!(h.hall_number(&zero, n, n).unwrap(), 1);
            assert_eq!(h.hall_number(n, &zero, n).unwrap(), 1);
        }
        let prod = h.mul(&HallElement::class(s1.clone()), &HallElement::class(s2.clone()));
        assert_eq!(prod, HallElement::class(sum.clone()).add(&HallElement::class(p2)));
        let prod = h.mul(&HallElement::class(s2), &HallElement::class(s1));
        assert_eq!(prod, HallElement::class(sum));
    }

    #[test]
    fn hall_numbers_vanish_off_dimension() {
        let d = a2();
        let h = HallAlgebra::new(&d, 3, &ExpVec(vec![2, 1])).unwrap();
        for n in h.classes() {
            for l in h.classes() {
                for m in h.classes() {
                    if h.dim(l).add(&h.dim(m)) != h.dim(n) {
                        assert_eq!(h.hall_number(l, m, n).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn associativity_on_small_bound() {
        for p in [2, 3] {
            let h = HallAlgebra::new(&a2(), p, &ExpVec(vec![1, 1])).unwrap();
            let els: Vec<HallElement> = h.classes().iter().cloned().map(HallElement::class).collect();
            for x in &els {
                for y in &els {
                    for z in &els {
                        assert_eq!(h.mul(&h.mul(x, y), z), h.mul(x, &h.mul(y, z)));
                    }
                }
            }
        }
    }

    #[test]
    fn automorphisms_of_powers() {
        let h = HallAlgebra::new(&a2(), 2, &ExpVec(vec![3, 1])).unwrap();
        let s1 = h.indecomposable_class(&ExpVec(vec![1, 0])).unwrap();
        assert_eq!(h.aut_order(&s1).unwrap(), 1);
        assert_eq!(h.aut_order(&h.combine(&[(&s1, 2)])).unwrap(), 6);
        assert_eq!(h.aut_order(&h.combine(&[(&s1, 3)])).unwrap(), 168);
    }
}
