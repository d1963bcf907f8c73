//! Enumerable finitary proto-abelian categories: finite-dimensional vector
//! spaces over a prime field, free pointed `G`-sets of finite rank (modules
//! over the field with one element twisted by `G`), and finite abelian
//! p-groups.
//!
//! Every object is modelled concretely on a finite element set with `0` as
//! zero element or basepoint, and morphisms are the induced functions on
//! element indices. Short exact sequences, subobjects and quotients are
//! computed on that model.

mod objects;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactmath::{factorial, partitions_of, Partition};
use crate::par::prelude::*;
use crate::wreath::FiniteGroup;

pub use objects::{compose, invert, is_injective, is_surjective, Map, Object, Subobject};

/// Canonical key of an isomorphism class.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum IsoClass {
    /// Dimension of a vector space.
    Dim(usize),
    /// Rank of a free pointed `G`-set.
    Rank(usize),
    /// Type of an abelian p-group: `⊕ Z/p^{λ_i}`.
    Type(Partition),
}

impl IsoClass {
    /// The additive size invariant (dimension, rank, or log_p of the order).
    pub fn size(&self) -> usize {
        match self {
            IsoClass::Dim(n) | IsoClass::Rank(n) => *n,
            IsoClass::Type(l) => l.size(),
        }
    }
}

impl Ord for IsoClass {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size().cmp(&other.size()).then_with(|| match (self, other) {
            (IsoClass::Type(a), IsoClass::Type(b)) => a.cmp(b),
            (a, b) => format!("{a:?}").cmp(&format!("{b:?}")),
        })
    }
}

impl PartialOrd for IsoClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoClass::Dim(n) | IsoClass::Rank(n) => write!(f, "{n}"),
            IsoClass::Type(l) => write!(f, "{l}"),
        }
    }
}

impl Serialize for IsoClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Clone, Debug)]
pub enum Family {
    VectFq { q: u64 },
    F1Free { group: Arc<FiniteGroup> },
    AbPGroups { p: u64 },
}

/// A concrete category together with a bound on the size invariant.
#[derive(Clone, Debug)]
pub struct ProtoAbelianInstance {
    family: Family,
    bound: usize,
}

/// Largest element set the enumerations accept.
pub const MAX_ELEMENTS: u64 = 64;

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl ProtoAbelianInstance {
    pub fn vect(q: u64, bound: usize) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::Unsupported(format!("q = {q} must be prime")));
        }
        Ok(ProtoAbelianInstance {
            family: Family::VectFq { q },
            bound,
        })
    }

    pub fn f1_free(group: FiniteGroup, bound: usize) -> Self {
        ProtoAbelianInstance {
            family: Family::F1Free { group: Arc::new(group) },
            bound,
        }
    }

    /// Abelian p-groups of order at most `p^bound`.
    pub fn p_groups(p: u64, bound: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Unsupported(format!("p = {p} must be prime")));
        }
        Ok(ProtoAbelianInstance {
            family: Family::AbPGroups { p },
            bound,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn with_bound(&self, bound: usize) -> Self {
        ProtoAbelianInstance {
            family: self.family.clone(),
            bound,
        }
    }

    pub fn tag(&self) -> String {
        match &self.family {
            Family::VectFq { q } => format!("vect-f{q}"),
            Family::F1Free { group } => format!("f1-free-{}", group.name()),
            Family::AbPGroups { p } => format!("ab-{p}-groups"),
        }
    }

    pub fn zero_class(&self) -> IsoClass {
        self.classes_of_size(0).remove(0)
    }

    pub fn classes_of_size(&self, s: usize) -> Vec<IsoClass> {
        match &self.family {
            Family::VectFq { .. } => vec![IsoClass::Dim(s)],
            Family::F1Free { .. } => vec![IsoClass::Rank(s)],
            Family::AbPGroups { .. } => partitions_of(s).into_iter().map(IsoClass::Type).collect(),
        }
    }

    /// All isomorphism classes of size at most the bound, in canonical order.
    pub fn iso_classes(&self) -> Vec<IsoClass> {
        (0..=self.bound).flat_map(|s| self.classes_of_size(s)).collect()
    }

    pub fn contains(&self, c: &IsoClass) -> bool {
        c.size() <= self.bound
            && matches!(
                (&self.family, c),
                (Family::VectFq { .. }, IsoClass::Dim(_))
                    | (Family::F1Free { .. }, IsoClass::Rank(_))
                    | (Family::AbPGroups { .. }, IsoClass::Type(_))
            )
    }

    fn check(&self, c: &IsoClass) -> Result<()> {
        if self.contains(c) {
            Ok(())
        } else {
            Err(Error::OutOfBasis(format!("{c} is not a class of {} up to size {}", self.tag(), self.bound)))
        }
    }

    /// Order of the automorphism group of a representative.
    pub fn aut_order(&self, c: &IsoClass) -> Result<BigUint> {
        self.check(c)?;
        Ok(match (&self.family, c) {
            (Family::VectFq { q }, IsoClass::Dim(n)) => {
                let qn = BigUint::from(*q).pow(*n as u32);
                (0..*n as u32).fold(BigUint::one(), |acc, i| acc * (&qn - BigUint::from(*q).pow(i)))
            }
            (Family::F1Free { group }, IsoClass::Rank(n)) => {
                BigUint::from(group.order()).pow(*n as u32) * factorial(*n as u64)
            }
            (Family::AbPGroups { p }, IsoClass::Type(l)) => p_group_aut_order(*p, l),
            _ => unreachable!("checked above"),
        })
    }

    /// A concrete representative.
    pub fn object(&self, c: &IsoClass) -> Result<Object> {
        self.check(c)?;
        let obj = match (&self.family, c) {
            (Family::VectFq { q }, IsoClass::Dim(n)) => Object::abelian(c.clone(), *q, vec![*q; *n]),
            (Family::AbPGroups { p }, IsoClass::Type(l)) => {
                Object::abelian(c.clone(), *p, l.parts().iter().map(|&e| p.pow(e as u32)).collect())
            }
            (Family::F1Free { group }, IsoClass::Rank(n)) => Object::pointed(c.clone(), group.clone(), *n),
            _ => unreachable!("checked above"),
        };
        if obj.num_elements() as u64 > MAX_ELEMENTS {
            return Err(Error::BudgetExceeded {
                what: format!("element set of {c}"),
                needed: obj.num_elements(),
                budget: MAX_ELEMENTS as usize,
            });
        }
        Ok(obj)
    }

    /// The class of a subobject and of the corresponding quotient.
    pub fn classify(&self, m: &Object, u: &Subobject) -> (IsoClass, IsoClass) {
        m.classify(u)
    }

    /// Counts subobjects of `m` by (subobject class, quotient class).
    pub fn subobject_type_counts(&self, m: &IsoClass) -> Result<BTreeMap<(IsoClass, IsoClass), u64>> {
        let obj = self.object(m)?;
        let mut counts = BTreeMap::new();
        for u in obj.subobjects() {
            *counts.entry(obj.classify(&u)).or_insert(0) += 1;
        }
        Ok(counts)
    }

    /// Number of subobjects `U ⊆ M` with `U ≅ L` and `M/U ≅ N`.
    pub fn subobjects_with_type(&self, m: &IsoClass, l: &IsoClass, n: &IsoClass) -> Result<u64> {
        self.check(l)?;
        self.check(n)?;
        Ok(self
            .subobject_type_counts(m)?
            .get(&(l.clone(), n.clone()))
            .copied()
            .unwrap_or(0))
    }

    /// All morphisms between representatives, as functions on elements.
    pub fn homs(&self, a: &IsoClass, b: &IsoClass, budget: usize) -> Result<Vec<Map>> {
        self.object(a)?.homs_to(&self.object(b)?, budget)
    }

    /// Number of pairs (mono `L → M`, epi `M → N`) forming a short exact
    /// sequence, by direct enumeration.
    pub fn count_ses(&self, l: &IsoClass, m: &IsoClass, n: &IsoClass, budget: usize) -> Result<u64> {
        let (lo, mo, no) = (self.object(l)?, self.object(m)?, self.object(n)?);
        let monos: Vec<Map> = lo.homs_to(&mo, budget)?.into_iter().filter(|f| objects::is_injective(f)).collect();
        let epis: Vec<Map> = mo
            .homs_to(&no, budget)?
            .into_iter()
            .filter(|f| objects::is_surjective(f, no.num_elements()))
            .collect();
        let mut by_image: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for f in &monos {
            let mut im = f.clone();
            im.sort_unstable();
            *by_image.entry(im).or_insert(0) += 1;
        }
        let kernels: Vec<Vec<u32>> = epis
            .par_iter()
            .map(|p| (0..p.len() as u32).filter(|&x| p[x as usize] == 0).collect())
            .collect();
        Ok(kernels.iter().map(|k| by_image.get(k).copied().unwrap_or(0)).sum())
    }
}

/// |Aut(⊕ Z/p^{e_i})| by the closed formula for finite abelian p-groups,
/// with exponents sorted increasingly, `d_k = max{l : e_l = e_k}` and
/// `c_k = min{l : e_l = e_k}` (1-based).
fn p_group_aut_order(p: u64, l: &Partition) -> BigUint {
    let mut e: Vec<usize> = l.parts().to_vec();
    e.sort_unstable();
    let n = e.len();
    let pw = |k: usize| BigUint::from(p).pow(k as u32);
    let mut total = BigUint::one();
    for k in 0..n {
        let d = (0..n).rev().find(|&j| e[j] == e[k]).expect("k itself") + 1;
        let c = (0..n).find(|&j| e[j] == e[k]).expect("k itself") + 1;
        total *= pw(d) - pw(k);
        total *= pw(e[k]).pow((n - d) as u32);
        total *= pw(e[k] - 1).pow((n - c + 1) as u32);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_BUDGET;

    fn ty(parts: &[usize]) -> IsoClass {
        IsoClass::Type(Partition::new(parts.to_vec()))
    }

    #[test]
    fn classes() {
        let v = ProtoAbelianInstance::vect(2, 2).unwrap();
        assert_eq!(v.iso_classes(), vec![IsoClass::Dim(0), IsoClass::Dim(1), IsoClass::Dim(2)]);
        let f = ProtoAbelianInstance::f1_free(FiniteGroup::cyclic(2), 3);
        assert_eq!(f.iso_classes().len(), 4);
        let p = ProtoAbelianInstance::p_groups(2, 3).unwrap();
        let labels: Vec<String> = p.iso_classes().iter().map(|c| c.to_string()).collect();
        assert_eq!(labels, ["∅", "(1)", "(2)", "(1,1)", "(3)", "(2,1)", "(1,1,1)"]);
        assert!(ProtoAbelianInstance::vect(4, 2).is_err());
    }

    #[test]
    fn aut_orders_match_enumeration() {
        let cases: Vec<(ProtoAbelianInstance, Vec<IsoClass>)> = vec![
            (ProtoAbelianInstance::vect(2, 3).unwrap(), (0..=3).map(IsoClass::Dim).collect()),
            (ProtoAbelianInstance::vect(3, 2).unwrap(), (0..=2).map(IsoClass::Dim).collect()),
            (ProtoAbelianInstance::p_groups(2, 4).unwrap(), ProtoAbelianInstance::p_groups(2, 4).unwrap().iso_classes()),
            (ProtoAbelianInstance::p_groups(3, 2).unwrap(), ProtoAbelianInstance::p_groups(3, 2).unwrap().iso_classes()),
            (ProtoAbelianInstance::f1_free(FiniteGroup::cyclic(3), 2), (0..=2).map(IsoClass::Rank).collect()),
            (ProtoAbelianInstance::f1_free(FiniteGroup::symmetric(3), 2), (0..=2).map(IsoClass::Rank).collect()),
        ];
        for (inst, classes) in cases {
            for c in classes {
                let obj = inst.object(&c).unwrap();
                let n = obj.num_elements();
                let autos = inst
                    .homs(&c, &c, 10 * DEFAULT_BUDGET)
                    .unwrap()
                    .into_iter()
                    .filter(|f| objects::is_injective(f) && objects::is_surjective(f, n))
                    .count();
                assert_eq!(inst.aut_order(&c).unwrap(), BigUint::from(autos), "{} {c}", inst.tag());
            }
        }
        let p = ProtoAbelianInstance::p_groups(2, 2).unwrap();
        assert_eq!(p.aut_order(&ty(&[1, 1])).unwrap(), BigUint::from(6u32));
        let v = ProtoAbelianInstance::vect(2, 2).unwrap();
        assert_eq!(v.aut_order(&IsoClass::Dim(2)).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn subobject_examples() {
        let v = ProtoAbelianInstance::vect(2, 2).unwrap();
        let (d0, d1, d2) = (IsoClass::Dim(0), IsoClass::Dim(1), IsoClass::Dim(2));
        assert_eq!(v.subobjects_with_type(&d2, &d1, &d1).unwrap(), 3);
        assert_eq!(v.subobjects_with_type(&d2, &d0, &d2).unwrap(), 1);
        assert_eq!(v.count_ses(&d1, &d2, &d1, DEFAULT_BUDGET).unwrap(), 3);
        assert_eq!(v.count_ses(&d0, &d2, &d2, DEFAULT_BUDGET).unwrap(), 6);
        let p = ProtoAbelianInstance::p_groups(2, 2).unwrap();
        assert_eq!(p.subobjects_with_type(&ty(&[2]), &ty(&[1]), &ty(&[1])).unwrap(), 1);
        assert_eq!(p.subobjects_with_type(&ty(&[1, 1]), &ty(&[1]), &ty(&[1])).unwrap(), 3);
        let f = ProtoAbelianInstance::f1_free(FiniteGroup::trivial(), 2);
        let (r1, r2) = (IsoClass::Rank(1), IsoClass::Rank(2));
        assert_eq!(f.subobjects_with_type(&r2, &r1, &r1).unwrap(), 2);
        assert_eq!(f.count_ses(&r1, &r2, &r1, DEFAULT_BUDGET).unwrap(), 2);
    }

    #[test]
    fn ses_count_factorizes() {
        let insts = vec![
            ProtoAbelianInstance::vect(2, 3).unwrap(),
            ProtoAbelianInstance::vect(3, 2).unwrap(),
            ProtoAbelianInstance::p_groups(2, 3).unwrap(),
            ProtoAbelianInstance::f1_free(FiniteGroup::cyclic(2), 3),
        ];
        for inst in insts {
            let classes = inst.iso_classes();
            for m in &classes {
                for l in &classes {
                    for n in &classes {
                        if l.size() + n.size() != m.size() {
                            continue;
                        }
                        let ses = inst.count_ses(l, m, n, DEFAULT_BUDGET).unwrap();
                        let sub = inst.subobjects_with_type(m, l, n).unwrap();
                        let expect = BigUint::from(sub) * inst.aut_order(l).unwrap() * inst.aut_order(n).unwrap();
                        assert_eq!(BigUint::from(ses), expect, "{} {l} {m} {n}", inst.tag());
                    }
                }
            }
        }
    }

    #[test]
    fn gaussian_binomials_by_bases() {
        // ordered linearly independent k-tuples in F_q^n divided by those in F_q^k
        fn independent_tuples(q: u64, n: usize, k: usize) -> u64 {
            let obj = ProtoAbelianInstance::vect(q, n).unwrap().object(&IsoClass::Dim(n)).unwrap();
            let total = obj.num_elements() as u32;
            let mut count = 0u64;
            let mut stack = vec![Vec::<u32>::new()];
            while let Some(t) = stack.pop() {
                if t.len() == k {
                    count += 1;
                    continue;
                }
                let span = obj.span(&t);
                for v in 0..total {
                    if !span.contains(&v) {
                        let mut t2 = t.clone();
                        t2.push(v);
                        stack.push(t2);
                    }
                }
            }
            count
        }
        for (q, n) in [(2u64, 3usize), (3, 2), (2, 4)] {
            let inst = ProtoAbelianInstance::vect(q, n).unwrap();
            for k in 0..=n {
                let brute = independent_tuples(q, n, k) / independent_tuples(q, k, k);
                let counted = inst
                    .subobjects_with_type(&IsoClass::Dim(n), &IsoClass::Dim(k), &IsoClass::Dim(n - k))
                    .unwrap();
                assert_eq!(counted, brute, "q={q} n={n} k={k}");
            }
        }
    }

    #[test]
    fn f1_duality_and_totals() {
        let f = ProtoAbelianInstance::f1_free(FiniteGroup::cyclic(3), 4);
        for m in f.iso_classes() {
            let counts = f.subobject_type_counts(&m).unwrap();
            for ((l, n), c) in &counts {
                assert_eq!(counts.get(&(n.clone(), l.clone())), Some(c));
            }
            let total: u64 = counts.values().sum();
            assert_eq!(total, f.object(&m).unwrap().subobjects().len() as u64);
            assert_eq!(total, 1 << m.size());
        }
    }

    #[test]
    fn out_of_bound_classes_rejected() {
        let v = ProtoAbelianInstance::vect(2, 2).unwrap();
        assert!(v.aut_order(&IsoClass::Dim(3)).is_err());
        assert!(v.aut_order(&IsoClass::Rank(1)).is_err());
        let p = ProtoAbelianInstance::p_groups(2, 7).unwrap();
        assert!(p.object(&ty(&[7])).is_err());
    }
}
