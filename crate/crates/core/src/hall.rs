//! Classical Hall algebras of the bounded proto-abelian instances. The
//! product is `[N]·[L] = Σ_M g^M_{N,L} [M]` where `g^M_{N,L}` counts
//! subobjects `U ⊆ M` with `U ≅ L` and `M/U ≅ N`. Constants are computed by
//! subobject enumeration, by counting short exact sequences, and by
//! pull-push along the S-construction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{binomial, factorial, format_rat, Rat};
use crate::par::prelude::*;
use crate::protoab::{IsoClass, ProtoAbelianInstance};
use crate::waldhausen::{s_construction, span_product};
use crate::wreath::FiniteGroup;

/// A finitely supported function on isomorphism classes.
pub type HallVector = BTreeMap<IsoClass, Rat>;

/// `δ_c`.
pub fn delta(c: &IsoClass) -> HallVector {
    BTreeMap::from([(c.clone(), Rat::one())])
}

/// Structure constants `g^M_{N,L}`, keyed `(N, L, M)`; absent keys are zero.
#[derive(Clone, Debug)]
pub struct HallTable {
    instance: ProtoAbelianInstance,
    basis: Vec<IsoClass>,
    constants: BTreeMap<(IsoClass, IsoClass, IsoClass), Rat>,
}

/// A failing triple `(a, b, c)` with both sides of the associativity law.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssociativityCounterexample {
    pub triple: (String, String, String),
    pub left: BTreeMap<String, String>,
    pub right: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AssociativityVerdict {
    pub pass: bool,
    pub triples_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<AssociativityCounterexample>,
}

fn display_vector(v: &HallVector) -> BTreeMap<String, String> {
    v.iter().map(|(c, x)| (c.to_string(), format_rat(x))).collect()
}

/// Hall constants of `inst` restricted to classes of size at most `bound`,
/// by subobject enumeration (parallel over `M`).
pub fn hall_constants(inst: &ProtoAbelianInstance, bound: usize) -> Result<HallTable> {
    let inst = inst.with_bound(bound);
    let basis = inst.iso_classes();
    let per_m = basis
        .par_iter()
        .map(|m| Ok((m.clone(), inst.subobject_type_counts(m)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut constants = BTreeMap::new();
    for (m, counts) in per_m {
        for ((l, n), k) in counts {
            constants.insert((n, l, m.clone()), Rat::from_integer(BigInt::from(k)));
        }
    }
    Ok(HallTable {
        instance: inst,
        basis,
        constants,
    })
}

/// Hall constants as `#{short exact sequences L ↪ M ↠ N} / (|Aut L| |Aut N|)`.
pub fn hall_constants_via_ses(inst: &ProtoAbelianInstance, bound: usize, budget: usize) -> Result<HallTable> {
    let inst = inst.with_bound(bound);
    let basis = inst.iso_classes();
    let mut triples = Vec::new();
    for n in &basis {
        for l in &basis {
            for m in &basis {
                if m.size() == n.size() + l.size() {
                    triples.push((n.clone(), l.clone(), m.clone()));
                }
            }
        }
    }
    let values = triples
        .par_iter()
        .map(|(n, l, m)| {
            let ses = inst.count_ses(l, m, n, budget)?;
            let auts = inst.aut_order(l)? * inst.aut_order(n)?;
            Ok(Rat::new(BigInt::from(ses), BigInt::from(auts)))
        })
        .collect::<Result<Vec<Rat>>>()?;
    let constants = triples
        .into_iter()
        .zip(values)
        .filter(|(_, v)| !v.is_zero())
        .collect();
    Ok(HallTable {
        instance: inst,
        basis,
        constants,
    })
}

impl PartialEq for HallTable {
    fn eq(&self, other: &Self) -> bool {
        self.instance.tag() == other.instance.tag() && self.basis == other.basis && self.constants == other.constants
    }
}

impl HallTable {
    pub fn instance(&self) -> &ProtoAbelianInstance {
        &self.instance
    }

    pub fn basis(&self) -> &[IsoClass] {
        &self.basis
    }

    /// Non-zero constants in canonical `(N, L, M)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&(IsoClass, IsoClass, IsoClass), &Rat)> {
        self.constants.iter()
    }

    pub fn constant(&self, n: &IsoClass, l: &IsoClass, m: &IsoClass) -> Rat {
        self.constants
            .get(&(n.clone(), l.clone(), m.clone()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// A copy with one constant replaced, for mutation tests.
    pub fn with_constant(&self, n: &IsoClass, l: &IsoClass, m: &IsoClass, value: Rat) -> HallTable {
        let mut t = self.clone();
        t.constants.insert((n.clone(), l.clone(), m.clone()), value);
        t
    }

    fn check_support(&self, f: &HallVector) -> Result<()> {
        match f.keys().find(|c| !self.instance.contains(c)) {
            Some(c) => Err(Error::OutOfBasis(format!("{c} is outside the table"))),
            None => Ok(()),
        }
    }

    /// The bilinear product; fails if a pair of supports would leave the
    /// bound.
    pub fn product(&self, f: &HallVector, g: &HallVector) -> Result<HallVector> {
        self.check_support(f)?;
        self.check_support(g)?;
        let mut out = HallVector::new();
        for (n, a) in f.iter().filter(|(_, a)| !a.is_zero()) {
            for (l, b) in g.iter().filter(|(_, b)| !b.is_zero()) {
                if n.size() + l.size() > self.instance.bound() {
                    return Err(Error::OutOfBasis(format!(
                        "[{n}]·[{l}] has size {} beyond the bound {}",
                        n.size() + l.size(),
                        self.instance.bound()
                    )));
                }
                let ab = a * b;
                for m in self.instance.classes_of_size(n.size() + l.size()) {
                    let c = self.constant(n, l, &m);
                    if !c.is_zero() {
                        *out.entry(m).or_insert_with(Rat::zero) += &ab * c;
                    }
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    /// `(δ_a δ_b) δ_c = δ_a (δ_b δ_c)` for all basis triples whose total
    /// size fits the bound; reports the first failing triple.
    pub fn check_associativity(&self) -> AssociativityVerdict {
        let bound = self.instance.bound();
        let mut triples = Vec::new();
        for a in &self.basis {
            for b in &self.basis {
                for c in &self.basis {
                    if a.size() + b.size() + c.size() <= bound {
                        triples.push((a, b, c));
                    }
                }
            }
        }
        let failures: Vec<Option<AssociativityCounterexample>> = triples
            .par_iter()
            .map(|&(a, b, c)| {
                let (da, db, dc) = (delta(a), delta(b), delta(c));
                let left = self.product(&self.product(&da, &db).ok()?, &dc).ok()?;
                let right = self.product(&da, &self.product(&db, &dc).ok()?).ok()?;
                (left != right).then(|| AssociativityCounterexample {
                    triple: (a.to_string(), b.to_string(), c.to_string()),
                    left: display_vector(&left),
                    right: display_vector(&right),
                })
            })
            .collect();
        let counterexample = failures.into_iter().flatten().next();
        AssociativityVerdict {
            pass: counterexample.is_none(),
            triples_checked: triples.len(),
            counterexample,
        }
    }

    /// `δ_0` is a two-sided unit on every basis element.
    pub fn check_unit(&self) -> bool {
        let zero = delta(&self.instance.zero_class());
        self.basis.iter().all(|c| {
            let d = delta(c);
            self.product(&zero, &d).ok() == Some(d.clone()) && self.product(&d, &zero).ok() == Some(d)
        })
    }

    /// Non-zero constants only where `size(M) = size(L) + size(N)`, and all
    /// constants are non-negative integers.
    pub fn check_grading(&self) -> bool {
        self.constants
            .iter()
            .all(|((n, l, m), v)| m.size() == n.size() + l.size() && v.is_integer() && v >= &Rat::zero())
    }
}

/// The product computed by pull-push along `X_1 × X_1 ← X_2 → X_1` of the
/// S-construction, with `f` on the quotient edge and `g` on the sub edge.
pub fn hall_product_via_span(
    inst: &ProtoAbelianInstance,
    bound: usize,
    f: &HallVector,
    g: &HallVector,
    budget: usize,
) -> Result<HallVector> {
    let s = s_construction(inst, bound, 2, budget)?;
    let out = span_product(s.simplicial(), &s.to_level1(f)?, &s.to_level1(g)?, budget)?;
    Ok(s.from_level1(&out))
}

/// Compares the table with the span route on every basis pair whose total
/// size fits the bound; returns the pairs that disagree.
pub fn span_route_mismatches(table: &HallTable, budget: usize) -> Result<Vec<(IsoClass, IsoClass)>> {
    let inst = table.instance();
    let s = s_construction(inst, inst.bound(), 2, budget)?;
    let mut bad = Vec::new();
    for n in table.basis() {
        for l in table.basis() {
            if n.size() + l.size() > inst.bound() {
                continue;
            }
            let (f, g) = (delta(n), delta(l));
            let out = span_product(s.simplicial(), &s.to_level1(&f)?, &s.to_level1(&g)?, budget)?;
            if s.from_level1(&out) != table.product(&f, &g)? {
                bad.push((n.clone(), l.clone()));
            }
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DividedPowersVerdict {
    pub pass: bool,
    pub groups: Vec<String>,
    pub failures: Vec<String>,
}

/// For each group, checks that `δ_n ↦ x^n/n!` is multiplicative on the
/// f1-free table up to `bound` and that all tables coincide.
pub fn divided_powers_iso_check(groups: &[FiniteGroup], bound: usize) -> Result<DividedPowersVerdict> {
    let mut failures = Vec::new();
    let mut first: Option<BTreeMap<(usize, usize, usize), Rat>> = None;
    let image = |n: usize| Rat::new(BigInt::one(), BigInt::from(factorial(n as u64)));
    for g in groups {
        let t = hall_constants(&ProtoAbelianInstance::f1_free(g.clone(), bound), bound)?;
        for n in 0..=bound {
            for m in 0..=bound - n {
                let p = t.product(&delta(&IsoClass::Rank(n)), &delta(&IsoClass::Rank(m)))?;
                // φ(δ_n δ_m) as a multiple of x^{n+m}, against φ(δ_n) φ(δ_m)
                let lhs: Rat = p.iter().map(|(c, v)| v * image(c.size())).sum();
                let rhs = image(n) * image(m);
                let binom = Rat::from_integer(BigInt::from(binomial((n + m) as u64, n as u64)));
                if lhs != rhs || p != BTreeMap::from([(IsoClass::Rank(n + m), binom)]) {
                    failures.push(format!("{}: δ_{n} δ_{m} = {:?}", g.name(), display_vector(&p)));
                }
            }
        }
        let ranks: BTreeMap<(usize, usize, usize), Rat> = t
            .entries()
            .map(|((n, l, m), v)| ((n.size(), l.size(), m.size()), v.clone()))
            .collect();
        match &first {
            None => first = Some(ranks),
            Some(f) if *f != ranks => failures.push(format!("{}: table differs from {}", g.name(), groups[0].name())),
            Some(_) => {}
        }
    }
    Ok(DividedPowersVerdict {
        pass: failures.is_empty(),
        groups: groups.iter().map(|g| g.name().to_string()).collect(),
        failures,
    })
}
