//! Irreducible characters of `G ≀ S_n` for abelian `G`, the induction
//! product and the characteristic map to `Λ(G^⋆)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::Serialize;

use super::product::{WreathElement, WreathProduct};
use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::exactmath::{multisym_mul, partition_maps, Cyc, MultiSymElem, Partition, PartitionMap, Rat};
use crate::par::prelude::*;

/// `χ^μ` on permutations of cycle type `class`, by the Murnaghan-Nakayama
/// rule on beta-sets. Zero if the sizes differ.
pub fn symmetric_character(mu: &Partition, class: &Partition) -> i64 {
    if mu.size() != class.size() {
        return 0;
    }
    let l = mu.len();
    let beta: Vec<usize> = mu.parts().iter().enumerate().map(|(i, &p)| p + l - 1 - i).collect();
    border_strips(&beta, class.parts())
}

fn border_strips(beta: &[usize], parts: &[usize]) -> i64 {
    let Some((&r, rest)) = parts.split_first() else {
        return 1;
    };
    let mut total = 0;
    for (k, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let height = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut next = beta.to_vec();
        next[k] = b - r;
        let v = border_strips(&next, rest);
        total += if height % 2 == 0 { v } else { -v };
    }
    total
}

/// Names of the linear characters of an abelian group: `γ0` (trivial), `γ1`, ….
pub fn character_label_names(g: &FiniteGroup) -> Result<Vec<String>> {
    Ok((0..g.linear_characters()?.len()).map(|i| format!("γ{i}")).collect())
}

/// Character table of `G ≀ S_n`; `values[i][c]` is irreducible `i` on class `c`.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub group: String,
    pub n: usize,
    pub order: usize,
    pub conductor: u32,
    pub class_labels: Vec<PartitionMap>,
    pub class_sizes: Vec<usize>,
    pub irreducible_labels: Vec<PartitionMap>,
    pub values: Vec<Vec<Cyc>>,
    wreath: WreathProduct,
    class_index: HashMap<PartitionMap, usize>,
    reps: Vec<WreathElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalityVerdict {
    pub pass: bool,
    pub square: bool,
    pub rows: bool,
    pub columns: bool,
    pub sum_of_squares: bool,
}

/// Blocks of consecutive positions and, for each left coset of the
/// block-preserving subgroup `K`, its least element (base trivial, least
/// permutation).
struct YoungCosets {
    block_of: Vec<usize>,
    reps: Vec<WreathElement>,
}

impl YoungCosets {
    fn new(w: &WreathProduct, sizes: &[usize]) -> Self {
        let block_of: Vec<usize> = sizes.iter().enumerate().flat_map(|(b, &m)| std::iter::repeat_n(b, m)).collect();
        let n = w.n();
        let mut seen = std::collections::HashSet::new();
        let mut reps = Vec::new();
        let b = w.base().order().pow(n as u32);
        for code in (0..w.order()).step_by(b) {
            let x = w.element(code);
            // τK is determined by which block each value τ(i) comes from
            let mut key = vec![0usize; n];
            for (i, &t) in x.perm.iter().enumerate() {
                key[t] = block_of[i];
            }
            if seen.insert(key) {
                reps.push(x);
            }
        }
        YoungCosets { block_of, reps }
    }

    fn contains(&self, x: &WreathElement) -> bool {
        x.perm.iter().enumerate().all(|(i, &s)| self.block_of[i] == self.block_of[s])
    }

    /// `Σ_r [r⁻¹xr ∈ K] φ(r⁻¹xr)`.
    fn induce(&self, w: &WreathProduct, x: &WreathElement, phi: &dyn Fn(&WreathElement) -> Cyc) -> Cyc {
        let mut total = Cyc::zero();
        for r in &self.reps {
            let y = w.mul(&w.mul(&w.inv(r), x), r);
            if self.contains(&y) {
                total = &total + &phi(&y);
            }
        }
        total
    }
}

/// Restriction of a block-preserving element to positions `lo..hi`.
fn restrict(x: &WreathElement, lo: usize, hi: usize) -> WreathElement {
    WreathElement {
        base: x.base[lo..hi].to_vec(),
        perm: x.perm[lo..hi].iter().map(|&s| s - lo).collect(),
    }
}

fn cycle_type(perm: &[usize]) -> Partition {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for i in 0..perm.len() {
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len > 0 {
            parts.push(len);
        }
    }
    Partition::new(parts)
}

/// Character of `X_λ` at every element representative in `reps`:
/// induced from `∏_γ G ≀ S_{|λ(γ)|}` of `⊠_γ (γ^{⊗m} · χ^{λ(γ)})`.
fn irreducible_values(
    w: &WreathProduct,
    chars: &[Vec<u32>],
    exponent: u32,
    lambda: &PartitionMap,
    reps: &[WreathElement],
) -> Vec<Cyc> {
    let blocks: Vec<(usize, &Partition)> = lambda
        .parts()
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_empty())
        .collect();
    let sizes: Vec<usize> = blocks.iter().map(|(_, p)| p.size()).collect();
    let cosets = YoungCosets::new(w, &sizes);
    let phi = |y: &WreathElement| -> Cyc {
        let mut lo = 0;
        let mut exp = 0u64;
        let mut sym = 1i64;
        for ((gamma, p), &m) in blocks.iter().zip(&sizes) {
            let part = restrict(y, lo, lo + m);
            exp += part.base.iter().map(|&g| chars[*gamma][g as usize] as u64).sum::<u64>();
            sym *= symmetric_character(p, &cycle_type(&part.perm));
            lo += m;
        }
        &Cyc::zeta_pow(exponent, exp as i64) * &Cyc::from_int(sym)
    };
    reps.iter().map(|x| cosets.induce(w, x, &phi)).collect()
}

/// The character table of `G ≀ S_n` (abelian `G`, order within `budget`).
pub fn wreath_character_table(g: &FiniteGroup, n: usize, budget: usize) -> Result<CharacterTable> {
    let chars = g.linear_characters()?;
    let w = WreathProduct::new(g, n, budget)?;
    let mut class_index: HashMap<PartitionMap, usize> = HashMap::new();
    let mut class_labels = Vec::new();
    let mut class_sizes = Vec::new();
    let mut reps = Vec::new();
    for x in w.elements() {
        let label = w.class_label(&x);
        let i = *class_index.entry(label.clone()).or_insert_with(|| {
            class_labels.push(label);
            class_sizes.push(0);
            reps.push(x.clone());
            class_sizes.len() - 1
        });
        class_sizes[i] += 1;
    }
    let exponent = g.exponent() as u32;
    let names = character_label_names(g)?;
    let irreducible_labels = partition_maps(n, &names);
    let values = irreducible_labels
        .par_iter()
        .map(|lambda| irreducible_values(&w, &chars, exponent, lambda, &reps))
        .collect();
    Ok(CharacterTable {
        group: g.name().to_string(),
        n,
        order: w.order(),
        conductor: exponent,
        class_labels,
        class_sizes,
        irreducible_labels,
        values,
        wreath: w,
        class_index,
        reps,
    })
}

impl CharacterTable {
    pub fn wreath(&self) -> &WreathProduct {
        &self.wreath
    }

    pub fn character_labels(&self) -> &[String] {
        self.irreducible_labels[0].labels()
    }

    /// Degrees `χ(1)`; the identity class comes first.
    pub fn dims(&self) -> Vec<u64> {
        self.values
            .iter()
            .map(|row| row[0].to_rat().and_then(|r| r.to_integer().to_u64()).expect("degree is a natural number"))
            .collect()
    }

    pub fn index_of(&self, lambda: &PartitionMap) -> Option<usize> {
        self.irreducible_labels.iter().position(|l| l == lambda)
    }

    /// The value of a class function (given on classes) at an element.
    pub fn at(&self, f: &[Cyc], x: &WreathElement) -> Cyc {
        f[self.class_index[&self.wreath.class_label(x)]].clone()
    }

    /// Values written over `ζ_m`, `m` the conductor of the table.
    pub fn value_strings(&self) -> Vec<Vec<String>> {
        self.values
            .iter()
            .map(|row| row.iter().map(|v| v.lift(self.conductor.max(1)).to_string()).collect())
            .collect()
    }

    /// `⟨f, g⟩ = (1/|W|) Σ_c |c| f(c) conj(g(c))`.
    pub fn inner_product(&self, f: &[Cyc], g: &[Cyc]) -> Cyc {
        let total = f
            .iter()
            .zip(g)
            .zip(&self.class_sizes)
            .fold(Cyc::zero(), |acc, ((a, b), &s)| &acc + &(a * &b.conj()).scale(&Rat::from_integer(BigInt::from(s))));
        total.scale(&Rat::new(BigInt::one(), BigInt::from(self.order)))
    }

    pub fn check_orthogonality(&self) -> OrthogonalityVerdict {
        let k = self.class_labels.len();
        let square = self.values.len() == k;
        let rows = (0..self.values.len()).into_par_iter().all(|i| {
            (0..self.values.len()).all(|j| {
                let ip = self.inner_product(&self.values[i], &self.values[j]);
                ip == if i == j { Cyc::one() } else { Cyc::zero() }
            })
        });
        let columns = (0..k).into_par_iter().all(|c| {
            (0..k).all(|d| {
                let s = self
                    .values
                    .iter()
                    .fold(Cyc::zero(), |acc, row| &acc + &(&row[c] * &row[d].conj()));
                let expect = if c == d {
                    Cyc::from_rat(Rat::new(BigInt::from(self.order), BigInt::from(self.class_sizes[c])))
                } else {
                    Cyc::zero()
                };
                s == expect
            })
        });
        let sum_of_squares = self.dims().iter().map(|&d| d as u128 * d as u128).sum::<u128>() == self.order as u128;
        OrthogonalityVerdict {
            pass: square && rows && columns && sum_of_squares,
            square,
            rows,
            columns,
            sum_of_squares,
        }
    }

    /// Multiplicities of the irreducibles in a class function; fails unless
    /// they are all integers.
    pub fn decompose(&self, f: &[Cyc]) -> Result<Vec<i64>> {
        self.values
            .iter()
            .zip(&self.irreducible_labels)
            .map(|(row, label)| {
                let ip = self.inner_product(f, row);
                ip.to_rat()
                    .filter(|r| r.is_integer())
                    .and_then(|r| r.to_integer().to_i64())
                    .ok_or_else(|| Error::NonIntegral(format!("multiplicity of {label} is {ip}")))
            })
            .collect()
    }

    /// `ch`: linear extension of `X_λ ↦ S_λ`, after decomposing `f`.
    pub fn ch(&self, f: &[Cyc]) -> Result<MultiSymElem> {
        let mut out = MultiSymElem::zero(self.character_labels());
        for (label, m) in self.irreducible_labels.iter().zip(self.decompose(f)?) {
            if m != 0 {
                out.add_term(label.clone(), Rat::from_integer(BigInt::from(m)))?;
            }
        }
        Ok(out)
    }
}

/// The character of `Ind_{W_n × W_m}^{W_{n+m}} (X_λ ⊠ X_μ)` on the classes of
/// `target`, given the tables of the factors.
pub fn induced_product_character(
    left: &CharacterTable,
    right: &CharacterTable,
    target: &CharacterTable,
    lambda: &PartitionMap,
    mu: &PartitionMap,
) -> Result<Vec<Cyc>> {
    let (n, m) = (left.n, right.n);
    if target.n != n + m {
        return Err(Error::Unsupported("target table has the wrong degree".into()));
    }
    let li = left.index_of(lambda).ok_or_else(|| Error::OutOfBasis(lambda.to_string()))?;
    let ri = right.index_of(mu).ok_or_else(|| Error::OutOfBasis(mu.to_string()))?;
    let w = target.wreath();
    let cosets = YoungCosets::new(w, &[n, m]);
    let phi = |y: &WreathElement| -> Cyc {
        let a = left.at(&left.values[li], &restrict(y, 0, n));
        let b = right.at(&right.values[ri], &restrict(y, n, n + m));
        &a * &b
    };
    Ok(target
        .reps
        .par_iter().map(|x| cosets.induce(w, x, &phi)).collect())
}

/// Tables of `G ≀ S_k` for `k = 0..=n`, built on demand.
pub struct TableCache {
    group: FiniteGroup,
    budget: usize,
    tables: HashMap<usize, CharacterTable>,
}

impl TableCache {
    pub fn new(group: &FiniteGroup, budget: usize) -> Self {
        TableCache {
            group: group.clone(),
            budget,
            tables: HashMap::new(),
        }
    }

    pub fn table(&mut self, n: usize) -> Result<&CharacterTable> {
        if !self.tables.contains_key(&n) {
            let t = wreath_character_table(&self.group, n, self.budget)?;
            self.tables.insert(n, t);
        }
        Ok(&self.tables[&n])
    }
}

fn induced_in_cache(cache: &mut TableCache, lambda: &PartitionMap, mu: &PartitionMap) -> Result<Vec<Cyc>> {
    let (n, m) = (lambda.total_size(), mu.total_size());
    cache.table(n)?;
    cache.table(m)?;
    cache.table(n + m)?;
    let (left, right, target) = (&cache.tables[&n], &cache.tables[&m], &cache.tables[&(n + m)]);
    induced_product_character(left, right, target, lambda, mu)
}

fn positive_terms(target: &CharacterTable, chi: &[Cyc]) -> Result<Vec<(PartitionMap, u64)>> {
    target
        .irreducible_labels
        .iter()
        .zip(target.decompose(chi)?)
        .filter(|(_, k)| *k != 0)
        .map(|(l, k)| {
            if k < 0 {
                Err(Error::NonIntegral(format!("negative multiplicity {k} of {l}")))
            } else {
                Ok((l.clone(), k as u64))
            }
        })
        .collect()
}

/// Decomposition of `Ind(X_λ ⊠ X_μ)` into irreducibles of
/// `G ≀ S_{‖λ‖+‖μ‖}`, with multiplicities.
pub fn induction_product(
    cache: &mut TableCache,
    lambda: &PartitionMap,
    mu: &PartitionMap,
) -> Result<Vec<(PartitionMap, u64)>> {
    let chi = induced_in_cache(cache, lambda, mu)?;
    positive_terms(&cache.tables[&(lambda.total_size() + mu.total_size())], &chi)
}

/// One failing pair of the ring-homomorphism check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChFailure {
    pub lambda: String,
    pub mu: String,
    pub induced: Vec<(String, u64)>,
    pub product: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChVerdict {
    pub pass: bool,
    pub pairs_checked: usize,
    pub failures: Vec<ChFailure>,
}

/// `ch(Ind(X_λ ⊠ X_μ)) = S_λ · S_μ` for all labels with `‖λ‖ + ‖μ‖ ≤ max_total`.
pub fn check_ch_multiplicative(g: &FiniteGroup, max_total: usize, budget: usize) -> Result<ChVerdict> {
    let names = character_label_names(g)?;
    let mut cache = TableCache::new(g, budget);
    let mut failures = Vec::new();
    let mut pairs_checked = 0;
    for n in 0..=max_total {
        for m in 0..=max_total - n {
            for lambda in partition_maps(n, &names) {
                for mu in partition_maps(m, &names) {
                    pairs_checked += 1;
                    let chi = induced_in_cache(&mut cache, &lambda, &mu)?;
                    let target = &cache.tables[&(n + m)];
                    let induced = positive_terms(target, &chi)?;
                    let lhs = target.ch(&chi)?;
                    let rhs = multisym_mul(&MultiSymElem::basis(lambda.clone()), &MultiSymElem::basis(mu.clone()))?;
                    if lhs != rhs {
                        failures.push(ChFailure {
                            lambda: lambda.to_string(),
                            mu: mu.to_string(),
                            induced: induced.iter().map(|(l, k)| (l.to_string(), *k)).collect(),
                            product: rhs
                                .terms()
                                .iter()
                                .map(|(l, c)| (l.to_string(), crate::exactmath::format_rat(c)))
                                .collect(),
                        });
                    }
                }
            }
        }
    }
    Ok(ChVerdict {
        pass: failures.is_empty(),
        pairs_checked,
        failures,
    })
}

/// `dim X_λ = n! / ∏_γ |λ(γ)|! · ∏_γ f^{λ(γ)}`, with `f^μ` from the hook
/// length formula.
pub fn irreducible_dim(lambda: &PartitionMap) -> BigInt {
    let fact = |k: usize| (1..=k).fold(BigInt::one(), |a, i| a * i);
    let mut out = fact(lambda.total_size());
    for p in lambda.parts() {
        let hooks = p.cells().fold(BigInt::one(), |a, (i, j)| a * p.hook(i, j));
        // f^μ / |μ|! = 1 / ∏ hooks
        out /= hooks;
    }
    debug_assert!(!out.is_negative());
    out
}
