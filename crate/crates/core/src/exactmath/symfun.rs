use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::partition::{partitions_of, Partition, PartitionMap};
use super::rat::{format_rat, Rat};
use crate::error::{Error, Result};

/// Number of semistandard Young tableaux of shape `shape` with entries in
/// `1..=d`, by direct enumeration.
pub fn ssyt_count(shape: &Partition, d: usize) -> u64 {
    let cells: Vec<(usize, usize)> = shape.cells().collect();
    if shape.len() > d {
        return 0;
    }
    let mut grid: Vec<Vec<usize>> = shape.parts().iter().map(|&p| vec![0; p]).collect();
    fn fill(k: usize, cells: &[(usize, usize)], grid: &mut [Vec<usize>], d: usize) -> u64 {
        let Some(&(i, j)) = cells.get(k) else {
            return 1;
        };
        let lo_row = if j > 0 { grid[i][j - 1] } else { 1 };
        let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 1 };
        let mut total = 0;
        for v in lo_row.max(lo_col)..=d {
            grid[i][j] = v;
            total += fill(k + 1, cells, grid, d);
        }
        total
    }
    fill(0, &cells, &mut grid, d)
}

/// s_λ(1^d) by the hook-content formula ∏_{(i,j)} (d + j − i) / h(i,j).
pub fn schur_eval_ones(shape: &Partition, d: usize) -> BigUint {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for (i, j) in shape.cells() {
        let content = d as i64 + j as i64 - i as i64;
        if content <= 0 {
            return BigUint::zero();
        }
        num *= content;
        den *= shape.hook(i, j);
    }
    debug_assert!((&num % &den).is_zero());
    (num / den).to_biguint().expect("non-negative")
}

/// Littlewood–Richardson coefficient c^ν_{λμ}: the number of LR skew
/// tableaux of shape ν/λ and content μ.
pub fn littlewood_richardson(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if nu.size() != lambda.size() + mu.size() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    // cells of ν/λ in reverse reading order: rows top to bottom, right to left
    let mut cells = Vec::new();
    for i in 0..nu.len() {
        for j in (lambda.part(i)..nu.part(i)).rev() {
            cells.push((i, j));
        }
    }
    let mut grid: Vec<Vec<usize>> = nu.parts().iter().map(|&p| vec![0; p]).collect();
    let mut content = vec![0usize; mu.len() + 1];
    fn fill(
        k: usize,
        cells: &[(usize, usize)],
        lambda: &Partition,
        nu: &Partition,
        mu: &Partition,
        grid: &mut [Vec<usize>],
        content: &mut [usize],
    ) -> u64 {
        let Some(&(i, j)) = cells.get(k) else {
            return 1;
        };
        // row weakly increasing: bounded above by the right neighbour
        let hi = if j + 1 < nu.part(i) { grid[i][j + 1] } else { mu.len() };
        // column strictly increasing: bounded below by the cell above if skew
        let lo = if i > 0 && j >= lambda.part(i - 1) { grid[i - 1][j] + 1 } else { 1 };
        let mut total = 0;
        for v in lo..=hi {
            if content[v] == mu.part(v - 1) {
                continue;
            }
            if v > 1 && content[v] + 1 > content[v - 1] {
                continue;
            }
            content[v] += 1;
            grid[i][j] = v;
            total += fill(k + 1, cells, lambda, nu, mu, grid, content);
            content[v] -= 1;
        }
        total
    }
    fill(0, &cells, lambda, nu, mu, &mut grid, &mut content)
}

/// The Schur expansion of s_λ·s_μ as `(ν, c^ν_{λμ})` with non-zero
/// coefficients, in canonical order.
pub fn lr_expand(lambda: &Partition, mu: &Partition) -> Vec<(Partition, u64)> {
    partitions_of(lambda.size() + mu.size())
        .into_iter()
        .filter(|nu| nu.contains(lambda) && nu.contains(mu))
        .filter_map(|nu| {
            let c = littlewood_richardson(lambda, mu, &nu);
            (c > 0).then_some((nu, c))
        })
        .collect()
}

/// Element of Λ in the Schur basis.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymElem {
    terms: BTreeMap<Partition, Rat>,
}

impl SymElem {
    pub fn zero() -> Self {
        SymElem::default()
    }

    pub fn schur(p: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, Rat::one());
        SymElem { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rat> {
        &self.terms
    }

    pub fn coeff(&self, p: &Partition) -> Rat {
        self.terms.get(p).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, p: Partition, c: Rat) {
        let e = self.terms.entry(p).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, other: &SymElem) -> SymElem {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, r: &Rat) -> SymElem {
        if r.is_zero() {
            return SymElem::zero();
        }
        SymElem {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * r)).collect(),
        }
    }

    pub fn mul(&self, other: &SymElem) -> SymElem {
        let mut out = SymElem::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                for (nu, c) in lr_expand(a, b) {
                    out.add_term(nu, ca * cb * Rat::from_integer(c.into()));
                }
            }
        }
        out
    }
}

/// Element of Λ(X) = ⊗_{x∈X} Λ in the basis S_λ = ∏_x s_{λ(x)}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSymElem {
    labels: Vec<String>,
    terms: BTreeMap<PartitionMap, Rat>,
}

impl MultiSymElem {
    pub fn zero(labels: &[String]) -> Self {
        MultiSymElem {
            labels: labels.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(labels: &[String]) -> Self {
        MultiSymElem::basis(PartitionMap::empty(labels))
    }

    pub fn basis(lambda: PartitionMap) -> Self {
        let labels = lambda.labels().to_vec();
        let mut terms = BTreeMap::new();
        terms.insert(lambda, Rat::one());
        MultiSymElem { labels, terms }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn terms(&self) -> &BTreeMap<PartitionMap, Rat> {
        &self.terms
    }

    pub fn coeff(&self, lambda: &PartitionMap) -> Rat {
        self.terms.get(lambda).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, lambda: PartitionMap, c: Rat) -> Result<()> {
        if lambda.labels() != self.labels.as_slice() {
            return Err(Error::IndexSetMismatch(
                self.labels.clone(),
                lambda.labels().to_vec(),
            ));
        }
        let e = self.terms.entry(lambda.clone()).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&lambda);
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiSymElem) -> Result<MultiSymElem> {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rat) -> MultiSymElem {
        let mut out = MultiSymElem::zero(&self.labels);
        if !r.is_zero() {
            out.terms = self.terms.iter().map(|(p, c)| (p.clone(), c * r)).collect();
        }
        out
    }

    /// Whether every coefficient is a non-negative integer.
    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|c| c.is_integer() && !c.is_negative())
    }

    pub fn to_u64_terms(&self) -> Option<Vec<(PartitionMap, u64)>> {
        self.terms
            .iter()
            .map(|(p, c)| {
                if c.is_integer() {
                    c.to_integer().to_u64().map(|v| (p.clone(), v))
                } else {
                    None
                }
            })
            .collect()
    }
}

impl Serialize for MultiSymElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (p, c) in &self.terms {
            seq.serialize_element(&(p, format_rat(c)))?;
        }
        seq.end()
    }
}

/// Product in Λ(X): S_λ·S_μ = Σ_ν (∏_x c^{ν(x)}_{λ(x)μ(x)}) S_ν.
pub fn multisym_mul(a: &MultiSymElem, b: &MultiSymElem) -> Result<MultiSymElem> {
    if a.labels != b.labels {
        return Err(Error::IndexSetMismatch(a.labels.clone(), b.labels.clone()));
    }
    let mut out = MultiSymElem::zero(&a.labels);
    for (la, ca) in &a.terms {
        for (lb, cb) in &b.terms {
            let factors: Vec<Vec<(Partition, u64)>> = la
                .parts()
                .iter()
                .zip(lb.parts())
                .map(|(p, q)| lr_expand(p, q))
                .collect();
            let coeff = ca * cb;
            let mut stack: Vec<(Vec<Partition>, u64)> = vec![(Vec::new(), 1)];
            for f in &factors {
                let mut next = Vec::with_capacity(stack.len() * f.len());
                for (parts, c) in &stack {
                    for (nu, m) in f {
                        let mut p = parts.clone();
                        p.push(nu.clone());
                        next.push((p, c * m));
                    }
                }
                stack = next;
            }
            for (parts, m) in stack {
                out.add_term(
                    PartitionMap::new(a.labels.clone(), parts),
                    &coeff * Rat::from_integer(m.into()),
                )?;
            }
        }
    }
    Ok(out)
}
