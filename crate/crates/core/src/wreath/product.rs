//! Wreath products `G ≀ S_n = G^n ⋊ S_n` and their conjugacy class labels.

use std::collections::HashMap;

use super::group::all_permutations;
use super::FiniteGroup;
use crate::error::{Error, Result};
use crate::exactmath::{Partition, PartitionMap};

/// Default cap on `|G|^n · n!`.
pub const WREATH_BUDGET: usize = 5000;

/// `(g_1, …, g_n; σ)`. The product is `(g, σ)(h, τ) = (g · σ(h), στ)` with
/// `σ(h)_i = h_{σ⁻¹(i)}` and `(στ)(i) = σ(τ(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub base: Vec<u32>,
    pub perm: Vec<usize>,
}

/// `G ≀ S_n` with elements coded as `perm_index · |G|^n + base code`, base
/// coordinate 0 fastest; code 0 is the identity.
#[derive(Clone, Debug)]
pub struct WreathProduct {
    base: FiniteGroup,
    n: usize,
    perms: Vec<Vec<usize>>,
    perm_index: HashMap<Vec<usize>, usize>,
    class_of: Vec<usize>,
    class_labels: Vec<String>,
}

/// Labels of the conjugacy classes of `G`: `c0` (the identity), `c1`, ….
pub fn class_label_names(g: &FiniteGroup) -> Vec<String> {
    (0..g.conjugacy_classes().len()).map(|i| format!("c{i}")).collect()
}

impl WreathProduct {
    /// Fails if the order exceeds `budget`.
    pub fn new(base: &FiniteGroup, n: usize, budget: usize) -> Result<Self> {
        let order = (base.order() as u128).pow(n as u32) * (1..=n as u128).product::<u128>();
        if order > budget as u128 {
            return Err(Error::BudgetExceeded {
                what: format!("{}≀S_{n}", base.name()),
                needed: order.min(usize::MAX as u128) as usize,
                budget,
            });
        }
        let perms = all_permutations(n);
        let perm_index = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let classes = base.conjugacy_classes();
        let mut class_of = vec![0; base.order()];
        for (i, c) in classes.iter().enumerate() {
            for &x in c {
                class_of[x as usize] = i;
            }
        }
        Ok(WreathProduct {
            base: base.clone(),
            n,
            perms,
            perm_index,
            class_of,
            class_labels: class_label_names(base),
        })
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.perms.len() * self.base.order().pow(self.n as u32)
    }

    pub fn class_labels(&self) -> &[String] {
        &self.class_labels
    }

    pub fn element(&self, code: usize) -> WreathElement {
        let b = self.base.order();
        let mut c = code % b.pow(self.n as u32);
        let base = (0..self.n)
            .map(|_| {
                let x = c % b;
                c /= b;
                x as u32
            })
            .collect();
        WreathElement {
            base,
            perm: self.perms[code / b.pow(self.n as u32)].clone(),
        }
    }

    pub fn code(&self, x: &WreathElement) -> usize {
        let b = self.base.order();
        let base = x.base.iter().rev().fold(0, |acc, &g| acc * b + g as usize);
        self.perm_index[&x.perm] * b.pow(self.n as u32) + base
    }

    pub fn elements(&self) -> impl Iterator<Item = WreathElement> + '_ {
        (0..self.order()).map(|c| self.element(c))
    }

    pub fn mul(&self, x: &WreathElement, y: &WreathElement) -> WreathElement {
        let mut base = vec![0u32; self.n];
        for (j, &s) in x.perm.iter().enumerate() {
            // σ(h)_{σ(j)} = h_j
            base[s] = self.base.mul(x.base[s], y.base[j]);
        }
        WreathElement {
            base,
            perm: y.perm.iter().map(|&t| x.perm[t]).collect(),
        }
    }

    pub fn inv(&self, x: &WreathElement) -> WreathElement {
        let mut perm = vec![0usize; self.n];
        for (i, &s) in x.perm.iter().enumerate() {
            perm[s] = i;
        }
        // (g, σ)⁻¹ = (σ⁻¹(g⁻¹), σ⁻¹), whose i-th entry is g_{σ(i)}⁻¹
        let base = (0..self.n).map(|i| self.base.inv(x.base[x.perm[i]])).collect();
        WreathElement { base, perm }
    }

    /// The group as an explicit multiplication table.
    pub fn as_group(&self) -> FiniteGroup {
        let elems: Vec<WreathElement> = self.elements().collect();
        FiniteGroup::from_fn(
            format!("{}≀S_{}", self.base.name(), self.n),
            elems.len(),
            |a, b| self.code(&self.mul(&elems[a], &elems[b])),
            elems.iter().map(|e| format!("{:?};{:?}", e.base, e.perm)).collect(),
        )
    }

    /// For each cycle of `σ`, the class of the cycle product; the cycle
    /// lengths collected per class form the label.
    pub fn class_label(&self, x: &WreathElement) -> PartitionMap {
        let mut lengths: Vec<Vec<usize>> = vec![Vec::new(); self.class_labels.len()];
        let mut seen = vec![false; self.n];
        let mut inv = vec![0usize; self.n];
        for (i, &s) in x.perm.iter().enumerate() {
            inv[s] = i;
        }
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            // base of x^k at `start`: g_i g_{σ⁻¹ i} ⋯ g_{σ^{-(k-1)} i}
            let mut prod = 0u32;
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                prod = self.base.mul(prod, x.base[i]);
                i = inv[i];
                len += 1;
            }
            lengths[self.class_of[prod as usize]].push(len);
        }
        PartitionMap::new(self.class_labels.clone(), lengths.into_iter().map(Partition::new).collect())
    }
}

/// `G ≀ S_n` within `budget`.
pub fn build_wreath(g: &FiniteGroup, n: usize, budget: usize) -> Result<WreathProduct> {
    WreathProduct::new(g, n, budget)
}

/// Convenience form of [`WreathProduct::class_label`].
pub fn wreath_class_label(w: &WreathProduct, x: &WreathElement) -> PartitionMap {
    w.class_label(x)
}
