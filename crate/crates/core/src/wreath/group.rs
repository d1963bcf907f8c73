//! Finite groups given by explicit multiplication tables.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par::prelude::*;

/// A finite group with elements `0..order`; element `0` is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    names: Vec<String>,
    perms: Option<Vec<Vec<usize>>>,
}

/// JSON Cayley-table exchange format.
#[derive(Serialize, Deserialize)]
pub struct CayleyTable {
    pub order: usize,
    pub table: Vec<Vec<u32>>,
    #[serde(default)]
    pub names: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table (`table[a][b] = a·b`),
    /// checking closure, associativity, identity and inverses. The identity
    /// is moved to index 0 if necessary.
    pub fn from_table(name: &str, table: Vec<Vec<u32>>, names: Option<Vec<String>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n || row.iter().any(|&x| x as usize >= n)) {
            return Err(Error::InvalidGroup("table is not n×n over 0..n".into()));
        }
        let names = names.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if names.len() != n {
            return Err(Error::InvalidGroup("wrong number of element names".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] as usize == x && table[x][e] as usize == x))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        // relabel so that the identity is 0
        let relabel = |x: usize| -> usize {
            if x == e {
                0
            } else if x == 0 {
                e
            } else {
                x
            }
        };
        let mut flat = vec![0u32; n * n];
        let mut new_names = names.clone();
        for a in 0..n {
            new_names[relabel(a)] = names[a].clone();
            for b in 0..n {
                flat[relabel(a) * n + relabel(b)] = relabel(table[a][b] as usize) as u32;
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let ab = flat[a * n + b] as usize;
                    let bc = flat[b * n + c] as usize;
                    if flat[ab * n + c] != flat[a * n + bc] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| flat[a * n + b] == 0)
                .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))?;
            inverse[a] = inv as u32;
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            order: n,
            table: flat,
            inverse,
            names: new_names,
            perms: None,
        })
    }

    /// Unchecked constructor for tables produced by trusted code (identity
    /// already at index 0).
    pub(crate) fn from_fn(
        name: String,
        order: usize,
        mul: impl Fn(usize, usize) -> usize + Sync,
        names: Vec<String>,
    ) -> Self {
        let table: Vec<u32> = (0..order * order)
            .into_par_iter()
            .map(|ab| mul(ab / order, ab % order) as u32)
            .collect();
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            inverse[a] = (0..order).find(|&b| table[a * order + b] == 0).expect("group") as u32;
        }
        FiniteGroup {
            name,
            order,
            table,
            inverse,
            names,
            perms: None,
        }
    }

    pub fn trivial() -> Self {
        FiniteGroup::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        FiniteGroup::from_fn(
            format!("cyclic:{n}"),
            n,
            |a, b| (a + b) % n,
            (0..n).map(|i| i.to_string()).collect(),
        )
    }

    /// S_n acting on `0..n`, elements in lexicographic order of their
    /// one-line notation; product is composition `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = all_permutations(n);
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let names = perms.iter().map(|p| format!("{p:?}")).collect();
        let mut g = FiniteGroup::from_fn(
            format!("sym:{n}"),
            perms.len(),
            |a, b| {
                let c: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
                index[&c]
            },
            names,
        );
        g.perms = Some(perms);
        g
    }

    pub fn dihedral(n: usize) -> Self {
        assert!(n > 0);
        // element r^i s^j has index i + n·j
        let names = (0..2 * n)
            .map(|x| {
                let (i, j) = (x % n, x / n);
                if j == 0 {
                    format!("r^{i}")
                } else {
                    format!("r^{i}s")
                }
            })
            .collect();
        FiniteGroup::from_fn(
            format!("dihedral:{n}"),
            2 * n,
            |x, y| {
                let (a, b) = (x % n, x / n);
                let (c, d) = (y % n, y / n);
                let rot = if b == 0 { a + c } else { a + n - c } % n;
                rot + n * ((b + d) % 2)
            },
            names,
        )
    }

    pub fn klein() -> Self {
        let mut g = FiniteGroup::direct_product(&[FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)]);
        g.name = "klein".into();
        g
    }

    /// Direct product; element index is mixed-radix with the first factor
    /// varying fastest.
    pub fn direct_product(factors: &[FiniteGroup]) -> Self {
        let orders: Vec<usize> = factors.iter().map(|f| f.order).collect();
        let total: usize = orders.iter().product();
        let split = |mut x: usize| -> Vec<usize> {
            orders
                .iter()
                .map(|&o| {
                    let r = x % o;
                    x /= o;
                    r
                })
                .collect()
        };
        let join = |v: &[usize]| -> usize {
            v.iter().rev().zip(orders.iter().rev()).fold(0, |acc, (&d, &o)| acc * o + d)
        };
        let names = (0..total)
            .map(|x| {
                let parts: Vec<String> = split(x)
                    .iter()
                    .zip(factors)
                    .map(|(&d, f)| f.names[d].clone())
                    .collect();
                format!("({})", parts.join(","))
            })
            .collect();
        let name = format!(
            "product:({})",
            factors.iter().map(|f| f.name.clone()).collect::<Vec<_>>().join(",")
        );
        FiniteGroup::from_fn(
            name,
            total,
            |a, b| {
                let (va, vb) = (split(a), split(b));
                let prod: Vec<usize> = factors
                    .iter()
                    .enumerate()
                    .map(|(i, f)| f.mul(va[i] as u32, vb[i] as u32) as usize)
                    .collect();
                join(&prod)
            },
            names,
        )
    }

    pub fn from_cayley_json(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let ct: CayleyTable = serde_json::from_str(&text)?;
        if ct.table.len() != ct.order {
            return Err(Error::InvalidGroup(format!(
                "order {} but table has {} rows",
                ct.order,
                ct.table.len()
            )));
        }
        FiniteGroup::from_table(&format!("file:{}", path.display()), ct.table, ct.names)
    }

    pub fn to_cayley(&self) -> CayleyTable {
        CayleyTable {
            order: self.order,
            table: (0..self.order)
                .map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec())
                .collect(),
            names: Some(self.names.clone()),
        }
    }

    /// Parses `cyclic:n`, `sym:n`, `alt:n`, `dihedral:n`, `klein`, `trivial`,
    /// `product:(A,B,…)` and `file:<path>`.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let num = |s: &str| -> Result<usize> {
            s.trim()
                .parse::<usize>()
                .ok()
                .filter(|&n| n > 0)
                .ok_or_else(|| Error::Parse(format!("bad group size in {spec:?}")))
        };
        match spec.split_once(':') {
            None => match spec {
                "klein" => Ok(FiniteGroup::klein()),
                "trivial" => Ok(FiniteGroup::trivial()),
                _ => Err(Error::Parse(format!("unknown group {spec:?}"))),
            },
            Some(("cyclic", n)) => Ok(FiniteGroup::cyclic(num(n)?)),
            Some(("sym", n)) => Ok(FiniteGroup::symmetric(num(n)?)),
            Some(("alt", n)) => {
                let s = FiniteGroup::symmetric(num(n)?);
                let elems = s.parse_subgroup(&format!("alt:{n}"))?;
                let mut a = s.subgroup_as_group(&elems);
                a.name = format!("alt:{n}");
                Ok(a)
            }
            Some(("dihedral", n)) => Ok(FiniteGroup::dihedral(num(n)?)),
            Some(("file", path)) => FiniteGroup::from_cayley_json(Path::new(path)),
            Some(("product", rest)) => {
                let inner = rest
                    .trim()
                    .strip_prefix('(')
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("product needs parentheses: {spec:?}")))?;
                let factors = split_top_level(inner)
                    .iter()
                    .map(|s| FiniteGroup::parse(s))
                    .collect::<Result<Vec<_>>>()?;
                if factors.is_empty() {
                    return Err(Error::Parse("empty product".into()));
                }
                Ok(FiniteGroup::direct_product(&factors))
            }
            _ => Err(Error::Parse(format!("unknown group {spec:?}"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn element_name(&self, x: u32) -> &str {
        &self.names[x as usize]
    }

    pub fn permutation(&self, x: u32) -> Option<&[usize]> {
        self.perms.as_ref().map(|p| p[x as usize].as_slice())
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order as u32
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        self.elements().fold(1, |acc, a| acc.lcm(&self.element_order(a)))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Conjugacy classes, each sorted, ordered by smallest element (so the
    /// identity class comes first).
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let reps: Vec<u32> = (0..self.order as u32)
            .into_par_iter()
            .map(|x| {
                self.elements()
                    .map(|g| self.mul(self.mul(g, x), self.inv(g)))
                    .min()
                    .expect("non-empty")
            })
            .collect();
        let mut classes: Vec<Vec<u32>> = Vec::new();
        let mut slot: HashMap<u32, usize> = HashMap::new();
        for (x, r) in reps.into_iter().enumerate() {
            let i = *slot.entry(r).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[i].push(x as u32);
        }
        classes
    }

    /// Smallest subgroup containing `gens`, sorted.
    pub fn subgroup_closure(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue: VecDeque<u32> = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order as u32).filter(|&x| seen[x as usize]).collect()
    }

    pub fn is_subgroup(&self, elems: &[u32]) -> bool {
        let set: BTreeSet<u32> = elems.iter().copied().collect();
        set.contains(&0)
            && set
                .iter()
                .all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn commutator_subgroup(&self) -> Vec<u32> {
        let comms: BTreeSet<u32> = self
            .elements()
            .flat_map(|a| {
                self.elements()
                    .map(move |b| self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b))))
            })
            .collect();
        self.subgroup_closure(&comms.into_iter().collect::<Vec<_>>())
    }

    /// |G^ab| = |G| / |[G,G]|.
    pub fn abelianization_order(&self) -> usize {
        self.order / self.commutator_subgroup().len()
    }

    /// A subgroup as a group in its own right; elements keep their order.
    pub fn subgroup_as_group(&self, elems: &[u32]) -> FiniteGroup {
        let pos: HashMap<u32, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut g = FiniteGroup::from_fn(
            format!("{}<{}>", self.name, elems.len()),
            elems.len(),
            |a, b| pos[&self.mul(elems[a], elems[b])],
            elems.iter().map(|&x| self.names[x as usize].clone()).collect(),
        );
        if let Some(perms) = &self.perms {
            g.perms = Some(elems.iter().map(|&x| perms[x as usize].clone()).collect());
        }
        g
    }

    /// Parses a subgroup of this group: `trivial`, `whole`,
    /// `gen:i,j,…` (closure of element indices) and, for permutation groups,
    /// `sym:k` (permutations fixing every point ≥ k), `alt:k`, `young:a+b+…`.
    pub fn parse_subgroup(&self, spec: &str) -> Result<Vec<u32>> {
        let spec = spec.trim();
        let perms = || {
            self.perms
                .as_ref()
                .ok_or_else(|| Error::NotSubgroup(format!("{spec:?} needs a permutation group")))
        };
        let elems = match spec.split_once(':') {
            None => match spec {
                "trivial" => vec![0],
                "whole" => self.elements().collect(),
                _ => return Err(Error::Parse(format!("unknown subgroup {spec:?}"))),
            },
            Some(("gen", list)) => {
                let gens = list
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| {
                        s.trim()
                            .parse::<u32>()
                            .ok()
                            .filter(|&x| (x as usize) < self.order)
                            .ok_or_else(|| Error::Parse(format!("bad element index {s:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.subgroup_closure(&gens)
            }
            Some(("sym", k)) | Some(("alt", k)) => {
                let k: usize = k.trim().parse().map_err(|_| Error::Parse(spec.into()))?;
                let perms = perms()?;
                let even = spec.starts_with("alt");
                if k > perms[0].len() {
                    return Err(Error::NotSubgroup(format!("{spec} is larger than {}", self.name)));
                }
                self.elements()
                    .filter(|&x| {
                        let p = &perms[x as usize];
                        (k..p.len()).all(|i| p[i] == i) && (!even || parity(p) == 0)
                    })
                    .collect()
            }
            Some(("young", blocks)) => {
                let sizes = blocks
                    .split('+')
                    .map(|s| s.trim().parse::<usize>().map_err(|_| Error::Parse(spec.into())))
                    .collect::<Result<Vec<_>>>()?;
                let perms = perms()?;
                if sizes.iter().sum::<usize>() != perms[0].len() {
                    return Err(Error::NotSubgroup(format!(
                        "{spec}: block sizes must add up to the degree"
                    )));
                }
                let mut block_of = Vec::new();
                for (b, &s) in sizes.iter().enumerate() {
                    block_of.extend(std::iter::repeat_n(b, s));
                }
                self.elements()
                    .filter(|&x| {
                        let p = &perms[x as usize];
                        (0..p.len()).all(|i| block_of[p[i]] == block_of[i])
                    })
                    .collect()
            }
            _ => return Err(Error::Parse(format!("unknown subgroup {spec:?}"))),
        };
        if !self.is_subgroup(&elems) {
            return Err(Error::NotSubgroup(spec.into()));
        }
        Ok(elems)
    }

    /// Extends an assignment on generators to a homomorphism into `target`,
    /// failing if the assignment does not define one or the generators do
    /// not generate.
    pub fn hom_from_generators(&self, target: &FiniteGroup, images: &[(u32, u32)]) -> Result<Vec<u32>> {
        let mut map: Vec<Option<u32>> = vec![None; self.order];
        map[0] = Some(0);
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            let fx = map[x as usize].expect("visited");
            for &(g, fg) in images {
                let y = self.mul(x, g);
                let fy = target.mul(fx, fg);
                match map[y as usize] {
                    None => {
                        map[y as usize] = Some(fy);
                        queue.push_back(y);
                    }
                    Some(v) if v != fy => {
                        return Err(Error::InvalidGroup("assignment is not a homomorphism".into()))
                    }
                    _ => {}
                }
            }
        }
        let map = map
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidGroup("images do not cover a generating set".into()))?;
        if !self.is_hom(target, &map) {
            return Err(Error::InvalidGroup("assignment is not a homomorphism".into()));
        }
        Ok(map)
    }

    pub fn is_hom(&self, target: &FiniteGroup, map: &[u32]) -> bool {
        map.len() == self.order
            && self.elements().all(|a| {
                self.elements()
                    .all(|b| map[self.mul(a, b) as usize] == target.mul(map[a as usize], map[b as usize]))
            })
    }

    /// A small generating set, chosen greedily by element index.
    pub fn generators(&self) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut span = vec![0u32];
        for x in self.elements() {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.subgroup_closure(&gens);
            }
        }
        gens
    }

    /// Linear characters of an abelian group as exponent vectors `e` with
    /// χ(g) = ζ_m^{e[g]}, m the exponent. Sorted, trivial character first.
    pub fn linear_characters(&self) -> Result<Vec<Vec<u32>>> {
        if !self.is_abelian() {
            return Err(Error::Unsupported(format!("{} is not abelian", self.name)));
        }
        let m = self.exponent();
        let target = FiniteGroup::cyclic(m);
        let gens = self.generators();
        let mut chars = Vec::new();
        let total = m.pow(gens.len() as u32);
        for code in 0..total {
            let mut c = code;
            let images: Vec<(u32, u32)> = gens
                .iter()
                .map(|&g| {
                    let v = (c % m) as u32;
                    c /= m;
                    (g, v)
                })
                .collect();
            if let Ok(map) = self.hom_from_generators(&target, &images) {
                chars.push(map);
            }
        }
        chars.sort();
        chars.dedup();
        debug_assert_eq!(chars.len(), self.order);
        Ok(chars)
    }
}

pub(crate) fn parity(p: &[usize]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2
}

pub(crate) fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}
