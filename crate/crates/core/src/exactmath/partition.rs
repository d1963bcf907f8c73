use std::cmp::Ordering;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Integer partition, parts weakly decreasing and positive.
///
/// Ordering: larger size first, then decreasing lexicographic, so that
/// `(4) < (3,1) < (2,2) < (2,1,1) < (1,1,1,1)` and sorted collections come
/// out in the canonical order used by every emitted table.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition((0..w).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Whether the Young diagram of `self` contains that of `other`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    pub fn hook(&self, i: usize, j: usize) -> usize {
        let arm = self.0[i] - j - 1;
        let leg = self.0[i + 1..].iter().filter(|&&p| p > j).count();
        arm + leg + 1
    }

    /// Cells `(row, col)` in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (0..p).map(move |j| (i, j)))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        if v.windows(2).any(|w| w[0] < w[1]) || v.contains(&0) {
            return Err(Error::Parse(format!(
                "partition parts must be positive and weakly decreasing: {v:?}"
            )));
        }
        Ok(Partition(v))
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .size()
            .cmp(&self.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n` in canonical (decreasing lexicographic) order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            go(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// A partition-valued map on a finite ordered label set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PartitionMap {
    labels: Vec<String>,
    parts: Vec<Partition>,
}

impl PartitionMap {
    pub fn new(labels: Vec<String>, parts: Vec<Partition>) -> Self {
        assert_eq!(labels.len(), parts.len(), "one partition per label");
        PartitionMap { labels, parts }
    }

    /// The map sending every label to the empty partition.
    pub fn empty(labels: &[String]) -> Self {
        PartitionMap {
            labels: labels.to_vec(),
            parts: vec![Partition::empty(); labels.len()],
        }
    }

    /// The map with a single non-empty value.
    pub fn single(labels: &[String], at: usize, p: Partition) -> Self {
        let mut m = PartitionMap::empty(labels);
        m.parts[at] = p;
        m
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn get(&self, label: &str) -> Option<&Partition> {
        self.labels.iter().position(|l| l == label).map(|i| &self.parts[i])
    }

    /// ‖λ‖ = Σ_x |λ(x)|.
    pub fn total_size(&self) -> usize {
        self.parts.iter().map(Partition::size).sum()
    }
}

impl Ord for PartitionMap {
    fn cmp(&self, other: &Self) -> Ordering {
        self.labels
            .cmp(&other.labels)
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for PartitionMap {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for PartitionMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .labels
            .iter()
            .zip(&self.parts)
            .filter(|(_, p)| !p.is_empty())
            .map(|(l, p)| format!("{l}↦{p}"))
            .collect();
        if s.is_empty() {
            f.write_str("{}")
        } else {
            write!(f, "{{{}}}", s.join(", "))
        }
    }
}

impl Serialize for PartitionMap {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.labels.len()))?;
        for (l, p) in self.labels.iter().zip(&self.parts) {
            map.serialize_entry(l, p)?;
        }
        map.end()
    }
}

/// All λ: X → partitions with ‖λ‖ = n, in canonical order.
pub fn partition_maps(n: usize, labels: &[String]) -> Vec<PartitionMap> {
    if labels.is_empty() {
        return if n == 0 {
            vec![PartitionMap::empty(labels)]
        } else {
            Vec::new()
        };
    }
    let tables: Vec<Vec<Partition>> = (0..=n).map(partitions_of).collect();
    let mut out = Vec::new();
    fn go(
        slot: usize,
        left: usize,
        labels: &[String],
        tables: &[Vec<Partition>],
        cur: &mut Vec<Partition>,
        out: &mut Vec<PartitionMap>,
    ) {
        if slot + 1 == labels.len() {
            for p in &tables[left] {
                cur.push(p.clone());
                out.push(PartitionMap::new(labels.to_vec(), cur.clone()));
                cur.pop();
            }
            return;
        }
        for k in (0..=left).rev() {
            for p in &tables[k] {
                cur.push(p.clone());
                go(slot + 1, left - k, labels, tables, cur, out);
                cur.pop();
            }
        }
    }
    go(0, n, labels, &tables, &mut Vec::new(), &mut out);
    out
}
