//! Brute-force references for the generator. Trees are grown leaf by leaf
//! and deduplicated by canonical code; small orders can also be swept through
//! all labeled trees.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{CanonicalForm, HalfTree, Tree};

/// All unlabeled trees of order `n`, each once, in canonical-code order.
pub fn oracle_free_trees(n: usize) -> Result<Vec<Tree>> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let mut level = vec![Tree::new(1, Vec::new())?];
    for order in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.order() {
                let mut edges = t.edges().to_vec();
                edges.push((v, order - 1));
                let grown = Tree::new(order, edges)?;
                if seen.insert(grown.canonical()) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level.sort_by_cached_key(|t| t.canonical());
    Ok(level)
}

/// All unlabeled rooted trees of order `n`, rooted at vertex 0.
pub fn oracle_rooted_trees(n: usize) -> Result<Vec<HalfTree>> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let mut level = vec![HalfTree::single()];
    for order in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for h in &level {
            for v in 0..h.order() {
                let mut edges = h.edges();
                edges.push((v, order - 1));
                let grown = HalfTree::from_edges(order, 0, edges)?;
                if seen.insert(grown.canonical()) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level.sort_by_cached_key(|h| h.canonical());
    Ok(level)
}

/// Largest order accepted by [`oracle_prufer`].
pub const PRUFER_MAX: usize = 8;

/// Unlabeled trees of order `n` recovered from every labeled tree (Prüfer
/// sequence), deduplicated by canonical code.
pub fn oracle_prufer(n: usize) -> Result<Vec<CanonicalForm>> {
    if n == 0 || n > PRUFER_MAX {
        return Err(Error::InvalidOrder(n));
    }
    if n <= 2 {
        let edges = if n == 2 { vec![(0, 1)] } else { Vec::new() };
        return Ok(vec![Tree::new(n, edges)?.canonical()]);
    }
    let mut codes = HashSet::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        codes.insert(prufer_decode(n, &seq)?.canonical());
        let mut i = seq.len();
        loop {
            if i == 0 {
                let mut out: Vec<_> = codes.into_iter().collect();
                out.sort();
                return Ok(out);
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
        }
    }
}

fn prufer_decode(n: usize, seq: &[usize]) -> Result<Tree> {
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf remains");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::new(n, edges)
}

/// Rooted tree counts `a(1..=n)` from
/// `a(m+1) = (1/m) * sum_{k=1..m} (sum_{d | k} d a(d)) a(m-k+1)`.
pub fn rooted_counts(n: usize) -> Vec<BigUint> {
    let mut a = vec![BigUint::zero(); n + 1];
    if n >= 1 {
        a[1] = BigUint::from(1u32);
    }
    let mut divisor_sums = vec![BigUint::zero(); n + 1];
    for m in 1..n {
        divisor_sums[m] = (1..=m).filter(|d| m % d == 0).map(|d| &a[d] * d).sum();
        let total: BigUint = (1..=m).map(|k| &divisor_sums[k] * &a[m - k + 1]).sum();
        a[m + 1] = total / m;
    }
    a.remove(0);
    a
}

/// Trees of each order, split by diameter.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CountTable {
    rows: BTreeMap<usize, BTreeMap<usize, usize>>,
}

impl CountTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, order: usize, diameter: usize, count: usize) {
        *self
            .rows
            .entry(order)
            .or_default()
            .entry(diameter)
            .or_insert(0) += count;
    }

    pub fn get(&self, order: usize, diameter: usize) -> usize {
        self.rows
            .get(&order)
            .and_then(|r| r.get(&diameter))
            .copied()
            .unwrap_or(0)
    }

    pub fn total(&self, order: usize) -> usize {
        self.rows.get(&order).map_or(0, |r| r.values().sum())
    }

    /// `(diameter, count)` for one order, ascending diameter.
    pub fn row(&self, order: usize) -> Vec<(usize, usize)> {
        self.rows
            .get(&order)
            .map(|r| r.iter().map(|(&d, &c)| (d, c)).collect())
            .unwrap_or_default()
    }

    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }
}

/// Counts of the oracle trees of order `n` by diameter.
pub fn oracle_by_diameter(n: usize) -> Result<CountTable> {
    let mut table = CountTable::new();
    for t in oracle_free_trees(n)? {
        table.add(n, t.diameter(), 1);
    }
    Ok(table)
}
