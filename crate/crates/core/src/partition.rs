//! Integer partitions, multisets and multiset coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A finite multiset stored as a multiplicity map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset<T: Ord> {
    counts: BTreeMap<T, usize>,
}

impl<T: Ord> Default for Multiset<T> {
    fn default() -> Self {
        Multiset {
            counts: BTreeMap::new(),
        }
    }
}

impl<T: Ord> Multiset<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, item: T) {
        self.insert_many(item, 1);
    }

    pub fn insert_many(&mut self, item: T, times: usize) {
        if times > 0 {
            *self.counts.entry(item).or_insert(0) += times;
        }
    }

    pub fn multiplicity(&self, item: &T) -> usize {
        self.counts.get(item).copied().unwrap_or(0)
    }

    /// Total count, multiplicities included.
    pub fn size(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Underlying set in ascending order.
    pub fn underlying(&self) -> impl DoubleEndedIterator<Item = &T> {
        self.counts.keys()
    }

    /// `(element, multiplicity)` pairs in ascending element order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&T, usize)> {
        self.counts.iter().map(|(k, &m)| (k, m))
    }
}

impl<T: Ord> FromIterator<T> for Multiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        let mut m = Multiset::new();
        for item in iter {
            m.insert(item);
        }
        m
    }
}

/// A partition of `total` into positive parts, kept multiplicity-style.
///
/// The partition of zero is the empty multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    total: usize,
    parts: Multiset<usize>,
}

impl Partition {
    pub fn zero() -> Self {
        Partition {
            total: 0,
            parts: Multiset::new(),
        }
    }

    pub fn from_parts(parts: &[usize]) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        Ok(Partition {
            total: parts.iter().sum(),
            parts: parts.iter().copied().collect(),
        })
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.multiplicity(&part)
    }

    pub fn max_part(&self) -> Option<usize> {
        self.parts.underlying().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts counted with multiplicity.
    pub fn len(&self) -> usize {
        self.parts.size()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(part, multiplicity)` from the greatest part down.
    pub fn distinct_desc(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts.iter().rev().map(|(&p, m)| (p, m))
    }

    /// Parts with repetition, greatest first.
    pub fn parts_desc(&self) -> Vec<usize> {
        self.distinct_desc()
            .flat_map(|(p, m)| std::iter::repeat_n(p, m))
            .collect()
    }
}

/// Orders partitions of one integer: greatest parts first, then their
/// multiplicities, then the next greatest part, and so on.
pub fn cmp_partition(p: &Partition, q: &Partition) -> Result<Ordering> {
    if p.total != q.total {
        return Err(Error::PartitionTotalMismatch(p.total, q.total));
    }
    let mut xs = p.distinct_desc();
    let mut ys = q.distinct_desc();
    loop {
        match (xs.next(), ys.next()) {
            (None, None) => return Ok(Ordering::Equal),
            // Equal totals make a one-sided exhaustion impossible.
            (None, Some(_)) => return Ok(Ordering::Less),
            (Some(_), None) => return Ok(Ordering::Greater),
            (Some((a, ma)), Some((b, mb))) => {
                let ord = a.cmp(&b).then(ma.cmp(&mb));
                if ord != Ordering::Equal {
                    return Ok(ord);
                }
            }
        }
    }
}

impl Ord for Partition {
    /// Total first, then [`cmp_partition`].
    fn cmp(&self, other: &Self) -> Ordering {
        self.total
            .cmp(&other.total)
            .then_with(|| cmp_partition(self, other).expect("totals are equal"))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All partitions of `n`, ascending under [`cmp_partition`].
pub fn partitions(n: usize) -> Vec<Partition> {
    fn go(rest: usize, cap: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition::from_parts(prefix).expect("parts are positive"));
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            prefix.push(part);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Multiset coefficient: the number of size-`k` multisets over `n` items,
/// `C(n + k - 1, k)`.
pub fn multichoose(n: usize, k: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    if n == 0 {
        return BigUint::zero();
    }
    binomial(n + k - 1, k)
}

pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::from_parts(parts).unwrap()
    }

    #[test]
    fn zero_partition() {
        let all = partitions(0);
        assert_eq!(all, vec![Partition::zero()]);
        assert_eq!(all[0].total(), 0);
        assert!(all[0].is_zero());
    }

    #[test]
    fn small_counts() {
        assert_eq!(partitions(4).len(), 5);
        assert!(partitions(15).contains(&p(&[2, 2, 2, 3, 3, 3])));
    }

    #[test]
    fn ascending_order_of_four() {
        let got: Vec<_> = partitions(4).iter().map(|q| q.parts_desc()).collect();
        assert_eq!(
            got,
            vec![
                vec![1, 1, 1, 1],
                vec![2, 1, 1],
                vec![2, 2],
                vec![3, 1],
                vec![4]
            ]
        );
    }

    #[test]
    fn comparison_examples() {
        assert_eq!(cmp_partition(&p(&[4]), &p(&[3, 1])), Ok(Ordering::Greater));
        assert_eq!(cmp_partition(&p(&[3, 1]), &p(&[1, 3])), Ok(Ordering::Equal));
        assert_eq!(
            cmp_partition(&p(&[2, 2]), &p(&[2, 1, 1])),
            Ok(Ordering::Greater)
        );
        assert_eq!(
            cmp_partition(&p(&[2, 2]), &p(&[2, 1])),
            Err(Error::PartitionTotalMismatch(4, 3))
        );
    }

    #[test]
    fn rejects_zero_parts() {
        assert_eq!(Partition::from_parts(&[2, 0]), Err(Error::ZeroPart));
    }

    #[test]
    fn multichoose_values() {
        assert_eq!(multichoose(2, 3), BigUint::from(4u32));
        assert_eq!(multichoose(7, 0), BigUint::one());
        assert_eq!(multichoose(0, 0), BigUint::one());
        assert_eq!(multichoose(0, 2), BigUint::zero());
        assert_eq!(multichoose(3, 2), BigUint::from(6u32));
    }

    #[test]
    fn multiset_basics() {
        let m: Multiset<char> = "abca".chars().collect();
        assert_eq!(m.size(), 4);
        assert_eq!(m.multiplicity(&'a'), 2);
        assert_eq!(m.underlying().collect::<String>(), "abc");
    }
}
