//! Closed-form counters for backbones decorated with equal or linear
//! appendices, and the symmetric/asymmetric tally arithmetic used when two
//! decoration layers are overlaid on one backbone.
//!
//! All counters work on backbone orders (vertex counts). A half-backbone of
//! order `s` offers slots at distances `r..s` from its end vertex to an
//! appendix of radius `r`, so the per-half slot count is `floor(n/2) - r`,
//! clamped at zero.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::partition::{binomial, partitions, Partition};

/// Ways to place `k` indistinguishable appendices on `n` slots.
///
/// Follows the recurrence `G_{k+1}(n) = sum G_k(i)` with `G_0 = 1`; the empty
/// placement on zero slots counts once.
pub fn g(k: usize, n: usize) -> BigUint {
    // row[i] holds G_j(i) for the current j.
    let mut row = vec![BigUint::one(); n + 1];
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); n + 1];
        let mut acc = BigUint::zero();
        for i in 1..=n {
            acc += &row[i];
            next[i] = acc.clone();
        }
        row = next;
    }
    row.swap_remove(n)
}

/// Gluing count for two halves holding `x` and `y` appendices over `z` slots
/// each: ordered product when the loads differ, unordered pairs with
/// repetition when they match.
pub fn f(x: usize, y: usize, z: usize) -> BigUint {
    let gx = g(x, z);
    if x != y {
        gx * g(y, z)
    } else {
        pairs_with_repetition(&gx)
    }
}

fn pairs_with_repetition(n: &BigUint) -> BigUint {
    n * (n + 1u32) / 2u32
}

fn slots_per_half(r: usize, n: usize) -> usize {
    (n / 2).saturating_sub(r)
}

fn is_odd(n: usize) -> bool {
    n % 2 == 1
}

/// Trees obtained by hanging `k` copies of one radius-`r` appendix on a
/// backbone of order `n` without growing its diameter. Odd backbones also
/// admit loads on the middle vertex when `r <= floor(n/2)`.
pub fn count_equal_radius(k: usize, r: usize, n: usize) -> BigUint {
    let pos = slots_per_half(r, n);
    let middle_ok = is_odd(n) && r <= n / 2;
    let max_j = if middle_ok { k } else { 0 };
    let mut total = BigUint::zero();
    for j in 0..=max_j {
        let side = k - j;
        for i in 0..=side / 2 {
            total += f(side - i, i, pos);
        }
    }
    total
}

/// Direct (single-vertex) appendices: the radius-one case of
/// [`count_equal_radius`], which keeps end vertices free.
pub fn count_direct(k: usize, n: usize) -> BigUint {
    count_equal_radius(k, 1, n)
}

/// Symmetric and asymmetric member counts of a set of decorated backbones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymCount {
    pub sigma: BigUint,
    pub alpha: BigUint,
}

impl SymCount {
    pub fn new(sigma: impl Into<BigUint>, alpha: impl Into<BigUint>) -> Self {
        SymCount {
            sigma: sigma.into(),
            alpha: alpha.into(),
        }
    }

    /// The single bare backbone: neutral for [`combine_sigma`].
    pub fn identity() -> Self {
        SymCount::new(1u32, 0u32)
    }

    pub fn total(&self) -> BigUint {
        &self.sigma + &self.alpha
    }
}

/// Size of `S ∘ T`: asymmetric pairs overlay in two relative orientations,
/// any pair with a symmetric member in one.
pub fn combine_cardinality(s: &SymCount, t: &SymCount) -> BigUint {
    BigUint::from(2u32) * &s.alpha * &t.alpha
        + &s.sigma * &t.alpha
        + &s.alpha * &t.sigma
        + &s.sigma * &t.sigma
}

/// Tally of `S ∘ T`; only symmetric-with-symmetric overlays stay symmetric.
pub fn combine_sigma(s: &SymCount, t: &SymCount) -> SymCount {
    let sigma = &s.sigma * &t.sigma;
    let alpha = combine_cardinality(s, t) - &sigma;
    SymCount { sigma, alpha }
}

/// Side decorations by `k` radius-`r` appendices that are unchanged by
/// swapping the two halves: both halves carry the same `k/2`-placement.
pub fn sigma_of_h(k: usize, r: usize, n: usize) -> BigUint {
    if k % 2 == 1 {
        BigUint::zero()
    } else {
        g(k / 2, slots_per_half(r, n))
    }
}

/// Tally of side-only decorations with `k` radius-`r` appendices.
pub fn side_sym_count(k: usize, r: usize, n: usize) -> SymCount {
    let pos = slots_per_half(r, n);
    let mut total = BigUint::zero();
    for i in 0..=k / 2 {
        total += f(k - i, i, pos);
    }
    let sigma = sigma_of_h(k, r, n);
    let alpha = total - &sigma;
    SymCount { sigma, alpha }
}

/// Radius filter for the middle vertex of an odd backbone of order `n`.
pub fn middle_filter(parts: impl IntoIterator<Item = usize>, n: usize) -> bool {
    parts.into_iter().max().is_none_or(|m| m <= n / 2)
}

/// Trees obtained from a backbone of order `n` and `k` free vertices grouped
/// into rooted paths (linear appendices), diameter preserved.
pub fn count_linear_total(k: usize, n: usize) -> BigUint {
    let max_j = if is_odd(n) { k } else { 0 };
    let mut total = BigUint::zero();
    for j in 0..=max_j {
        let middles = partitions(j)
            .iter()
            .filter(|part| middle_filter(part.distinct_desc().map(|(q, _)| q), n))
            .count();
        if middles == 0 {
            continue;
        }
        let mut sides = BigUint::zero();
        for q in partitions(k - j) {
            sides += linear_sides(&q, n).total();
        }
        total += sides * middles;
    }
    total
}

/// Folds the per-radius side tallies of one partition, smallest radius first.
fn linear_sides(q: &Partition, n: usize) -> SymCount {
    let mut distinct: Vec<(usize, usize)> = q.distinct_desc().collect();
    distinct.reverse();
    distinct
        .into_iter()
        .fold(SymCount::identity(), |acc, (radius, mult)| {
            combine_sigma(&acc, &side_sym_count(mult, radius, n))
        })
}

/// `C(n + k - 1, k)`, taking `C(x, 0) = 1` for every `x` (so `(0, 0)` gives one).
pub fn stars_and_bars(k: usize, n: usize) -> BigUint {
    if k == 0 {
        return BigUint::one();
    }
    binomial(n + k - 1, k)
}
