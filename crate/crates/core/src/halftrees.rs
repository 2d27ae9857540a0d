//! Ordered listing of half-trees (rooted trees) and the machinery shared
//! with the tree lister: appendix sets, placements on half-backbones,
//! terminal-substituent validation and the prime-number ordering.
//!
//! A half-tree of order `n` found at step `k` is a half-backbone (rooted
//! path) of order `n - k` decorated with appendices built from the `k` free
//! vertices. Slots on a half-backbone of order `s` are indexed by distance
//! from the end vertex, `0..s`, with the root at distance `s - 1`. An
//! appendix of radius `r` may only sit at distance `>= r`; at distance
//! exactly `r` it is terminal and must not exceed the tip it induces.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::{compose_rooted, CanonicalForm, HalfTree, TreeBuilder};
use crate::partition::{partitions, Multiset, Partition};

/// Position of a half-tree in the global listing: order first, then rank
/// within its order. The derived ordering is the half-tree order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HtId {
    order: u32,
    rank: u32,
}

impl HtId {
    pub fn order(self) -> usize {
        self.order as usize
    }

    pub fn rank(self) -> usize {
        self.rank as usize
    }
}

/// Multiset of half-trees sharing one order, kept as a sorted id list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixedOrderMultiset {
    member_order: usize,
    members: Vec<HtId>,
}

impl FixedOrderMultiset {
    pub fn new(member_order: usize, mut members: Vec<HtId>) -> Result<Self> {
        if let Some(bad) = members.iter().find(|m| m.order() != member_order) {
            return Err(Error::MemberOrderMismatch(member_order, bad.order()));
        }
        members.sort_unstable();
        Ok(FixedOrderMultiset {
            member_order,
            members,
        })
    }

    pub fn member_order(&self) -> usize {
        self.member_order
    }

    pub fn members(&self) -> &[HtId] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn as_multiset(&self) -> Multiset<HtId> {
        self.members.iter().copied().collect()
    }
}

/// One way of turning a partition of the free vertices into half-trees.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AppendixSet {
    source: Partition,
    /// One multiset per distinct part, greatest part first.
    per_part: Vec<FixedOrderMultiset>,
}

impl AppendixSet {
    pub fn new(source: Partition, per_part: Vec<FixedOrderMultiset>) -> Result<Self> {
        let mut per_part = per_part;
        per_part.sort_by_key(|m| std::cmp::Reverse(m.member_order));
        let expected: Vec<_> = source.distinct_desc().collect();
        let got: Vec<_> = per_part
            .iter()
            .map(|m| (m.member_order, m.size()))
            .collect();
        if expected != got {
            return Err(Error::PartitionMismatch);
        }
        Ok(AppendixSet { source, per_part })
    }

    pub fn source_partition(&self) -> &Partition {
        &self.source
    }

    pub fn per_part(&self) -> &[FixedOrderMultiset] {
        &self.per_part
    }

    /// Underlying half-trees with multiplicities, ascending.
    pub fn elements(&self) -> Vec<(HtId, usize)> {
        let mut all: Multiset<HtId> = Multiset::new();
        for m in &self.per_part {
            for &id in &m.members {
                all.insert(id);
            }
        }
        all.iter().map(|(&id, m)| (id, m)).collect()
    }
}

/// Appendices hung on a half-backbone, by distance from its end vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Placement {
    slots: Vec<Vec<HtId>>,
}

impl Placement {
    pub fn bare(backbone_order: usize) -> Self {
        Placement {
            slots: vec![Vec::new(); backbone_order],
        }
    }

    pub fn backbone_order(&self) -> usize {
        self.slots.len()
    }

    /// Appendices at `distance`, ascending.
    pub fn slot(&self, distance: usize) -> &[HtId] {
        &self.slots[distance]
    }

    /// Hangs `id` at `distance`, enforcing the radius rule.
    pub fn add(&mut self, catalog: &Catalog, distance: usize, id: HtId) -> Result<()> {
        let radius = catalog.height(id) + 1;
        if distance >= self.slots.len() || distance < radius {
            return Err(Error::IllegalSlot { radius, distance });
        }
        self.push(distance, id);
        Ok(())
    }

    fn push(&mut self, distance: usize, id: HtId) {
        let slot = &mut self.slots[distance];
        let at = slot.partition_point(|&x| x <= id);
        slot.insert(at, id);
    }

    pub(crate) fn overlay(&self, other: &Placement) -> Placement {
        let mut out = self.clone();
        for (d, slot) in other.slots.iter().enumerate() {
            for &id in slot {
                out.push(d, id);
            }
        }
        out
    }

    pub fn is_bare(&self) -> bool {
        self.slots.iter().all(|s| s.is_empty())
    }

    /// Vertex count of the realized half-tree.
    pub fn order(&self) -> usize {
        self.slots.len()
            + self
                .slots
                .iter()
                .flatten()
                .map(|id| id.order())
                .sum::<usize>()
    }

    /// Sorted distances of the copies of `id`.
    pub fn positions_of(&self, id: HtId) -> Vec<usize> {
        let mut out = Vec::new();
        for (d, slot) in self.slots.iter().enumerate() {
            out.extend(slot.iter().filter(|&&x| x == id).map(|_| d));
        }
        out
    }

    /// The half-tree, labeled with the root as vertex 0 and the backbone
    /// running `0..s` towards the end vertex.
    pub fn realize(&self, catalog: &Catalog) -> HalfTree {
        let s = self.slots.len();
        let mut builder = TreeBuilder::path(s);
        for (d, slot) in self.slots.iter().enumerate() {
            for &id in slot {
                builder.graft(s - 1 - d, catalog.get(id));
            }
        }
        builder.into_halftree()
    }

    /// Canonical code of the subtree hanging from the backbone vertex at
    /// each distance, computed bottom-up from the end vertex.
    fn codes_up_to(&self, catalog: &Catalog, last: usize) -> Vec<Vec<u8>> {
        let mut codes: Vec<Vec<u8>> = Vec::with_capacity(last + 1);
        for d in 0..=last {
            let mut kids: Vec<&[u8]> = self.slots[d]
                .iter()
                .map(|&id| catalog.code(id).as_bytes())
                .collect();
            if d > 0 {
                kids.push(&codes[d - 1]);
            }
            let code = compose_rooted(kids);
            codes.push(code);
        }
        codes
    }

    pub fn canonical(&self, catalog: &Catalog) -> CanonicalForm {
        let mut codes = self.codes_up_to(catalog, self.slots.len() - 1);
        CanonicalForm::from_bytes(codes.pop().expect("backbone is nonempty"))
    }
}

struct Entry {
    tree: HalfTree,
    code: CanonicalForm,
    step: usize,
}

/// Fixed-order multisets keyed by `(member order, size)`.
type MultisetCache = HashMap<(usize, usize), Arc<Vec<FixedOrderMultiset>>>;

/// Every half-tree of orders `1..=max_order`, in listing order, with the
/// lookup tables the orderings need. Grows bottom-up; entries never change
/// once an order is complete.
pub struct Catalog {
    orders: Vec<Vec<Entry>>,
    offsets: Vec<usize>,
    lookup: HashMap<CanonicalForm, HtId>,
    primes: Vec<u64>,
    multisets: Mutex<MultisetCache>,
}

impl Default for Catalog {
    fn default() -> Self {
        Self::new()
    }
}

impl Catalog {
    pub fn new() -> Self {
        Catalog {
            orders: Vec::new(),
            offsets: Vec::new(),
            lookup: HashMap::new(),
            primes: Vec::new(),
            multisets: Mutex::new(HashMap::new()),
        }
    }

    pub fn up_to(max_order: usize) -> Result<Self> {
        let mut c = Catalog::new();
        c.extend_to(max_order)?;
        Ok(c)
    }

    pub fn max_order(&self) -> usize {
        self.orders.len()
    }

    pub fn extend_to(&mut self, max_order: usize) -> Result<()> {
        while self.orders.len() < max_order {
            let n = self.orders.len() + 1;
            let listed = self.generate_order(n);
            let mut entries = Vec::with_capacity(listed.len());
            for (rank, (placement, step)) in listed.into_iter().enumerate() {
                let code = placement.canonical(self);
                let id = HtId {
                    order: n as u32,
                    rank: rank as u32,
                };
                if self.lookup.insert(code.clone(), id).is_some() {
                    return Err(Error::DuplicateHalfTree { order: n });
                }
                entries.push(Entry {
                    tree: placement.realize(self),
                    code,
                    step,
                });
            }
            let offset = self.offsets.last().copied().unwrap_or(0)
                + self.orders.last().map_or(0, |o| o.len());
            self.offsets.push(offset);
            self.orders.push(entries);
            let total = offset + self.orders[n - 1].len();
            if self.primes.len() < total {
                self.primes = first_primes(total.max(2 * self.primes.len()));
            }
        }
        Ok(())
    }

    /// Number of half-trees of `order` (zero when not yet listed).
    pub fn len(&self, order: usize) -> usize {
        order
            .checked_sub(1)
            .and_then(|i| self.orders.get(i))
            .map_or(0, |o| o.len())
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn ids(&self, order: usize) -> impl Iterator<Item = HtId> {
        (0..self.len(order)).map(move |rank| HtId {
            order: order as u32,
            rank: rank as u32,
        })
    }

    pub fn halftrees(&self, order: usize) -> impl Iterator<Item = &HalfTree> {
        order
            .checked_sub(1)
            .and_then(|i| self.orders.get(i))
            .into_iter()
            .flatten()
            .map(|e| &e.tree)
    }

    fn entry(&self, id: HtId) -> &Entry {
        &self.orders[id.order() - 1][id.rank()]
    }

    pub fn get(&self, id: HtId) -> &HalfTree {
        &self.entry(id).tree
    }

    pub fn code(&self, id: HtId) -> &CanonicalForm {
        &self.entry(id).code
    }

    pub fn height(&self, id: HtId) -> usize {
        self.entry(id).tree.height()
    }

    /// Step (number of free vertices) at which the half-tree was listed.
    pub fn step(&self, id: HtId) -> usize {
        self.entry(id).step
    }

    pub fn id_of(&self, h: &HalfTree) -> Option<HtId> {
        self.id_of_code(&h.canonical())
    }

    pub fn id_of_code(&self, code: &CanonicalForm) -> Option<HtId> {
        self.lookup.get(code).copied()
    }

    /// The rooted path of order `n` (a linear appendix of radius `n`).
    pub fn rooted_path(&self, n: usize) -> Option<HtId> {
        HalfTree::rooted_path(n).ok().and_then(|p| self.id_of(&p))
    }

    /// 1-based position in the global listing (all orders ascending).
    pub fn global_index(&self, id: HtId) -> usize {
        self.offsets[id.order() - 1] + id.rank() + 1
    }

    pub fn nu_of_id(&self, id: HtId) -> u64 {
        self.primes[self.global_index(id) - 1]
    }

    /// Prime assigned to a half-tree by its listing position.
    pub fn nu(&self, h: &HalfTree) -> Result<u64> {
        let id = self.id_of(h).ok_or(Error::UnknownHalfTree)?;
        Ok(self.nu_of_id(id))
    }

    /// Product of member primes raised to their multiplicities.
    pub fn n_value(&self, m: &FixedOrderMultiset) -> BigUint {
        m.members
            .iter()
            .fold(BigUint::one(), |acc, &id| acc * self.nu_of_id(id))
    }

    pub fn cmp_fixed_order(
        &self,
        a: &FixedOrderMultiset,
        b: &FixedOrderMultiset,
    ) -> Result<Ordering> {
        if a.member_order != b.member_order {
            return Err(Error::MemberOrderMismatch(a.member_order, b.member_order));
        }
        if a.size() != b.size() {
            return Err(Error::MultisetSizeMismatch(a.size(), b.size()));
        }
        Ok(self.n_value(a).cmp(&self.n_value(b)))
    }

    /// Compares part by part from the greatest part down.
    pub fn cmp_appendix_set(&self, a: &AppendixSet, b: &AppendixSet) -> Result<Ordering> {
        if a.source != b.source {
            return Err(Error::PartitionMismatch);
        }
        for (x, y) in a.per_part.iter().zip(&b.per_part) {
            let ord = self.cmp_fixed_order(x, y)?;
            if ord != Ordering::Equal {
                return Ok(ord);
            }
        }
        Ok(Ordering::Equal)
    }

    /// Global listing order; isomorphic half-trees compare equal.
    pub fn cmp_halftree(&self, a: &HalfTree, b: &HalfTree) -> Result<Ordering> {
        if a.order() != b.order() {
            return Ok(a.order().cmp(&b.order()));
        }
        let x = self.id_of(a).ok_or(Error::UnknownHalfTree)?;
        let y = self.id_of(b).ok_or(Error::UnknownHalfTree)?;
        Ok(x.cmp(&y))
    }

    /// Whether `a` may be hung terminally where it would induce tip `t`.
    pub fn terminal_allowed(&self, a: &HalfTree, t: &HalfTree) -> Result<bool> {
        Ok(self.cmp_halftree(a, t)? != Ordering::Greater)
    }

    /// Size-`count` multisets over the half-trees of `order`, ascending by
    /// their prime products.
    pub fn fixed_order_multisets(
        &self,
        order: usize,
        count: usize,
    ) -> Result<Arc<Vec<FixedOrderMultiset>>> {
        if self.len(order) == 0 {
            return Err(Error::MissingCatalogOrder(order));
        }
        let mut cache = self.multisets.lock().expect("cache lock poisoned");
        if let Some(hit) = cache.get(&(order, count)) {
            return Ok(hit.clone());
        }
        let ids: Vec<HtId> = self.ids(order).collect();
        let mut keyed: Vec<(BigUint, FixedOrderMultiset)> =
            combinations_with_repetition(ids.len(), count)
                .into_iter()
                .map(|idx| {
                    let m = FixedOrderMultiset {
                        member_order: order,
                        members: idx.into_iter().map(|i| ids[i]).collect(),
                    };
                    (self.n_value(&m), m)
                })
                .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        let list = Arc::new(keyed.into_iter().map(|(_, m)| m).collect::<Vec<_>>());
        cache.insert((order, count), list.clone());
        Ok(list)
    }

    /// All appendix sets manifesting `p`, ascending.
    pub fn appendix_sets(&self, p: &Partition) -> Result<Vec<AppendixSet>> {
        self.appendix_sets_within(p, usize::MAX)
    }

    /// Appendix sets of `p` whose members all have height `<= max_height`.
    /// Filtering preserves the relative order.
    pub(crate) fn appendix_sets_within(
        &self,
        p: &Partition,
        max_height: usize,
    ) -> Result<Vec<AppendixSet>> {
        let mut choices: Vec<Vec<FixedOrderMultiset>> = Vec::new();
        for (part, mult) in p.distinct_desc() {
            let all = self.fixed_order_multisets(part, mult)?;
            let kept: Vec<_> = all
                .iter()
                .filter(|m| m.members.iter().all(|&id| self.height(id) <= max_height))
                .cloned()
                .collect();
            if kept.is_empty() {
                return Ok(Vec::new());
            }
            choices.push(kept);
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; choices.len()];
        loop {
            out.push(AppendixSet {
                source: p.clone(),
                per_part: idx
                    .iter()
                    .zip(&choices)
                    .map(|(&i, c)| c[i].clone())
                    .collect(),
            });
            // Odometer with the greatest part as the most significant digit.
            let mut pos = choices.len();
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    /// Placements of `count` copies of `a` on a half-backbone of order `s`,
    /// lexicographic over sorted distance vectors (copies nearest the end
    /// first). Terminal copies are not checked here.
    pub(crate) fn h_prime_placements(&self, count: usize, a: HtId, s: usize) -> Vec<Placement> {
        let radius = self.height(a) + 1;
        if count == 0 {
            return vec![Placement::bare(s)];
        }
        if radius >= s {
            return Vec::new();
        }
        combinations_with_repetition(s - radius, count)
            .into_iter()
            .map(|idx| {
                let mut pl = Placement::bare(s);
                for i in idx {
                    pl.slots[radius + i].push(a);
                }
                pl
            })
            .collect()
    }

    /// Half-trees from hanging `count` copies of `a` on a half-backbone of
    /// order `backbone_order`, in positional order.
    pub fn h_prime(
        &self,
        count: usize,
        a: &HalfTree,
        backbone_order: usize,
    ) -> Result<Vec<HalfTree>> {
        let id = self.id_of(a).ok_or(Error::UnknownHalfTree)?;
        Ok(self
            .h_prime_placements(count, id, backbone_order)
            .iter()
            .map(|pl| pl.realize(self))
            .collect())
    }

    /// The half-tree cut off on the end-vertex side of a terminal
    /// substituent at distance `at`.
    pub fn tip(&self, pl: &Placement, at: usize) -> Result<HalfTree> {
        if at == 0
            || at >= pl.backbone_order()
            || !pl.slots[at].iter().any(|&id| self.height(id) + 1 == at)
        {
            return Err(Error::NotTerminal(at));
        }
        let lower = Placement {
            slots: pl.slots[..at].to_vec(),
        };
        Ok(lower.realize(self))
    }

    /// Checks every terminal copy of `only` (or of every appendix) against
    /// its tip. Tips must already be in the catalog.
    pub(crate) fn terminals_ok(&self, pl: &Placement, only: Option<HtId>) -> bool {
        let mut need_code = 0;
        let mut orders = Vec::with_capacity(pl.slots.len());
        let mut acc = 0;
        let mut pending: Vec<(usize, HtId)> = Vec::new();
        for (d, slot) in pl.slots.iter().enumerate() {
            for &id in slot {
                if only.is_none_or(|o| o == id) && self.height(id) + 1 == d {
                    let tip_order = orders[d - 1];
                    match id.order().cmp(&tip_order) {
                        Ordering::Less => {}
                        Ordering::Greater => return false,
                        Ordering::Equal => {
                            pending.push((d, id));
                            need_code = d;
                        }
                    }
                }
            }
            acc += 1 + slot.iter().map(|id| id.order()).sum::<usize>();
            orders.push(acc);
        }
        if pending.is_empty() {
            return true;
        }
        let codes = pl.codes_up_to(self, need_code - 1);
        pending.into_iter().all(|(d, id)| {
            let code = CanonicalForm::from_bytes(codes[d - 1].clone());
            let tip = self
                .id_of_code(&code)
                .expect("tips are smaller than the half-trees being built");
            id <= tip
        })
    }

    /// Valid placements of an appendix set on a half-backbone of order `s`.
    ///
    /// Layers are overlaid in ascending radius so every tip is complete when
    /// the terminal rule inspects it; the result is sorted by position of
    /// the least appendix first, then the next, and so on.
    pub(crate) fn decorate_half(&self, elements: &[(HtId, usize)], s: usize) -> Vec<Placement> {
        let mut layering: Vec<(HtId, usize)> = elements.to_vec();
        layering.sort_by_key(|&(id, _)| (self.height(id), id));
        let mut acc = vec![Placement::bare(s)];
        for &(id, count) in &layering {
            let layer = self.h_prime_placements(count, id, s);
            let mut next = Vec::with_capacity(acc.len() * layer.len());
            for base in &acc {
                for extra in &layer {
                    let pl = base.overlay(extra);
                    if self.terminals_ok(&pl, Some(id)) {
                        next.push(pl);
                    }
                }
            }
            acc = next;
            if acc.is_empty() {
                break;
            }
        }
        let mut ids: Vec<HtId> = elements.iter().map(|&(id, _)| id).collect();
        ids.sort_unstable();
        acc.sort_by_cached_key(|pl| {
            ids.iter()
                .map(|&id| pl.positions_of(id))
                .collect::<Vec<_>>()
        });
        acc
    }

    fn generate_order(&self, n: usize) -> Vec<(Placement, usize)> {
        if n == 1 {
            return vec![(Placement::bare(1), 0)];
        }
        let mut out = Vec::new();
        for k in 0..=n - 2 {
            let s = n - k;
            for p in partitions(k) {
                let sets = self
                    .appendix_sets_within(&p, s - 2)
                    .expect("parts are below the order being listed");
                for set in sets {
                    for pl in self.decorate_half(&set.elements(), s) {
                        out.push((pl, k));
                    }
                }
            }
        }
        out
    }
}

/// Every half-tree of order `n`, in listing order.
pub fn list_halftrees(n: usize) -> Result<Vec<HalfTree>> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let catalog = Catalog::up_to(n)?;
    Ok(catalog.halftrees(n).cloned().collect())
}

/// Nondecreasing index vectors of length `k` over `0..n`, lexicographic.
fn combinations_with_repetition(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    if n == 0 {
        return out;
    }
    let mut cur = vec![0usize; k];
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] + 1 < n {
                let v = cur[i] + 1;
                for c in &mut cur[i..] {
                    *c = v;
                }
                break;
            }
        }
    }
}

fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    let n = count as f64;
    let bound = if count < 6 {
        15
    } else {
        (n * (n.ln() + n.ln().ln())) as usize + 10
    };
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::with_capacity(count);
    for i in 2..=bound {
        if !composite[i] {
            primes.push(i as u64);
            if primes.len() == count {
                break;
            }
            let mut j = i * i;
            while j <= bound {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}
