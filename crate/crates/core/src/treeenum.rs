//! Diameter-stratified listing of unlabeled trees.
//!
//! Step `k` of order `n` works on a backbone of order `m = n - k`. An even
//! backbone splits at its central edge into two half-backbones of order
//! `m/2`; an odd one into two sides of order `(m-1)/2` around a middle
//! vertex. Each appendix kind is first distributed over the two halves
//! (fused), then the per-kind layers are overlaid (combined) in ascending
//! radius, keeping track of which overlays are mirror images of each other.

use rayon::prelude::*;

use crate::counting::{combine_cardinality, combine_sigma, SymCount};
use crate::error::{Error, Result};
use crate::graph::{HalfTree, Tree, TreeBuilder};
use crate::halftrees::{AppendixSet, Catalog, HtId, Placement};
use crate::partition::{partitions, Multiset};

/// A backbone with both halves (and, for odd orders, the middle vertex)
/// decorated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedBackbone {
    backbone_order: usize,
    left: Placement,
    right: Placement,
    middle: Option<Vec<HtId>>,
}

impl DecoratedBackbone {
    pub fn bare(backbone_order: usize) -> Self {
        let s = backbone_order / 2;
        DecoratedBackbone {
            backbone_order,
            left: Placement::bare(s),
            right: Placement::bare(s),
            middle: (backbone_order % 2 == 1).then(Vec::new),
        }
    }

    /// Bare sides, `c` on the middle vertex.
    pub fn with_middle(catalog: &Catalog, backbone_order: usize, c: &AppendixSet) -> Result<Self> {
        if backbone_order.is_multiple_of(2) {
            return Err(Error::EvenBackbone(backbone_order));
        }
        let limit = backbone_order / 2;
        let mut middle = Vec::new();
        for (id, mult) in c.elements() {
            let radius = catalog.height(id) + 1;
            if radius > limit {
                return Err(Error::MiddleRadius {
                    radius,
                    limit,
                    backbone_order,
                });
            }
            middle.extend(std::iter::repeat_n(id, mult));
        }
        let mut d = DecoratedBackbone::bare(backbone_order);
        d.middle = Some(middle);
        Ok(d)
    }

    pub fn backbone_order(&self) -> usize {
        self.backbone_order
    }

    pub fn left(&self) -> &Placement {
        &self.left
    }

    pub fn right(&self) -> &Placement {
        &self.right
    }

    pub fn middle(&self) -> Option<Multiset<HtId>> {
        self.middle.as_ref().map(|m| m.iter().copied().collect())
    }

    /// Both halves carry the same decoration, so reflecting the backbone
    /// maps the tree onto itself.
    pub fn is_mirror_symmetric(&self) -> bool {
        self.left == self.right
    }

    pub fn left_halftree(&self, catalog: &Catalog) -> HalfTree {
        self.left.realize(catalog)
    }

    pub fn right_halftree(&self, catalog: &Catalog) -> HalfTree {
        self.right.realize(catalog)
    }

    /// Backbone vertices are `0..m` along the path; appendix vertices
    /// follow in grafting order.
    pub fn realize(&self, catalog: &Catalog) -> Tree {
        let m = self.backbone_order;
        let mut builder = TreeBuilder::path(m);
        for d in 0..self.left.backbone_order() {
            for &id in self.left.slot(d) {
                builder.graft(d, catalog.get(id));
            }
        }
        if let Some(middle) = &self.middle {
            for &id in middle {
                builder.graft(m / 2, catalog.get(id));
            }
        }
        for d in 0..self.right.backbone_order() {
            for &id in self.right.slot(d) {
                builder.graft(m - 1 - d, catalog.get(id));
            }
        }
        builder.into_tree()
    }

    fn overlay(&self, other: &DecoratedBackbone, swapped: bool) -> DecoratedBackbone {
        let (ol, or) = if swapped {
            (&other.right, &other.left)
        } else {
            (&other.left, &other.right)
        };
        let middle = match (&self.middle, &other.middle) {
            (Some(a), Some(b)) => {
                let mut m = a.clone();
                m.extend_from_slice(b);
                m.sort_unstable();
                Some(m)
            }
            (a, b) => a.clone().or_else(|| b.clone()),
        };
        DecoratedBackbone {
            backbone_order: self.backbone_order,
            left: self.left.overlay(ol),
            right: self.right.overlay(or),
            middle,
        }
    }

    /// Terminal copies of `only` (or of everything) on either half respect
    /// their tips, and radius-`s` middle appendices do not exceed either side.
    fn is_valid(&self, catalog: &Catalog, only: Option<HtId>) -> bool {
        catalog.terminals_ok(&self.left, only)
            && catalog.terminals_ok(&self.right, only)
            && self.middle_ok(catalog)
    }

    fn middle_ok(&self, catalog: &Catalog) -> bool {
        let Some(middle) = &self.middle else {
            return true;
        };
        let s = self.left.backbone_order();
        let mut side_ids: [Option<Option<HtId>>; 2] = [None, None];
        for &id in middle {
            if catalog.height(id) + 1 != s {
                continue;
            }
            for (i, side) in [&self.left, &self.right].into_iter().enumerate() {
                let side_order = side.order();
                if id.order() < side_order {
                    continue;
                }
                if id.order() > side_order {
                    return false;
                }
                let side_id = *side_ids[i]
                    .get_or_insert_with(|| catalog.id_of_code(&side.canonical(catalog)));
                match side_id {
                    Some(t) if id <= t => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

/// Decorated backbones of one order with their mirror-symmetry tally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedSet {
    backbone_order: usize,
    members: Vec<DecoratedBackbone>,
}

impl GeneratedSet {
    pub fn empty(backbone_order: usize) -> Self {
        GeneratedSet {
            backbone_order,
            members: Vec::new(),
        }
    }

    /// The bare backbone alone: neutral for [`combine`].
    pub fn bare(backbone_order: usize) -> Self {
        GeneratedSet {
            backbone_order,
            members: vec![DecoratedBackbone::bare(backbone_order)],
        }
    }

    pub fn from_members(backbone_order: usize, members: Vec<DecoratedBackbone>) -> Result<Self> {
        if let Some(d) = members.iter().find(|d| d.backbone_order != backbone_order) {
            return Err(Error::BackboneMismatch(backbone_order, d.backbone_order));
        }
        Ok(GeneratedSet {
            backbone_order,
            members,
        })
    }

    pub fn backbone_order(&self) -> usize {
        self.backbone_order
    }

    pub fn members(&self) -> &[DecoratedBackbone] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn sym(&self) -> SymCount {
        let sigma = self
            .members
            .iter()
            .filter(|d| d.is_mirror_symmetric())
            .count();
        SymCount::new(sigma as u64, (self.members.len() - sigma) as u64)
    }

    /// Symmetric members counted from the realized graphs rather than the
    /// decoration records.
    pub fn explicit_sigma(&self, catalog: &Catalog) -> usize {
        self.members
            .iter()
            .filter(|d| {
                if d.backbone_order % 2 == 0 {
                    d.realize(catalog).is_symmetric()
                } else {
                    d.left_halftree(catalog).canonical() == d.right_halftree(catalog).canonical()
                }
            })
            .count()
    }

    pub fn trees(&self, catalog: &Catalog) -> Vec<Tree> {
        self.members.iter().map(|d| d.realize(catalog)).collect()
    }

    fn extend(&mut self, other: GeneratedSet) {
        self.members.extend(other.members);
    }

    fn retain_valid(&mut self, catalog: &Catalog, only: Option<HtId>) {
        self.members.retain(|d| d.is_valid(catalog, only));
    }
}

/// Glues half decorations into even-backbone trees. With `same_inputs`
/// (both halves drawn from one set) unordered pairs with repetition are
/// formed; otherwise every left member meets every right member.
pub fn fuse(left: &[Placement], right: &[Placement], same_inputs: bool) -> Result<GeneratedSet> {
    let s = match left.first().or(right.first()) {
        Some(p) => p.backbone_order(),
        None => return Ok(GeneratedSet::empty(0)),
    };
    for p in left.iter().chain(right) {
        if p.backbone_order() != s {
            return Err(Error::HeightMismatch(s - 1, p.backbone_order() - 1));
        }
    }
    Ok(fuse_into(left, right, same_inputs, 2 * s))
}

fn fuse_into(
    left: &[Placement],
    right: &[Placement],
    same_inputs: bool,
    backbone_order: usize,
) -> GeneratedSet {
    let mut out = GeneratedSet::empty(backbone_order);
    let middle = (backbone_order % 2 == 1).then(Vec::new);
    let mut push = |l: &Placement, r: &Placement| {
        out.members.push(DecoratedBackbone {
            backbone_order,
            left: l.clone(),
            right: r.clone(),
            middle: middle.clone(),
        })
    };
    if same_inputs {
        for (i, l) in left.iter().enumerate() {
            for r in &left[i..] {
                push(l, r);
            }
        }
    } else {
        for l in left {
            for r in right {
                push(l, r);
            }
        }
    }
    out
}

/// Overlays every member of `s` with every member of `t`. Two asymmetric
/// members overlay in both relative orientations; a symmetric member makes
/// the orientations coincide.
pub fn combine(s: &GeneratedSet, t: &GeneratedSet) -> Result<GeneratedSet> {
    if s.backbone_order != t.backbone_order {
        return Err(Error::BackboneMismatch(s.backbone_order, t.backbone_order));
    }
    let mut out = GeneratedSet::empty(s.backbone_order);
    for a in &s.members {
        for b in &t.members {
            out.members.push(a.overlay(b, false));
            if !a.is_mirror_symmetric() && !b.is_mirror_symmetric() {
                out.members.push(a.overlay(b, true));
            }
        }
    }
    Ok(out)
}

/// Hangs the appendix set on the middle vertex of an otherwise bare odd
/// backbone.
pub fn attach_middle(catalog: &Catalog, backbone_order: usize, c: &AppendixSet) -> Result<Tree> {
    Ok(DecoratedBackbone::with_middle(catalog, backbone_order, c)?.realize(catalog))
}

/// Step at which a tree of order `n` is emitted: `n` minus its backbone order.
pub fn step_of(t: &Tree, n: usize) -> usize {
    n.saturating_sub(t.diameter() + 1)
}

/// Counters filled while generating, comparing each intermediate set with
/// the closed-form tally arithmetic and an explicit symmetry count.
#[derive(Clone, Debug, Default)]
pub struct Audit {
    pub sets_checked: usize,
    pub combines_checked: usize,
    pub failures: Vec<String>,
}

impl Audit {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Which appendices a generation run may use.
type Filter<'f> = &'f (dyn Fn(HtId) -> bool + Sync);

struct Ctx<'a> {
    catalog: &'a Catalog,
    audit: Option<&'a mut Audit>,
}

impl Ctx<'_> {
    fn check_set(&mut self, set: &GeneratedSet, what: &str) {
        let Some(audit) = self.audit.as_deref_mut() else {
            return;
        };
        audit.sets_checked += 1;
        let explicit = set.explicit_sigma(self.catalog);
        let sym = set.sym();
        if sym.sigma != explicit.into() {
            audit.failures.push(format!(
                "{what} on backbone {}: sigma {} but {} symmetric trees",
                set.backbone_order, sym.sigma, explicit
            ));
        }
    }

    fn combine(&mut self, s: &GeneratedSet, t: &GeneratedSet) -> GeneratedSet {
        let out = combine(s, t).expect("layers share one backbone");
        if let Some(audit) = self.audit.as_deref_mut() {
            audit.combines_checked += 1;
            let (ss, ts, os) = (s.sym(), t.sym(), out.sym());
            if num_bigint::BigUint::from(out.members.len()) != combine_cardinality(&ss, &ts)
                || os != combine_sigma(&ss, &ts)
            {
                audit.failures.push(format!(
                    "combine on backbone {}: {:?} o {:?} gave {:?}",
                    s.backbone_order, ss, ts, os
                ));
            }
        }
        out
    }

    /// All ways to split `count` copies of `a` over the two halves.
    fn fuse_element(&mut self, a: HtId, count: usize, m: usize) -> GeneratedSet {
        let s = m / 2;
        let mut out = GeneratedSet::empty(m);
        for i in 0..=count / 2 {
            let big = self.catalog.h_prime_placements(count - i, a, s);
            if i == count - i {
                out.extend(fuse_into(&big, &big, true, m));
            } else {
                let small = self.catalog.h_prime_placements(i, a, s);
                out.extend(fuse_into(&big, &small, false, m));
            }
        }
        self.check_set(&out, "fuse");
        out
    }

    /// Side decorations of backbone `m` by one appendix multiset, validated.
    fn sides(&mut self, elements: &[(HtId, usize)], m: usize) -> GeneratedSet {
        let mut layering = elements.to_vec();
        layering.sort_by_key(|&(id, _)| (self.catalog.height(id), id));
        let mut acc = GeneratedSet::bare(m);
        for (a, count) in layering {
            let layer = self.fuse_element(a, count, m);
            acc = self.combine(&acc, &layer);
            acc.retain_valid(self.catalog, Some(a));
            self.check_set(&acc, "validated combine");
            if acc.is_empty() {
                break;
            }
        }
        acc
    }

    fn appendix_sets(
        &self,
        k: usize,
        max_height: Option<usize>,
        filter: Filter,
    ) -> Vec<Vec<AppendixSet>> {
        partitions(k)
            .iter()
            .map(|p| {
                let sets = match max_height {
                    Some(h) => self
                        .catalog
                        .appendix_sets_within(p, h)
                        .expect("catalog covers parts"),
                    None if p.is_zero() => self
                        .catalog
                        .appendix_sets_within(p, 0)
                        .expect("zero partition"),
                    None => Vec::new(),
                };
                sets.into_iter()
                    .filter(|set| set.elements().iter().all(|&(id, _)| filter(id)))
                    .collect()
            })
            .collect()
    }

    fn even_step(&mut self, m: usize, k: usize, filter: Filter) -> Vec<GeneratedSet> {
        let s = m / 2;
        let mut out = Vec::new();
        for sets in self.appendix_sets(k, s.checked_sub(2), filter) {
            for set in sets {
                let decorated = self.sides(&set.elements(), m);
                if !decorated.is_empty() {
                    out.push(decorated);
                }
            }
        }
        out
    }

    fn odd_step(&mut self, m: usize, k: usize, filter: Filter) -> Vec<GeneratedSet> {
        let s = m / 2;
        let mut out = Vec::new();
        for j in 0..=k {
            let mut sides = GeneratedSet::empty(m);
            for sets in self.appendix_sets(k - j, s.checked_sub(2), filter) {
                for set in sets {
                    sides.extend(self.sides(&set.elements(), m));
                }
            }
            if sides.is_empty() {
                continue;
            }
            for sets in self.appendix_sets(j, Some(s - 1), filter) {
                for c in sets {
                    let mut middle = DecoratedBackbone::bare(m);
                    middle.middle = Some(
                        c.elements()
                            .into_iter()
                            .flat_map(|(id, mult)| std::iter::repeat_n(id, mult))
                            .collect(),
                    );
                    let middle = GeneratedSet {
                        backbone_order: m,
                        members: vec![middle],
                    };
                    let mut combined = self.combine(&sides, &middle);
                    combined.members.retain(|d| d.middle_ok(self.catalog));
                    self.check_set(&combined, "middle");
                    if !combined.is_empty() {
                        out.push(combined);
                    }
                }
            }
        }
        out
    }

    fn backbone_sets(&mut self, m: usize, k: usize, filter: Filter) -> Vec<GeneratedSet> {
        if m.is_multiple_of(2) {
            self.even_step(m, k, filter)
        } else {
            self.odd_step(m, k, filter)
        }
    }
}

fn any(_: HtId) -> bool {
    true
}

/// Tree generator for one order, holding the half-tree catalog it needs.
pub struct TreeLister {
    n: usize,
    catalog: Catalog,
}

/// A listed tree with the step that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Emission {
    pub step: usize,
    pub tree: Tree,
}

impl TreeLister {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let catalog = Catalog::up_to(n.saturating_sub(2).max(1))?;
        Ok(TreeLister { n, catalog })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    /// Number of steps: one per possible backbone order.
    pub fn step_count(&self) -> usize {
        if self.n <= 2 {
            1
        } else {
            self.n - 2
        }
    }

    /// Decorated backbones emitted at step `k`, in emission order.
    pub fn step_sets(&self, k: usize, audit: Option<&mut Audit>) -> Vec<GeneratedSet> {
        if k >= self.step_count() {
            return Vec::new();
        }
        if self.n <= 2 {
            return vec![GeneratedSet::bare(self.n)];
        }
        let mut ctx = Ctx {
            catalog: &self.catalog,
            audit,
        };
        ctx.backbone_sets(self.n - k, k, &any)
    }

    pub fn step(&self, k: usize) -> Vec<Tree> {
        self.step_sets(k, None)
            .iter()
            .flat_map(|set| set.trees(&self.catalog))
            .collect()
    }

    pub fn list(&self) -> Vec<Emission> {
        (0..self.step_count())
            .flat_map(|k| {
                self.step(k)
                    .into_iter()
                    .map(move |tree| Emission { step: k, tree })
            })
            .collect()
    }

    /// Same output as [`TreeLister::list`], steps evaluated concurrently.
    pub fn list_parallel(&self) -> Vec<Emission> {
        let per_step: Vec<Vec<Tree>> = (0..self.step_count())
            .into_par_iter()
            .map(|k| self.step(k))
            .collect();
        per_step
            .into_iter()
            .enumerate()
            .flat_map(|(k, trees)| {
                trees
                    .into_iter()
                    .map(move |tree| Emission { step: k, tree })
            })
            .collect()
    }

    pub fn list_audited(&self, audit: &mut Audit) -> Vec<Emission> {
        let mut out = Vec::new();
        for k in 0..self.step_count() {
            for set in self.step_sets(k, Some(audit)) {
                out.extend(
                    set.trees(&self.catalog)
                        .into_iter()
                        .map(|tree| Emission { step: k, tree }),
                );
            }
        }
        out
    }
}

/// Every unlabeled tree of order `n`, each exactly once.
pub fn list_trees(n: usize) -> Result<Vec<Tree>> {
    Ok(TreeLister::new(n)?
        .list()
        .into_iter()
        .map(|e| e.tree)
        .collect())
}

/// Trees from hanging `k` copies of the rooted path of order `r` on a
/// backbone of order `m`, diameter preserved; the generated counterpart of
/// the equal-radius formula.
pub fn equal_radius_set(catalog: &Catalog, k: usize, r: usize, m: usize) -> Result<GeneratedSet> {
    let a = catalog
        .rooted_path(r)
        .ok_or(Error::MissingCatalogOrder(r))?;
    let mut ctx = Ctx {
        catalog,
        audit: None,
    };
    let s = m / 2;
    if m.is_multiple_of(2) {
        return Ok(ctx.sides(&[(a, k)], m));
    }
    let mut out = GeneratedSet::empty(m);
    let middle_fits = catalog.height(a) < s;
    for j in 0..=k {
        if j > 0 && !middle_fits {
            break;
        }
        let sides = if k - j == 0 {
            GeneratedSet::bare(m)
        } else {
            ctx.sides(&[(a, k - j)], m)
        };
        let mut middle = DecoratedBackbone::bare(m);
        middle.middle = Some(vec![a; j]);
        let middle = GeneratedSet {
            backbone_order: m,
            members: vec![middle],
        };
        let mut combined = ctx.combine(&sides, &middle);
        combined.members.retain(|d| d.middle_ok(catalog));
        out.extend(combined);
    }
    Ok(out)
}

/// Trees on backbone `m` with `k` free vertices hung only as rooted paths.
pub fn linear_set(catalog: &Catalog, k: usize, m: usize) -> Vec<GeneratedSet> {
    let linear = |id: HtId| catalog.height(id) + 1 == id.order();
    let mut ctx = Ctx {
        catalog,
        audit: None,
    };
    ctx.backbone_sets(m, k, &linear)
}
