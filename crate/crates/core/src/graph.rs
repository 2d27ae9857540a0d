//! Tree and rooted-tree value types, metrics and canonical forms.
//!
//! Distances and diameters are counted in edges throughout. A backbone
//! (longest path) with `m` vertices therefore has edge-diameter `m - 1`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Byte code that is equal for two inputs iff they are isomorphic.
///
/// Rooted codes are AHU bracket strings: a vertex is `(` followed by the
/// sorted codes of its children and `)`. Free codes prefix a center marker.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub(crate) fn from_bytes(bytes: Vec<u8>) -> Self {
        CanonicalForm(bytes)
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({})", String::from_utf8_lossy(&self.0))
    }
}

/// AHU combination step: wraps the sorted child codes in one bracket pair.
pub(crate) fn compose_rooted(mut children: Vec<&[u8]>) -> Vec<u8> {
    children.sort_unstable();
    let len = children.iter().map(|c| c.len()).sum::<usize>() + 2;
    let mut out = Vec::with_capacity(len);
    out.push(b'(');
    for c in children {
        out.extend_from_slice(c);
    }
    out.push(b')');
    out
}

/// An undirected unlabeled tree on vertices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tree {
    order: usize,
    edges: Vec<(usize, usize)>,
}

/// One or two central vertices of a tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Center {
    Vertex(usize),
    Edge(usize, usize),
}

impl Tree {
    pub fn new(order: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        if edges.len() != order - 1 {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices",
                edges.len(),
                order
            )));
        }
        let mut seen = HashSet::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u >= order || v >= order {
                return Err(Error::NotATree(format!("edge {u}-{v} out of range")));
            }
            if u == v {
                return Err(Error::NotATree(format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::NotATree(format!("duplicate edge {u}-{v}")));
            }
        }
        let tree = Tree { order, edges };
        let dist = tree.distances_from(0);
        if dist.iter().any(|d| d.is_none()) {
            return Err(Error::NotATree("disconnected".into()));
        }
        Ok(tree)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.order];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }

    fn distances_from(&self, start: usize) -> Vec<Option<usize>> {
        bfs(&self.adjacency(), start).0
    }

    /// Vertices of one longest path, found by a double breadth-first sweep.
    pub fn longest_path(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let (dist, _) = bfs(&adj, 0);
        let u = farthest(&dist);
        let (dist, parent) = bfs(&adj, u);
        let v = farthest(&dist);
        let mut path = vec![v];
        let mut cur = v;
        while cur != u {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    /// Edge count of a longest path.
    pub fn diameter(&self) -> usize {
        self.longest_path().len() - 1
    }

    pub fn center(&self) -> Center {
        let path = self.longest_path();
        let len = path.len();
        if len % 2 == 1 {
            Center::Vertex(path[len / 2])
        } else {
            Center::Edge(path[len / 2 - 1], path[len / 2])
        }
    }

    /// The two rooted halves left after deleting the central edge, or `None`
    /// for trees with a single central vertex.
    pub fn split_central_edge(&self) -> Option<(HalfTree, HalfTree)> {
        match self.center() {
            Center::Vertex(_) => None,
            Center::Edge(u, v) => {
                let adj = self.adjacency();
                Some((
                    HalfTree::from_adjacency_excluding(&adj, u, v),
                    HalfTree::from_adjacency_excluding(&adj, v, u),
                ))
            }
        }
    }

    /// True iff the tree is bicentral and its two central-edge halves are
    /// isomorphic as rooted trees. Centered trees are never symmetric here.
    pub fn is_symmetric(&self) -> bool {
        match self.split_central_edge() {
            Some((a, b)) => a.canonical() == b.canonical(),
            None => false,
        }
    }

    pub fn canonical(&self) -> CanonicalForm {
        let adj = self.adjacency();
        match self.center() {
            Center::Vertex(c) => {
                let code = rooted_code(&adj, c, usize::MAX);
                let mut out = Vec::with_capacity(code.len() + 1);
                out.push(b'C');
                out.extend(code);
                CanonicalForm(out)
            }
            Center::Edge(u, v) => {
                let a = rooted_code(&adj, u, v);
                let b = rooted_code(&adj, v, u);
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                let mut out = Vec::with_capacity(lo.len() + hi.len() + 1);
                out.push(b'B');
                out.extend(lo);
                out.extend(hi);
                CanonicalForm(out)
            }
        }
    }

    /// Same tree with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Tree> {
        Tree::new(
            self.order,
            self.edges
                .iter()
                .map(|&(u, v)| (perm[u], perm[v]))
                .collect(),
        )
    }
}

fn bfs(adj: &[Vec<usize>], start: usize) -> (Vec<Option<usize>>, Vec<usize>) {
    let mut dist = vec![None; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    let mut queue = VecDeque::new();
    dist[start] = Some(0);
    parent[start] = start;
    queue.push_back(start);
    while let Some(u) = queue.pop_front() {
        let d = dist[u].unwrap();
        for &w in &adj[u] {
            if dist[w].is_none() {
                dist[w] = Some(d + 1);
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

fn farthest(dist: &[Option<usize>]) -> usize {
    let mut best = 0;
    for (v, d) in dist.iter().enumerate() {
        if d.unwrap_or(0) > dist[best].unwrap_or(0) {
            best = v;
        }
    }
    best
}

/// AHU code of the component of `root` once the edge towards `blocked` is
/// removed (`blocked = usize::MAX` keeps everything).
fn rooted_code(adj: &[Vec<usize>], root: usize, blocked: usize) -> Vec<u8> {
    let mut order = vec![root];
    let mut parent = vec![usize::MAX; adj.len()];
    parent[root] = blocked;
    let mut i = 0;
    while i < order.len() {
        let u = order[i];
        for &w in &adj[u] {
            if w != parent[u] && !(u == root && w == blocked) {
                parent[w] = u;
                order.push(w);
            }
        }
        i += 1;
    }
    let mut codes: Vec<Vec<u8>> = vec![Vec::new(); adj.len()];
    for &u in order.iter().rev() {
        let kids: Vec<&[u8]> = adj[u]
            .iter()
            .filter(|&&w| w != parent[u] && !(u == root && w == blocked))
            .map(|&w| codes[w].as_slice())
            .collect();
        codes[u] = compose_rooted(kids);
    }
    std::mem::take(&mut codes[root])
}

/// The path `L_n` on `n` vertices, labeled along the path.
pub fn linear_tree(n: usize) -> Result<Tree> {
    if n == 0 {
        return Err(Error::InvalidOrder(0));
    }
    Tree::new(n, (1..n).map(|v| (v - 1, v)).collect())
}

/// A rooted tree with cached height.
///
/// The radius of a half-tree used as an appendix is `height + 1`: a single
/// vertex has radius one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfTree {
    root: usize,
    children: Vec<Vec<usize>>,
    height: usize,
}

impl HalfTree {
    pub fn single() -> Self {
        HalfTree {
            root: 0,
            children: vec![Vec::new()],
            height: 0,
        }
    }

    /// Rooted path on `n` vertices with the root at one end.
    pub fn rooted_path(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let children = (0..n)
            .map(|v| if v + 1 < n { vec![v + 1] } else { Vec::new() })
            .collect();
        Ok(HalfTree {
            root: 0,
            children,
            height: n - 1,
        })
    }

    /// Orients an undirected edge list away from `root`.
    pub fn from_edges(order: usize, root: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let tree = Tree::new(order, edges)?;
        if root >= order {
            return Err(Error::NotATree(format!("root {root} out of range")));
        }
        Ok(HalfTree::from_adjacency_excluding(
            &tree.adjacency(),
            root,
            usize::MAX,
        ))
    }

    /// Builds from explicit child lists; the lists must form a tree under `root`.
    pub fn from_children(root: usize, children: Vec<Vec<usize>>) -> Result<Self> {
        let order = children.len();
        let edges = children
            .iter()
            .enumerate()
            .flat_map(|(u, kids)| kids.iter().map(move |&w| (u, w)))
            .collect();
        Tree::new(order, edges)?;
        if root >= order {
            return Err(Error::NotATree(format!("root {root} out of range")));
        }
        let mut has_parent = vec![false; order];
        for &w in children.iter().flatten() {
            if has_parent[w] {
                return Err(Error::NotATree(format!("{w} has two parents")));
            }
            has_parent[w] = true;
        }
        if has_parent[root] {
            return Err(Error::NotATree("root has a parent".into()));
        }
        let mut h = HalfTree {
            root,
            children,
            height: 0,
        };
        h.height = h.recompute_height();
        Ok(h)
    }

    fn from_adjacency_excluding(adj: &[Vec<usize>], root: usize, blocked: usize) -> Self {
        // Relabel the component in BFS order so the root becomes vertex 0.
        let mut order = vec![root];
        let mut parent = vec![usize::MAX; adj.len()];
        let mut depth = vec![0usize; adj.len()];
        parent[root] = blocked;
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for &w in &adj[u] {
                if w != parent[u] && !(u == root && w == blocked) {
                    parent[w] = u;
                    depth[w] = depth[u] + 1;
                    order.push(w);
                }
            }
            i += 1;
        }
        let mut new_id = vec![usize::MAX; adj.len()];
        for (i, &v) in order.iter().enumerate() {
            new_id[v] = i;
        }
        let mut children = vec![Vec::new(); order.len()];
        for &v in &order[1..] {
            children[new_id[parent[v]]].push(new_id[v]);
        }
        let height = order.iter().map(|&v| depth[v]).max().unwrap_or(0);
        HalfTree {
            root: 0,
            children,
            height,
        }
    }

    pub fn order(&self) -> usize {
        self.children.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn radius(&self) -> usize {
        self.height + 1
    }

    /// Max root-to-leaf distance recomputed from the child lists.
    pub fn recompute_height(&self) -> usize {
        let mut best = 0;
        let mut stack = vec![(self.root, 0)];
        while let Some((u, d)) = stack.pop() {
            best = best.max(d);
            stack.extend(self.children[u].iter().map(|&w| (w, d + 1)));
        }
        best
    }

    pub fn canonical(&self) -> CanonicalForm {
        let mut order = vec![self.root];
        let mut i = 0;
        while i < order.len() {
            order.extend_from_slice(&self.children[order[i]]);
            i += 1;
        }
        let mut codes: Vec<Vec<u8>> = vec![Vec::new(); self.order()];
        for &u in order.iter().rev() {
            let kids = self.children[u]
                .iter()
                .map(|&w| codes[w].as_slice())
                .collect();
            codes[u] = compose_rooted(kids);
        }
        CanonicalForm(std::mem::take(&mut codes[self.root]))
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.children
            .iter()
            .enumerate()
            .flat_map(|(u, kids)| kids.iter().map(move |&w| (u, w)))
            .collect()
    }

    /// Forgets the root.
    pub fn to_tree(&self) -> Tree {
        Tree {
            order: self.order(),
            edges: self.edges(),
        }
    }

    /// Same rooted tree with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let mut children = vec![Vec::new(); self.order()];
        for (u, kids) in self.children.iter().enumerate() {
            children[perm[u]] = kids.iter().map(|&w| perm[w]).collect();
        }
        HalfTree::from_children(perm[self.root], children)
    }
}

/// Incremental edge-list builder used when realizing decorated backbones.
#[derive(Debug, Default)]
pub(crate) struct TreeBuilder {
    order: usize,
    edges: Vec<(usize, usize)>,
}

impl TreeBuilder {
    pub(crate) fn path(n: usize) -> Self {
        TreeBuilder {
            order: n,
            edges: (1..n).map(|v| (v - 1, v)).collect(),
        }
    }

    #[cfg(test)]
    pub(crate) fn from_halftree(h: &HalfTree) -> Self {
        TreeBuilder {
            order: h.order(),
            edges: h.edges(),
        }
    }

    /// Copies `sub` into the tree and joins its root to `at`.
    pub(crate) fn graft(&mut self, at: usize, sub: &HalfTree) {
        let base = self.order;
        // Preorder keeps the grafted labels contiguous and root-first.
        let mut map = vec![usize::MAX; sub.order()];
        let mut stack = vec![sub.root];
        let mut next = base;
        while let Some(u) = stack.pop() {
            map[u] = next;
            next += 1;
            stack.extend(sub.children[u].iter().rev());
        }
        self.edges.push((at, map[sub.root]));
        for (u, kids) in sub.children.iter().enumerate() {
            for &w in kids {
                self.edges.push((map[u], map[w]));
            }
        }
        self.order = next;
    }

    pub(crate) fn into_tree(self) -> Tree {
        Tree {
            order: self.order,
            edges: self.edges,
        }
    }

    /// Roots the built tree at vertex 0.
    pub(crate) fn into_halftree(self) -> HalfTree {
        let tree = self.into_tree();
        HalfTree::from_adjacency_excluding(&tree.adjacency(), 0, usize::MAX)
    }
}
