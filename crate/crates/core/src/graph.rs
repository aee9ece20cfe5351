//! Hardware connectivity graphs and the rooted spanning-tree plan that
//! drives decomposition on arbitrary topologies.
//!
//! Every tie (diameter endpoints, BFS parents, nearest seed node) is broken
//! toward the smaller node index so emitted circuits are reproducible.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

/// Undirected qubit connectivity graph. Edges license two-qubit gates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardwareGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl HardwareGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            for v in [a, b] {
                if v >= n {
                    return Err(Error::NodeOutOfRange { node: v, n });
                }
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on node {a}")));
            }
            if !set.insert(ordered(a, b)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(HardwareGraph { n, edges: set, adj })
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    /// Star with center `0`.
    pub fn star(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (0, i))).expect("valid star")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 nodes");
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    /// Square grid with `rows × cols` nodes, node `(r, c)` at index `r·cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Self {
        let mut edges = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                let v = r * cols + c;
                if c + 1 < cols {
                    edges.push((v, v + 1));
                }
                if r + 1 < rows {
                    edges.push((v, v + cols));
                }
            }
        }
        Self::new(rows * cols, edges).expect("valid grid")
    }

    /// Random connected graph: a uniformly labelled random recursive tree
    /// plus up to `extra_edges` additional random edges.
    pub fn random_connected(n: usize, extra_edges: usize, rng: &mut impl Rng) -> Self {
        let mut labels: Vec<usize> = (0..n).collect();
        labels.shuffle(rng);
        let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
        for i in 1..n {
            let j = rng.gen_range(0..i);
            let (a, b) = (labels[i], labels[j]);
            edges.insert((a.min(b), a.max(b)));
        }
        let max_edges = n * n.saturating_sub(1) / 2;
        let target = (edges.len() + extra_edges).min(max_edges);
        while edges.len() < target {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        Self::new(n, edges).expect("valid random graph")
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains(&ordered(a, b))
    }

    /// Neighbors in ascending order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    fn check_node(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(Error::NodeOutOfRange { node: v, n: self.n });
        }
        Ok(())
    }

    /// Hop distances from `source`; `None` marks unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>> {
        self.check_node(source)?;
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued nodes have distances");
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        self.bfs_distances(0)
            .map(|d| d.iter().all(Option::is_some))
            .unwrap_or(false)
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    fn complete_distances(&self, source: usize) -> Result<Vec<usize>> {
        self.bfs_distances(source)?
            .into_iter()
            .map(|d| d.ok_or(Error::Disconnected))
            .collect()
    }

    /// Lexicographically smallest shortest path from `a` to `b`.
    pub fn shortest_path(&self, a: usize, b: usize) -> Result<Vec<usize>> {
        self.check_node(a)?;
        let to_b = self.complete_distances(b)?;
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = *self.adj[cur]
                .iter()
                .find(|&&w| to_b[w] + 1 == to_b[cur])
                .expect("a neighbor one step closer exists on a connected graph");
            path.push(cur);
        }
        Ok(path)
    }

    /// Diameter and the lexicographically smallest endpoint pair realizing it.
    pub fn diameter(&self) -> Result<(usize, (usize, usize))> {
        self.require_connected()?;
        let mut best = (0, (0, 0));
        for a in 0..self.n {
            let dist = self.complete_distances(a)?;
            for (b, &d) in dist.iter().enumerate().skip(a + 1) {
                if d > best.0 {
                    best = (d, (a, b));
                }
            }
        }
        Ok(best)
    }

    /// Subgraph induced by `nodes`, relabelled `0..nodes.len()` in the given order.
    pub fn induced_subgraph(&self, nodes: &[usize]) -> Result<HardwareGraph> {
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in nodes.iter().enumerate() {
            self.check_node(v)?;
            index[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| index[*a] != usize::MAX && index[*b] != usize::MAX)
            .map(|&(a, b)| (index[a], index[b]));
        HardwareGraph::new(nodes.len(), edges)
    }

    /// Node order along the graph if it is a simple path, starting from the
    /// smaller-index endpoint.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        if self.n == 1 {
            return Some(vec![0]);
        }
        if !self.is_connected() || self.num_edges() + 1 != self.n {
            return None;
        }
        if self.adj.iter().any(|a| a.len() > 2) {
            return None;
        }
        let start = (0..self.n).find(|&v| self.degree(v) == 1)?;
        let mut order = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while order.len() < self.n {
            let next = *self.adj[cur].iter().find(|&&w| w != prev)?;
            order.push(next);
            prev = cur;
            cur = next;
        }
        Some(order)
    }

    /// Center node if the graph is a star with at least three nodes.
    pub fn star_center(&self) -> Option<usize> {
        if self.n < 3 || self.num_edges() + 1 != self.n {
            return None;
        }
        let center = (0..self.n).find(|&v| self.degree(v) == self.n - 1)?;
        (0..self.n)
            .all(|v| v == center || self.degree(v) == 1)
            .then_some(center)
    }
}

/// Number of two-qubit layers the optimal decomposition attains on a graph
/// of diameter `d`: `d` for odd `d`, `d + 1` for even `d`.
pub fn depth_lower_bound(d: usize) -> usize {
    if d == 0 {
        0
    } else if d % 2 == 1 {
        d
    } else {
        d + 1
    }
}

/// Rooted spanning tree grown around a diameter-realizing seed path.
///
/// For odd diameters the tree has two adjacent roots. `secondary_root` is
/// stored as a child of `root` (the central edge) but, like `root`, belongs
/// to no generation; every other node's level is its distance to its own root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTreePlan {
    pub seed_path: Vec<usize>,
    pub root: usize,
    pub secondary_root: Option<usize>,
    pub parent: Vec<Option<usize>>,
    /// Distance of each node to its own root.
    pub level: Vec<usize>,
    /// Node sets ordered from the farthest level down to level 1.
    pub generations: Vec<Vec<usize>>,
    /// Largest tree distance to the primary root.
    pub height: usize,
    pub diameter: usize,
}

impl SpanningTreePlan {
    /// Edges `(child, parent)` of the tree, central edge included.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(c, p)| p.map(|p| (c, p)))
            .collect()
    }

    pub fn is_root(&self, v: usize) -> bool {
        v == self.root || Some(v) == self.secondary_root
    }

    /// Children of `v` in ascending order, excluding the secondary root.
    pub fn children(&self, v: usize) -> Vec<usize> {
        (0..self.parent.len())
            .filter(|&c| self.parent[c] == Some(v) && Some(c) != self.secondary_root)
            .collect()
    }
}

/// Builds the seed path, attaches every other node along a shortest path to
/// its nearest seed node, and roots the tree at the middle of the seed path.
pub fn build_spanning_plan(g: &HardwareGraph) -> Result<SpanningTreePlan> {
    g.require_connected()?;
    let n = g.num_nodes();
    let (d, (a, b)) = g.diameter()?;
    let seed_path = if n == 1 { vec![0] } else { g.shortest_path(a, b)? };

    let mut on_seed = vec![None; n];
    for (i, &v) in seed_path.iter().enumerate() {
        on_seed[v] = Some(i);
    }

    // Multi-source BFS from the seed path.
    let mut dist = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue: VecDeque<usize> = seed_path.iter().copied().collect();
    for &v in &seed_path {
        dist[v] = 0;
    }
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    order.sort_by_key(|&v| (dist[v], v));

    let (root, secondary_root) = if d % 2 == 0 {
        (seed_path[d / 2], None)
    } else {
        let (l, r) = (seed_path[(d - 1) / 2], seed_path[d.div_ceil(2)]);
        (l.min(r), Some(l.max(r)))
    };

    let mut parent = vec![None; n];
    let mut owner = vec![usize::MAX; n];
    for (i, &v) in seed_path.iter().enumerate() {
        owner[v] = v;
        if v == root {
            continue;
        }
        if Some(v) == secondary_root {
            parent[v] = Some(root);
            continue;
        }
        let mid = if d % 2 == 0 {
            d / 2
        } else if i < d.div_ceil(2) {
            (d - 1) / 2
        } else {
            d.div_ceil(2)
        };
        parent[v] = Some(if i < mid { seed_path[i + 1] } else { seed_path[i - 1] });
    }
    for &v in &order {
        if on_seed[v].is_some() {
            continue;
        }
        let closer: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| dist[u] + 1 == dist[v])
            .collect();
        let own = closer
            .iter()
            .map(|&u| owner[u])
            .min()
            .expect("non-seed node has a closer neighbor");
        owner[v] = own;
        parent[v] = closer.iter().copied().find(|&u| owner[u] == own);
    }

    // Levels relative to each node's own root, resolved top-down.
    let mut level = vec![usize::MAX; n];
    level[root] = 0;
    if let Some(s) = secondary_root {
        level[s] = 0;
    }
    let mut changed = true;
    while changed {
        changed = false;
        for v in 0..n {
            if level[v] != usize::MAX {
                continue;
            }
            if let Some(p) = parent[v] {
                if level[p] != usize::MAX {
                    level[v] = level[p] + 1;
                    changed = true;
                }
            }
        }
    }
    debug_assert!(level.iter().all(|&l| l != usize::MAX));

    let max_level = level.iter().copied().max().unwrap_or(0);
    let generations: Vec<Vec<usize>> = (1..=max_level)
        .rev()
        .map(|l| (0..n).filter(|&v| level[v] == l).collect())
        .collect();

    let mut side_of_secondary = vec![false; n];
    if let Some(s) = secondary_root {
        for (v, side) in side_of_secondary.iter_mut().enumerate() {
            let mut cur = v;
            while cur != root && cur != s {
                cur = parent[cur].expect("tree path reaches a root");
            }
            *side = cur == s;
        }
    }
    let height = (0..n)
        .map(|v| level[v] + usize::from(side_of_secondary[v]))
        .max()
        .unwrap_or(0);

    Ok(SpanningTreePlan {
        seed_path,
        root,
        secondary_root,
        parent,
        level,
        generations,
        height,
        diameter: d,
    })
}
