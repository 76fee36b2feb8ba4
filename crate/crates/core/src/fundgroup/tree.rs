use std::collections::VecDeque;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::medial::{EdgeKind, MedialGraph};

/// How to pick the spanning tree whose complement gives the generators.
///
/// Circle arcs are never tree edges unless nothing else reaches a vertex, so
/// on a connected diagram every arc is a generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TreePolicy {
    /// Greedy (Kruskal) over quadrant edges sorted by
    /// `((quadrant + 4 - shift) % 4, crossing)`.
    Quadrant { shift: usize },
    /// Breadth-first from circle vertex `root % E`, incident edges scanned
    /// in ascending id.
    Bfs { root: usize },
}

impl Default for TreePolicy {
    fn default() -> Self {
        TreePolicy::Quadrant { shift: 0 }
    }
}

impl TreePolicy {
    /// Same kind of policy with a different seed (shift or root).
    pub fn with_seed(self, seed: usize) -> Self {
        match self {
            TreePolicy::Quadrant { .. } => TreePolicy::Quadrant { shift: seed % 4 },
            TreePolicy::Bfs { .. } => TreePolicy::Bfs { root: seed },
        }
    }
}

impl FromStr for TreePolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quadrant" => Ok(TreePolicy::Quadrant { shift: 0 }),
            "bfs" => Ok(TreePolicy::Bfs { root: 0 }),
            _ => Err(format!("unknown tree policy '{s}' (expected quadrant or bfs)")),
        }
    }
}

/// A spanning tree of the medial graph, stored as an edge mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    pub policy: TreePolicy,
    in_tree: Vec<bool>,
}

impl SpanningTree {
    pub fn contains(&self, edge: usize) -> bool {
        self.in_tree[edge]
    }

    pub fn edge_count(&self) -> usize {
        self.in_tree.iter().filter(|&&b| b).count()
    }

    /// Edges outside the tree, ascending. These are the free generators of
    /// the medial graph's fundamental group.
    pub fn cotree(&self) -> Vec<usize> {
        (0..self.in_tree.len()).filter(|&e| !self.in_tree[e]).collect()
    }
}

pub fn spanning_tree(m: &MedialGraph, policy: TreePolicy) -> SpanningTree {
    let in_tree = match policy {
        TreePolicy::Quadrant { shift } => {
            let mut order: Vec<usize> = (0..m.edges.len()).collect();
            order.sort_by_key(|&e| match m.edges[e].kind {
                EdgeKind::Quadrant { crossing, quadrant } => {
                    (0, (m.shadow_quadrant(crossing, quadrant) + 4 - shift % 4) % 4, crossing)
                }
                EdgeKind::Arc { index } => (1, 0, index),
            });
            let ends: Vec<(usize, usize)> = m.edges.iter().map(|e| (e.tail, e.head)).collect();
            kruskal(m.vertices.len(), &ends, &order)
        }
        TreePolicy::Bfs { root } => bfs(m, root),
    };
    SpanningTree { policy, in_tree }
}

/// Greedy forest over `ends`, trying edges in `order`.
fn kruskal(n: usize, ends: &[(usize, usize)], order: &[usize]) -> Vec<bool> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut in_tree = vec![false; ends.len()];
    for &e in order {
        let a = find(&mut parent, ends[e].0);
        let b = find(&mut parent, ends[e].1);
        if a != b {
            parent[a] = b;
            in_tree[e] = true;
        }
    }
    in_tree
}

fn bfs(m: &MedialGraph, root: usize) -> Vec<bool> {
    let n = m.vertices.len();
    let mut in_tree = vec![false; m.edges.len()];
    if n == 0 {
        return in_tree;
    }
    let start = if m.circle_count() > 0 {
        m.circle_vertex(root % m.circle_count())
    } else {
        0
    };
    let mut sorted: Vec<Vec<usize>> = m.rotation.clone();
    for r in &mut sorted {
        r.sort_unstable();
    }
    let mut seen = vec![false; n];
    seen[start] = true;
    // quadrant edges first, then let arcs pick up whatever is left
    for allow_arcs in [false, true] {
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| seen[v]).collect();
        while let Some(v) = queue.pop_front() {
            for &e in &sorted[v] {
                if m.is_arc(e) && !allow_arcs {
                    continue;
                }
                let edge = &m.edges[e];
                let w = if edge.tail == v { edge.head } else { edge.tail };
                if !seen[w] {
                    seen[w] = true;
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    in_tree
}
