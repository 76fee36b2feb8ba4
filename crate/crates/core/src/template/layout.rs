//! Barycentric plane layout of the medial graph with the circle pinned.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::medial::MedialGraph;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LayoutError {
    #[error("free vertex {vertex} is not connected to any pinned vertex")]
    Unanchored { vertex: usize },
    #[error("medial edges {a} and {b} cross in the layout; try another outer face")]
    Crossing { a: usize, b: usize },
    #[error("medial vertices {a} and {b} land on the same point")]
    Coincident { a: usize, b: usize },
}

/// Positions of the medial vertices; circle vertices sit on the unit circle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanarLayout {
    pub positions: Vec<[f64; 2]>,
}

/// Places every vertex not in `pinned` at the average of its neighbours
/// (counted with multiplicity). Solves the Laplacian system directly.
pub fn barycentric(
    n: usize,
    edges: &[(usize, usize)],
    pinned: &[(usize, [f64; 2])],
) -> Result<Vec<[f64; 2]>, LayoutError> {
    let mut pos = vec![[0.0; 2]; n];
    let mut fixed = vec![false; n];
    for &(v, p) in pinned {
        pos[v] = p;
        fixed[v] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&v| !fixed[v]).collect();
    if free.is_empty() {
        return Ok(pos);
    }
    let mut slot = vec![usize::MAX; n];
    for (i, &v) in free.iter().enumerate() {
        slot[v] = i;
    }
    let k = free.len();
    let mut a = DMatrix::<f64>::zeros(k, k);
    let mut b = DMatrix::<f64>::zeros(k, 2);
    for &(u, v) in edges {
        if u == v {
            continue;
        }
        for (x, y) in [(u, v), (v, u)] {
            if fixed[x] {
                continue;
            }
            let i = slot[x];
            a[(i, i)] += 1.0;
            if fixed[y] {
                b[(i, 0)] += pos[y][0];
                b[(i, 1)] += pos[y][1];
            } else {
                a[(i, slot[y])] -= 1.0;
            }
        }
    }
    let lu = a.lu();
    let sol = lu.solve(&b).ok_or_else(|| LayoutError::Unanchored {
        vertex: unanchored(n, edges, &fixed),
    })?;
    if sol.iter().any(|x| !x.is_finite()) {
        return Err(LayoutError::Unanchored {
            vertex: unanchored(n, edges, &fixed),
        });
    }
    for (i, &v) in free.iter().enumerate() {
        pos[v] = [sol[(i, 0)], sol[(i, 1)]];
    }
    Ok(pos)
}

/// First free vertex with no path to a pinned one.
fn unanchored(n: usize, edges: &[(usize, usize)], fixed: &[bool]) -> usize {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut seen = fixed.to_vec();
    let mut stack: Vec<usize> = (0..n).filter(|&v| fixed[v]).collect();
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.iter().position(|&s| !s).unwrap_or(0)
}

/// Circle vertex `k` at angle `2 pi k / E`, everything else barycentric.
///
/// The solve runs on an augmented graph: every bounded medial face gets a
/// free centre joined to its corners, and every circle arc a pinned midpoint
/// joined to the centre of the face inside it. The result is a triangulation
/// with a convex pinned boundary even when `E = 2`, so symmetric bigon stars
/// do not collapse onto one point. Fails if two medial edges still cross or
/// two vertices coincide.
pub fn layout(m: &MedialGraph) -> Result<PlanarLayout, LayoutError> {
    let e = m.circle_count();
    let n = m.vertices.len();
    let on_circle = |t: f64| {
        let a = std::f64::consts::TAU * t / e as f64;
        [a.cos(), a.sin()]
    };
    let mut pinned: Vec<(usize, [f64; 2])> = (0..e).map(|k| (m.circle_vertex(k), on_circle(k as f64))).collect();
    let mut edges: Vec<(usize, usize)> = m.edges.iter().map(|x| (x.tail, x.head)).collect();
    // arcs are circular, so only the straight quadrant edges can cross
    let quadrant_edges = edges[..4 * m.crossing_count()].to_vec();
    let faces = m.bounded_faces();
    for k in 0..e {
        pinned.push((n + faces.len() + k, on_circle(k as f64 + 0.5)));
    }
    for (i, f) in faces.iter().enumerate() {
        let centre = n + i;
        for s in f {
            edges.push((centre, m.step_start(*s)));
            if let crate::medial::EdgeKind::Arc { index } = m.edges[s.edge].kind {
                edges.push((centre, n + faces.len() + index));
            }
        }
    }
    let mut positions = barycentric(n + faces.len() + e, &edges, &pinned)?;
    positions.truncate(n);
    check_planar(&positions, &quadrant_edges)?;
    Ok(PlanarLayout { positions })
}

const EPS: f64 = 1e-9;

fn check_planar(pos: &[[f64; 2]], edges: &[(usize, usize)]) -> Result<(), LayoutError> {
    for a in 0..pos.len() {
        for b in a + 1..pos.len() {
            if (pos[a][0] - pos[b][0]).hypot(pos[a][1] - pos[b][1]) < EPS {
                return Err(LayoutError::Coincident { a, b });
            }
        }
    }
    for (i, &(p, q)) in edges.iter().enumerate() {
        for (j, &(r, s)) in edges.iter().enumerate().skip(i + 1) {
            if p == r || p == s || q == r || q == s {
                continue;
            }
            if segments_cross(pos[p], pos[q], pos[r], pos[s]) {
                return Err(LayoutError::Crossing { a: i, b: j });
            }
        }
    }
    Ok(())
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Whether two segments with distinct endpoints meet (touching counts).
pub(crate) fn segments_cross(a: [f64; 2], b: [f64; 2], c: [f64; 2], d: [f64; 2]) -> bool {
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    if ((d1 > EPS && d2 < -EPS) || (d1 < -EPS && d2 > EPS)) && ((d3 > EPS && d4 < -EPS) || (d3 < -EPS && d4 > EPS)) {
        return true;
    }
    let on = |p: [f64; 2], q: [f64; 2], r: [f64; 2], o: f64| {
        o.abs() <= EPS
            && r[0] >= p[0].min(q[0]) - EPS
            && r[0] <= p[0].max(q[0]) + EPS
            && r[1] >= p[1].min(q[1]) - EPS
            && r[1] <= p[1].max(q[1]) + EPS
    };
    on(c, d, a, d1) || on(c, d, b, d2) || on(a, b, c, d3) || on(a, b, d, d4)
}
