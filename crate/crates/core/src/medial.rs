//! The bounded medial graph of a diagram and its upper and lower skein graphs.
//!
//! Vertex ids: fourfolds first (one per crossing), then stars (one per
//! bounded face, in face order), then the circle vertices that unravel the
//! outer face (one per exterior corner, in boundary order).
//!
//! Edge ids: quadrant edge `(c, q)` has id `4c + q` and runs fourfold to
//! star/circle; circle arc `k` has id `4C + k` and runs from circle vertex `k`
//! to `k + 1` counterclockwise.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::diagram::{Corner, Diagram, FaceSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum VertexKind {
    Fourfold { crossing: usize },
    Star { face: usize },
    Circle { index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EdgeKind {
    Quadrant { crossing: usize, quadrant: usize },
    Arc { index: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MedialEdge {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    #[serde(flatten)]
    pub kind: EdgeKind,
}

/// A directed traversal of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Step {
    pub edge: usize,
    pub forward: bool,
}

impl Step {
    pub fn new(edge: usize, forward: bool) -> Self {
        Step { edge, forward }
    }

    pub fn reversed(self) -> Step {
        Step::new(self.edge, !self.forward)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MedialGraph {
    pub vertices: Vec<VertexKind>,
    pub edges: Vec<MedialEdge>,
    /// Incident edge ids around each vertex, counterclockwise.
    pub rotation: Vec<Vec<usize>>,
    /// Corner base of each crossing, see `Diagram::corner_base`.
    base: Vec<usize>,
    crossings: usize,
    stars: usize,
    circle: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphCounts {
    pub vertices: usize,
    pub edges: usize,
    pub cycle_rank: usize,
    pub fourfolds: usize,
    pub stars: usize,
    pub circle_vertices: usize,
    pub quadrant_edges: usize,
    pub circle_arcs: usize,
}

impl MedialGraph {
    pub fn build(d: &Diagram, fs: &FaceSet) -> MedialGraph {
        let c = d.crossing_count();
        let mut star_vertex = vec![None; fs.faces.len()];
        let mut vertices: Vec<VertexKind> = (0..c).map(|crossing| VertexKind::Fourfold { crossing }).collect();
        for (f, _) in fs.bounded() {
            star_vertex[f] = Some(vertices.len());
            vertices.push(VertexKind::Star { face: f });
        }
        let stars = vertices.len() - c;
        let outer = fs.outer_face();
        let circle_base = vertices.len();
        let e = outer.len();
        vertices.extend((0..e).map(|index| VertexKind::Circle { index }));

        let mut circle_of = vec![usize::MAX; 4 * c];
        for (k, corner) in outer.corners.iter().enumerate() {
            circle_of[4 * corner.crossing + corner.quadrant] = circle_base + k;
        }

        let mut edges = Vec::with_capacity(4 * c + e);
        for crossing in 0..c {
            for quadrant in 0..4 {
                let corner = Corner { crossing, quadrant };
                let head = match star_vertex[fs.face_of(corner)] {
                    Some(v) => v,
                    None => circle_of[4 * crossing + quadrant],
                };
                edges.push(MedialEdge {
                    id: edges.len(),
                    tail: crossing,
                    head,
                    kind: EdgeKind::Quadrant { crossing, quadrant },
                });
            }
        }
        for index in 0..e {
            edges.push(MedialEdge {
                id: edges.len(),
                tail: circle_base + index,
                head: circle_base + (index + 1) % e,
                kind: EdgeKind::Arc { index },
            });
        }

        let mut rotation = vec![Vec::new(); vertices.len()];
        for (crossing, rot) in rotation.iter_mut().enumerate().take(c) {
            *rot = (0..4).map(|q| 4 * crossing + q).collect();
        }
        // face traversal runs clockwise around a bounded face, so the star's
        // counterclockwise order is the reversed corner order
        for (f, face) in fs.bounded() {
            let v = star_vertex[f].unwrap();
            rotation[v] = face.corners.iter().rev().map(|k| 4 * k.crossing + k.quadrant).collect();
        }
        for (k, corner) in outer.corners.iter().enumerate() {
            let arc_out = 4 * c + k;
            let arc_in = 4 * c + (k + e - 1) % e;
            rotation[circle_base + k] = vec![arc_out, 4 * corner.crossing + corner.quadrant, arc_in];
        }

        MedialGraph {
            vertices,
            edges,
            rotation,
            base: d.corner_base(),
            crossings: c,
            stars,
            circle: e,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings
    }

    pub fn star_count(&self) -> usize {
        self.stars
    }

    pub fn circle_count(&self) -> usize {
        self.circle
    }

    pub fn circle_vertex(&self, k: usize) -> usize {
        self.crossings + self.stars + k
    }

    /// Quadrant index measured from the crossing's corner base, unchanged by
    /// crossing flips.
    pub fn shadow_quadrant(&self, crossing: usize, quadrant: usize) -> usize {
        (quadrant + 4 - self.base[crossing]) % 4
    }

    pub fn quadrant_edge(&self, crossing: usize, quadrant: usize) -> usize {
        4 * crossing + quadrant
    }

    pub fn arc_edge(&self, k: usize) -> usize {
        4 * self.crossings + k
    }

    pub fn is_arc(&self, edge: usize) -> bool {
        edge >= 4 * self.crossings
    }

    /// Vertex reached by traversing `s`.
    pub fn step_end(&self, s: Step) -> usize {
        let e = &self.edges[s.edge];
        if s.forward {
            e.head
        } else {
            e.tail
        }
    }

    pub fn step_start(&self, s: Step) -> usize {
        self.step_end(s.reversed())
    }

    pub fn counts(&self) -> GraphCounts {
        let v = self.vertices.len();
        let e = self.edges.len();
        GraphCounts {
            vertices: v,
            edges: e,
            cycle_rank: e + 1 - v,
            fourfolds: self.crossings,
            stars: self.stars,
            circle_vertices: self.circle,
            quadrant_edges: 4 * self.crossings,
            circle_arcs: self.circle,
        }
    }

    /// Proper 2-colouring check with the circle contracted to a single
    /// outer star: every quadrant edge must join the two colour classes.
    pub fn is_bipartite(&self) -> bool {
        let n = self.vertices.len();
        let outer = n;
        let rep = |v: usize| if v >= self.crossings + self.stars { outer } else { v };
        let mut adj = vec![Vec::new(); n + 1];
        for e in self.edges.iter().filter(|e| !self.is_arc(e.id)) {
            adj[rep(e.tail)].push(rep(e.head));
            adj[rep(e.head)].push(rep(e.tail));
        }
        let mut colour = vec![None; n + 1];
        for s in 0..=n {
            if colour[s].is_some() || adj[s].is_empty() {
                continue;
            }
            colour[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let cv = colour[v].unwrap();
                for &w in &adj[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!cv);
                            stack.push(w);
                        }
                        Some(cw) if cw == cv => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    /// Faces of the medial graph as closed walks, each traversed with the
    /// face on the left. The walk running around the outside of the circle
    /// is omitted.
    pub fn bounded_faces(&self) -> Vec<Vec<Step>> {
        let walks = trace(
            &self.rotation,
            self.edges.len() * 2,
            |d| {
                let s = Step::new(d / 2, d % 2 == 0);
                (self.step_end(s), s.edge)
            },
            |v, edge| 2 * edge + usize::from(self.edges[edge].tail != v),
        );
        let outer = self.circle_outer_dart();
        walks
            .into_iter()
            .filter(|w| !w.contains(&outer))
            .map(|w| w.into_iter().map(|d| Step::new(d / 2, d % 2 == 0)).collect())
            .collect()
    }

    fn circle_outer_dart(&self) -> usize {
        2 * self.arc_edge(0) + 1
    }

    /// Lengths of the bounded faces once the circle is contracted to a point:
    /// arc steps are not counted.
    pub fn contracted_face_sizes(&self) -> Vec<usize> {
        self.bounded_faces()
            .iter()
            .map(|w| w.iter().filter(|s| !self.is_arc(s.edge)).count())
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph medial {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let (label, shape, colour) = match v {
                VertexKind::Fourfold { crossing } => (format!("x{crossing}"), "box", "blue"),
                VertexKind::Star { face } => (format!("f{face}"), "circle", "red"),
                VertexKind::Circle { index } => (format!("o{index}"), "point", "red"),
            };
            let _ = writeln!(s, "  v{i} [label=\"{label}\", shape={shape}, color={colour}];");
        }
        for e in &self.edges {
            let style = if self.is_arc(e.id) { ", style=dashed" } else { "" };
            let _ = writeln!(
                s,
                "  v{} -- v{} [label=\"{}\", dir=forward{style}];",
                e.tail, e.head, e.id
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.vertices.iter().enumerate().map(|(id, v)| {
                let mut o = serde_json::to_value(v).unwrap();
                o["id"] = id.into();
                o
            }).collect::<Vec<_>>(),
            "edges": self.edges,
            "counts": self.counts(),
        })
    }
}

/// Traces the faces of a rotation system. `arrive(dart)` returns the vertex a
/// dart ends at and the incidence slot (an entry of that vertex's rotation)
/// it arrives through; `leave(vertex, slot)` returns the dart leaving the
/// vertex through that slot. Faces turn to the clockwise-next slot, which
/// keeps each face on the left.
fn trace(
    rotation: &[Vec<usize>],
    darts: usize,
    arrive: impl Fn(usize) -> (usize, usize),
    leave: impl Fn(usize, usize) -> usize,
) -> Vec<Vec<usize>> {
    let mut seen = vec![false; darts];
    let mut walks = Vec::new();
    for start in 0..darts {
        if seen[start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut d = start;
        loop {
            seen[d] = true;
            walk.push(d);
            let (w, slot) = arrive(d);
            let rot = &rotation[w];
            let p = rot.iter().position(|&x| x == slot).expect("slot in rotation");
            let next = rot[(p + rot.len() - 1) % rot.len()];
            d = leave(w, next);
            if d == start {
                break;
            }
        }
        walks.push(walk);
    }
    walks
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Upper,
    Lower,
}

impl Side {
    /// Quadrant pairs joined at every crossing. Upper joins the pairs
    /// flanking the under-strand ends, lower those flanking the over-strand.
    pub fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Side::Upper => [(3, 0), (1, 2)],
            Side::Lower => [(0, 1), (2, 3)],
        }
    }

    pub fn other(self) -> Side {
        match self {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeinEdge {
    pub id: usize,
    pub tail: usize,
    pub head: usize,
    /// Smoothed crossing, or `None` for a circle arc.
    pub crossing: Option<usize>,
    /// The medial edges this edge stands for, in order from tail to head.
    pub path: Vec<Step>,
}

/// Upper or lower graph: the medial graph with every fourfold smoothed.
///
/// Skein edge `2c + k` is the `k`-th joined pair of crossing `c`; skein edge
/// `2C + k` is circle arc `k`. Vertex ids are the medial ones.
#[derive(Clone, Debug, PartialEq)]
pub struct SkeinGraph {
    pub side: Side,
    pub edges: Vec<SkeinEdge>,
    /// Bounded faces, each a closed walk of skein steps with the face on the left.
    pub faces: Vec<Vec<Step>>,
    /// Connected components of the graph. More than one happens when some
    /// link component never passes under (upper) or over (lower).
    pub components: usize,
    vertex_count: usize,
}

impl SkeinGraph {
    pub fn build(m: &MedialGraph, side: Side) -> SkeinGraph {
        let c = m.crossing_count();
        let e = m.circle_count();
        // medial edge -> (skein edge, medial edge is at the skein tail end)
        let mut owner = vec![(0usize, false); m.edges.len()];
        let mut edges = Vec::with_capacity(2 * c + e);
        for crossing in 0..c {
            for (qa, qb) in side.pairs() {
                let (ea, eb) = (m.quadrant_edge(crossing, qa), m.quadrant_edge(crossing, qb));
                let id = edges.len();
                owner[ea] = (id, true);
                owner[eb] = (id, false);
                edges.push(SkeinEdge {
                    id,
                    tail: m.edges[ea].head,
                    head: m.edges[eb].head,
                    crossing: Some(crossing),
                    path: vec![Step::new(ea, false), Step::new(eb, true)],
                });
            }
        }
        for k in 0..e {
            let me = m.arc_edge(k);
            let id = edges.len();
            owner[me] = (id, true);
            edges.push(SkeinEdge {
                id,
                tail: m.edges[me].tail,
                head: m.edges[me].head,
                crossing: None,
                path: vec![Step::new(me, true)],
            });
        }

        let arrive = |d: usize| {
            let se = &edges[d / 2];
            if d % 2 == 0 {
                (se.head, se.path.last().unwrap().edge)
            } else {
                (se.tail, se.path[0].edge)
            }
        };
        let leave = |v: usize, medial: usize| {
            let (id, at_tail) = owner[medial];
            let forward = if m.is_arc(medial) {
                m.edges[medial].tail == v
            } else {
                at_tail
            };
            2 * id + usize::from(!forward)
        };
        let walks = trace(&m.rotation, 2 * edges.len(), arrive, leave);

        // components over the star and circle vertices
        let n = m.vertices.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for se in &edges {
            let (a, b) = (find(&mut parent, se.tail), find(&mut parent, se.head));
            parent[a] = b;
        }
        let first = c;
        let roots: Vec<usize> = (first..n).filter(|&v| find(&mut parent, v) == v).collect();
        let circle_root = find(&mut parent, m.circle_vertex(0));
        let outer_dart = 2 * (2 * c) + 1;

        // every component drops one walk: the circle's component drops the
        // walk around the outside, the others their longest walk
        let mut dropped = vec![false; walks.len()];
        for &r in &roots {
            let members: Vec<usize> = (0..walks.len())
                .filter(|&i| {
                    let (v, _) = arrive(walks[i][0]);
                    find(&mut parent, v) == r
                })
                .collect();
            let pick = if r == circle_root {
                members.iter().copied().find(|&i| walks[i].contains(&outer_dart))
            } else {
                let mut best: Option<usize> = None;
                for &i in &members {
                    if best.is_none_or(|b| walks[i].len() > walks[b].len()) {
                        best = Some(i);
                    }
                }
                best
            };
            if let Some(i) = pick {
                dropped[i] = true;
            }
        }
        let faces = walks
            .into_iter()
            .zip(dropped)
            .filter(|(_, d)| !d)
            .map(|(w, _)| w.into_iter().map(|d| Step::new(d / 2, d % 2 == 0)).collect())
            .collect();

        SkeinGraph {
            side,
            edges,
            faces,
            components: roots.len(),
            vertex_count: n - c,
        }
    }

    pub fn merged_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.crossing.is_some()).count()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.components - self.vertex_count
    }

    /// Face `i` expanded into medial steps.
    pub fn medial_walk(&self, i: usize) -> Vec<Step> {
        self.faces[i]
            .iter()
            .flat_map(|s| {
                let path = &self.edges[s.edge].path;
                let out: Vec<Step> = if s.forward {
                    path.clone()
                } else {
                    path.iter().rev().map(|p| p.reversed()).collect()
                };
                out
            })
            .collect()
    }

    pub fn to_dot(&self, m: &MedialGraph) -> String {
        let name = match self.side {
            Side::Upper => "upper",
            Side::Lower => "lower",
        };
        let mut s = format!("graph {name} {{\n");
        for (v, kind) in m.vertices.iter().enumerate().skip(m.crossing_count()) {
            let label = match kind {
                VertexKind::Star { face } => format!("f{face}"),
                VertexKind::Circle { index } => format!("o{index}"),
                VertexKind::Fourfold { .. } => unreachable!(),
            };
            let _ = writeln!(s, "  v{v} [label=\"{label}\"];");
        }
        for e in &self.edges {
            let path: Vec<String> = e.path.iter().map(|p| p.edge.to_string()).collect();
            let _ = writeln!(
                s,
                "  v{} -- v{} [label=\"{}\", medial=\"{}\"];",
                e.tail,
                e.head,
                e.id,
                path.join(" ")
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "side": self.side,
            "edges": self.edges,
            "faces": self.faces,
            "components": self.components,
            "cycle_rank": self.cycle_rank(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{parse_pd, OuterFace};

    fn medial(text: &str) -> (Diagram, MedialGraph) {
        let d = parse_pd(text).unwrap();
        let fs = d.faces(OuterFace::Longest).unwrap();
        let m = MedialGraph::build(&d, &fs);
        (d, m)
    }

    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn trefoil_counts() {
        let (_, m) = medial(TREFOIL);
        let k = m.counts();
        assert_eq!((k.fourfolds, k.stars, k.circle_vertices), (3, 4, 3));
        assert_eq!((k.vertices, k.edges, k.cycle_rank), (10, 15, 6));
    }

    #[test]
    fn hopf_rank() {
        let (_, m) = medial("X(1,4,2,3) X(3,2,4,1)");
        assert_eq!(m.counts().cycle_rank, 4);
    }

    #[test]
    fn rotations_cover_every_edge_end_once() {
        let (_, m) = medial(TREFOIL);
        let mut ends = vec![0; m.edges.len()];
        for rot in &m.rotation {
            for &e in rot {
                ends[e] += 1;
            }
        }
        assert!(ends.iter().all(|&n| n == 2));
    }

    #[test]
    fn medial_faces_are_squares() {
        let (_, m) = medial(TREFOIL);
        assert!(m.is_bipartite());
        let sizes = m.contracted_face_sizes();
        assert_eq!(sizes.len(), 6);
        assert!(sizes.iter().all(|&s| s == 4));
    }

    #[test]
    fn skein_trefoil() {
        let (_, m) = medial(TREFOIL);
        for side in [Side::Upper, Side::Lower] {
            let g = SkeinGraph::build(&m, side);
            assert_eq!(g.merged_edge_count(), 6);
            assert_eq!(g.edges.len(), 9);
            assert_eq!(g.components, 1);
            assert_eq!(g.faces.len(), 3);
            assert_eq!(g.cycle_rank(), 3);
        }
    }

    #[test]
    fn medial_walks_are_closed() {
        let (_, m) = medial(TREFOIL);
        let g = SkeinGraph::build(&m, Side::Upper);
        for i in 0..g.faces.len() {
            let w = g.medial_walk(i);
            for k in 0..w.len() {
                assert_eq!(m.step_end(w[k]), m.step_start(w[(k + 1) % w.len()]));
            }
        }
    }

    #[test]
    fn pairings_are_the_two_noncrossing_matchings() {
        let up = Side::Upper.pairs();
        let low = Side::Lower.pairs();
        for pairs in [up, low] {
            let mut all: Vec<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
            all.sort();
            assert_eq!(all, vec![0, 1, 2, 3]);
            for (a, b) in pairs {
                assert_eq!((b + 4 - a) % 4, 1, "pairs join adjacent quadrants");
            }
        }
        assert_ne!(up, low);
    }

    #[test]
    fn exports() {
        let (_, m) = medial(TREFOIL);
        assert!(m.to_dot().starts_with("graph medial {"));
        let j = m.to_json();
        assert_eq!(j["edges"].as_array().unwrap().len(), 15);
        let g = SkeinGraph::build(&m, Side::Lower);
        assert!(g.to_dot(&m).contains("medial=\""));
        assert_eq!(g.to_json()["cycle_rank"], 3);
    }
}
