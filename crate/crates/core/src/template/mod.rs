//! The template complex: vertical walls over the medial graph, a five-piece
//! saddle at every crossing, and top and bottom lids cut up by the upper and
//! lower graphs.
//!
//! Cell layout. Each quadrant edge `(c, q)` carries a saddle point `P(c, q)` a
//! short way out from the crossing, present at three levels (bottom, middle,
//! top). Stars and circle vertices exist at the top and bottom only; bounded
//! bigon stars are dropped and their two walls merged into one. The saddle
//! square spans the four middle points; the flap over slot `s` joins
//! `P(c, s - 1)` and `P(c, s)` and rises to the top over the under-strand
//! (even slots) or drops to the bottom over the over-strand (odd slots).

mod layout;
mod mesh;

pub use layout::{barycentric, layout, LayoutError, PlanarLayout};
pub use mesh::{build_mesh, export_obj, Mesh, MeshFace, MeshParams};

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::medial::{EdgeKind, MedialGraph, Side, SkeinGraph, Step, VertexKind};
use crate::Analysis;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TemplateError {
    #[error("the {side:?} graph is disconnected, so a lid facet would be an annulus")]
    SplitLid { side: Side },
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("invalid mesh parameter {name} = {value}: {reason}")]
    Parameter {
        name: &'static str,
        value: f64,
        reason: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Level {
    Bottom,
    Middle,
    Top,
}

impl Level {
    pub fn z(self, h: f64) -> f64 {
        match self {
            Level::Bottom => -h,
            Level::Middle => 0.0,
            Level::Top => h,
        }
    }
}

/// What a complex vertex sits over in the plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Anchor {
    /// Saddle point on quadrant edge `(crossing, quadrant)`.
    Saddle { crossing: usize, quadrant: usize },
    /// A star or circle vertex of the medial graph.
    Medial { vertex: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TVertex {
    pub anchor: Anchor,
    pub level: Level,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TEdge {
    pub ends: [usize; 2],
    /// Medial vertex (a dropped bigon star) the edge bends through.
    pub bend: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolygonClass {
    WallInternal,
    WallRing,
    SaddleSquare,
    SaddleFlap,
    LidFacet,
}

impl PolygonClass {
    /// Mesh group the class belongs to.
    pub fn group(self) -> &'static str {
        match self {
            PolygonClass::WallInternal => "walls",
            PolygonClass::WallRing => "ring",
            PolygonClass::SaddleSquare | PolygonClass::SaddleFlap => "saddles",
            PolygonClass::LidFacet => "lids",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    pub class: PolygonClass,
    /// Boundary vertex cycle.
    pub vertices: Vec<usize>,
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
    pub edges: Vec<usize>,
    /// Side count of the polygon as a flat piece: walls, ring walls and
    /// saddle pieces are quadrilaterals even where a saddle point subdivides
    /// a wall's vertical side.
    pub sides: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TemplateComplex {
    pub crossings: usize,
    pub vertices: Vec<TVertex>,
    pub edges: Vec<TEdge>,
    pub polygons: Vec<Polygon>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexCounts {
    pub internal_walls: usize,
    pub ring_walls: usize,
    pub saddle_squares: usize,
    pub saddle_flaps: usize,
    pub saddles: usize,
    pub lid_facets: usize,
    pub polygons: usize,
    pub four_sided: usize,
    pub vertices: usize,
    pub edges: usize,
    pub euler_characteristic: i64,
    /// Sum of polygon side counts.
    pub side_incidences: usize,
    /// Sum over polygons of boundary edges in the subdivided complex.
    pub edge_incidences: usize,
    /// Mean boundary edge count of a lid facet.
    pub lid_edge_average: f64,
}

struct Builder {
    vertices: Vec<TVertex>,
    index: HashMap<(Anchor, Level), usize>,
    edges: Vec<TEdge>,
}

impl Builder {
    fn vertex(&mut self, anchor: Anchor, level: Level) -> usize {
        *self.index.entry((anchor, level)).or_insert_with(|| {
            self.vertices.push(TVertex { anchor, level });
            self.vertices.len() - 1
        })
    }

    fn at(&self, e: usize, level: Level) -> usize {
        let anchor = Anchor::Saddle {
            crossing: e / 4,
            quadrant: e % 4,
        };
        self.index[&(anchor, level)]
    }

    fn med(&self, v: usize, level: Level) -> Option<usize> {
        self.index.get(&(Anchor::Medial { vertex: v }, level)).copied()
    }

    fn edge(&mut self, a: usize, b: usize, bend: Option<usize>) -> usize {
        self.edges.push(TEdge { ends: [a, b], bend });
        self.edges.len() - 1
    }
}

/// Per-level horizontal edges, looked up while tracing lid facets.
struct Horizontal {
    /// Wall edge over each quadrant edge (merged walls share one).
    wall: Vec<usize>,
    /// Ring edge over each circle arc.
    ring: Vec<usize>,
    /// Flap rim over slot `s` of crossing `c`, at `4c + s`. Only the flaps
    /// reaching this level are set.
    flap: Vec<Option<usize>>,
}

impl TemplateComplex {
    pub fn from_analysis(a: &Analysis) -> Result<TemplateComplex, TemplateError> {
        TemplateComplex::build(&a.medial, &a.upper, &a.lower)
    }

    pub fn build(m: &MedialGraph, upper: &SkeinGraph, lower: &SkeinGraph) -> Result<TemplateComplex, TemplateError> {
        for g in [upper, lower] {
            if g.components > 1 {
                return Err(TemplateError::SplitLid { side: g.side });
            }
        }
        let c = m.crossing_count();
        let mut b = Builder {
            vertices: Vec::new(),
            index: HashMap::new(),
            edges: Vec::new(),
        };
        let is_bigon = |v: usize| matches!(m.vertices[v], VertexKind::Star { .. }) && m.rotation[v].len() == 2;
        let saddle = |e: usize| Anchor::Saddle {
            crossing: e / 4,
            quadrant: e % 4,
        };

        // vertical edges at the saddle points: [bottom..middle, middle..top]
        let mut pv = Vec::with_capacity(4 * c);
        for e in 0..4 * c {
            let lo = b.vertex(saddle(e), Level::Bottom);
            let mid = b.vertex(saddle(e), Level::Middle);
            let hi = b.vertex(saddle(e), Level::Top);
            pv.push([b.edge(lo, mid, None), b.edge(mid, hi, None)]);
        }
        // vertical edges at stars and circle vertices
        let mut mv = vec![usize::MAX; m.vertices.len()];
        for v in c..m.vertices.len() {
            if !is_bigon(v) {
                let lo = b.vertex(Anchor::Medial { vertex: v }, Level::Bottom);
                let hi = b.vertex(Anchor::Medial { vertex: v }, Level::Top);
                mv[v] = b.edge(lo, hi, None);
            }
        }
        let at = |b: &Builder, e: usize, l: Level| b.at(e, l);
        let med = |b: &Builder, v: usize, l: Level| b.med(v, l).expect("star vertices exist");

        let mut polygons = Vec::new();
        let mut horiz: Vec<Horizontal> = (0..2)
            .map(|_| Horizontal {
                wall: vec![usize::MAX; 4 * c],
                ring: vec![usize::MAX; m.circle_count()],
                flap: vec![None; 4 * c],
            })
            .collect();
        const LEVELS: [Level; 2] = [Level::Top, Level::Bottom];

        // internal walls
        for e in 0..4 * c {
            let star = m.edges[e].head;
            if is_bigon(star) {
                let other = *m.rotation[star].iter().find(|&&x| x != e).unwrap();
                if other < e {
                    continue;
                }
                let top = b.edge(at(&b, e, Level::Top), at(&b, other, Level::Top), Some(star));
                let bot = b.edge(at(&b, other, Level::Bottom), at(&b, e, Level::Bottom), Some(star));
                for (h, edge) in horiz.iter_mut().zip([top, bot]) {
                    h.wall[e] = edge;
                    h.wall[other] = edge;
                }
                polygons.push(Polygon {
                    class: PolygonClass::WallInternal,
                    vertices: vec![
                        at(&b, e, Level::Bottom),
                        at(&b, e, Level::Middle),
                        at(&b, e, Level::Top),
                        at(&b, other, Level::Top),
                        at(&b, other, Level::Middle),
                        at(&b, other, Level::Bottom),
                    ],
                    edges: vec![pv[e][0], pv[e][1], top, pv[other][1], pv[other][0], bot],
                    sides: 4,
                });
            } else {
                let top = b.edge(at(&b, e, Level::Top), med(&b, star, Level::Top), None);
                let bot = b.edge(med(&b, star, Level::Bottom), at(&b, e, Level::Bottom), None);
                horiz[0].wall[e] = top;
                horiz[1].wall[e] = bot;
                polygons.push(Polygon {
                    class: PolygonClass::WallInternal,
                    vertices: vec![
                        at(&b, e, Level::Bottom),
                        at(&b, e, Level::Middle),
                        at(&b, e, Level::Top),
                        med(&b, star, Level::Top),
                        med(&b, star, Level::Bottom),
                    ],
                    edges: vec![pv[e][0], pv[e][1], top, mv[star], bot],
                    sides: 4,
                });
            }
        }

        // ring walls
        for k in 0..m.circle_count() {
            let (u, w) = (m.circle_vertex(k), m.circle_vertex((k + 1) % m.circle_count()));
            let top = b.edge(med(&b, u, Level::Top), med(&b, w, Level::Top), None);
            let bot = b.edge(med(&b, w, Level::Bottom), med(&b, u, Level::Bottom), None);
            horiz[0].ring[k] = top;
            horiz[1].ring[k] = bot;
            polygons.push(Polygon {
                class: PolygonClass::WallRing,
                vertices: vec![
                    med(&b, u, Level::Bottom),
                    med(&b, u, Level::Top),
                    med(&b, w, Level::Top),
                    med(&b, w, Level::Bottom),
                ],
                edges: vec![mv[u], top, mv[w], bot],
                sides: 4,
            });
        }

        // saddles: square, then the four flaps
        for x in 0..c {
            let p = |q: usize| 4 * x + q % 4;
            // square edge across slot s joins P(s - 1) and P(s)
            let sq: Vec<usize> = (0..4)
                .map(|s| b.edge(at(&b, p(s + 3), Level::Middle), at(&b, p(s), Level::Middle), None))
                .collect();
            polygons.push(Polygon {
                class: PolygonClass::SaddleSquare,
                vertices: (0..4).map(|q| at(&b, p(q), Level::Middle)).collect(),
                edges: (1..=4).map(|s| sq[s % 4]).collect(),
                sides: 4,
            });
            for s in 0..4 {
                let (a, z) = (p(s + 3), p(s));
                let (level, half, h) = if s % 2 == 0 {
                    (Level::Top, 1, 0)
                } else {
                    (Level::Bottom, 0, 1)
                };
                let rim = b.edge(at(&b, z, level), at(&b, a, level), None);
                horiz[h].flap[4 * x + s] = Some(rim);
                polygons.push(Polygon {
                    class: PolygonClass::SaddleFlap,
                    vertices: vec![
                        at(&b, a, Level::Middle),
                        at(&b, z, Level::Middle),
                        at(&b, z, level),
                        at(&b, a, level),
                    ],
                    edges: vec![sq[s], pv[z][half], rim, pv[a][half]],
                    sides: 4,
                });
            }
        }

        // lids
        for (g, (level, h)) in [upper, lower].into_iter().zip(LEVELS.into_iter().zip(&horiz)) {
            for i in 0..g.faces.len() {
                let (vs, es) = lid_boundary(m, &g.medial_walk(i), h, &|v| b.med(v, level), &|e| b.at(e, level));
                polygons.push(Polygon {
                    class: PolygonClass::LidFacet,
                    sides: es.len(),
                    vertices: vs,
                    edges: es,
                });
            }
        }

        Ok(TemplateComplex {
            crossings: c,
            vertices: b.vertices,
            edges: b.edges,
            polygons,
        })
    }

    pub fn count(&self, class: PolygonClass) -> usize {
        self.polygons.iter().filter(|p| p.class == class).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.polygons.len() as i64
    }

    pub fn counts(&self) -> ComplexCounts {
        let lids: Vec<&Polygon> = self
            .polygons
            .iter()
            .filter(|p| p.class == PolygonClass::LidFacet)
            .collect();
        let squares = self.count(PolygonClass::SaddleSquare);
        let flaps = self.count(PolygonClass::SaddleFlap);
        ComplexCounts {
            internal_walls: self.count(PolygonClass::WallInternal),
            ring_walls: self.count(PolygonClass::WallRing),
            saddle_squares: squares,
            saddle_flaps: flaps,
            saddles: squares + flaps,
            lid_facets: lids.len(),
            polygons: self.polygons.len(),
            four_sided: self.polygons.iter().filter(|p| p.sides == 4).count(),
            vertices: self.vertices.len(),
            edges: self.edges.len(),
            euler_characteristic: self.euler_characteristic(),
            side_incidences: self.polygons.iter().map(|p| p.sides).sum(),
            edge_incidences: self.polygons.iter().map(|p| p.edges.len()).sum(),
            lid_edge_average: if lids.is_empty() {
                0.0
            } else {
                lids.iter().map(|p| p.edges.len()).sum::<usize>() as f64 / lids.len() as f64
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("complex serializes")
    }
}

/// Vertex and edge cycle of the lid facet traced by a skein face. A merged
/// skein edge reads wall, flap rim, wall; passing through a bigon star the
/// two walls are one merged wall and its edge is taken once.
fn lid_boundary(
    m: &MedialGraph,
    walk: &[Step],
    h: &Horizontal,
    medial_vertex: &dyn Fn(usize) -> Option<usize>,
    saddle_vertex: &dyn Fn(usize) -> usize,
) -> (Vec<usize>, Vec<usize>) {
    // start where a vertex is emitted, not on a step leaving a bigon star
    let first = walk
        .iter()
        .position(|s| s.forward || m.is_arc(s.edge) || medial_vertex(m.edges[s.edge].head).is_some())
        .unwrap_or(0);
    let mut vs = Vec::new();
    let mut es = Vec::new();
    for s in walk[first..].iter().chain(&walk[..first]) {
        match m.edges[s.edge].kind {
            EdgeKind::Arc { index } => {
                vs.extend(medial_vertex(m.step_start(*s)));
                es.push(h.ring[index]);
            }
            EdgeKind::Quadrant { crossing, quadrant } => {
                let star = m.edges[s.edge].head;
                if s.forward {
                    // saddle point out to the star; a bigon star defers the
                    // merged edge to the step leaving it
                    vs.push(saddle_vertex(s.edge));
                    if medial_vertex(star).is_some() {
                        es.push(h.wall[s.edge]);
                    }
                } else {
                    if let Some(v) = medial_vertex(star) {
                        vs.push(v);
                    }
                    es.push(h.wall[s.edge]);
                    vs.push(saddle_vertex(s.edge));
                    // then along the flap rim to the partner quadrant
                    let slot = [quadrant, (quadrant + 1) % 4]
                        .into_iter()
                        .find(|&sl| h.flap[4 * crossing + sl].is_some())
                        .expect("a flap rim leaves every saddle point on this level");
                    es.push(h.flap[4 * crossing + slot].unwrap());
                }
            }
        }
    }
    (vs, es)
}
