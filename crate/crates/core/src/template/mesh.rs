//! Embedding the complex in space and writing it out.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Anchor, PlanarLayout, PolygonClass, TemplateComplex, TemplateError};
use crate::medial::MedialGraph;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshParams {
    /// Lids sit at `z = +height` and `z = -height`.
    pub height: f64,
    /// Distance from a crossing to its saddle points. `None` picks 0.15 of
    /// the shortest quadrant edge.
    pub saddle_radius: Option<f64>,
    /// Radius of the ring wall.
    pub ring_radius: f64,
}

impl Default for MeshParams {
    fn default() -> Self {
        MeshParams {
            height: 1.0,
            saddle_radius: None,
            ring_radius: 2.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeshFace {
    pub class: PolygonClass,
    pub vertices: Vec<usize>,
}

/// One face per polygon of the complex, in the same order. Bent edges add a
/// vertex at the bend.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<MeshFace>,
}

const GROUPS: [&str; 4] = ["walls", "ring", "saddles", "lids"];

fn bad(name: &'static str, value: f64, reason: &str) -> TemplateError {
    TemplateError::Parameter {
        name,
        value,
        reason: reason.to_string(),
    }
}

pub fn build_mesh(
    m: &MedialGraph,
    tc: &TemplateComplex,
    layout: &PlanarLayout,
    params: &MeshParams,
) -> Result<Mesh, TemplateError> {
    let h = params.height;
    let big_r = params.ring_radius;
    if !(h.is_finite() && h > 0.0) {
        return Err(bad("height", h, "must be positive"));
    }
    if !(big_r.is_finite() && big_r > 0.0) {
        return Err(bad("ring-radius", big_r, "must be positive"));
    }
    let xy: Vec<[f64; 2]> = layout.positions.iter().map(|p| [p[0] * big_r, p[1] * big_r]).collect();
    let quad_len = |e: usize| {
        let (a, b) = (xy[m.edges[e].tail], xy[m.edges[e].head]);
        (b[0] - a[0]).hypot(b[1] - a[1])
    };
    let shortest = (0..4 * m.crossing_count()).map(quad_len).fold(f64::INFINITY, f64::min);
    let r = params.saddle_radius.unwrap_or(0.15 * shortest);
    if !(r.is_finite() && r > 0.0 && r < shortest / 2.0) {
        return Err(bad(
            "saddle-radius",
            r,
            &format!("must lie in (0, {:.6})", shortest / 2.0),
        ));
    }

    let mut vertices: Vec<[f64; 3]> = tc
        .vertices
        .iter()
        .map(|v| {
            let z = v.level.z(h);
            match v.anchor {
                Anchor::Medial { vertex } => [xy[vertex][0], xy[vertex][1], z],
                Anchor::Saddle { crossing, quadrant } => {
                    let e = m.quadrant_edge(crossing, quadrant);
                    let (a, b) = (xy[crossing], xy[m.edges[e].head]);
                    let t = r / quad_len(e);
                    [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1]), z]
                }
            }
        })
        .collect();
    let mut bend = vec![None; tc.edges.len()];
    for (i, e) in tc.edges.iter().enumerate() {
        if let Some(v) = e.bend {
            let z = vertices[e.ends[0]][2];
            vertices.push([xy[v][0], xy[v][1], z]);
            bend[i] = Some(vertices.len() - 1);
        }
    }
    let faces = tc
        .polygons
        .iter()
        .map(|p| {
            let mut vs = Vec::with_capacity(p.vertices.len() + 2);
            for (i, &v) in p.vertices.iter().enumerate() {
                vs.push(v);
                vs.extend(bend[p.edges[i]]);
            }
            MeshFace {
                class: p.class,
                vertices: vs,
            }
        })
        .collect();
    Ok(Mesh { vertices, faces })
}

impl Mesh {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("mesh serializes")
    }
}

/// Wavefront OBJ text with the groups walls, ring, saddles and lids.
pub fn export_obj(mesh: &Mesh) -> String {
    let mut out = format!("# knotplate {} template mesh\n", env!("CARGO_PKG_VERSION"));
    for v in &mesh.vertices {
        let _ = writeln!(out, "v {:.6} {:.6} {:.6}", v[0], v[1], v[2]);
    }
    for g in GROUPS {
        let _ = writeln!(out, "g {g}");
        for f in mesh.faces.iter().filter(|f| f.class.group() == g) {
            out.push('f');
            for v in &f.vertices {
                let _ = write!(out, " {}", v + 1);
            }
            out.push('\n');
        }
    }
    out
}
