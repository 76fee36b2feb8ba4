//! Knotspace templates: medial graphs, skein graphs, group presentations and
//! the polygonal template complex of a knot or link diagram.

pub mod catalog;
pub mod diagram;
pub mod fundgroup;
pub mod medial;
pub mod scan;
pub mod template;

use diagram::{Diagram, DiagramError, FaceSet, OuterFace};
use fundgroup::{spanning_tree, template_presentation, Presentation, SpanningTree, TreePolicy};
use medial::{MedialGraph, Side, SkeinGraph};

/// Everything derived from one diagram up to the raw template presentation.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub diagram: Diagram,
    pub faces: FaceSet,
    pub medial: MedialGraph,
    pub upper: SkeinGraph,
    pub lower: SkeinGraph,
    pub tree: SpanningTree,
    pub presentation: Presentation,
}

impl Analysis {
    pub fn new(d: &Diagram, outer: OuterFace, policy: TreePolicy) -> Result<Analysis, DiagramError> {
        d.ensure_valid()?;
        let faces = d.faces(outer)?;
        let medial = MedialGraph::build(d, &faces);
        let upper = SkeinGraph::build(&medial, Side::Upper);
        let lower = SkeinGraph::build(&medial, Side::Lower);
        let tree = spanning_tree(&medial, policy);
        let presentation = template_presentation(&medial, &upper, &lower, &tree);
        Ok(Analysis {
            diagram: d.clone(),
            faces,
            medial,
            upper,
            lower,
            tree,
            presentation,
        })
    }

    /// Default outer face and tree.
    pub fn of(d: &Diagram) -> Result<Analysis, DiagramError> {
        Analysis::new(d, OuterFace::default(), TreePolicy::default())
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram.crossing_count()
    }

    /// Corners on the outer face.
    pub fn exterior(&self) -> usize {
        self.faces.exterior_count()
    }

    /// Bounded bigon faces.
    pub fn bigons(&self) -> usize {
        self.faces.bounded_bigon_count()
    }
}
