use serde::{Deserialize, Serialize};

use super::{Diagram, DiagramError, Issue, Slot};

/// A corner of a face: quadrant `quadrant` of crossing `crossing`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub crossing: usize,
    pub quadrant: usize,
}

/// A face of the diagram, as the cyclic list of half-edges leaving crossings
/// along its boundary. `corners[i]` is the corner reached after `darts[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Slot>,
    pub corners: Vec<Corner>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }
}

/// How to pick the unbounded face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum OuterFace {
    /// Longest boundary; ties go to the smallest face index.
    #[default]
    Longest,
    Index(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub faces: Vec<Face>,
    pub outer: usize,
    corner_face: Vec<usize>,
}

/// Face traversal: after arriving at a crossing through slot `s`, leave
/// through slot `s + 1`. The corner passed is quadrant `s`.
pub(super) fn trace_faces(d: &Diagram) -> Vec<Face> {
    let n = d.crossing_count();
    let mut seen = vec![false; 4 * n];
    let mut faces = Vec::new();
    // scan corners in shadow order so face numbering survives crossing flips
    let base = d.corner_base();
    for i in 0..4 * n {
        let start = Slot::new(i / 4, (i + base[i / 4]) % 4);
        if seen[start.index()] {
            continue;
        }
        let mut face = Face {
            darts: Vec::new(),
            corners: Vec::new(),
        };
        let mut dart = start;
        loop {
            seen[dart.index()] = true;
            face.darts.push(dart);
            let arrive = d.partner(dart);
            face.corners.push(Corner {
                crossing: arrive.crossing,
                quadrant: arrive.pos,
            });
            dart = Slot::new(arrive.crossing, (arrive.pos + 1) % 4);
            if dart == start {
                break;
            }
        }
        faces.push(face);
    }
    faces
}

impl FaceSet {
    pub fn new(d: &Diagram, policy: OuterFace) -> Result<Self, DiagramError> {
        let faces = trace_faces(d);
        let expected = d.crossing_count() + 2;
        if faces.len() != expected {
            return Err(DiagramError::Invalid(Issue::NonPlanar {
                faces: faces.len(),
                expected,
            }));
        }
        let outer = match policy {
            OuterFace::Index(i) if i < faces.len() => i,
            OuterFace::Index(i) => {
                return Err(DiagramError::FaceIndex {
                    index: i,
                    count: faces.len(),
                })
            }
            OuterFace::Longest => {
                let mut best = 0;
                for (i, f) in faces.iter().enumerate() {
                    if f.len() > faces[best].len() {
                        best = i;
                    }
                }
                best
            }
        };
        let mut corner_face = vec![usize::MAX; 4 * d.crossing_count()];
        for (i, f) in faces.iter().enumerate() {
            for c in &f.corners {
                corner_face[4 * c.crossing + c.quadrant] = i;
            }
        }
        Ok(FaceSet {
            faces,
            outer,
            corner_face,
        })
    }

    pub fn face_of(&self, c: Corner) -> usize {
        self.corner_face[4 * c.crossing + c.quadrant]
    }

    pub fn outer_face(&self) -> &Face {
        &self.faces[self.outer]
    }

    /// Number of corners on the unbounded face.
    pub fn exterior_count(&self) -> usize {
        self.outer_face().len()
    }

    /// Bounded faces with exactly two corners.
    pub fn bounded_bigon_count(&self) -> usize {
        self.bounded().filter(|(_, f)| f.len() == 2).count()
    }

    /// Bounded faces with their face indices, in index order.
    pub fn bounded(&self) -> impl Iterator<Item = (usize, &Face)> {
        self.faces.iter().enumerate().filter(move |(i, _)| *i != self.outer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;

    fn sizes(text: &str) -> Vec<usize> {
        let d = parse_pd(text).unwrap();
        let fs = d.faces(OuterFace::Longest).unwrap();
        let mut s: Vec<usize> = fs.faces.iter().map(|f| f.len()).collect();
        s.sort();
        s
    }

    #[test]
    fn trefoil_faces() {
        assert_eq!(sizes("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"), vec![2, 2, 2, 3, 3]);
    }

    #[test]
    fn hopf_faces() {
        assert_eq!(sizes("X(1,4,2,3) X(3,2,4,1)"), vec![2, 2, 2, 2]);
    }

    #[test]
    fn figure_eight_faces() {
        let s = sizes("X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)");
        assert_eq!(s.len(), 6);
        assert_eq!(s.iter().sum::<usize>(), 16);
    }

    #[test]
    fn every_dart_once() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let fs = d.faces(OuterFace::Longest).unwrap();
        let mut all: Vec<Slot> = fs.faces.iter().flat_map(|f| f.darts.clone()).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 12);
    }

    #[test]
    fn explicit_outer() {
        let d = parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)").unwrap();
        let fs = d.faces(OuterFace::Index(1)).unwrap();
        assert_eq!(fs.outer, 1);
        assert!(d.faces(OuterFace::Index(9)).is_err());
    }
}
