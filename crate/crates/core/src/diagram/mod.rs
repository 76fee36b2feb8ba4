//! Knot and link diagrams as 4-valent planar rotation systems.
//!
//! A crossing lists its four arc labels counterclockwise, starting with the
//! incoming under-strand. Slots 0 and 2 carry the under-strand, 1 and 3 the
//! over-strand. Quadrant `q` of a crossing is the corner between slots `q`
//! and `q + 1 (mod 4)`.

mod faces;
pub mod pd;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use faces::{Corner, Face, FaceSet, OuterFace};
pub use pd::{PdSyntaxError, TextPos};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [u32; 4],
}

/// A crossing-slot position: the end of an arc at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub pos: usize,
}

impl Slot {
    pub fn new(crossing: usize, pos: usize) -> Self {
        Slot { crossing, pos }
    }

    pub(crate) fn index(self) -> usize {
        4 * self.crossing + self.pos
    }

    /// The slot across the crossing on the same strand.
    pub fn opposite(self) -> Slot {
        Slot::new(self.crossing, (self.pos + 2) % 4)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("syntax error: {0}")]
    Syntax(#[from] PdSyntaxError),
    #[error("diagram has no crossings")]
    Empty,
    #[error("arc {label} appears {count} times, expected exactly 2")]
    ArcMultiplicity { label: u32, count: usize },
    #[error("crossing index {index} out of range (diagram has {count} crossings)")]
    CrossingIndex { index: usize, count: usize },
    #[error("face index {index} out of range (diagram has {count} faces)")]
    FaceIndex { index: usize, count: usize },
    #[error("invalid diagram: {0}")]
    Invalid(Issue),
}

/// A problem found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Issue {
    Empty,
    DuplicateArc {
        label: u32,
        count: usize,
    },
    /// A crossing joined to itself by an arc; removable by a Reidemeister I move.
    R1Loop {
        crossing: usize,
        label: u32,
    },
    NonPlanar {
        faces: usize,
        expected: usize,
    },
    Disconnected {
        pieces: usize,
    },
    InconsistentOrientation {
        crossing: usize,
    },
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Issue::Empty => write!(f, "diagram has no crossings"),
            Issue::DuplicateArc { label, count } => {
                write!(f, "duplicate arc: label {label} used {count} times")
            }
            Issue::R1Loop { crossing, label } => write!(
                f,
                "R1 loop: arc {label} joins crossing {crossing} to itself; \
                 remove the curl with a Reidemeister I move"
            ),
            Issue::NonPlanar { faces, expected } => {
                write!(f, "non-planar rotation system: {faces} faces, expected {expected}")
            }
            Issue::Disconnected { pieces } => {
                write!(f, "disconnected (split) diagram with {pieces} pieces")
            }
            Issue::InconsistentOrientation { crossing } => {
                write!(f, "inconsistent strand orientation at crossing {crossing}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub component_count: usize,
    pub crossings: usize,
    pub exterior: usize,
    pub bigons: usize,
    pub issues: Vec<Issue>,
}

/// One passage of an oriented strand through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pass {
    pub crossing: usize,
    pub entry: usize,
    pub exit: usize,
}

impl Pass {
    pub fn is_over(&self) -> bool {
        self.entry % 2 == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    partner: Vec<Slot>,
}

impl Diagram {
    /// Builds a diagram, checking that every arc label occurs exactly twice.
    pub fn new(crossings: Vec<Crossing>) -> Result<Self, DiagramError> {
        if crossings.is_empty() {
            return Err(DiagramError::Empty);
        }
        let mut ends: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for (p, &label) in x.arcs.iter().enumerate() {
                ends.entry(label).or_default().push(Slot::new(c, p));
            }
        }
        let mut partner = vec![Slot::new(0, 0); 4 * crossings.len()];
        for (&label, slots) in &ends {
            if slots.len() != 2 {
                return Err(DiagramError::ArcMultiplicity {
                    label,
                    count: slots.len(),
                });
            }
            partner[slots[0].index()] = slots[1];
            partner[slots[1].index()] = slots[0];
        }
        Ok(Diagram { crossings, partner })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn label(&self, s: Slot) -> u32 {
        self.crossings[s.crossing].arcs[s.pos]
    }

    /// The other end of the arc leaving `s`.
    pub fn partner(&self, s: Slot) -> Slot {
        self.partner[s.index()]
    }

    pub fn to_pd(&self) -> String {
        pd::write_crossings(&self.crossings)
    }

    /// Closed strands, each as the list of slots it enters crossings through.
    /// Orientation is arbitrary here; see [`Diagram::oriented_components`].
    fn strand_cycles(&self) -> Vec<Vec<Slot>> {
        let n = self.crossings.len();
        let mut seen = vec![false; 4 * n];
        let mut out = Vec::new();
        for i in 0..4 * n {
            if seen[i] {
                continue;
            }
            let start = Slot::new(i / 4, i % 4);
            let mut cycle = Vec::new();
            let mut s = start;
            loop {
                seen[s.index()] = true;
                seen[s.opposite().index()] = true;
                cycle.push(s);
                s = self.partner(s.opposite());
                if s == start {
                    break;
                }
            }
            out.push(cycle);
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.strand_cycles().len()
    }

    /// Components as oriented sequences of passes. Orientation follows the
    /// under-strand convention (slot 0 in, slot 2 out); a component that never
    /// passes under is oriented from the lowest-indexed crossing it meets,
    /// entering through slot 1.
    pub fn oriented_components(&self) -> Result<Vec<Vec<Pass>>, DiagramError> {
        let n = self.crossings.len();
        let mut seen = vec![false; 4 * n];
        let mut starts: Vec<Slot> = (0..n).map(|c| Slot::new(c, 0)).collect();
        starts.extend((0..n).map(|c| Slot::new(c, 1)));
        let mut out = Vec::new();
        for start in starts {
            if seen[start.index()] {
                continue;
            }
            let mut comp = Vec::new();
            let mut s = start;
            loop {
                if s.pos == 2 {
                    return Err(DiagramError::Invalid(Issue::InconsistentOrientation {
                        crossing: s.crossing,
                    }));
                }
                seen[s.index()] = true;
                seen[s.opposite().index()] = true;
                comp.push(Pass {
                    crossing: s.crossing,
                    entry: s.pos,
                    exit: s.opposite().pos,
                });
                s = self.partner(s.opposite());
                if s == start {
                    break;
                }
                if seen[s.index()] {
                    return Err(DiagramError::Invalid(Issue::InconsistentOrientation {
                        crossing: s.crossing,
                    }));
                }
            }
            out.push(comp);
        }
        Ok(out)
    }

    /// +1 for a right-handed crossing (over-strand runs slot 3 to slot 1), -1 otherwise.
    pub fn crossing_signs(&self) -> Result<Vec<i8>, DiagramError> {
        let mut signs = vec![0i8; self.crossings.len()];
        for comp in self.oriented_components()? {
            for p in comp.iter().filter(|p| p.is_over()) {
                signs[p.crossing] = if p.entry == 3 { 1 } else { -1 };
            }
        }
        Ok(signs)
    }

    /// Per crossing, the slot where quadrant numbering would start if it
    /// ignored over/under. Flipping crossings rotates their slots and this
    /// rotates with them, so `(q + 4 - base) % 4` names the same corner of
    /// the shadow in a diagram and its mirror.
    ///
    /// Where both strands belong to components that pass over and under
    /// somewhere, both orientations are fixed by the slot convention and the
    /// base is the corner between the two incoming ends. Otherwise it is the
    /// corner that starts at the smallest arc label.
    pub fn corner_base(&self) -> Vec<usize> {
        let by_label = |x: &Crossing| (0..4).min_by_key(|&i| x.arcs[i]).unwrap();
        let Ok(comps) = self.oriented_components() else {
            return self.crossings.iter().map(by_label).collect();
        };
        let n = self.crossings.len();
        let (mut under, mut over, mut sign) = (vec![0; n], vec![0; n], vec![0i8; n]);
        let mut both = Vec::with_capacity(comps.len());
        for (i, comp) in comps.iter().enumerate() {
            both.push(comp.iter().any(|p| p.is_over()) && comp.iter().any(|p| !p.is_over()));
            for p in comp {
                if p.is_over() {
                    over[p.crossing] = i;
                    sign[p.crossing] = if p.entry == 3 { 1 } else { -1 };
                } else {
                    under[p.crossing] = i;
                }
            }
        }
        (0..n)
            .map(|c| match (both[under[c]] && both[over[c]], sign[c] > 0) {
                (true, true) => 3,
                (true, false) => 0,
                (false, _) => by_label(&self.crossings[c]),
            })
            .collect()
    }

    /// Switches over and under at crossing `i`.
    ///
    /// The labels are rotated by one position so that slot 0 is again the
    /// incoming end of the new under-strand. Applying it twice restores the
    /// original crossing.
    pub fn flip_crossing(&self, i: usize) -> Result<Diagram, DiagramError> {
        let count = self.crossings.len();
        if i >= count {
            return Err(DiagramError::CrossingIndex { index: i, count });
        }
        self.flip_where(|c| c == i)
    }

    /// Flips every crossing in the bitmask (bit `i` set means crossing `i`).
    pub fn flip_mask(&self, mask: u64) -> Result<Diagram, DiagramError> {
        self.flip_where(|c| c < 64 && mask >> c & 1 == 1)
    }

    /// The mirror image: every crossing flipped.
    pub fn mirror(&self) -> Result<Diagram, DiagramError> {
        self.flip_where(|_| true)
    }

    /// All flips at once, with every orientation read from `self`. Flipping
    /// one crossing at a time could leave an intermediate component with no
    /// under-pass and re-orient it.
    fn flip_where(&self, pick: impl Fn(usize) -> bool) -> Result<Diagram, DiagramError> {
        let signs = self.crossing_signs()?;
        let mut crossings = self.crossings.clone();
        for (i, x) in crossings.iter_mut().enumerate() {
            if pick(i) {
                let [a, b, c, d] = x.arcs;
                x.arcs = if signs[i] > 0 { [d, a, b, c] } else { [b, c, d, a] };
            }
        }
        Diagram::new(crossings)
    }

    pub fn is_alternating(&self) -> bool {
        self.strand_cycles().iter().all(|cycle| {
            cycle.len() % 2 == 0
                && (0..cycle.len()).all(|k| {
                    let a = cycle[k].pos % 2;
                    let b = cycle[(k + 1) % cycle.len()].pos % 2;
                    a != b
                })
        })
    }

    fn connected_pieces(&self) -> usize {
        let n = self.crossings.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for i in 0..4 * n {
            let a = find(&mut parent, i / 4);
            let b = find(&mut parent, self.partner[i].crossing);
            parent[a] = b;
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Structural checks beyond arc multiplicity, as a list of issues.
    fn issues(&self) -> Vec<Issue> {
        let mut issues = Vec::new();
        for (c, x) in self.crossings.iter().enumerate() {
            let mut labels = BTreeSet::new();
            for (p, &label) in x.arcs.iter().enumerate() {
                if self.partner(Slot::new(c, p)).crossing == c && labels.insert(label) {
                    issues.push(Issue::R1Loop { crossing: c, label });
                }
            }
        }
        let pieces = self.connected_pieces();
        if pieces > 1 {
            issues.push(Issue::Disconnected { pieces });
        } else {
            let faces = faces::trace_faces(self).len();
            let expected = self.crossings.len() + 2;
            if faces != expected {
                issues.push(Issue::NonPlanar { faces, expected });
            }
        }
        if let Err(DiagramError::Invalid(issue)) = self.oriented_components() {
            issues.push(issue);
        }
        issues
    }

    /// Fails with the first validation issue, if any.
    pub fn ensure_valid(&self) -> Result<(), DiagramError> {
        match self.issues().into_iter().next() {
            Some(issue) => Err(DiagramError::Invalid(issue)),
            None => Ok(()),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        let issues = self.issues();
        let (exterior, bigons) = if issues.is_empty() {
            let fs = self.faces(OuterFace::Longest).expect("validated");
            (fs.exterior_count(), fs.bounded_bigon_count())
        } else {
            (0, 0)
        };
        ValidationReport {
            ok: issues.is_empty(),
            component_count: self.component_count(),
            crossings: self.crossings.len(),
            exterior,
            bigons,
            issues,
        }
    }

    pub fn faces(&self, outer: OuterFace) -> Result<FaceSet, DiagramError> {
        FaceSet::new(self, outer)
    }
}

/// Parses PD text. Syntax errors carry positions; every arc label must occur
/// exactly twice.
pub fn parse_pd(text: &str) -> Result<Diagram, DiagramError> {
    Diagram::new(pd::parse_crossings(text)?)
}

/// Validates raw crossings, including ones whose arc labels are malformed.
pub fn validate(crossings: &[Crossing]) -> ValidationReport {
    if crossings.is_empty() {
        return ValidationReport {
            ok: false,
            component_count: 0,
            crossings: 0,
            exterior: 0,
            bigons: 0,
            issues: vec![Issue::Empty],
        };
    }
    match Diagram::new(crossings.to_vec()) {
        Ok(d) => d.validate(),
        Err(_) => {
            let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
            for x in crossings {
                for &l in &x.arcs {
                    *counts.entry(l).or_default() += 1;
                }
            }
            let issues = counts
                .into_iter()
                .filter(|&(_, n)| n != 2)
                .map(|(label, count)| Issue::DuplicateArc { label, count })
                .collect();
            ValidationReport {
                ok: false,
                component_count: 0,
                crossings: crossings.len(),
                exterior: 0,
                bigons: 0,
                issues,
            }
        }
    }
}
