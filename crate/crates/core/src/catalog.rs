//! Built-in example diagrams and braid-closure construction.

use serde::Serialize;

use crate::diagram::{parse_pd, Crossing, Diagram, DiagramError};

#[derive(Clone, Debug, Serialize)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    /// Where the PD code comes from.
    pub provenance: &'static str,
    pub pd: String,
    pub components: usize,
}

impl Fixture {
    pub fn diagram(&self) -> Diagram {
        parse_pd(&self.pd).expect("built-in fixture parses")
    }
}

const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";
const FIGURE_EIGHT: &str = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)";
const HOPF: &str = "X(1,4,2,3) X(3,2,4,1)";

/// Every built-in fixture, in a fixed order.
pub fn fixtures() -> Vec<Fixture> {
    let trefoil = parse_pd(TREFOIL).unwrap();
    let fig8 = parse_pd(FIGURE_EIGHT).unwrap();
    vec![
        Fixture {
            name: "trefoil",
            description: "trefoil (left-handed), standard 3-crossing diagram",
            provenance: "hand-built from the 3-crossing trefoil shadow",
            pd: TREFOIL.to_string(),
            components: 1,
        },
        Fixture {
            name: "unknot3",
            description: "trefoil-like unknot: trefoil shadow with crossing 0 switched",
            provenance: "trefoil fixture with one crossing flipped",
            pd: trefoil.flip_crossing(0).unwrap().to_pd().trim().to_string(),
            components: 1,
        },
        Fixture {
            name: "figure-eight",
            description: "figure-eight knot, alternating 4-crossing diagram",
            provenance: "KnotAtlas PD code of 4_1",
            pd: FIGURE_EIGHT.to_string(),
            components: 1,
        },
        Fixture {
            name: "unknot4",
            description: "figure-eight-like unknot: figure-eight shadow with crossing 0 switched",
            provenance: "figure-eight fixture with one crossing flipped",
            pd: fig8.flip_crossing(0).unwrap().to_pd().trim().to_string(),
            components: 1,
        },
        Fixture {
            name: "hopf",
            description: "Hopf link, 2-crossing diagram",
            provenance: "hand-built; closure of the 2-strand braid s1^2",
            pd: HOPF.to_string(),
            components: 2,
        },
        Fixture {
            name: "borromean",
            description: "Borromean rings, alternating 6-crossing diagram",
            provenance: "closure of the 3-strand braid (s1 s2^-1)^3",
            pd: braid_closure(3, &[1, -2, 1, -2, 1, -2])
                .unwrap()
                .to_pd()
                .trim()
                .to_string(),
            components: 3,
        },
        Fixture {
            name: "trefoil-shadow",
            description: "trefoil shadow; over/under scans start from the trefoil",
            provenance: "same PD as trefoil",
            pd: TREFOIL.to_string(),
            components: 1,
        },
        Fixture {
            name: "figure-eight-shadow",
            description: "figure-eight shadow; over/under scans start from the figure-eight",
            provenance: "same PD as figure-eight",
            pd: FIGURE_EIGHT.to_string(),
            components: 1,
        },
    ]
}

pub fn fixture(name: &str) -> Option<Fixture> {
    fixtures().into_iter().find(|f| f.name == name)
}

/// The six example diagrams, without the shadow aliases.
pub fn gallery() -> Vec<Fixture> {
    fixtures()
        .into_iter()
        .filter(|f| !f.name.ends_with("-shadow"))
        .collect()
}

/// Closure of a braid on `strands` strands. Letter `i > 0` is the positive
/// generator `s_i` between positions `i` and `i + 1`; `-i` is its inverse.
///
/// Strands run upward. Each generator should occur at least twice, otherwise
/// the closure has a removable kink.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Diagram, DiagramError> {
    let mut cur: Vec<u32> = (1..=strands as u32).collect();
    let mut next = strands as u32 + 1;
    let mut crossings = Vec::with_capacity(word.len());
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= strands {
            return Err(DiagramError::CrossingIndex {
                index: i,
                count: strands.saturating_sub(1),
            });
        }
        let (bl, br) = (cur[i - 1], cur[i]);
        let (tl, tr) = (next, next + 1);
        next += 2;
        // counterclockwise from the incoming under-strand
        let arcs = if g > 0 { [br, tr, tl, bl] } else { [bl, br, tr, tl] };
        crossings.push(Crossing { arcs });
        cur[i - 1] = tl;
        cur[i] = tr;
    }
    // glue the top of each position to its bottom
    for x in &mut crossings {
        for a in &mut x.arcs {
            if let Some(p) = cur.iter().position(|c| c == a) {
                *a = p as u32 + 1;
            }
        }
    }
    // renumber labels by first appearance
    let mut map = std::collections::HashMap::new();
    for x in &mut crossings {
        for a in &mut x.arcs {
            let n = map.len() as u32 + 1;
            *a = *map.entry(*a).or_insert(n);
        }
    }
    Diagram::new(crossings)
}

/// The (2, c) torus knot or link as the closure of `s1^c`.
pub fn torus_two(c: usize) -> Result<Diagram, DiagramError> {
    braid_closure(2, &vec![1; c])
}
