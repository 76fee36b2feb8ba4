//! Group presentations read off the template, and the classical Wirtinger one.

mod abelian;
mod presentation;
mod tietze;
mod tree;
mod wirtinger;
mod word;

pub use abelian::{abelianization, smith_diagonal, AbelianInvariants};
pub use tietze::{is_braid_relation, tietze_simplify, tietze_simplify_observed, Simplified, TietzeLimits, TietzeStep};
pub use wirtinger::{strands, wirtinger_presentation, wirtinger_relations, Strands};

pub use presentation::{letter_name, GenSource, Generator, Origin, Presentation, PresentationParseError, Relator};
pub use tree::{spanning_tree, SpanningTree, TreePolicy};
pub use word::{Letter, Word, WordDisplay};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};
use crate::medial::{MedialGraph, Side, SkeinGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FundGroupError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("component {component} never passes under a crossing; use the template presentation instead")]
    NoUnderpass { component: usize },
    #[error("certification is defined for knots only, diagram has {components} components")]
    NotAKnot { components: usize },
    #[error("complexity is undefined: every relator is empty")]
    UndefinedComplexity,
}

/// Raw presentation: one generator per medial edge outside `tree`, one
/// relator per bounded face of the upper graph, then the lower graph.
///
/// If a skein graph is disconnected, each extra component contributes a free
/// generator of its own.
pub fn template_presentation(
    m: &MedialGraph,
    upper: &SkeinGraph,
    lower: &SkeinGraph,
    tree: &SpanningTree,
) -> Presentation {
    let cotree = tree.cotree();
    let mut gen_of = vec![usize::MAX; m.edges.len()];
    let mut generators = Vec::with_capacity(cotree.len());
    for &e in &cotree {
        gen_of[e] = generators.len();
        generators.push(Generator {
            name: letter_name(generators.len()),
            source: GenSource::MedialEdge { edge: e },
        });
    }
    let mut relators = Vec::new();
    for g in [upper, lower] {
        for i in 0..g.faces.len() {
            let word: Word = g
                .medial_walk(i)
                .into_iter()
                .filter(|s| !tree.contains(s.edge))
                .map(|s| Letter::new(gen_of[s.edge], !s.forward))
                .collect();
            let word = word.cyclically_reduced();
            if word.is_empty() {
                log::warn!("{:?} face {i} gives an empty relator", g.side);
            }
            relators.push(Relator {
                word,
                origin: match g.side {
                    Side::Upper => Origin::UpperFace { face: i },
                    Side::Lower => Origin::LowerFace { face: i },
                },
            });
        }
    }
    for g in [upper, lower] {
        for index in 1..g.components {
            generators.push(Generator {
                name: letter_name(generators.len()),
                source: GenSource::Split {
                    upper: g.side == Side::Upper,
                    index,
                },
            });
        }
    }
    Presentation { generators, relators }
}

/// Relator-length statistics of a presentation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexityReport {
    /// All relator lengths, ascending.
    pub lengths: Vec<usize>,
    /// Geometric mean over the nonzero lengths.
    pub geometric_mean: f64,
    /// Arithmetic mean over the nonzero lengths.
    pub arithmetic_mean: f64,
    pub zero_length: usize,
}

/// Presentation complexity: the geometric mean of relator lengths. Meant for
/// the raw template presentation. Empty relators are left out of both means.
pub fn complexity(p: &Presentation) -> Result<ComplexityReport, FundGroupError> {
    let mut lengths = p.lengths();
    lengths.sort_unstable();
    let nonzero: Vec<f64> = lengths.iter().filter(|&&l| l > 0).map(|&l| l as f64).collect();
    if nonzero.is_empty() {
        return Err(FundGroupError::UndefinedComplexity);
    }
    let zero_length = lengths.len() - nonzero.len();
    if zero_length > 0 {
        log::warn!("{zero_length} empty relators left out of the complexity");
    }
    let n = nonzero.len() as f64;
    // all lengths equal: return it exactly rather than through exp(ln)
    let geometric_mean = if nonzero.iter().all(|&x| x == nonzero[0]) {
        nonzero[0]
    } else {
        (nonzero.iter().map(|x| x.ln()).sum::<f64>() / n).exp()
    };
    Ok(ComplexityReport {
        lengths,
        geometric_mean,
        arithmetic_mean: nonzero.iter().sum::<f64>() / n,
        zero_length,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// The cascade reached a free group of rank one, so the group is Z.
    Certified,
    /// The cascade stopped elsewhere. This never means knotted.
    Inconclusive {
        generators: usize,
        relators: usize,
        budget_exhausted: bool,
    },
}

/// Runs the cascade on `p` and reports whether it reached `< x | >`.
pub fn certify_presentation(p: &Presentation, limits: TietzeLimits) -> (Verdict, Simplified) {
    let s = tietze_simplify(p, limits);
    let q = &s.presentation;
    let v = if s.is_final && q.is_free() && q.generator_count() == 1 {
        Verdict::Certified
    } else {
        Verdict::Inconclusive {
            generators: q.generator_count(),
            relators: q.relator_count(),
            budget_exhausted: !s.is_final,
        }
    };
    (v, s)
}

/// Unknot certificate from the raw template presentation of a knot diagram.
pub fn certify_unknot(d: &Diagram, p: &Presentation, limits: TietzeLimits) -> Result<Verdict, FundGroupError> {
    let components = d.component_count();
    if components != 1 {
        return Err(FundGroupError::NotAKnot { components });
    }
    Ok(certify_presentation(p, limits).0)
}
