use crate::diagram::Diagram;

use super::presentation::{letter_name, GenSource, Generator, Origin, Presentation, Relator};
use super::word::{Letter, Word};
use super::FundGroupError;

/// Over-arcs of a diagram. An over-arc runs from one underpass to the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strands {
    pub count: usize,
    /// Per crossing: (incoming under arc, outgoing under arc, over arc).
    pub at_crossing: Vec<(usize, usize, usize)>,
}

pub fn strands(d: &Diagram) -> Result<Strands, FundGroupError> {
    let comps = d.oriented_components()?;
    let n = d.crossing_count();
    let mut at = vec![(usize::MAX, usize::MAX, usize::MAX); n];
    let mut count = 0;
    for (ci, comp) in comps.iter().enumerate() {
        let first_under = comp
            .iter()
            .position(|p| !p.is_over())
            .ok_or(FundGroupError::NoUnderpass { component: ci })?;
        let len = comp.len();
        let base = count;
        let arcs = comp.iter().filter(|p| !p.is_over()).count();
        // walk starting just after the first underpass; arc index grows at each underpass
        let mut arc = base;
        for k in 1..=len {
            let p = comp[(first_under + k) % len];
            if p.is_over() {
                at[p.crossing].2 = arc;
            } else {
                let next = if k == len { base } else { arc + 1 };
                at[p.crossing].0 = arc;
                at[p.crossing].1 = next;
                arc = next;
            }
        }
        count += arcs;
    }
    Ok(Strands { count, at_crossing: at })
}

/// The crossing relations as written, before free reduction:
/// `x_k x_i x_k' x_j'` at a positive crossing, `x_k' x_i x_k x_j'` at a negative
/// one, where `x_k` is the over-arc and `x_i`, `x_j` the incoming and outgoing
/// under-arcs. When the over-arc is also one of the under-arcs the relation
/// reduces to two letters.
pub fn wirtinger_relations(d: &Diagram) -> Result<(Strands, Vec<[Letter; 4]>), FundGroupError> {
    let s = strands(d)?;
    let signs = d.crossing_signs()?;
    let rels = s
        .at_crossing
        .iter()
        .zip(&signs)
        .map(|(&(i, j, k), &sign)| {
            let pos = sign > 0;
            [
                Letter::new(k, !pos),
                Letter::pos(i),
                Letter::new(k, pos),
                Letter::neg(j),
            ]
        })
        .collect();
    Ok((s, rels))
}

/// One generator per over-arc and one relator per crossing; see
/// [`wirtinger_relations`].
pub fn wirtinger_presentation(d: &Diagram) -> Result<Presentation, FundGroupError> {
    let (s, rels) = wirtinger_relations(d)?;
    let generators = (0..s.count)
        .map(|index| Generator {
            name: letter_name(index),
            source: GenSource::Strand { index },
        })
        .collect();
    let relators = rels
        .into_iter()
        .enumerate()
        .map(|(crossing, letters)| Relator {
            word: Word::new(letters).cyclically_reduced(),
            origin: Origin::WirtingerCrossing { crossing },
        })
        .collect();
    Ok(Presentation { generators, relators })
}
