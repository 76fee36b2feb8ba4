use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::presentation::Presentation;
use super::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TietzeLimits {
    /// Largest total relator length allowed after a substitution.
    pub max_letters: usize,
    /// Upper bound on the number of moves.
    pub max_steps: usize,
}

impl Default for TietzeLimits {
    fn default() -> Self {
        TietzeLimits {
            max_letters: 1_000_000,
            max_steps: usize::MAX,
        }
    }
}

/// One move of the cascade. Generator and relator indices refer to the
/// presentation as it stood just before the move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "kebab-case")]
pub enum TietzeStep {
    DropEmpty {
        relator: usize,
    },
    DropDuplicate {
        relator: usize,
        of: usize,
    },
    /// A one-letter relator kills its generator.
    Kill {
        generator: String,
        relator: usize,
    },
    /// A two-letter relator identifies two generators.
    Identify {
        generator: String,
        by: String,
        relator: usize,
    },
    /// The generator occurs once in the relator; solve and substitute.
    Eliminate {
        generator: String,
        relator: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplified {
    pub presentation: Presentation,
    /// False when a limit stopped the cascade before a fixpoint.
    pub is_final: bool,
    pub steps: Vec<TietzeStep>,
}

/// Runs the deterministic cascade to a fixpoint or until a limit is hit.
pub fn tietze_simplify(p: &Presentation, limits: TietzeLimits) -> Simplified {
    run(p, limits, None)
}

/// As [`tietze_simplify`], calling `observe` with each move and the
/// presentation that results from it.
pub fn tietze_simplify_observed(
    p: &Presentation,
    limits: TietzeLimits,
    observe: &mut dyn FnMut(&TietzeStep, &Presentation),
) -> Simplified {
    run(p, limits, Some(observe))
}

struct State {
    p: Presentation,
}

impl State {
    fn total(&self) -> usize {
        self.p.relators.iter().map(|r| r.word.len()).sum()
    }

    /// Substitutes `by` for `gen` in every relator, then deletes `gen`.
    fn eliminate(&mut self, gen: usize, by: &Word) {
        let shift = |g: usize| if g > gen { g - 1 } else { g };
        for r in &mut self.p.relators {
            r.word = r.word.substitute(gen, by).cyclically_reduced().map_gens(shift);
        }
        self.p.generators.remove(gen);
    }

    fn substitution_cost(&self, gen: usize, by: &Word) -> usize {
        self.p
            .relators
            .iter()
            .map(|r| r.word.len() + r.word.occurrences(gen) * by.len().saturating_sub(1))
            .sum()
    }

    /// Next move in priority order, or `None` at a fixpoint.
    fn next_move(&self) -> Option<(TietzeStep, Option<(usize, Word)>)> {
        let rel = &self.p.relators;
        let name = |g: usize| self.p.generators[g].name.clone();
        if let Some(i) = rel.iter().position(|r| r.word.is_empty()) {
            return Some((TietzeStep::DropEmpty { relator: i }, None));
        }
        let mut seen = HashSet::new();
        let keys: Vec<Word> = rel.iter().map(|r| r.word.cyclic_key()).collect();
        for (i, k) in keys.iter().enumerate() {
            if !seen.insert(k) {
                let of = keys.iter().position(|x| x == k).unwrap();
                return Some((TietzeStep::DropDuplicate { relator: i, of }, None));
            }
        }
        // length one: lowest generator wins
        let kill = rel
            .iter()
            .enumerate()
            .filter(|(_, r)| r.word.len() == 1)
            .min_by_key(|(i, r)| (r.word.letters()[0].gen, *i));
        if let Some((i, r)) = kill {
            let g = r.word.letters()[0].gen;
            return Some((
                TietzeStep::Kill {
                    generator: name(g),
                    relator: i,
                },
                Some((g, Word::empty())),
            ));
        }
        // length two over distinct generators: drop the higher one
        let pair = rel
            .iter()
            .enumerate()
            .filter_map(|(i, r)| {
                let l = r.word.letters();
                (l.len() == 2 && l[0].gen != l[1].gen).then(|| (l[0].gen.max(l[1].gen), l[0].gen.min(l[1].gen), i))
            })
            .min();
        if let Some((g, h, i)) = pair {
            let by = rel[i].word.solve_for(g).unwrap();
            return Some((
                TietzeStep::Identify {
                    generator: name(g),
                    by: name(h),
                    relator: i,
                },
                Some((g, by)),
            ));
        }
        // single occurrence: least growth of the total length, then the
        // shortest relator, then the lowest generator
        let total: Vec<usize> = (0..self.p.generators.len())
            .map(|g| rel.iter().map(|r| r.word.occurrences(g)).sum())
            .collect();
        let mut best: Option<(isize, usize, usize, usize)> = None;
        for (i, r) in rel.iter().enumerate() {
            let len = r.word.len() as isize;
            for g in 0..self.p.generators.len() {
                if r.word.occurrences(g) != 1 {
                    continue;
                }
                let growth = (total[g] as isize - 1) * (len - 2) - len;
                let key = (growth, r.word.len(), g, i);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, _, g, i)| {
            (
                TietzeStep::Eliminate {
                    generator: name(g),
                    relator: i,
                },
                Some((g, rel[i].word.solve_for(g).unwrap())),
            )
        })
    }
}

fn run(
    p: &Presentation,
    limits: TietzeLimits,
    mut observe: Option<&mut dyn FnMut(&TietzeStep, &Presentation)>,
) -> Simplified {
    let mut s = State { p: p.clone() };
    for r in &mut s.p.relators {
        r.word = r.word.cyclically_reduced();
    }
    let mut steps = Vec::new();
    let mut is_final = true;
    while let Some((step, sub)) = s.next_move() {
        if steps.len() >= limits.max_steps {
            is_final = false;
            break;
        }
        match (&step, sub) {
            (TietzeStep::DropEmpty { relator }, _) | (TietzeStep::DropDuplicate { relator, .. }, _) => {
                s.p.relators.remove(*relator);
            }
            (_, Some((g, by))) => {
                if s.substitution_cost(g, &by) > limits.max_letters {
                    is_final = false;
                    break;
                }
                s.eliminate(g, &by);
            }
            (_, None) => unreachable!("substituting moves carry a word"),
        }
        debug_assert!(s.total() <= limits.max_letters);
        if let Some(f) = observe.as_mut() {
            f(&step, &s.p);
        }
        steps.push(step);
    }
    Simplified {
        presentation: s.p,
        is_final,
        steps,
    }
}

/// Whether the single relator of `p` is `x y x y' x' y'` up to renaming the
/// two generators, inverting the relator and rotating it.
pub fn is_braid_relation(p: &Presentation) -> bool {
    if p.generator_count() != 2 || p.relator_count() != 1 {
        return false;
    }
    let w = &p.relators[0].word;
    [(0, 1), (1, 0)].iter().any(|&(x, y)| {
        let target = Word::new(
            [(x, false), (y, false), (x, false), (y, true), (x, true), (y, true)]
                .map(|(g, inv)| super::word::Letter::new(g, inv)),
        );
        target.cyclic_key() == w.cyclic_key()
    })
}
