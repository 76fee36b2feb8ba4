use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::word::{Letter, Word};

/// Where a generator came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GenSource {
    /// A medial edge outside the spanning tree.
    MedialEdge {
        edge: usize,
    },
    /// A strand (over-arc) of the diagram.
    Strand {
        index: usize,
    },
    /// Free generator for an extra connected component of a skein graph.
    Split {
        upper: bool,
        index: usize,
    },
    Parsed,
}

/// Where a relator came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Origin {
    UpperFace { face: usize },
    LowerFace { face: usize },
    WirtingerCrossing { crossing: usize },
    Parsed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub source: GenSource,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relator {
    pub word: Word,
    pub origin: Origin,
}

/// A finite presentation: generators and relators over them.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Relator>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationParseError {
    #[error("line {line}: expected 'gens:' header")]
    MissingHeader { line: usize },
    #[error("line {line}: unknown generator '{name}'")]
    UnknownGenerator { line: usize, name: String },
    #[error("line {line}: duplicate generator '{name}'")]
    DuplicateGenerator { line: usize, name: String },
}

/// `a, b, ..., z, aa, ab, ...`
pub fn letter_name(mut i: usize) -> String {
    let mut s = Vec::new();
    loop {
        s.push(b'a' + (i % 26) as u8);
        if i < 26 {
            break;
        }
        i = i / 26 - 1;
    }
    s.reverse();
    String::from_utf8(s).unwrap()
}

impl Presentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn relator_count(&self) -> usize {
        self.relators.len()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn lengths(&self) -> Vec<usize> {
        self.relators.iter().map(|r| r.word.len()).collect()
    }

    /// Free of relators.
    pub fn is_free(&self) -> bool {
        self.relators.is_empty()
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.relators
            .iter()
            .map(|r| (0..self.generators.len()).map(|g| r.word.exponent_sum(g)).collect())
            .collect()
    }

    /// Text form: `gens: a b c` then one relator per line, `'` for inverses,
    /// `1` for the empty word.
    pub fn to_text(&self) -> String {
        let names = self.names();
        let mut s = String::from("gens:");
        for n in &names {
            s.push(' ');
            s.push_str(n);
        }
        s.push('\n');
        for r in &self.relators {
            let _ = writeln!(s, "{}", r.word.display(&names));
        }
        s
    }

    pub fn parse_text(text: &str) -> Result<Presentation, PresentationParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, header) = lines.next().ok_or(PresentationParseError::MissingHeader { line: 1 })?;
        let rest = header
            .strip_prefix("gens:")
            .ok_or(PresentationParseError::MissingHeader { line })?;
        let mut p = Presentation::default();
        for name in rest.split_whitespace() {
            if p.generators.iter().any(|g| g.name == name) {
                return Err(PresentationParseError::DuplicateGenerator {
                    line,
                    name: name.to_string(),
                });
            }
            p.generators.push(Generator {
                name: name.to_string(),
                source: GenSource::Parsed,
            });
        }
        for (line, l) in lines {
            let mut letters = Vec::new();
            for tok in l.split_whitespace() {
                if tok == "1" {
                    continue;
                }
                let (name, inverse) = match tok.strip_suffix('\'') {
                    Some(n) => (n, true),
                    None => (tok, false),
                };
                let gen = p.generators.iter().position(|g| g.name == name).ok_or_else(|| {
                    PresentationParseError::UnknownGenerator {
                        line,
                        name: name.to_string(),
                    }
                })?;
                letters.push(Letter::new(gen, inverse));
            }
            p.relators.push(Relator {
                word: Word::new(letters),
                origin: Origin::Parsed,
            });
        }
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let names = self.names();
        serde_json::json!({
            "generators": names,
            "relators": self.relators.iter().map(|r| {
                r.word.letters().iter().map(|l| {
                    let mut n = names[l.gen].clone();
                    if l.inverse { n.push('\''); }
                    n
                }).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "origins": self.relators.iter().map(|r| r.origin).collect::<Vec<_>>(),
            "sources": self.generators.iter().map(|g| g.source).collect::<Vec<_>>(),
        })
    }
}
