use std::fmt;

/// A generator raised to the power +1 or -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Letter::new(gen, false)
    }

    pub fn neg(gen: usize) -> Self {
        Letter::new(gen, true)
    }

    pub fn inv(self) -> Self {
        Letter::new(self.gen, !self.inverse)
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// A freely reduced word in the generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Strips inverse letter pairs from the two ends.
    pub fn cyclically_reduced(&self) -> Word {
        let w = &self.0;
        let mut lo = 0;
        let mut hi = w.len();
        while hi - lo >= 2 && w[lo] == w[hi - 1].inv() {
            lo += 1;
            hi -= 1;
        }
        Word(w[lo..hi].to_vec())
    }

    pub fn rotated(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Smallest rotation of the word or of its inverse. Two cyclically reduced
    /// relators have the same normal closure shape iff their keys agree.
    pub fn cyclic_key(&self) -> Word {
        let inv = self.inverse();
        (0..self.0.len().max(1))
            .flat_map(|k| [self.rotated(k), inv.rotated(k)])
            .min()
            .unwrap_or_default()
    }

    pub fn occurrences(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }

    pub fn exponent_sum(&self, gen: usize) -> i64 {
        self.0.iter().filter(|l| l.gen == gen).map(|l| l.exponent()).sum()
    }

    /// Replaces every occurrence of `gen` by `by` (and its inverse by `by`'s inverse).
    pub fn substitute(&self, gen: usize, by: &Word) -> Word {
        let inv = by.inverse();
        Word::new(self.0.iter().flat_map(|&l| {
            if l.gen != gen {
                vec![l]
            } else if l.inverse {
                inv.0.clone()
            } else {
                by.0.clone()
            }
        }))
    }

    pub fn map_gens(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::new(self.0.iter().map(|l| Letter::new(f(l.gen), l.inverse)))
    }

    /// Solves `self = 1` for the single occurrence of `gen`.
    ///
    /// Writing the word as `u g^e v`, returns `g = (v u)^(-e)` read as
    /// `u^-1 v^-1` for `e = 1` and `v u` for `e = -1`.
    pub fn solve_for(&self, gen: usize) -> Option<Word> {
        if self.occurrences(gen) != 1 {
            return None;
        }
        let at = self.0.iter().position(|l| l.gen == gen)?;
        let u = Word(self.0[..at].to_vec());
        let v = Word(self.0[at + 1..].to_vec());
        let vu = v.concat(&u);
        Some(if self.0[at].inverse { vu } else { vu.inverse() })
    }

    /// Renders with the given generator names, `'` marking inverses.
    pub fn display<'a>(&'a self, names: &'a [String]) -> WordDisplay<'a> {
        WordDisplay { word: self, names }
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word::new(iter)
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters().iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.names[l.gen])?;
            if l.inverse {
                write!(f, "'")?;
            }
        }
        Ok(())
    }
}
