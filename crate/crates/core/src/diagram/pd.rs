//! PD ("planar diagram") text format.
//!
//! Terms look like `X(a,b,c,d)`: four positive arc labels, comma separated,
//! no spaces inside the parentheses. Terms are separated by whitespace and
//! `#` starts a comment that runs to the end of the line.

use std::fmt;

use thiserror::Error;

use super::Crossing;

/// Position of a syntax problem in the input, 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TextPos {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for TextPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PdSyntaxError {
    #[error("{pos}: expected {expected}, found {found}")]
    Unexpected {
        pos: TextPos,
        expected: &'static str,
        found: String,
    },
    #[error("{pos}: arc label must be a positive integer")]
    BadLabel { pos: TextPos },
    #[error("{pos}: crossing has {count} slots, expected 4")]
    SlotCount { pos: TextPos, count: usize },
}

struct Cursor<'a> {
    text: &'a str,
    bytes: &'a [u8],
    at: usize,
}

impl<'a> Cursor<'a> {
    fn pos(&self) -> TextPos {
        let before = &self.text[..self.at];
        let line = before.matches('\n').count() + 1;
        let column = match before.rfind('\n') {
            Some(nl) => self.at - nl,
            None => self.at + 1,
        };
        TextPos {
            offset: self.at,
            line,
            column,
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.at).copied()
    }

    fn found(&self) -> String {
        match self.text[self.at..].chars().next() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        }
    }

    fn skip_blank(&mut self) {
        while let Some(b) = self.peek() {
            if b == b'#' {
                while let Some(b) = self.peek() {
                    if b == b'\n' {
                        break;
                    }
                    self.at += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.at += 1;
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: u8, expected: &'static str) -> Result<(), PdSyntaxError> {
        if self.peek() == Some(want) {
            self.at += 1;
            Ok(())
        } else {
            Err(PdSyntaxError::Unexpected {
                pos: self.pos(),
                expected,
                found: self.found(),
            })
        }
    }

    fn label(&mut self) -> Result<u32, PdSyntaxError> {
        let start = self.at;
        let pos = self.pos();
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.at += 1;
        }
        if start == self.at {
            return Err(PdSyntaxError::Unexpected {
                pos,
                expected: "arc label",
                found: self.found(),
            });
        }
        match self.text[start..self.at].parse::<u32>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(PdSyntaxError::BadLabel { pos }),
        }
    }
}

/// Parses PD text into raw crossings. Arc multiplicities are not checked here.
pub fn parse_crossings(text: &str) -> Result<Vec<Crossing>, PdSyntaxError> {
    let mut cur = Cursor {
        text,
        bytes: text.as_bytes(),
        at: 0,
    };
    let mut out = Vec::new();
    loop {
        cur.skip_blank();
        if cur.peek().is_none() {
            break;
        }
        let term = cur.pos();
        cur.expect(b'X', "'X'")?;
        cur.expect(b'(', "'('")?;
        let mut labels = vec![cur.label()?];
        while cur.peek() == Some(b',') {
            cur.at += 1;
            labels.push(cur.label()?);
        }
        cur.expect(b')', "',' or ')'")?;
        if let Some(b) = cur.peek() {
            if !b.is_ascii_whitespace() && b != b'#' {
                return Err(PdSyntaxError::Unexpected {
                    pos: cur.pos(),
                    expected: "whitespace between terms",
                    found: cur.found(),
                });
            }
        }
        if labels.len() != 4 {
            return Err(PdSyntaxError::SlotCount {
                pos: term,
                count: labels.len(),
            });
        }
        out.push(Crossing {
            arcs: [labels[0], labels[1], labels[2], labels[3]],
        });
    }
    Ok(out)
}

/// Canonical PD text: crossings in index order, one space apart, trailing newline.
pub fn write_crossings(crossings: &[Crossing]) -> String {
    let mut s = crossings
        .iter()
        .map(|x| {
            let [a, b, c, d] = x.arcs;
            format!("X({a},{b},{c},{d})")
        })
        .collect::<Vec<_>>()
        .join(" ");
    s.push('\n');
    s
}
