//! Term notation `<A|B>`, with members comma-separated and nested.

use crate::sigma::{Cut, Elem, Structure, TermArena};

use super::HierarchyError;

/// A parsed term; the sides are kept in the order written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub left: Vec<Term>,
    pub right: Vec<Term>,
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn fail(&self) -> HierarchyError {
        HierarchyError::BadTerm(self.text.to_string())
    }

    fn eat(&mut self, b: u8) -> Result<(), HierarchyError> {
        if self.bytes.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail())
        }
    }

    fn side(&mut self, end: u8) -> Result<Vec<Term>, HierarchyError> {
        let mut out = Vec::new();
        if self.bytes.get(self.pos) == Some(&end) {
            return Ok(out);
        }
        loop {
            out.push(self.term()?);
            match self.bytes.get(self.pos) {
                Some(b',') => self.pos += 1,
                Some(&b) if b == end => return Ok(out),
                _ => return Err(self.fail()),
            }
        }
    }

    fn term(&mut self) -> Result<Term, HierarchyError> {
        self.eat(b'<')?;
        let left = self.side(b'|')?;
        self.eat(b'|')?;
        let right = self.side(b'>')?;
        self.eat(b'>')?;
        Ok(Term { left, right })
    }
}

pub fn parse_term(text: &str) -> Result<Term, HierarchyError> {
    let mut p = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
    };
    let term = p.term()?;
    if p.pos != text.len() {
        return Err(p.fail());
    }
    Ok(term)
}

/// The same text split into `(members of A, members of B)` without descending further.
fn top_level(text: &str) -> Result<(Vec<&str>, Vec<&str>), HierarchyError> {
    let bad = || HierarchyError::BadTerm(text.to_string());
    let inner = text
        .strip_prefix('<')
        .and_then(|t| t.strip_suffix('>'))
        .ok_or_else(bad)?;
    let mut depth = 0usize;
    let mut sides: [Vec<&str>; 2] = [Vec::new(), Vec::new()];
    let mut side = 0;
    let mut start = 0;
    for (i, c) in inner.char_indices() {
        match c {
            '<' => depth += 1,
            '>' => depth = depth.checked_sub(1).ok_or_else(bad)?,
            ',' | '|' if depth == 0 => {
                if i > start {
                    sides[side].push(&inner[start..i]);
                } else if c == ',' || !sides[side].is_empty() {
                    return Err(bad());
                }
                if c == '|' {
                    if side == 1 {
                        return Err(bad());
                    }
                    side = 1;
                }
                start = i + 1;
            }
            _ => {}
        }
    }
    if side != 1 || depth != 0 {
        return Err(bad());
    }
    if inner.len() > start {
        sides[1].push(&inner[start..]);
    } else if inner.ends_with(',') {
        return Err(bad());
    }
    let [l, r] = sides;
    Ok((l, r))
}

/// Reads every element label of `s` as a term over the other labels; labels must be in
/// the canonical rendering.
pub(crate) fn arena_from_labels(s: &Structure) -> Result<TermArena, HierarchyError> {
    let mut arena = TermArena::new();
    for x in s.elements() {
        let label = s.label(x);
        parse_term(&label)?;
        let (l, r) = top_level(&label)?;
        let lookup = |xs: &[&str]| {
            xs.iter()
                .map(|m| {
                    s.find(m).ok_or_else(|| {
                        HierarchyError::Inconsistent(format!("member {m} of {label} is not an element"))
                    })
                })
                .collect::<Result<Vec<Elem>, _>>()
        };
        let cut = Cut::new(lookup(&l)?, lookup(&r)?);
        let (id, fresh) = arena.intern(cut);
        if !fresh || id != x {
            return Err(HierarchyError::Inconsistent(format!("{label} repeats a term")));
        }
    }
    for x in s.elements() {
        if arena.render(x) != s.label(x) {
            return Err(HierarchyError::BadTerm(s.label(x)));
        }
    }
    Ok(arena)
}
