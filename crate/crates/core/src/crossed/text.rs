//! A line-oriented text format for free crossed complexes.
//!
//! ```text
//! # comment
//! trunc 3
//! normalizer auto
//! objects: p q
//! edge a : p -> q
//! edge b : q -> p
//! cell 2 r @ p : a + b
//! cell 3 s @ p : r - r^[a + b]
//! ```
//!
//! Words are `a + b - c` or `id(p)`. Dimension 2 expressions are ordered sums
//! of `±g^[w]`; higher ones allow integer coefficients `3*g^[w]`. A bare `0`
//! is the zero element unless a generator is literally named `0`.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Cell2, Chain, CrossedError, Element, FreeCrossedComplex, NormalizerChoice, DEFAULT_COSET_BUDGET};
use crate::groupoid::{Letter, ObjectId, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct TextError {
    /// 1-based; 0 when the text did not come from a file.
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> TextError {
    TextError { line, message: message.into() }
}

const SPECIAL: &[char] = &['+', '-', '^', '[', ']', '*', '(', ')', '@', ':'];

/// Is `name` usable as an object or generator name?
pub fn valid_name(name: &str) -> bool {
    !name.is_empty() && !name.chars().any(|c| c.is_whitespace() || SPECIAL.contains(&c))
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Sym(char),
}

fn tokenize(s: &str) -> Vec<Tok> {
    let mut out = Vec::new();
    let mut cur = String::new();
    for c in s.chars() {
        if c.is_whitespace() || SPECIAL.contains(&c) {
            if !cur.is_empty() {
                out.push(Tok::Name(std::mem::take(&mut cur)));
            }
            if !c.is_whitespace() {
                out.push(Tok::Sym(c));
            }
        } else {
            cur.push(c);
        }
    }
    if !cur.is_empty() {
        out.push(Tok::Name(cur));
    }
    out
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    c: &'a FreeCrossedComplex,
    line: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), TextError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(self.line, format!("expected '{c}'")))
        }
    }

    fn name(&mut self) -> Result<String, TextError> {
        match self.next() {
            Some(Tok::Name(n)) => Ok(n),
            Some(Tok::Sym(c)) => Err(err(self.line, format!("unexpected '{c}'"))),
            None => Err(err(self.line, "unexpected end of expression")),
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn object(&self, name: &str) -> Result<ObjectId, TextError> {
        self.c.find(0, name).ok_or_else(|| err(self.line, format!("unknown object {name:?}")))
    }

    /// A word starting at `start`, stopping before `]` or the end.
    fn word(&mut self, start: ObjectId) -> Result<Word, TextError> {
        if self.peek() == Some(&Tok::Name("id".into())) && self.toks.get(self.pos + 1) == Some(&Tok::Sym('(')) {
            self.pos += 2;
            let p = self.name()?;
            let p = self.object(&p)?;
            self.expect(')')?;
            if p != start {
                let names = self.c.object_names();
                return Err(err(self.line, format!("id({}) used where {} was expected", names[p], names[start])));
            }
            return Ok(Word::identity(start));
        }
        let mut letters = Vec::new();
        let mut first = true;
        loop {
            let inverse = if self.eat('-') {
                true
            } else if first || self.eat('+') {
                false
            } else {
                break;
            };
            first = false;
            let e = self.name()?;
            let e = self.c.find(1, &e).ok_or_else(|| err(self.line, format!("unknown edge {e:?}")))?;
            letters.push(Letter { edge: e, inverse });
            if matches!(self.peek(), None | Some(Tok::Sym(']'))) {
                break;
            }
        }
        Word::from_letters(self.c.graph(), start, &letters).map_err(|e| err(self.line, e.to_string()))
    }

    /// One `[k*]g[^[w]]`, returning `(k, g, w)` with `w` ending where it ends.
    fn term(&mut self, dim: usize, allow_coeff: bool) -> Result<(i64, usize, Word), TextError> {
        let mut k = 1;
        let mut name = self.name()?;
        if self.peek() == Some(&Tok::Sym('*')) {
            if !allow_coeff {
                return Err(err(self.line, "coefficients are not allowed in dimension 2"));
            }
            k = name.parse().map_err(|_| err(self.line, format!("bad coefficient {name:?}")))?;
            self.pos += 1;
            name = self.name()?;
        }
        let g = self
            .c
            .find(dim, &name)
            .ok_or_else(|| err(self.line, format!("unknown generator {name:?} in dimension {dim}")))?;
        let start = self.c.basis_base(dim, g);
        let w = if self.eat('^') {
            self.expect('[')?;
            let w = self.word(start)?;
            self.expect(']')?;
            w
        } else {
            Word::identity(start)
        };
        Ok((k, g, w))
    }

    fn element(&mut self, dim: usize, base: ObjectId) -> Result<Element, TextError> {
        if dim == 0 {
            let p = self.name()?;
            return Ok(Element::Object(self.object(&p)?));
        }
        if dim == 1 {
            return Ok(Element::Word(self.word(base)?));
        }
        let zero = self.toks == [Tok::Name("0".into())] && self.c.find(dim, "0").is_none();
        if zero {
            self.pos = 1;
            return Ok(Element::zero(dim, base));
        }
        let mut out = Element::zero(dim, base);
        let mut first = true;
        while !self.done() {
            let sign = if self.eat('-') {
                -1
            } else if self.eat('+') || first {
                1
            } else {
                return Err(err(self.line, "expected '+' or '-' between terms"));
            };
            first = false;
            let (k, g, w) = self.term(dim, dim >= 3)?;
            if w.end() != base {
                let names = self.c.object_names();
                return Err(err(
                    self.line,
                    format!("term {} lives at {}, expected {}", self.c.basis_name(dim, g), names[w.end()], names[base]),
                ));
            }
            out = match out {
                Element::Cell2(c) => Element::Cell2(c.plus(&Cell2::term(sign > 0, g, w))),
                Element::Chain(c) => {
                    let mut t = Chain::zero(dim, base);
                    t.add_term(g, self.c.canon(&w), sign * k);
                    Element::Chain(c.plus(&t))
                }
                _ => unreachable!(),
            };
        }
        if first {
            return Err(err(self.line, "empty expression"));
        }
        Ok(out)
    }
}

/// Parse an element of dimension `dim` based at `base` (ignored in dimension
/// 0). Dimensions ≥ 3 need the complex's normalizer.
pub fn parse_element(c: &FreeCrossedComplex, dim: usize, base: ObjectId, text: &str) -> Result<Element, TextError> {
    parse_element_at(c, dim, base, text, 0)
}

fn parse_element_at(
    c: &FreeCrossedComplex,
    dim: usize,
    base: ObjectId,
    text: &str,
    line: usize,
) -> Result<Element, TextError> {
    if dim > c.trunc_level() {
        return Err(err(line, format!("dimension {dim} exceeds the truncation {}", c.trunc_level())));
    }
    if dim >= 3 && !c.has_normalizer() {
        return Err(err(line, "no normalizer chosen yet"));
    }
    let mut p = Parser { toks: tokenize(text), pos: 0, c, line };
    let x = p.element(dim, base)?;
    if !p.done() {
        return Err(err(line, "trailing input"));
    }
    Ok(x)
}

fn parse_choice(words: &[&str], line: usize) -> Result<NormalizerChoice, TextError> {
    let budget = match words.get(1) {
        Some(b) => b.parse().map_err(|_| err(line, format!("bad budget {b:?}")))?,
        None => DEFAULT_COSET_BUDGET,
    };
    if words.len() > 2 {
        return Err(err(line, "trailing input after normalizer"));
    }
    match words.first().copied() {
        Some("auto") => Ok(NormalizerChoice::Auto { budget }),
        Some("presented") => Ok(NormalizerChoice::Presented { budget }),
        Some("free") if words.len() == 1 => Ok(NormalizerChoice::Free),
        Some("simply-connected") if words.len() == 1 => Ok(NormalizerChoice::SimplyConnected),
        Some(other) => Err(err(line, format!("unknown normalizer {other:?}"))),
        None => Err(err(line, "missing normalizer kind")),
    }
}

struct CellLine {
    line: usize,
    dim: usize,
    name: String,
    base: String,
    expr: String,
}

/// Parse the text format into a complex.
pub fn parse_complex(text: &str) -> Result<FreeCrossedComplex, TextError> {
    let mut trunc = None;
    let mut choice = None;
    let mut objects: Option<(usize, Vec<String>)> = None;
    let mut edges = Vec::new();
    let mut cells = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (head, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match head {
            "trunc" => {
                let n = rest.parse().map_err(|_| err(line, format!("bad truncation {rest:?}")))?;
                if trunc.replace(n).is_some() {
                    return Err(err(line, "truncation given twice"));
                }
            }
            "normalizer" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                if choice.replace(parse_choice(&words, line)?).is_some() {
                    return Err(err(line, "normalizer given twice"));
                }
            }
            "objects:" | "objects" => {
                let rest = rest.strip_prefix(':').unwrap_or(rest);
                let names: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
                if let Some(bad) = names.iter().find(|n| !valid_name(n)) {
                    return Err(err(line, format!("invalid object name {bad:?}")));
                }
                if objects.replace((line, names)).is_some() {
                    return Err(err(line, "objects given twice"));
                }
            }
            "edge" => {
                let (name, ends) = rest.split_once(':').ok_or_else(|| err(line, "expected 'edge NAME : p -> q'"))?;
                let (p, q) = ends.split_once("->").ok_or_else(|| err(line, "expected 'p -> q'"))?;
                edges.push((line, name.trim().to_owned(), p.trim().to_owned(), q.trim().to_owned()));
            }
            "cell" => {
                let (lhs, expr) =
                    rest.split_once(':').ok_or_else(|| err(line, "expected 'cell DIM NAME @ obj : EXPR'"))?;
                let (decl, base) = lhs.split_once('@').ok_or_else(|| err(line, "missing '@ obj'"))?;
                let decl: Vec<&str> = decl.split_whitespace().collect();
                let [dim, name] = decl[..] else {
                    return Err(err(line, "expected 'cell DIM NAME'"));
                };
                let dim: usize = dim.parse().map_err(|_| err(line, format!("bad dimension {dim:?}")))?;
                if dim < 2 {
                    return Err(err(line, "cells must have dimension ≥ 2; use 'edge' for dimension 1"));
                }
                cells.push(CellLine {
                    line,
                    dim,
                    name: name.to_owned(),
                    base: base.trim().to_owned(),
                    expr: expr.trim().to_owned(),
                });
            }
            other => return Err(err(line, format!("unknown directive {other:?}"))),
        }
    }
    let trunc = trunc.ok_or_else(|| err(0, "missing 'trunc' line"))?;
    let (oline, objects) = objects.ok_or_else(|| err(0, "missing 'objects:' line"))?;
    let crossed = |line: usize| move |e: CrossedError| err(line, e.to_string());
    let mut c = FreeCrossedComplex::new(trunc, objects).map_err(crossed(oline))?;
    if trunc == 0 && !edges.is_empty() {
        return Err(err(edges[0].0, "edges need truncation ≥ 1"));
    }
    for (line, name, p, q) in edges {
        if !valid_name(&name) {
            return Err(err(line, format!("invalid edge name {name:?}")));
        }
        let p = c.find(0, &p).ok_or_else(|| err(line, format!("unknown object {p:?}")))?;
        let q = c.find(0, &q).ok_or_else(|| err(line, format!("unknown object {q:?}")))?;
        c.add_edge(&name, p, q).map_err(crossed(line))?;
    }
    cells.sort_by_key(|cell| cell.dim);
    let mut normalized = false;
    for cell in cells {
        if cell.dim > trunc {
            return Err(err(cell.line, format!("dimension {} exceeds the truncation {trunc}", cell.dim)));
        }
        if !valid_name(&cell.name) {
            return Err(err(cell.line, format!("invalid cell name {:?}", cell.name)));
        }
        if cell.dim >= 3 && !normalized {
            c.set_normalizer(choice.unwrap_or_default()).map_err(crossed(cell.line))?;
            normalized = true;
        }
        let base = c.find(0, &cell.base).ok_or_else(|| err(cell.line, format!("unknown object {:?}", cell.base)))?;
        let x = parse_element_at(&c, cell.dim - 1, base, &cell.expr, cell.line)?;
        if cell.dim >= 3 && x.base() != base {
            return Err(err(cell.line, "boundary does not live at the declared object"));
        }
        c.add_generator(cell.dim, &cell.name, x).map_err(crossed(cell.line))?;
    }
    if !normalized {
        c.set_normalizer(choice.unwrap_or_default()).map_err(crossed(0))?;
    }
    Ok(c)
}

/// Render a complex in the text format.
pub fn write_complex(c: &FreeCrossedComplex) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "trunc {}", c.trunc_level());
    if c.has_normalizer() {
        let _ = writeln!(s, "normalizer {}", c.normalizer().name());
    }
    let _ = writeln!(s, "objects: {}", c.object_names().join(" "));
    for (e, &(p, q)) in c.graph().edges().iter().enumerate() {
        let names = c.object_names();
        let _ = writeln!(s, "edge {} : {} -> {}", c.basis_name(1, e), names[p], names[q]);
    }
    for n in 2..=c.trunc_level() {
        for g in c.level(n) {
            let _ = writeln!(s, "cell {n} {} @ {} : {}", g.name(), c.object_names()[g.base()], c.show(g.boundary()));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPHERE: &str = "
        # a 2-sphere with a 3-cell filling it twice over
        trunc 3
        objects: p
        cell 2 s @ p : id(p)
        cell 3 t @ p : s - s
    ";

    #[test]
    fn parses_sphere() {
        let c = parse_complex(SPHERE).unwrap();
        assert_eq!(c.basis_count(2), 1);
        assert_eq!(c.basis_count(3), 1);
        assert_eq!(c.normalizer().name(), "simply-connected");
        assert!(c.audit().is_empty());
    }

    #[test]
    fn round_trip() {
        let text = "trunc 3\nobjects: p q\nedge a : p -> q\nedge b : q -> p\ncell 2 r @ p : a + b\n\
                    cell 2 u @ q : b + a + b + a\ncell 3 s @ p : r^[a + b] - r\n";
        let c = parse_complex(text).unwrap();
        let again = parse_complex(&write_complex(&c)).unwrap();
        assert_eq!(write_complex(&again), write_complex(&c));
        assert_eq!(again.basis_count(3), 1);
    }

    #[test]
    fn coefficients_and_zero() {
        let text = "trunc 4\nobjects: p\ncell 2 s @ p : id(p)\ncell 3 t @ p : 0\ncell 4 z @ p : 2*t - t - t\n";
        let c = parse_complex(text).unwrap();
        assert!(c.generator(4, 0).boundary().is_zero());
        assert!(c.generator(3, 0).boundary().is_zero());
        let x = parse_element(&c, 3, 0, "3*t").unwrap();
        assert_eq!(x.as_chain().unwrap().augmentation(), 3);
    }

    #[test]
    fn reports_line_numbers() {
        let text = "trunc 2\nobjects: p q\nedge a : p -> q\ncell 2 r @ p : a\n";
        let e = parse_complex(text).unwrap_err();
        assert_eq!(e.line, 4);
        let e = parse_complex("trunc 2\nobjects: p\nedge a : p -> x\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_complex("trunc 2\nobjects: p\nbogus\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn rejects_bad_names() {
        assert!(!valid_name("a+b"));
        assert!(!valid_name("x y"));
        assert!(valid_name("0.e"));
        assert!(valid_name("g|h"));
        assert!(parse_complex("trunc 1\nobjects: p\nedge a^b : p -> p\n").is_err());
    }
}
