//! The bound-quiver file format.
//!
//! Line-oriented UTF-8:
//!
//! ```text
//! # comment
//! point NAME
//! arrow NAME SRC TGT [new]
//! rel TERM (("+"|"-") TERM)*
//! ```
//!
//! where `TERM := [COEFF "*"] NAME ("." NAME)*`, paths compose left to
//! right, and `COEFF` is an integer or a fraction `p/q`. Unknown directives
//! are parse errors, never skipped. Printing produces the canonical form:
//! parse then print is the identity on canonical files.

use std::fmt;

use cthh::element::{Coeff, Element};
use cthh::quiver::{ArrowId, PathWord, Provenance, Quiver};
use num_bigint::BigInt;
use num_traits::{One, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileErrorKind {
    /// Malformed syntax: unknown directive, bad arity, bad coefficient.
    Parse,
    /// Well-formed but meaningless: dangling point, unknown arrow,
    /// non-composable path, relation term of length < 2.
    Semantic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileError {
    pub kind: FileErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl FileError {
    fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        FileError {
            kind: FileErrorKind::Parse,
            line,
            column,
            message: message.into(),
        }
    }

    fn semantic(line: usize, column: usize, message: impl Into<String>) -> Self {
        FileError {
            kind: FileErrorKind::Semantic,
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for FileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            FileErrorKind::Parse => "parse error",
            FileErrorKind::Semantic => "semantic error",
        };
        write!(
            f,
            "{kind} at line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

impl std::error::Error for FileError {}

/// Parses a quiver file into the quiver and its relation list.
pub fn parse_quiver_file(text: &str) -> Result<(Quiver, Vec<Element>), FileError> {
    let mut quiver = Quiver::new();
    let mut relations = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        if line.trim().is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let directive = tokens.next().expect("nonempty line");
        let col = raw.find(directive).unwrap_or(0) + 1;
        match directive {
            "point" => {
                let name = tokens
                    .next()
                    .ok_or_else(|| FileError::parse(lineno, col, "point needs a name"))?;
                if tokens.next().is_some() {
                    return Err(FileError::parse(lineno, col, "too many tokens after point"));
                }
                quiver.add_point(name).map_err(|e| {
                    FileError::semantic(lineno, col, e.to_string())
                })?;
            }
            "arrow" => {
                let mut need = || {
                    tokens.next().ok_or_else(|| {
                        FileError::parse(lineno, col, "arrow needs: name, source, target")
                    })
                };
                let name = need()?;
                let src = need()?;
                let tgt = need()?;
                let provenance = match tokens.next() {
                    None => Provenance::Old,
                    Some("new") => Provenance::New,
                    Some(other) => {
                        return Err(FileError::parse(
                            lineno,
                            col,
                            format!("unexpected token `{other}` after arrow"),
                        ))
                    }
                };
                if tokens.next().is_some() {
                    return Err(FileError::parse(lineno, col, "too many tokens after arrow"));
                }
                let s = quiver.find_point(src).ok_or_else(|| {
                    FileError::semantic(lineno, col, format!("unknown point `{src}`"))
                })?;
                let t = quiver.find_point(tgt).ok_or_else(|| {
                    FileError::semantic(lineno, col, format!("unknown point `{tgt}`"))
                })?;
                quiver
                    .add_arrow(name, s, t, provenance)
                    .map_err(|e| FileError::semantic(lineno, col, e.to_string()))?;
            }
            "rel" => {
                let rest_start = raw.find("rel").unwrap_or(0) + 3;
                let rest = &line[line.find("rel").unwrap_or(0) + 3..];
                let rel = parse_relation(rest, lineno, rest_start, &quiver)?;
                relations.push(rel);
            }
            other => {
                return Err(FileError::parse(
                    lineno,
                    col,
                    format!("unknown directive `{other}`"),
                ))
            }
        }
    }
    Ok((quiver, relations))
}

const RESERVED: &[char] = &['.', '+', '-', '*', '#'];

fn is_name_char(c: char) -> bool {
    !c.is_whitespace() && !RESERVED.contains(&c)
}

struct Lexer<'a> {
    rest: &'a str,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str, line: usize, column: usize) -> Self {
        Lexer {
            rest: text,
            line,
            column,
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest.chars().next() {
            if c.is_whitespace() {
                self.advance(c.len_utf8());
            } else {
                break;
            }
        }
    }

    fn advance(&mut self, bytes: usize) {
        self.column += self.rest[..bytes].chars().count();
        self.rest = &self.rest[bytes..];
    }

    fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    fn chunk(&mut self) -> &'a str {
        let end = self
            .rest
            .char_indices()
            .find(|(_, c)| !is_name_char(*c))
            .map(|(i, _)| i)
            .unwrap_or(self.rest.len());
        let out = &self.rest[..end];
        self.advance(end);
        out
    }

    fn error_parse(&self, message: impl Into<String>) -> FileError {
        FileError::parse(self.line, self.column, message)
    }

    fn error_semantic(&self, message: impl Into<String>) -> FileError {
        FileError::semantic(self.line, self.column, message)
    }
}

fn parse_coeff(chunk: &str, lex: &Lexer) -> Result<Coeff, FileError> {
    let (num, den) = match chunk.split_once('/') {
        Some((n, d)) => (n, d),
        None => (chunk, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| lex.error_parse(format!("bad coefficient `{chunk}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| lex.error_parse(format!("bad coefficient `{chunk}`")))?;
    if d <= BigInt::zero() {
        return Err(lex.error_parse(format!("denominator must be positive in `{chunk}`")));
    }
    Ok(Coeff::new(n, d))
}

fn parse_relation(
    text: &str,
    line: usize,
    column: usize,
    quiver: &Quiver,
) -> Result<Element, FileError> {
    let mut lex = Lexer::new(text, line, column);
    let mut element = Element::zero();
    let mut endpoints = None;

    lex.skip_ws();
    if lex.rest.is_empty() {
        return Err(lex.error_parse("relation needs at least one term"));
    }
    let mut sign = Coeff::one();
    if lex.peek() == Some('-') {
        sign = -Coeff::one();
        lex.advance(1);
    } else if lex.peek() == Some('+') {
        lex.advance(1);
    }

    loop {
        lex.skip_ws();
        let (coeff, word) = parse_term(&mut lex, quiver)?;
        if word.len() < 2 {
            return Err(lex.error_semantic(
                "relation terms must be paths of length at least two",
            ));
        }
        let e = (word.source(quiver), word.target(quiver));
        match endpoints {
            None => endpoints = Some(e),
            Some(prev) if prev != e => {
                return Err(lex.error_semantic("relation terms are not parallel"))
            }
            _ => {}
        }
        if coeff.is_zero() {
            return Err(lex.error_semantic("zero coefficient"));
        }
        element.add_term(word, sign * coeff);

        lex.skip_ws();
        match lex.peek() {
            None => break,
            Some('+') => {
                sign = Coeff::one();
                lex.advance(1);
            }
            Some('-') => {
                sign = -Coeff::one();
                lex.advance(1);
            }
            Some(other) => {
                return Err(lex.error_parse(format!("expected `+` or `-`, found `{other}`")))
            }
        }
    }
    Ok(element)
}

fn parse_term(lex: &mut Lexer, quiver: &Quiver) -> Result<(Coeff, PathWord), FileError> {
    let first = lex.chunk();
    if first.is_empty() {
        return Err(lex.error_parse("expected a term"));
    }
    let (coeff, mut names) = if lex.peek() == Some('*') {
        let c = parse_coeff(first, lex)?;
        lex.advance(1);
        let name = lex.chunk();
        if name.is_empty() {
            return Err(lex.error_parse("expected an arrow name after `*`"));
        }
        (c, vec![name])
    } else {
        (Coeff::one(), vec![first])
    };
    while lex.peek() == Some('.') {
        lex.advance(1);
        let name = lex.chunk();
        if name.is_empty() {
            return Err(lex.error_parse("expected an arrow name after `.`"));
        }
        names.push(name);
    }

    let mut ids: Vec<ArrowId> = Vec::with_capacity(names.len());
    for name in &names {
        ids.push(lex.error_if_unknown(quiver, name)?);
    }
    let word = PathWord::from_arrows(quiver, &ids)
        .ok_or_else(|| lex.error_semantic("path is not composable"))?;
    Ok((coeff, word))
}

impl Lexer<'_> {
    fn error_if_unknown(&self, quiver: &Quiver, name: &str) -> Result<ArrowId, FileError> {
        quiver
            .find_arrow(name)
            .ok_or_else(|| self.error_semantic(format!("unknown arrow `{name}`")))
    }
}

/// Canonical printing: points, arrows, then relations, one per line, with
/// terms in descending term order and unit coefficients omitted.
pub fn print_quiver_file(quiver: &Quiver, relations: &[Element]) -> String {
    let mut out = String::new();
    for x in quiver.points() {
        out.push_str("point ");
        out.push_str(quiver.point_label(x));
        out.push('\n');
    }
    for a in quiver.arrow_ids() {
        let arrow = quiver.arrow(a);
        out.push_str("arrow ");
        out.push_str(&arrow.label);
        out.push(' ');
        out.push_str(quiver.point_label(arrow.source));
        out.push(' ');
        out.push_str(quiver.point_label(arrow.target));
        if arrow.provenance == Provenance::New {
            out.push_str(" new");
        }
        out.push('\n');
    }
    for rel in relations {
        out.push_str("rel ");
        out.push_str(&rel.display(quiver));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use cthh::element::coeff;

    const LINEAR_A3: &str = "point 1\npoint 2\npoint 3\narrow a 1 2\narrow b 2 3\nrel a.b\n";

    #[test]
    fn parses_the_linear_a3_file() {
        let (q, rels) = parse_quiver_file(LINEAR_A3).unwrap();
        assert_eq!(q.point_count(), 3);
        assert_eq!(q.arrow_count(), 2);
        assert_eq!(rels.len(), 1);
        assert_eq!(rels[0].term_count(), 1);
    }

    #[test]
    fn canonical_round_trip() {
        let (q, rels) = parse_quiver_file(LINEAR_A3).unwrap();
        let printed = print_quiver_file(&q, &rels);
        assert_eq!(printed, LINEAR_A3);
    }

    #[test]
    fn coefficients_and_signs_round_trip() {
        let text = "point 1\npoint 2\narrow a 1 2\narrow b 1 2\narrow c 2 1\n\
                    rel a.c.b.c - 1/2*b.c.a.c\nrel -2*a.c.a.c + b.c.b.c\n";
        let (q, rels) = parse_quiver_file(text).unwrap();
        let printed = print_quiver_file(&q, &rels);
        let (q2, rels2) = parse_quiver_file(&printed).unwrap();
        assert_eq!(rels, rels2);
        assert_eq!(q.arrow_count(), q2.arrow_count());
        assert!(rels[0].terms().any(|(_, c)| *c == coeff(-1, 2)));
    }

    #[test]
    fn unknown_directive_is_a_parse_error() {
        let err = parse_quiver_file("vertex 1\n").unwrap_err();
        assert_eq!(err.kind, FileErrorKind::Parse);
        assert_eq!(err.line, 1);
    }

    #[test]
    fn length_one_terms_are_semantic_errors() {
        let err = parse_quiver_file("point 1\npoint 2\narrow a 1 2\nrel a\n").unwrap_err();
        assert_eq!(err.kind, FileErrorKind::Semantic);
        assert_eq!(err.line, 4);
    }

    #[test]
    fn dangling_point_is_a_semantic_error() {
        let err = parse_quiver_file("point 1\narrow a 1 9\n").unwrap_err();
        assert_eq!(err.kind, FileErrorKind::Semantic);
        assert_eq!(err.line, 2);
    }

    #[test]
    fn non_composable_paths_are_semantic_errors() {
        let err =
            parse_quiver_file("point 1\npoint 2\narrow a 1 2\nrel a.a\n").unwrap_err();
        assert_eq!(err.kind, FileErrorKind::Semantic);
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# header\n\npoint 1  # trailing\npoint 2\narrow a 1 2\n";
        let (q, rels) = parse_quiver_file(text).unwrap();
        assert_eq!(q.point_count(), 2);
        assert!(rels.is_empty());
    }

    #[test]
    fn new_tags_are_parsed_and_printed() {
        let text = "point 1\npoint 2\narrow a 1 2 new\n";
        let (q, rels) = parse_quiver_file(text).unwrap();
        assert!(q.is_new(ArrowId(0)));
        assert_eq!(print_quiver_file(&q, &rels), text);
    }
}
