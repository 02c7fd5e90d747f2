//! Recursive-descent parser for connected-sum expressions.
//!
//! ```text
//! expr := term ("#" term)*
//! term := [int "*"] atom
//! atom := "S" int | "S" int "x" "S" int | "Sigma" int
//! ```
//!
//! Whitespace between tokens is ignored. Positions in diagnostics are 1-based
//! character columns.

use std::fmt;

use super::descriptor::{Atom, DescriptorError, ManifoldDescriptor, MAX_MANIFOLD_DIM};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd { expected: &'static str },
    Overflow,
    ZeroCount,
    DimensionTooSmall(usize),
    DimensionTooLarge(usize),
    FactorDimensionZero,
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// 1-based character column.
    pub column: usize,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: ", self.column)?;
        match &self.kind {
            ParseErrorKind::Empty => write!(f, "empty expression"),
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::UnexpectedEnd { expected } => write!(f, "expected {expected}, found end of input"),
            ParseErrorKind::Overflow => write!(f, "integer too large"),
            ParseErrorKind::ZeroCount => write!(f, "summand count must be positive"),
            ParseErrorKind::DimensionTooSmall(d) => write!(f, "manifold dimension {d} is below 2"),
            ParseErrorKind::DimensionTooLarge(d) => {
                write!(f, "manifold dimension {d} exceeds {MAX_MANIFOLD_DIM}")
            }
            ParseErrorKind::FactorDimensionZero => write!(f, "sphere factors must have dimension at least 1"),
            ParseErrorKind::DimensionMismatch { expected, found } => write!(
                f,
                "summand of dimension {found} does not match dimension {expected} of the first summand"
            ),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(usize),
    S,
    Sigma,
    X,
    Star,
    Hash,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(v) => format!("integer {v}"),
            Tok::S => "'S'".into(),
            Tok::Sigma => "'Sigma'".into(),
            Tok::X => "'x'".into(),
            Tok::Star => "'*'".into(),
            Tok::Hash => "'#'".into(),
        }
    }
}

fn err(kind: ParseErrorKind, column: usize) -> ParseError {
    ParseError { kind, column }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '#' => Tok::Hash,
            '*' => Tok::Star,
            'x' => Tok::X,
            'S' if chars[i + 1..].starts_with(&['i', 'g', 'm', 'a']) => {
                i += 4;
                Tok::Sigma
            }
            'S' => Tok::S,
            '0'..='9' => {
                let mut v: usize = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    let d = chars[i].to_digit(10).expect("ascii digit") as usize;
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(d))
                        .ok_or_else(|| err(ParseErrorKind::Overflow, col))?;
                    i += 1;
                }
                out.push((Tok::Int(v), col));
                continue;
            }
            other => return Err(err(ParseErrorKind::UnexpectedChar(other), col)),
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_column: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(Tok, usize)> {
        self.toks.get(self.pos)
    }

    fn next(&mut self, expected: &'static str) -> Result<(Tok, usize), ParseError> {
        match self.toks.get(self.pos) {
            Some(t) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(err(ParseErrorKind::UnexpectedEnd { expected }, self.end_column)),
        }
    }

    fn int(&mut self) -> Result<(usize, usize), ParseError> {
        match self.next("an integer")? {
            (Tok::Int(v), col) => Ok((v, col)),
            (t, col) => Err(unexpected(&t, "an integer", col)),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<usize, ParseError> {
        let (t, col) = self.next(expected)?;
        if t == tok {
            Ok(col)
        } else {
            Err(unexpected(&t, expected, col))
        }
    }

    fn term(&mut self) -> Result<(usize, Atom, usize), ParseError> {
        let start = match self.peek() {
            Some((_, col)) => *col,
            None => self.end_column,
        };
        let mut count = 1;
        if let Some((Tok::Int(_), _)) = self.peek() {
            let (v, col) = self.int()?;
            if v == 0 {
                return Err(err(ParseErrorKind::ZeroCount, col));
            }
            count = v;
            self.expect(Tok::Star, "'*'")?;
        }
        let atom = match self.next("'S' or 'Sigma'")? {
            (Tok::Sigma, _) => {
                let (dim, col) = self.int()?;
                check_atom_dim(dim, col)?;
                Atom::HomotopySphere {
                    dim,
                    exotic_possible: true,
                }
            }
            (Tok::S, _) => {
                let (a, col_a) = self.int()?;
                if let Some((Tok::X, _)) = self.peek() {
                    self.pos += 1;
                    self.expect(Tok::S, "'S'")?;
                    let (b, col_b) = self.int()?;
                    if a == 0 {
                        return Err(err(ParseErrorKind::FactorDimensionZero, col_a));
                    }
                    if b == 0 {
                        return Err(err(ParseErrorKind::FactorDimensionZero, col_b));
                    }
                    let dim = a.checked_add(b).ok_or_else(|| err(ParseErrorKind::Overflow, col_b))?;
                    check_atom_dim(dim, start)?;
                    Atom::ProductOfSpheres {
                        a: a.min(b),
                        b: a.max(b),
                    }
                } else {
                    check_atom_dim(a, col_a)?;
                    Atom::Sphere { dim: a }
                }
            }
            (t, col) => return Err(unexpected(&t, "'S' or 'Sigma'", col)),
        };
        Ok((count, atom, start))
    }
}

fn unexpected(t: &Tok, expected: &'static str, col: usize) -> ParseError {
    err(
        ParseErrorKind::UnexpectedToken {
            found: t.describe(),
            expected,
        },
        col,
    )
}

fn check_atom_dim(dim: usize, col: usize) -> Result<(), ParseError> {
    if dim < 2 {
        Err(err(ParseErrorKind::DimensionTooSmall(dim), col))
    } else if dim > MAX_MANIFOLD_DIM {
        Err(err(ParseErrorKind::DimensionTooLarge(dim), col))
    } else {
        Ok(())
    }
}

pub fn parse_descriptor(text: &str) -> Result<ManifoldDescriptor, ParseError> {
    let toks = lex(text)?;
    let end_column = text.chars().count() + 1;
    if toks.is_empty() {
        return Err(err(ParseErrorKind::Empty, end_column));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end_column,
    };
    let mut terms = Vec::new();
    loop {
        terms.push(p.term()?);
        match p.peek() {
            None => break,
            Some((Tok::Hash, _)) => p.pos += 1,
            Some((t, col)) => return Err(unexpected(t, "'#' or end of input", *col)),
        }
    }
    let dim = terms[0].1.dim();
    for (_, atom, col) in &terms {
        if atom.dim() != dim {
            return Err(err(
                ParseErrorKind::DimensionMismatch {
                    expected: dim,
                    found: atom.dim(),
                },
                *col,
            ));
        }
    }
    ManifoldDescriptor::from_atoms(dim, terms.into_iter().map(|(k, a, _)| (k, a))).map_err(|e| {
        let kind = match e {
            DescriptorError::DimensionTooSmall(d) => ParseErrorKind::DimensionTooSmall(d),
            DescriptorError::DimensionTooLarge(d) => ParseErrorKind::DimensionTooLarge(d),
            DescriptorError::FactorDimensionZero => ParseErrorKind::FactorDimensionZero,
            DescriptorError::DimensionMismatch { expected, found } => {
                ParseErrorKind::DimensionMismatch { expected, found }
            }
            DescriptorError::Overflow => ParseErrorKind::Overflow,
        };
        err(kind, 1)
    })
}

impl std::str::FromStr for ManifoldDescriptor {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_descriptor(s)
    }
}
