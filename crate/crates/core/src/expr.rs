//! Text syntax for exterior-algebra elements.
//!
//! ```text
//! element     := sign? term (('+' | '-') term)*
//! term        := coefficient '*' wedge | wedge | coefficient
//! wedge       := name ('^' name)*          ('∧' is accepted for '^')
//! coefficient := integer | integer '/' positive-integer
//! ```
//!
//! Whitespace is insignificant. Printing is canonical: ascending degree, then
//! lexicographic monomials, integer coefficients without a denominator, and a
//! bare `-` for coefficient −1.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exterior::{merge_sign_negative, ExteriorElement, MultiIndex, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {position}: {kind}")]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Empty,
    UnknownGenerator(String),
    MalformedCoefficient(String),
    ZeroDenominator,
    Expected(&'static str),
    Unexpected(char),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Empty => write!(f, "empty input"),
            ParseErrorKind::UnknownGenerator(n) => write!(f, "unknown generator `{n}`"),
            ParseErrorKind::MalformedCoefficient(c) => write!(f, "malformed coefficient `{c}`"),
            ParseErrorKind::ZeroDenominator => write!(f, "denominator must be positive"),
            ParseErrorKind::Expected(what) => write!(f, "expected {what}"),
            ParseErrorKind::Unexpected(c) => write!(f, "unexpected character `{c}`"),
        }
    }
}

/// Ordered generator names, position `i` naming generator `i` (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorContext {
    names: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl GeneratorContext {
    /// Fails on a duplicate or syntactically invalid name.
    pub fn new<I, S>(names: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut lookup = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            let mut chars = n.chars();
            let valid = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
            if !valid {
                return Err(format!("invalid generator name `{n}`"));
            }
            if lookup.insert(n.clone(), i).is_some() {
                return Err(format!("duplicate generator name `{n}`"));
            }
        }
        Ok(GeneratorContext { names, lookup })
    }

    /// `prefix1 .. prefix{count}`.
    pub fn numbered(prefix: &str, count: usize) -> Self {
        Self::new((1..=count).map(|i| format!("{prefix}{i}"))).expect("numbered names are valid")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    pub fn parse(&self, text: &str) -> Result<ExteriorElement, ParseError> {
        parse(text, self)
    }

    pub fn print(&self, a: &ExteriorElement) -> Result<String, String> {
        print(a, self)
    }
}

pub fn parse(text: &str, ctx: &GeneratorContext) -> Result<ExteriorElement, ParseError> {
    Parser::new(text, ctx).element()
}

/// Canonical text form; fails if `ctx` does not have exactly `a.dim()` names.
pub fn print(a: &ExteriorElement, ctx: &GeneratorContext) -> Result<String, String> {
    if ctx.len() != a.dim() {
        return Err(format!(
            "context has {} generators, element has {}",
            ctx.len(),
            a.dim()
        ));
    }
    Ok(format_terms(a, &ctx.names))
}

pub(crate) fn format_terms(a: &ExteriorElement, names: &[String]) -> String {
    if a.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in a.sorted_terms().into_iter().enumerate() {
        let negative = c.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let abs = c.abs();
        let wedge: Vec<&str> = m.positions().map(|p| names[p].as_str()).collect();
        if wedge.is_empty() {
            out.push_str(&format_rational(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&format_rational(&abs));
                out.push('*');
            }
            out.push_str(&wedge.join("^"));
        }
    }
    out
}

fn format_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ctx: &'a GeneratorContext,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ctx: &'a GeneratorContext) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            ctx,
        }
    }

    fn err(&self, position: usize, kind: ParseErrorKind) -> ParseError {
        ParseError { position, kind }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn element(&mut self) -> Result<ExteriorElement, ParseError> {
        let dim = self.ctx.len();
        if self.peek().is_none() {
            return Err(self.err(self.pos, ParseErrorKind::Empty));
        }
        let mut acc: Vec<(MultiIndex, Rational)> = Vec::new();
        let mut negative = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            if let Some((m, c)) = self.term()? {
                acc.push((m, if negative { -c } else { c }));
            }
            match self.peek() {
                None => break,
                Some('+') => negative = false,
                Some('-') => negative = true,
                Some(c) => return Err(self.err(self.pos, ParseErrorKind::Unexpected(c))),
            }
            self.pos += 1;
        }
        Ok(ExteriorElement::from_terms(dim, acc)
            .expect("context positions fit the generator count"))
    }

    /// `None` when the wedge repeats a generator (the term vanishes).
    fn term(&mut self) -> Result<Option<(MultiIndex, Rational)>, ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let coeff = self.coefficient()?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                    Ok(self
                        .wedge()?
                        .map(|(m, neg)| (m, if neg { -coeff } else { coeff })))
                } else {
                    Ok(Some((MultiIndex::EMPTY, coeff)))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => Ok(self.wedge()?.map(|(m, neg)| {
                (
                    m,
                    if neg {
                        -Rational::one()
                    } else {
                        Rational::one()
                    },
                )
            })),
            Some(c) => Err(self.err(self.pos, ParseErrorKind::Unexpected(c))),
            None => Err(self.err(self.pos, ParseErrorKind::Expected("a term"))),
        }
    }

    fn integer(&mut self) -> Option<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, self.chars[start..self.pos].iter().collect()))
    }

    fn coefficient(&mut self) -> Result<Rational, ParseError> {
        let (start, num) = self
            .integer()
            .ok_or_else(|| self.err(self.pos, ParseErrorKind::Expected("an integer")))?;
        if self.pos < self.chars.len() && self.chars[self.pos].is_ascii_alphabetic() {
            // "2e1" is neither a coefficient nor a name
            let bad: String = self.chars[start..=self.pos].iter().collect();
            return Err(self.err(start, ParseErrorKind::MalformedCoefficient(bad)));
        }
        let numer: BigInt = num.parse().expect("digits");
        if self.peek() != Some('/') {
            return Ok(Rational::from_integer(numer));
        }
        self.pos += 1;
        let den_pos = {
            self.skip_ws();
            self.pos
        };
        let (_, den) = self.integer().ok_or_else(|| {
            self.err(
                den_pos,
                ParseErrorKind::MalformedCoefficient(format!("{num}/")),
            )
        })?;
        let denom: BigInt = den.parse().expect("digits");
        if denom.is_zero() {
            return Err(self.err(den_pos, ParseErrorKind::ZeroDenominator));
        }
        Ok(Rational::new(numer, denom))
    }

    fn name(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return Err(self.err(start, ParseErrorKind::Expected("a generator name"))),
        }
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric()
                || self.chars[self.pos] == '_'
                || self.chars[self.pos] == '\'')
        {
            self.pos += 1;
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        self.ctx
            .position(&name)
            .ok_or_else(|| self.err(start, ParseErrorKind::UnknownGenerator(name)))
    }

    /// Returns the sorted monomial and whether sorting it flipped the sign.
    fn wedge(&mut self) -> Result<Option<(MultiIndex, bool)>, ParseError> {
        let mut acc = MultiIndex::EMPTY;
        let mut negative = false;
        let mut vanished = false;
        loop {
            let p = self.name()?;
            let g = MultiIndex::single(p);
            if !acc.is_disjoint(g) {
                vanished = true;
            } else {
                negative ^= merge_sign_negative(acc, g);
                acc = acc.union(g);
            }
            match self.peek() {
                Some('^') | Some('∧') => self.pos += 1,
                _ => break,
            }
        }
        Ok((!vanished).then_some((acc, negative)))
    }
}
