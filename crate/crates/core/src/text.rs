//! Text formats: the polynomial grammar and relation files.
//!
//! Polynomial grammar: terms separated by `+`/`-`; a term is an optional
//! coefficient (`integer` or `integer/integer`) followed by `*`-separated (or
//! juxtaposed) letters, each with an optional `^k` power. The bare token `1`
//! is the unit monomial. Whitespace between tokens is ignored.
//!
//! Relation files are line oriented:
//!
//! ```text
//! # commutative polynomials in two variables
//! alphabet: x y
//! relation: yx - xy
//! ```

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::coeff::Rational;
use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Poly, Word};

/// Parse a polynomial. Errors carry `line` and a 1-based column.
pub fn parse_poly_at(
    alphabet: &Alphabet,
    src: &str,
    line: usize,
    column_offset: usize,
) -> Result<Poly> {
    PolyParser {
        alphabet,
        chars: src.chars().collect(),
        pos: 0,
        line,
        column_offset,
    }
    .parse()
}

pub fn parse_poly(alphabet: &Alphabet, src: &str) -> Result<Poly> {
    parse_poly_at(alphabet, src, 1, 0)
}

struct PolyParser<'a> {
    alphabet: &'a Alphabet,
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column_offset: usize,
}

impl PolyParser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.column_offset + self.pos + 1, msg)
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

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn parse(mut self) -> Result<Poly> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                None if first => return Err(self.err("empty polynomial")),
                None => break,
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return Err(self.err(format!("expected '+' or '-', found {c:?}"))),
            };
            first = false;
            let (mut c, w) = self.term()?;
            if negative {
                c = -c;
            }
            terms.push((c, w));
        }
        Ok(Poly::from_terms(terms))
    }

    fn term(&mut self) -> Result<(Rational, Word)> {
        let mut coeff = Rational::from_integer(1.into());
        let mut explicit_coeff = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let num = self.integer()?;
            let den = if self.peek() == Some('/') {
                self.pos += 1;
                let d = self.integer()?;
                if d == BigInt::from(0) {
                    return Err(self.err("zero denominator"));
                }
                d
            } else {
                BigInt::from(1)
            };
            coeff = Rational::new(num, den);
            explicit_coeff = true;
        }
        let mut letters = Vec::new();
        let mut expect_factor = !explicit_coeff;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    expect_factor = true;
                }
                Some(c) if c.is_ascii_digit() && expect_factor => {
                    // a bare `1` factor is the unit monomial
                    let v = self.integer()?;
                    if v != BigInt::from(1) {
                        return Err(self.err("numeric factor other than 1"));
                    }
                    expect_factor = false;
                }
                Some(c) if self.alphabet.index_of(c).is_some() => {
                    self.pos += 1;
                    let idx = self.alphabet.index_of(c).unwrap();
                    let mut power = 1usize;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        let p = self.integer()?;
                        power = p
                            .try_into()
                            .map_err(|_| self.err("exponent out of range"))?;
                    }
                    letters.extend(std::iter::repeat_n(idx, power));
                    expect_factor = false;
                }
                Some('+') | Some('-') | None => break,
                Some(c) => return Err(self.err(format!("unexpected character {c:?}"))),
            }
        }
        if expect_factor {
            return Err(self.err("expected a factor"));
        }
        Ok((coeff, Word::new(letters)))
    }
}

/// Contents of a relation file.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationFile {
    pub alphabet: Alphabet,
    pub relations: Vec<Poly>,
}

impl RelationFile {
    pub fn parse(src: &str) -> Result<Self> {
        let mut alphabet: Option<Alphabet> = None;
        let mut relations = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            let line_no = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| Error::parse(line_no, 1, "expected `alphabet:` or `relation:`"))?;
            let value_col = key.chars().count() + 1;
            match key.trim() {
                "alphabet" => {
                    if alphabet.is_some() {
                        return Err(Error::parse(line_no, 1, "duplicate alphabet line"));
                    }
                    let mut letters = Vec::new();
                    for tok in value.split_whitespace() {
                        let mut it = tok.chars();
                        match (it.next(), it.next()) {
                            (Some(c), None) => letters.push(c),
                            _ => {
                                let col = raw.find(tok).map_or(1, |b| raw[..b].chars().count() + 1);
                                return Err(Error::parse(
                                    line_no,
                                    col,
                                    format!("letter {tok:?} must be a single character"),
                                ));
                            }
                        }
                    }
                    let a = Alphabet::new(letters)
                        .map_err(|e| Error::parse(line_no, value_col + 1, e.to_string()))?;
                    alphabet = Some(a);
                }
                "relation" => {
                    let a = alphabet
                        .as_ref()
                        .ok_or_else(|| Error::parse(line_no, 1, "relation before alphabet line"))?;
                    let p = parse_poly_at(a, value, line_no, value_col)?;
                    if p.is_zero() {
                        return Err(Error::parse(line_no, value_col + 1, "relation is zero"));
                    }
                    relations.push(p);
                }
                other => {
                    return Err(Error::parse(line_no, 1, format!("unknown key {other:?}")));
                }
            }
        }
        let alphabet = alphabet.ok_or_else(|| Error::parse(1, 1, "missing alphabet line"))?;
        Ok(RelationFile {
            alphabet,
            relations,
        })
    }

    pub fn read(path: &std::path::Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Canonical text; re-parses to an equal value.
    pub fn to_text(&self) -> String {
        let mut out = String::from("alphabet:");
        for c in self.alphabet.letters() {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
        for r in &self.relations {
            writeln!(out, "relation: {}", r.display(&self.alphabet)).unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::from_letters("xy").unwrap()
    }

    #[test]
    fn parses_grammar_example() {
        let a = xy();
        let p = parse_poly(&a, "2/3*x*x*y + y - 1").unwrap();
        assert_eq!(p.display(&a).to_string(), "2/3*xxy + y - 1");
        let q = parse_poly(&a, "  2/3 * x ^2 * y+y-1 ").unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn juxtaposition_and_leading_sign() {
        let a = xy();
        let p = parse_poly(&a, "-yx + xy").unwrap();
        assert_eq!(p.display(&a).to_string(), "-yx + xy");
        assert_eq!(parse_poly(&a, "1").unwrap().display(&a).to_string(), "1");
        assert_eq!(parse_poly(&a, "3*1").unwrap().display(&a).to_string(), "3");
    }

    #[test]
    fn reports_columns() {
        let a = xy();
        match parse_poly(&a, "x + z") {
            Err(Error::Parse {
                line: 1, column: 5, ..
            }) => {}
            other => panic!("{other:?}"),
        }
        assert!(parse_poly(&a, "x +").is_err());
        assert!(parse_poly(&a, "").is_err());
        assert!(parse_poly(&a, "1/0*x").is_err());
        assert!(parse_poly(&a, "x y").is_ok());
        assert!(parse_poly(&a, "2 3").is_err());
    }

    #[test]
    fn relation_file_round_trip() {
        let src = "# comment\nalphabet: x y\n\nrelation: y*x - x*y  # commutator\nrelation: 2*y^2 - 1/2*x\n";
        let f = RelationFile::parse(src).unwrap();
        assert_eq!(f.relations.len(), 2);
        let echoed = f.to_text();
        assert_eq!(RelationFile::parse(&echoed).unwrap(), f);
    }

    #[test]
    fn relation_file_diagnostics() {
        let e = RelationFile::parse("alphabet: x y\nrelation: x + q\n").unwrap_err();
        match e {
            Error::Parse {
                line: 2, column, ..
            } => assert_eq!(column, 15),
            other => panic!("{other:?}"),
        }
        assert!(RelationFile::parse("relation: x\n").is_err());
        assert!(RelationFile::parse("alphabet: xy\n").is_err());
        assert!(RelationFile::parse("alphabet: x x\n").is_err());
        assert!(RelationFile::parse("alphabet: x y\nrelation: x - x\n").is_err());
        assert!(RelationFile::parse("alphabet: x\nfoo: 1\n").is_err());
    }
}
