//! The base germ `xy + f(z, u) = 0` and its expression grammar.
//!
//! ```text
//! germ     := "xy" ("+" monomial)+
//! monomial := "z" ["^" P] | "u" ["^" Q] | "z" ["^" P] "u" ["^" Q]
//! ```
//!
//! Whitespace is ignored everywhere. All coefficients are 1.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::blowup::WeightVector;
use crate::error::{Error, Result};

/// Monomial `z^p u^q` of `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub p: i64,
    pub q: i64,
}

impl Monomial {
    pub fn new(p: i64, q: i64) -> Monomial {
        Monomial { p, q }
    }

    pub fn degree(self) -> i64 {
        self.p + self.q
    }

    /// Weight of `z^p u^q` when `z`, `u` have weights `c`, `d`.
    pub fn weight(self, c: i64, d: i64) -> i64 {
        self.p * c + self.q * d
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct GermModel {
    /// Sorted ascending, no duplicates.
    terms: Vec<Monomial>,
}

impl GermModel {
    pub fn new(terms: impl IntoIterator<Item = (i64, i64)>) -> Result<GermModel> {
        let mut seen = BTreeSet::new();
        for (p, q) in terms {
            if p < 0 || q < 0 {
                return Err(Error::InvalidInput(format!(
                    "negative exponent in z^{p} u^{q}"
                )));
            }
            if p + q < 2 {
                return Err(Error::InvalidInput(format!(
                    "monomial z^{p} u^{q} has degree < 2; the germ would be smooth"
                )));
            }
            if !seen.insert(Monomial::new(p, q)) {
                return Err(Error::InvalidInput(format!(
                    "duplicate monomial z^{p} u^{q}"
                )));
            }
        }
        if seen.is_empty() {
            return Err(Error::InvalidInput("f(z, u) has no terms".into()));
        }
        Ok(GermModel {
            terms: seen.into_iter().collect(),
        })
    }

    /// `xy + z^n + u^n`.
    pub fn fermat(n: i64) -> GermModel {
        GermModel::new([(n, 0), (0, n)]).expect("n >= 2")
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    /// Invariant under `z <-> u`.
    pub fn is_zu_symmetric(&self) -> bool {
        self.terms
            .iter()
            .all(|m| self.terms.contains(&Monomial::new(m.q, m.p)))
    }

    /// `f = z^p + u^q` with `p, q >= 2`.
    pub fn pure_binomial(&self) -> Option<(i64, i64)> {
        match self.terms[..] {
            [Monomial { p: 0, q }, Monomial { p, q: 0 }] => Some((p, q)),
            _ => None,
        }
    }
}

pub fn deg_min(g: &GermModel) -> i64 {
    g.terms.iter().map(|m| m.degree()).min().expect("non-empty")
}

/// Weight of the lowest-weight part of `xy + f`.
pub fn weighted_mult(g: &GermModel, w: &WeightVector) -> i64 {
    let [a, b, c, d] = w.as_array();
    g.terms
        .iter()
        .map(|m| m.weight(c, d))
        .chain(std::iter::once(a + b))
        .min()
        .expect("non-empty")
}

pub fn parse_germ(text: &str) -> Result<GermModel> {
    Parser::new(text).germ()
}

fn power(var: char, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", power('z', self.p), power('u', self.q))
    }
}

impl fmt::Display for GermModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xy")?;
        for m in &self.terms {
            write!(f, " + {m}")?;
        }
        Ok(())
    }
}

impl FromStr for GermModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_germ(s)
    }
}

impl From<GermModel> for String {
    fn from(g: GermModel) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for GermModel {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        parse_germ(&s)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8, what: &str) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn error(&mut self, message: impl Into<String>) -> Error {
        self.skip_ws();
        let found = match self.src.get(self.pos) {
            Some(&c) => format!(", found {:?}", c as char),
            None => ", found end of input".into(),
        };
        Error::parse(self.pos, format!("{}{found}", message.into()))
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a positive integer exponent"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<i64>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(Error::parse(
                start,
                format!("exponent {text} is not a positive integer"),
            )),
        }
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat(b'^') {
            self.integer()
        } else {
            Ok(1)
        }
    }

    fn monomial(&mut self) -> Result<(usize, Monomial)> {
        self.skip_ws();
        let start = self.pos;
        let (mut p, mut q) = (0, 0);
        if self.eat(b'z') {
            p = self.exponent()?;
            if self.eat(b'u') {
                q = self.exponent()?;
            }
        } else if self.eat(b'u') {
            q = self.exponent()?;
        } else {
            return Err(self.error("expected a monomial in z and u"));
        }
        Ok((start, Monomial::new(p, q)))
    }

    fn germ(&mut self) -> Result<GermModel> {
        if !(self.eat(b'x') && self.eat(b'y')) {
            return Err(Error::parse(0, "germ must start with the term xy"));
        }
        let mut terms: Vec<Monomial> = Vec::new();
        while self.peek().is_some() {
            self.expect(b'+', "'+'")?;
            let (start, m) = self.monomial()?;
            if m.degree() < 2 {
                return Err(Error::parse(
                    start,
                    format!("monomial {m} has degree < 2; f must lie in the square of the maximal ideal"),
                ));
            }
            if terms.contains(&m) {
                return Err(Error::parse(start, format!("duplicate monomial {m}")));
            }
            terms.push(m);
        }
        if terms.is_empty() {
            return Err(self.error("expected '+' followed by at least one monomial"));
        }
        GermModel::new(terms.into_iter().map(|m| (m.p, m.q)))
    }
}
