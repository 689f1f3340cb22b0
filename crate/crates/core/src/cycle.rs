//! Cycles: finite GF(2) sums of basis elements of a fixed arity.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis::{
    monomial_codimension, monomial_dimension, monomial_is_essential, render_monomial, Factor, Kind,
    Monomial, Quadric,
};
use crate::error::{Error, Result};

/// An element of Ch(X̄^r). Terms are kept sorted and distinct; adding a
/// term twice cancels it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    geom: Quadric,
    arity: usize,
    terms: Vec<Monomial>,
}

impl Cycle {
    pub fn zero(geom: Quadric, arity: usize) -> Self {
        Cycle {
            geom,
            arity,
            terms: Vec::new(),
        }
    }

    /// Builds a cycle from a multiset of terms, reducing coefficients mod 2.
    /// Terms are trusted to have the right arity and valid indices.
    pub fn from_terms<I>(geom: Quadric, arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = Monomial>,
    {
        let mut v: Vec<Monomial> = terms.into_iter().collect();
        debug_assert!(v.iter().all(|m| m.len() == arity));
        v.sort_unstable();
        let mut out: Vec<Monomial> = Vec::with_capacity(v.len());
        let mut iter = v.into_iter().peekable();
        while let Some(m) = iter.next() {
            let mut count = 1usize;
            while iter.peek() == Some(&m) {
                iter.next();
                count += 1;
            }
            if count % 2 == 1 {
                out.push(m);
            }
        }
        Cycle {
            geom,
            arity,
            terms: out,
        }
    }

    /// A single basis element.
    pub fn basis(geom: Quadric, factors: &[Factor]) -> Self {
        Cycle {
            geom,
            arity: factors.len(),
            terms: vec![factors.iter().copied().collect()],
        }
    }

    /// The arity-0 unit (the class of a point of X̄^0).
    pub fn scalar_one(geom: Quadric) -> Self {
        Cycle {
            geom,
            arity: 0,
            terms: vec![Monomial::new()],
        }
    }

    pub fn geometry(&self) -> Quadric {
        self.geom
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &[Factor]) -> bool {
        self.terms.binary_search_by(|t| t.as_slice().cmp(m)).is_ok()
    }

    pub fn check_compatible(&self, other: &Cycle) -> Result<()> {
        self.geom.check_same(other.geom)?;
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        Ok(())
    }

    /// Sum in GF(2).
    pub fn add(&self, other: &Cycle) -> Result<Cycle> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &Cycle) -> Cycle {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Cycle {
            geom: self.geom,
            arity: self.arity,
            terms: out,
        }
    }

    pub fn sum<'a, I>(geom: Quadric, arity: usize, items: I) -> Cycle
    where
        I: IntoIterator<Item = &'a Cycle>,
    {
        Cycle::from_terms(
            geom,
            arity,
            items.into_iter().flat_map(|c| c.terms.iter().cloned()),
        )
    }

    /// Keeps the terms satisfying `pred`.
    pub fn filter<F: Fn(&Monomial) -> bool>(&self, pred: F) -> Cycle {
        Cycle {
            geom: self.geom,
            arity: self.arity,
            terms: self.terms.iter().filter(|m| pred(m)).cloned().collect(),
        }
    }

    /// Applies a term map that returns at most one term, summing mod 2.
    pub fn map_terms<F>(&self, arity: usize, geom: Quadric, f: F) -> Cycle
    where
        F: Fn(&Monomial) -> Option<Monomial>,
    {
        Cycle::from_terms(geom, arity, self.terms.iter().filter_map(f))
    }

    /// The set of total dimensions occurring, ascending.
    pub fn dimensions(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self
            .terms
            .iter()
            .map(|m| monomial_dimension(m, self.geom))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `Some(dim)` if all terms share one dimension; `None` for zero or
    /// mixed cycles.
    pub fn homogeneous_dimension(&self) -> Option<u32> {
        let dims = self.dimensions();
        (dims.len() == 1).then(|| dims[0])
    }

    pub fn is_homogeneous(&self) -> bool {
        self.dimensions().len() <= 1
    }

    /// Codimension of a homogeneous cycle, `None` for zero.
    pub fn codimension(&self) -> Result<Option<u32>> {
        let dims = self.dimensions();
        match dims.len() {
            0 => Ok(None),
            1 => Ok(Some(monomial_codimension(&self.terms[0], self.geom))),
            _ => Err(Error::NotHomogeneous),
        }
    }

    pub fn essential_count(&self) -> usize {
        self.terms
            .iter()
            .filter(|m| monomial_is_essential(m))
            .count()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.terms.iter().map(|m| render_monomial(m)).collect();
        parts.join(" + ")
    }

    pub fn to_json(&self) -> CycleJson {
        CycleJson {
            dim: self.geom.dim(),
            r: self.arity,
            terms: self
                .terms
                .iter()
                .map(|m| {
                    m.iter()
                        .map(|f| {
                            let k = match f.kind {
                                Kind::H => "h",
                                Kind::L => "l",
                            };
                            (k.to_string(), f.index)
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(j: &CycleJson) -> Result<Cycle> {
        let geom = Quadric::new(j.dim);
        let mut terms = Vec::with_capacity(j.terms.len());
        for t in &j.terms {
            if t.len() != j.r {
                return Err(Error::ArityMismatch {
                    expected: j.r,
                    found: t.len(),
                });
            }
            let mut m = Monomial::new();
            for (k, i) in t {
                let kind = match k.as_str() {
                    "h" => Kind::H,
                    "l" => Kind::L,
                    other => {
                        return Err(Error::InvalidArgument(format!(
                            "unknown factor kind {other:?}"
                        )))
                    }
                };
                m.push(Factor::checked(kind, *i, geom)?);
            }
            terms.push(m);
        }
        Ok(Cycle::from_terms(geom, j.r, terms))
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Serialized form `{"D": int, "r": int, "terms": [[["h", i], ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleJson {
    #[serde(rename = "D")]
    pub dim: u32,
    pub r: usize,
    pub terms: Vec<Vec<(String, u32)>>,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    geom: Quadric,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn factor(&mut self) -> Result<Factor> {
        let kind = match self.src.get(self.pos) {
            Some(b'h') => Kind::H,
            Some(b'l') => Kind::L,
            _ => return self.err("expected 'h' or 'l'"),
        };
        self.pos += 1;
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected decimal index");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let index: u32 = match text.parse() {
            Ok(i) => i,
            Err(_) => {
                self.pos = start;
                return self.err("index too large");
            }
        };
        Factor::checked(kind, index, self.geom)
    }

    fn term(&mut self) -> Result<Monomial> {
        let mut m = Monomial::new();
        m.push(self.factor()?);
        while self.eat(" x ") {
            m.push(self.factor()?);
        }
        Ok(m)
    }
}

/// Parses the text grammar, checking the arity of every term.
pub fn parse_cycle(text: &str, geom: Quadric, arity: usize) -> Result<Cycle> {
    let c = parse_cycle_any(text, geom)?;
    match c {
        Some(c) if c.arity != arity => Err(Error::ArityMismatch {
            expected: arity,
            found: c.arity,
        }),
        Some(c) => Ok(c),
        None => Ok(Cycle::zero(geom, arity)),
    }
}

/// Parses the text grammar and infers the arity from the first term.
/// Returns `None` for the literal `0`.
pub fn parse_cycle_any(text: &str, geom: Quadric) -> Result<Option<Cycle>> {
    if text == "0" {
        return Ok(None);
    }
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        geom,
    };
    let mut terms = vec![p.term()?];
    let arity = terms[0].len();
    while p.pos < p.src.len() {
        if !p.eat(" + ") {
            return p.err("expected ' + ' or end of input");
        }
        let t = p.term()?;
        if t.len() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: t.len(),
            });
        }
        terms.push(t);
    }
    Ok(Some(Cycle::from_terms(geom, arity, terms)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_two_terms() {
        let c = parse_cycle("h0 x l2 + l2 x h0", Quadric::new(6), 2).unwrap();
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn render_is_canonical() {
        let c = parse_cycle("l2 x h0 + h0 x l2", Quadric::new(6), 2).unwrap();
        assert_eq!(c.render(), "h0 x l2 + l2 x h0");
    }

    #[test]
    fn index_out_of_range() {
        let e = parse_cycle("h9 x l0", Quadric::new(6), 2).unwrap_err();
        assert!(matches!(e, Error::IndexOutOfRange { .. }));
    }

    #[test]
    fn repeated_terms_cancel() {
        let c = parse_cycle("h1 + h1 + l0", Quadric::new(4), 1).unwrap();
        assert_eq!(c.render(), "l0");
    }

    #[test]
    fn syntax_errors_report_position() {
        let q = Quadric::new(4);
        assert_eq!(
            parse_cycle("h0 x  l1", q, 2).unwrap_err(),
            Error::Syntax {
                pos: 5,
                msg: "expected 'h' or 'l'".into()
            }
        );
        assert!(matches!(
            parse_cycle("h0+l1", q, 1).unwrap_err(),
            Error::Syntax { pos: 2, .. }
        ));
        assert!(matches!(
            parse_cycle("", q, 1).unwrap_err(),
            Error::Syntax { pos: 0, .. }
        ));
    }

    #[test]
    fn arity_mismatch() {
        let q = Quadric::new(4);
        assert!(matches!(
            parse_cycle("h0 x l1", q, 3).unwrap_err(),
            Error::ArityMismatch {
                expected: 3,
                found: 2
            }
        ));
        assert!(matches!(
            parse_cycle("h0 x l1 + h1", q, 2).unwrap_err(),
            Error::ArityMismatch { .. }
        ));
    }

    #[test]
    fn zero_literal() {
        let c = parse_cycle("0", Quadric::new(4), 2).unwrap();
        assert!(c.is_zero());
        assert_eq!(c.render(), "0");
    }

    #[test]
    fn json_round_trip() {
        let q = Quadric::new(6);
        let c = parse_cycle("h0 x l2 + l3 x h1", q, 2).unwrap();
        assert_eq!(Cycle::from_json(&c.to_json()).unwrap(), c);
    }
}
