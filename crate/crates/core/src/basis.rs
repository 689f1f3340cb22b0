//! Geometry and the canonical basis of Ch(X̄^r) over GF(2).
//!
//! A split quadric of dimension `D` has the basis `h^i, l_i` for
//! `i = 0..=d` where `d = D / 2`. Basis elements of the `r`-th power are
//! `r`-tuples of such factors.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// A split projective quadric, identified by its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quadric {
    dim: u32,
}

impl Quadric {
    pub fn new(dim: u32) -> Self {
        Quadric { dim }
    }

    /// `D`.
    pub fn dim(self) -> u32 {
        self.dim
    }

    /// `d = floor(D/2)`.
    pub fn half(self) -> u32 {
        self.dim / 2
    }

    pub fn is_even(self) -> bool {
        self.dim.is_multiple_of(2)
    }

    /// Number of basis elements of Ch(X̄).
    pub fn rank(self) -> usize {
        2 * (self.half() as usize + 1)
    }

    /// Coefficient of `l_0` in `l_d * l_d`, i.e. `(D+1)(d+1) mod 2`.
    pub fn top_square(self) -> bool {
        (self.dim + 1) % 2 == 1 && (self.half() + 1) % 2 == 1
    }

    pub fn check_same(self, other: Quadric) -> Result<()> {
        if self != other {
            return Err(Error::GeometryMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Kind {
    H,
    L,
}

/// `h^i` or `l_i`. Ordered by kind first (H < L), then index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub kind: Kind,
    pub index: u32,
}

impl Factor {
    pub const fn h(index: u32) -> Self {
        Factor {
            kind: Kind::H,
            index,
        }
    }

    pub const fn l(index: u32) -> Self {
        Factor {
            kind: Kind::L,
            index,
        }
    }

    pub fn checked(kind: Kind, index: u32, q: Quadric) -> Result<Self> {
        let f = Factor { kind, index };
        if index > q.half() {
            return Err(Error::IndexOutOfRange {
                factor: f.to_string(),
                d: q.half(),
            });
        }
        Ok(f)
    }

    pub fn is_essential(self) -> bool {
        self.kind == Kind::L
    }

    pub fn dimension(self, q: Quadric) -> u32 {
        match self.kind {
            Kind::H => q.dim() - self.index,
            Kind::L => self.index,
        }
    }

    pub fn codimension(self, q: Quadric) -> u32 {
        q.dim() - self.dimension(q)
    }

    /// Position in the basis order of Ch(X̄).
    pub fn code(self, q: Quadric) -> usize {
        let base = q.half() as usize + 1;
        match self.kind {
            Kind::H => self.index as usize,
            Kind::L => base + self.index as usize,
        }
    }

    pub fn from_code(code: usize, q: Quadric) -> Self {
        let base = q.half() as usize + 1;
        if code < base {
            Factor::h(code as u32)
        } else {
            Factor::l((code - base) as u32)
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::H => write!(f, "h{}", self.index),
            Kind::L => write!(f, "l{}", self.index),
        }
    }
}

/// A basis element of Ch(X̄^r): an ordered tuple of factors.
pub type Monomial = SmallVec<[Factor; 4]>;

pub fn monomial_dimension(m: &[Factor], q: Quadric) -> u32 {
    m.iter().map(|f| f.dimension(q)).sum()
}

pub fn monomial_codimension(m: &[Factor], q: Quadric) -> u32 {
    m.iter().map(|f| f.codimension(q)).sum()
}

pub fn monomial_is_essential(m: &[Factor]) -> bool {
    m.iter().any(|f| f.is_essential())
}

pub fn render_monomial(m: &[Factor]) -> String {
    let parts: Vec<String> = m.iter().map(|f| f.to_string()).collect();
    parts.join(" x ")
}

/// All basis elements of Ch(X̄^r) in the canonical order, optionally
/// restricted to one total dimension.
pub fn enumerate_basis(q: Quadric, r: usize, dim: Option<u32>) -> Result<Vec<Monomial>> {
    if r == 0 {
        return Err(Error::InvalidArgument("arity must be at least 1".into()));
    }
    if let Some(k) = dim {
        if k as u64 > r as u64 * q.dim() as u64 {
            return Err(Error::InvalidArgument(format!(
                "dimension {k} exceeds r*D = {}",
                r as u64 * q.dim() as u64
            )));
        }
    }
    let n = q.rank();
    let total = n.pow(r as u32);
    let mut out = Vec::with_capacity(if dim.is_some() { 0 } else { total });
    let mut digits = vec![0usize; r];
    for _ in 0..total {
        let m: Monomial = digits.iter().map(|&c| Factor::from_code(c, q)).collect();
        if dim.is_none_or(|k| monomial_dimension(&m, q) == k) {
            out.push(m);
        }
        for pos in (0..r).rev() {
            digits[pos] += 1;
            if digits[pos] < n {
                break;
            }
            digits[pos] = 0;
        }
    }
    Ok(out)
}
