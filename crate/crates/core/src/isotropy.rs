//! Projections to and inclusions from the anisotropic part of an isotropic
//! quadric of Witt index `a`.
//!
//! For `X` of dimension `D` and `X_0` of dimension `D - 2a`, the sum of all
//! projections `pr_sig` over signatures is an isomorphism with inverse the
//! sum of the inclusions `in_sig`.

use crate::basis::{Factor, Monomial, Quadric};
use crate::cycle::Cycle;
use crate::error::{Error, Result};

/// A tuple `(i_1, ..., i_r)` with each `i_j` in `[0, a] ∪ [D-a+1, D]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsotropySignature {
    geom: Quadric,
    a: u32,
    indices: Vec<u32>,
}

fn check_index(q: Quadric, a: u32) -> Result<()> {
    if a == 0 || 2 * a > q.dim() {
        return Err(Error::InvalidArgument(format!(
            "Witt index {a} must satisfy 1 <= a and 2a <= D={}",
            q.dim()
        )));
    }
    Ok(())
}

impl IsotropySignature {
    pub fn new(geom: Quadric, a: u32, indices: Vec<u32>) -> Result<Self> {
        check_index(geom, a)?;
        let dim = geom.dim();
        for &i in &indices {
            if !(i <= a || (i > dim - a && i <= dim)) {
                return Err(Error::InvalidArgument(format!(
                    "signature entry {i} not in [0,{a}] or [{},{dim}]",
                    dim - a + 1
                )));
            }
        }
        Ok(IsotropySignature { geom, a, indices })
    }

    /// The signature `(a, ..., a)`.
    pub fn all_a(geom: Quadric, a: u32, r: usize) -> Result<Self> {
        Self::new(geom, a, vec![a; r])
    }

    /// Every signature of length `r`, in lexicographic order.
    pub fn enumerate(geom: Quadric, a: u32, r: usize) -> Result<Vec<Self>> {
        check_index(geom, a)?;
        let dim = geom.dim();
        let values: Vec<u32> = (0..=a).chain(dim - a + 1..=dim).collect();
        let mut out = Vec::new();
        let mut idx = vec![0usize; r];
        loop {
            out.push(IsotropySignature {
                geom,
                a,
                indices: idx.iter().map(|&k| values[k]).collect(),
            });
            let mut pos = r;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < values.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }

    pub fn indices(&self) -> &[u32] {
        &self.indices
    }

    pub fn witt_index(&self) -> u32 {
        self.a
    }

    /// Number of entries equal to `a`: the arity of the target.
    pub fn s(&self) -> usize {
        self.indices.iter().filter(|&&i| i == self.a).count()
    }

    pub fn inner(&self) -> Quadric {
        Quadric::new(self.geom.dim() - 2 * self.a)
    }
}

fn pr_factor(f: Factor, a: u32) -> Option<Factor> {
    f.index.checked_sub(a).map(|i| Factor {
        kind: f.kind,
        index: i,
    })
}

fn in_factor(f: Factor, a: u32) -> Factor {
    Factor {
        kind: f.kind,
        index: f.index + a,
    }
}

/// `h^i -> h^(i-a)`, `l_i -> l_(i-a)`, negative indices giving zero.
pub fn pr_single(c: &Cycle, a: u32) -> Result<Cycle> {
    let q = c.geometry();
    check_index(q, a)?;
    if c.arity() != 1 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: c.arity(),
        });
    }
    let inner = Quadric::new(q.dim() - 2 * a);
    Ok(c.map_terms(1, inner, |t| {
        pr_factor(t[0], a).map(|f| std::iter::once(f).collect())
    }))
}

/// `h^i -> h^(i+a)`, `l_i -> l_(i+a)`; the input lives on the quadric of
/// dimension `D - 2a`.
pub fn in_single(c: &Cycle, a: u32) -> Cycle {
    let q = c.geometry();
    let outer = Quadric::new(q.dim() + 2 * a);
    c.map_terms(c.arity(), outer, |t| {
        Some(t.iter().map(|&f| in_factor(f, a)).collect())
    })
}

fn pr_monomial(t: &[Factor], sig: &IsotropySignature) -> Option<Monomial> {
    let (a, dim) = (sig.a, sig.geom.dim());
    let mut m = Monomial::new();
    for (&f, &i) in t.iter().zip(&sig.indices) {
        if i == a {
            m.push(pr_factor(f, a)?);
        } else if i < a {
            if f != Factor::l(i) {
                return None;
            }
        } else if f != Factor::h(dim - i) {
            return None;
        }
    }
    Some(m)
}

pub fn pr_multi(c: &Cycle, sig: &IsotropySignature) -> Result<Cycle> {
    c.geometry().check_same(sig.geom)?;
    if c.arity() != sig.indices.len() {
        return Err(Error::ArityMismatch {
            expected: sig.indices.len(),
            found: c.arity(),
        });
    }
    Ok(c.map_terms(sig.s(), sig.inner(), |t| pr_monomial(t, sig)))
}

pub fn in_multi(c: &Cycle, sig: &IsotropySignature) -> Result<Cycle> {
    c.geometry().check_same(sig.inner())?;
    if c.arity() != sig.s() {
        return Err(Error::ArityMismatch {
            expected: sig.s(),
            found: c.arity(),
        });
    }
    let (a, dim) = (sig.a, sig.geom.dim());
    Ok(c.map_terms(sig.indices.len(), sig.geom, |t| {
        let mut inner = t.iter();
        let m: Monomial = sig
            .indices
            .iter()
            .map(|&i| {
                if i == a {
                    in_factor(*inner.next().expect("arity checked"), a)
                } else if i < a {
                    Factor::l(i)
                } else {
                    Factor::h(dim - i)
                }
            })
            .collect();
        Some(m)
    }))
}

/// `h^0 x beta -> beta`; every other term is killed.
pub fn generic_point_pullback(c: &Cycle) -> Result<Cycle> {
    if c.arity() < 2 {
        return Err(Error::InvalidArgument(
            "generic point pull-back needs arity at least 2".into(),
        ));
    }
    Ok(c.map_terms(c.arity() - 1, c.geometry(), |t| {
        (t[0] == Factor::h(0)).then(|| t[1..].iter().copied().collect())
    }))
}

/// Generic point pull-back followed by the all-`a` projection.
pub fn descend(c: &Cycle, a: u32) -> Result<Cycle> {
    let g = generic_point_pullback(c)?;
    let sig = IsotropySignature::all_a(c.geometry(), a, g.arity())?;
    pr_multi(&g, &sig)
}
