//! Correspondences: composition, projections, diagonals, derivatives.
//!
//! Composition pairs the last factor of the left operand with the first
//! factor of the right one. Projection and diagonal maps act on the first
//! position; other positions are reached by permuting first.

use std::collections::HashMap;

use crate::basis::{Factor, Kind, Monomial, Quadric};
use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::ring::{mul_factor_raw, mul_monomial};

/// The first factors `g` with `f * g = l_0`.
fn l0_partners(q: Quadric, f: Factor) -> Vec<Factor> {
    let d = q.half();
    match f.kind {
        Kind::H => vec![Factor::l(f.index)],
        Kind::L => {
            let mut v = vec![Factor::h(f.index)];
            if f.index == d && q.top_square() {
                v.push(Factor::l(d));
            }
            v
        }
    }
}

/// `beta_1 x ... x beta_r` composed with `beta'_1 x ... x beta'_s` is
/// `beta_1 x ... x beta_{r-1} x beta'_2 x ... x beta'_s` when
/// `beta_r * beta'_1 = l_0`, and zero otherwise.
pub fn compose(a: &Cycle, b: &Cycle) -> Result<Cycle> {
    a.geometry().check_same(b.geometry())?;
    if a.arity() == 0 || b.arity() == 0 {
        return Err(Error::InvalidArgument(
            "composition needs arity at least 1 on both sides".into(),
        ));
    }
    if a.arity() == 1 && b.arity() == 1 {
        return Err(Error::InvalidArgument(
            "composition of two arity-1 cycles is not supported".into(),
        ));
    }
    Ok(compose_unchecked(a, b))
}

pub(crate) fn compose_unchecked(a: &Cycle, b: &Cycle) -> Cycle {
    let q = a.geometry();
    let mut by_first: HashMap<Factor, Vec<&Monomial>> = HashMap::new();
    for m in b.terms() {
        by_first.entry(m[0]).or_default().push(m);
    }
    let arity = a.arity() + b.arity() - 2;
    let mut out = Vec::new();
    for x in a.terms() {
        let last = x[x.len() - 1];
        for p in l0_partners(q, last) {
            if let Some(ys) = by_first.get(&p) {
                debug_assert_eq!(mul_factor_raw(q, last, p), Some(Factor::l(0)));
                for y in ys {
                    let mut m: Monomial = x[..x.len() - 1].iter().copied().collect();
                    m.extend_from_slice(&y[1..]);
                    out.push(m);
                }
            }
        }
    }
    Cycle::from_terms(q, arity, out)
}

/// `Δ = Σ (h^i x l_i + l_i x h^i) + (D+1)(d+1) h^d x h^d`.
pub fn diagonal_class(q: Quadric) -> Cycle {
    let d = q.half();
    let mut terms: Vec<Monomial> = Vec::new();
    for i in 0..=d {
        terms.push([Factor::h(i), Factor::l(i)].into_iter().collect());
        terms.push([Factor::l(i), Factor::h(i)].into_iter().collect());
    }
    if q.top_square() {
        terms.push([Factor::h(d), Factor::h(d)].into_iter().collect());
    }
    Cycle::from_terms(q, 2, terms)
}

/// Pull-back along the first projection: prepends `h^0`.
pub fn pullback_projection(a: &Cycle) -> Cycle {
    a.map_terms(a.arity() + 1, a.geometry(), |t| {
        let mut m = Monomial::with_capacity(t.len() + 1);
        m.push(Factor::h(0));
        m.extend_from_slice(t);
        Some(m)
    })
}

/// Push-forward along the first projection: `l_0 x rest` maps to `rest`.
pub fn pushforward_projection(a: &Cycle) -> Result<Cycle> {
    if a.arity() < 2 {
        return Err(Error::InvalidArgument(
            "push-forward along a projection needs arity at least 2".into(),
        ));
    }
    Ok(pushforward_projection_unchecked(a))
}

pub(crate) fn pushforward_projection_unchecked(a: &Cycle) -> Cycle {
    a.map_terms(a.arity() - 1, a.geometry(), |t| {
        (t[0] == Factor::l(0)).then(|| t[1..].iter().copied().collect())
    })
}

/// Pull-back along the first diagonal: `b0 x b1 x rest` maps to `(b0 b1) x rest`.
pub fn pullback_diagonal(a: &Cycle) -> Result<Cycle> {
    if a.arity() < 2 {
        return Err(Error::InvalidArgument(
            "pull-back along a diagonal needs arity at least 2".into(),
        ));
    }
    Ok(pullback_diagonal_unchecked(a))
}

pub(crate) fn pullback_diagonal_unchecked(a: &Cycle) -> Cycle {
    let q = a.geometry();
    a.map_terms(a.arity() - 1, q, |t| {
        let f = mul_factor_raw(q, t[0], t[1])?;
        let mut m = Monomial::with_capacity(t.len() - 1);
        m.push(f);
        m.extend_from_slice(&t[2..]);
        Some(m)
    })
}

/// Push-forward along the first diagonal: `b1 x rest` maps to
/// `((b1 x h^0) · Δ) x rest`.
pub fn pushforward_diagonal(a: &Cycle) -> Result<Cycle> {
    if a.arity() < 1 {
        return Err(Error::InvalidArgument(
            "push-forward along a diagonal needs arity at least 1".into(),
        ));
    }
    Ok(pushforward_diagonal_unchecked(a))
}

pub(crate) fn pushforward_diagonal_unchecked(a: &Cycle) -> Cycle {
    let q = a.geometry();
    let delta = diagonal_class(q);
    let mut out = Vec::new();
    for t in a.terms() {
        for dt in delta.terms() {
            if let Some(f) = mul_factor_raw(q, t[0], dt[0]) {
                let mut m = Monomial::with_capacity(t.len() + 1);
                m.push(f);
                m.push(dt[1]);
                m.extend_from_slice(&t[1..]);
                out.push(m);
            }
        }
    }
    Cycle::from_terms(q, a.arity() + 1, out)
}

/// `a · (h^i x h^j)` for a homogeneous arity-2 cycle of dimension at least
/// `D`, with `i + j` at most the excess dimension.
pub fn derivative(a: &Cycle, i: u32, j: u32) -> Result<Cycle> {
    if a.arity() != 2 {
        return Err(Error::ArityMismatch {
            expected: 2,
            found: a.arity(),
        });
    }
    let q = a.geometry();
    let dim = match a.homogeneous_dimension() {
        Some(k) => k,
        None if a.is_zero() => return Ok(a.clone()),
        None => return Err(Error::NotHomogeneous),
    };
    if dim < q.dim() {
        return Err(Error::InvalidArgument(format!(
            "derivatives need dimension at least D={}, got {dim}",
            q.dim()
        )));
    }
    if i + j > dim - q.dim() {
        return Err(Error::InvalidArgument(format!(
            "order {} exceeds dim - D = {}",
            i + j,
            dim - q.dim()
        )));
    }
    Ok(derivative_unchecked(a, i, j))
}

pub(crate) fn derivative_unchecked(a: &Cycle, i: u32, j: u32) -> Cycle {
    let q = a.geometry();
    let d = q.half();
    if i > d || j > d {
        return Cycle::zero(q, 2);
    }
    let m = [Factor::h(i), Factor::h(j)];
    a.map_terms(2, q, |t| mul_monomial(q, t, &m))
}

/// Pull-back along `x1 x x2 -> x1 x x2 x x1 x x2`:
/// `b1 x b2 x b3 x b4` maps to `(b1 b3) x (b2 b4)`.
pub fn delta_pullback_q(a: &Cycle) -> Result<Cycle> {
    if a.arity() != 4 {
        return Err(Error::ArityMismatch {
            expected: 4,
            found: a.arity(),
        });
    }
    let q = a.geometry();
    Ok(a.map_terms(2, q, |t| {
        let x = mul_factor_raw(q, t[0], t[2])?;
        let y = mul_factor_raw(q, t[1], t[3])?;
        Some([x, y].into_iter().collect())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::parse_cycle;

    fn c(q: u32, r: usize, s: &str) -> Cycle {
        parse_cycle(s, Quadric::new(q), r).unwrap()
    }

    #[test]
    fn composition_rule() {
        assert_eq!(
            compose(&c(10, 2, "h2 x l0"), &c(10, 2, "h0 x l5"))
                .unwrap()
                .render(),
            "h2 x l5"
        );
        assert!(compose(&c(8, 2, "l3 x h1"), &c(8, 2, "h1 x l2"))
            .unwrap()
            .is_zero());
        assert_eq!(
            compose(&c(8, 2, "h1 x l4"), &c(8, 2, "h4 x l2"))
                .unwrap()
                .render(),
            "h1 x l2"
        );
        assert!(compose(&c(8, 1, "l1"), &c(8, 1, "h1")).is_err());
    }

    #[test]
    fn diagonal_formula() {
        assert_eq!(
            diagonal_class(Quadric::new(2)).render(),
            "h0 x l0 + h1 x l1 + l0 x h0 + l1 x h1"
        );
        assert!(diagonal_class(Quadric::new(4)).contains(&[Factor::h(2), Factor::h(2)]));
        assert_eq!(
            diagonal_class(Quadric::new(0)).render(),
            "h0 x h0 + h0 x l0 + l0 x h0"
        );
    }

    #[test]
    fn projections_and_diagonals() {
        assert_eq!(
            pushforward_projection(&c(6, 3, "l0 x h2 x l1"))
                .unwrap()
                .render(),
            "h2 x l1"
        );
        assert!(pushforward_projection(&c(6, 3, "h1 x h2 x l1"))
            .unwrap()
            .is_zero());
        assert_eq!(
            pullback_diagonal(&c(6, 3, "h1 x l3 x h0"))
                .unwrap()
                .render(),
            "l2 x h0"
        );
        let q2 = Quadric::new(2);
        assert_eq!(
            pushforward_diagonal(&c(2, 1, "h0")).unwrap(),
            diagonal_class(q2)
        );
    }

    #[test]
    fn derivatives() {
        assert_eq!(
            derivative(&c(6, 2, "h0 x l2"), 0, 1).unwrap().render(),
            "h0 x l1"
        );
        assert_eq!(
            derivative(&c(6, 2, "h0 x l2 + l2 x h0"), 1, 1)
                .unwrap()
                .render(),
            "h1 x l1 + l1 x h1"
        );
        assert!(derivative(&c(6, 2, "h0 x l2"), 2, 1).is_err());
        let q = Quadric::new(8);
        let e = c(8, 2, "h1 x l3");
        for i in 0..=2 {
            for j in 0..=(2 - i) {
                let dv = derivative(&e, i, j).unwrap();
                assert_eq!(dv.len(), 1);
                assert_eq!(dv.essential_count(), 1);
                assert_eq!(dv.geometry(), q);
            }
        }
    }

    #[test]
    fn quadruple_diagonal() {
        assert_eq!(
            delta_pullback_q(&c(6, 4, "h0 x h1 x h1 x l3"))
                .unwrap()
                .render(),
            "h1 x l2"
        );
        assert!(delta_pullback_q(&c(6, 4, "h1 x h0 x l0 x l3"))
            .unwrap()
            .is_zero());
        assert_eq!(
            delta_pullback_q(&c(6, 4, "h0 x h0 x l2 x h3"))
                .unwrap()
                .render(),
            "l2 x h3"
        );
        assert!(delta_pullback_q(&c(6, 2, "h0 x h0")).is_err());
    }
}
