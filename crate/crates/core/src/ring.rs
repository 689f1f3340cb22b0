//! Ring structure of Ch(X̄^r): products, external products, the symmetric
//! group action and term-set operations.

use crate::basis::{monomial_dimension, monomial_is_essential, Factor, Kind, Monomial, Quadric};
use crate::cycle::Cycle;
use crate::error::{Error, Result};

/// Product of two basis factors; the result is a single factor or zero.
pub fn mul_factor_raw(q: Quadric, a: Factor, b: Factor) -> Option<Factor> {
    let d = q.half();
    match (a.kind, b.kind) {
        (Kind::H, Kind::H) => (a.index + b.index <= d).then(|| Factor::h(a.index + b.index)),
        (Kind::H, Kind::L) => b.index.checked_sub(a.index).map(Factor::l),
        (Kind::L, Kind::H) => a.index.checked_sub(b.index).map(Factor::l),
        (Kind::L, Kind::L) => {
            (a.index == d && b.index == d && q.top_square()).then(|| Factor::l(0))
        }
    }
}

pub fn mul_factor(q: Quadric, a: Factor, b: Factor) -> Cycle {
    match mul_factor_raw(q, a, b) {
        Some(f) => Cycle::basis(q, &[f]),
        None => Cycle::zero(q, 1),
    }
}

/// Factorwise product of two basis elements of equal arity.
pub fn mul_monomial(q: Quadric, a: &[Factor], b: &[Factor]) -> Option<Monomial> {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| mul_factor_raw(q, x, y))
        .collect()
}

pub fn mul(a: &Cycle, b: &Cycle) -> Result<Cycle> {
    a.check_compatible(b)?;
    Ok(mul_unchecked(a, b))
}

pub(crate) fn mul_unchecked(a: &Cycle, b: &Cycle) -> Cycle {
    let q = a.geometry();
    let mut out = Vec::new();
    for x in a.terms() {
        for y in b.terms() {
            if let Some(m) = mul_monomial(q, x, y) {
                out.push(m);
            }
        }
    }
    Cycle::from_terms(q, a.arity(), out)
}

/// Multiplies every term by one fixed basis element.
pub fn mul_by_monomial(a: &Cycle, m: &[Factor]) -> Cycle {
    let q = a.geometry();
    debug_assert_eq!(a.arity(), m.len());
    a.map_terms(a.arity(), q, |t| mul_monomial(q, t, m))
}

pub fn external_product(a: &Cycle, b: &Cycle) -> Result<Cycle> {
    a.geometry().check_same(b.geometry())?;
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a.terms() {
        for y in b.terms() {
            let mut m = x.clone();
            m.extend_from_slice(y);
            out.push(m);
        }
    }
    Ok(Cycle::from_terms(a.geometry(), a.arity() + b.arity(), out))
}

/// Checks that `sigma` is a permutation of `0..r`.
pub fn validate_permutation(sigma: &[usize], r: usize) -> Result<()> {
    if sigma.len() != r {
        return Err(Error::InvalidArgument(format!(
            "permutation has length {}, arity is {r}",
            sigma.len()
        )));
    }
    let mut seen = vec![false; r];
    for &s in sigma {
        if s >= r || seen[s] {
            return Err(Error::InvalidArgument(format!(
                "{sigma:?} is not a permutation of 0..{r}"
            )));
        }
        seen[s] = true;
    }
    Ok(())
}

/// The factor in position `j` moves to position `sigma[j]`.
pub fn permute(a: &Cycle, sigma: &[usize]) -> Result<Cycle> {
    validate_permutation(sigma, a.arity())?;
    Ok(permute_unchecked(a, sigma))
}

pub(crate) fn permute_unchecked(a: &Cycle, sigma: &[usize]) -> Cycle {
    a.map_terms(a.arity(), a.geometry(), |t| {
        let mut m = t.clone();
        for (j, &s) in sigma.iter().enumerate() {
            m[s] = t[j];
        }
        Some(m)
    })
}

/// Swaps positions `i` and `j` (0-based).
pub fn transpose(a: &Cycle, i: usize, j: usize) -> Cycle {
    let mut sigma: Vec<usize> = (0..a.arity()).collect();
    sigma.swap(i, j);
    permute_unchecked(a, &sigma)
}

/// All permutations of `0..r` in lexicographic order.
pub fn permutations(r: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                go(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(r), &mut vec![false; r], &mut out);
    out
}

/// Sum over all `r!` permutations.
pub fn sym(a: &Cycle) -> Cycle {
    let perms = permutations(a.arity());
    let images: Vec<Cycle> = perms.iter().map(|s| permute_unchecked(a, s)).collect();
    Cycle::sum(a.geometry(), a.arity(), &images)
}

pub fn homogeneous_component(a: &Cycle, dim: u32) -> Cycle {
    let q = a.geometry();
    a.filter(|m| monomial_dimension(m, q) == dim)
}

pub fn essential_part(a: &Cycle) -> Cycle {
    a.filter(|m| monomial_is_essential(m))
}

/// Common terms of two cycles.
pub fn intersection(a: &Cycle, b: &Cycle) -> Result<Cycle> {
    a.check_compatible(b)?;
    Ok(a.filter(|m| b.contains(m)))
}

/// The multiplicative identity `h0 x ... x h0`.
pub fn unit(q: Quadric, r: usize) -> Cycle {
    Cycle::basis(q, &vec![Factor::h(0); r])
}
