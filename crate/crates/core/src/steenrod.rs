//! Total and graded Steenrod operations mod 2.
//!
//! `S(h^i) = h^i (1+h)^i` and `S(l_i) = l_i (1+h)^(D-i+1)`, extended
//! multiplicatively over the factors of a tuple.

use crate::basis::{Factor, Kind, Monomial, Quadric};
use crate::cycle::Cycle;
use crate::error::{Error, Result};

/// `C(n, k) mod 2` by Lucas: odd iff the bits of `k` are a subset of `n`.
pub fn binom_mod2(n: u64, k: u64) -> bool {
    k & !n == 0
}

/// The terms of `S(f)` as `(factor, added codimension)` pairs.
pub fn steenrod_factor(q: Quadric, f: Factor) -> Vec<(Factor, u32)> {
    let d = q.half();
    match f.kind {
        Kind::H => (0..=d - f.index)
            .filter(|&k| binom_mod2(f.index as u64, k as u64))
            .map(|k| (Factor::h(f.index + k), k))
            .collect(),
        Kind::L => {
            let n = (q.dim() - f.index + 1) as u64;
            (0..=f.index)
                .filter(|&k| binom_mod2(n, k as u64))
                .map(|k| (Factor::l(f.index - k), k))
                .collect()
        }
    }
}

/// Expands `S` on one basis element. With `budget = Some(k)` only the
/// terms raising codimension by exactly `k` are produced.
fn expand(q: Quadric, m: &[Factor], budget: Option<u32>, out: &mut Vec<Monomial>) {
    let tables: Vec<Vec<(Factor, u32)>> = m.iter().map(|&f| steenrod_factor(q, f)).collect();
    let mut cur = Monomial::with_capacity(m.len());
    fn go(
        tables: &[Vec<(Factor, u32)>],
        pos: usize,
        left: Option<u32>,
        cur: &mut Monomial,
        out: &mut Vec<Monomial>,
    ) {
        if pos == tables.len() {
            if left.is_none_or(|l| l == 0) {
                out.push(cur.clone());
            }
            return;
        }
        for &(f, k) in &tables[pos] {
            let rest = match left {
                Some(l) if k > l => break,
                Some(l) => Some(l - k),
                None => None,
            };
            cur.push(f);
            go(tables, pos + 1, rest, cur, out);
            cur.pop();
        }
    }
    go(&tables, 0, budget, &mut cur, out);
}

pub fn steenrod_total(a: &Cycle) -> Cycle {
    let q = a.geometry();
    let mut out = Vec::new();
    for m in a.terms() {
        expand(q, m, None, &mut out);
    }
    Cycle::from_terms(q, a.arity(), out)
}

/// `S^k`: the component of `S(a)` whose codimension exceeds that of the
/// homogeneous input by `k`.
pub fn steenrod_k(a: &Cycle, k: u32) -> Result<Cycle> {
    if !a.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let q = a.geometry();
    let mut out = Vec::new();
    for m in a.terms() {
        expand(q, m, Some(k), &mut out);
    }
    Ok(Cycle::from_terms(q, a.arity(), out))
}

/// `S^0 + S^1 + ... + S^k`.
pub fn steenrod_upto(a: &Cycle, k: u32) -> Result<Cycle> {
    let parts: Result<Vec<Cycle>> = (0..=k).map(|i| steenrod_k(a, i)).collect();
    Ok(Cycle::sum(a.geometry(), a.arity(), &parts?))
}
