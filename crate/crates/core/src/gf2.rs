//! GF(2) linear algebra over the basis of Ch(X̄^r).
//!
//! Vectors are bitsets indexed by the canonical basis order; subspaces are
//! kept in fully reduced echelon form with the lowest set bit as pivot.

use crate::basis::{Factor, Monomial, Quadric};
use crate::cycle::Cycle;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(nbits: usize) -> Self {
        BitVec {
            words: vec![0; nbits.div_ceil(64)],
        }
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn lowest(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Bijection between basis elements of Ch(X̄^r) and `0..(2(d+1))^r`,
/// monotone for the canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Indexer {
    pub geom: Quadric,
    pub arity: usize,
}

impl Indexer {
    pub fn new(geom: Quadric, arity: usize) -> Self {
        Indexer { geom, arity }
    }

    pub fn len(&self) -> usize {
        self.geom.rank().pow(self.arity as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, m: &[Factor]) -> usize {
        let base = self.geom.rank();
        m.iter().fold(0, |acc, f| acc * base + f.code(self.geom))
    }

    pub fn monomial(&self, mut idx: usize) -> Monomial {
        let base = self.geom.rank();
        let mut m: Monomial = std::iter::repeat_n(Factor::h(0), self.arity).collect();
        for pos in (0..self.arity).rev() {
            m[pos] = Factor::from_code(idx % base, self.geom);
            idx /= base;
        }
        m
    }

    pub fn encode(&self, c: &Cycle) -> BitVec {
        debug_assert_eq!(c.arity(), self.arity);
        let mut v = BitVec::zeros(self.len());
        for m in c.terms() {
            v.flip(self.index(m));
        }
        v
    }

    pub fn decode(&self, v: &BitVec) -> Cycle {
        Cycle::from_terms(self.geom, self.arity, v.ones().map(|i| self.monomial(i)))
    }
}

/// A subspace in fully reduced echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    nbits: usize,
    rows: Vec<(usize, BitVec)>,
}

impl Subspace {
    pub fn new(nbits: usize) -> Self {
        Subspace {
            nbits,
            rows: Vec::new(),
        }
    }

    pub fn nbits(&self) -> usize {
        self.nbits
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &BitVec> {
        self.rows.iter().map(|(_, r)| r)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        for (p, r) in &self.rows {
            if v.get(*p) {
                v.xor_assign(r);
            }
        }
        v
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v`; returns the reduced new direction if the dimension grew.
    pub fn insert(&mut self, v: &BitVec) -> Option<BitVec> {
        let v = self.reduce(v);
        let p = v.lowest()?;
        for (_, r) in self.rows.iter_mut() {
            if r.get(p) {
                r.xor_assign(&v);
            }
        }
        let at = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(at, (p, v.clone()));
        Some(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows().all(|r| other.contains(r))
    }

    /// Whether some vector of the subspace has bit `i` set.
    pub fn touches(&self, i: usize) -> bool {
        self.rows().any(|r| r.get(i))
    }
}
