//! Candidate families of rational cycles and their closure.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::basis::{enumerate_basis, monomial_dimension, monomial_is_essential, Quadric};
use crate::correspondence::{
    compose_unchecked, pullback_diagonal_unchecked, pullback_projection,
    pushforward_diagonal_unchecked, pushforward_projection_unchecked,
};
use crate::cycle::{parse_cycle_any, Cycle};
use crate::error::{Error, Result};
use crate::gf2::{Indexer, Subspace};
use crate::ring::{mul_unchecked, permute_unchecked};
use crate::steenrod::steenrod_total;

use super::splitting::SplittingData;

/// Subspaces of Ch(X̄^r) for `r = 1..=max_arity`, stored in reduced
/// echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFamily {
    geom: Quadric,
    max_arity: usize,
    groups: Vec<Subspace>,
    splitting: Option<SplittingData>,
    closed: bool,
}

impl RationalFamily {
    pub fn new(geom: Quadric, max_arity: usize) -> Result<Self> {
        if max_arity == 0 {
            return Err(Error::InvalidArgument(
                "max arity must be at least 1".into(),
            ));
        }
        let groups = (1..=max_arity)
            .map(|r| Subspace::new(Indexer::new(geom, r).len()))
            .collect();
        Ok(RationalFamily {
            geom,
            max_arity,
            groups,
            splitting: None,
            closed: false,
        })
    }

    pub fn with_splitting(mut self, s: SplittingData) -> Self {
        self.splitting = Some(s);
        self
    }

    pub fn add_generator(&mut self, c: &Cycle) -> Result<()> {
        self.geom.check_same(c.geometry())?;
        if c.arity() == 0 || c.arity() > self.max_arity {
            return Err(Error::InvalidArgument(format!(
                "generator of arity {} outside 1..={}",
                c.arity(),
                self.max_arity
            )));
        }
        let v = self.indexer(c.arity()).encode(c);
        if self.groups[c.arity() - 1].insert(&v).is_some() {
            self.closed = false;
        }
        Ok(())
    }

    pub fn geometry(&self) -> Quadric {
        self.geom
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn splitting(&self) -> Option<&SplittingData> {
        self.splitting.as_ref()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn indexer(&self, r: usize) -> Indexer {
        Indexer::new(self.geom, r)
    }

    pub fn group(&self, r: usize) -> &Subspace {
        &self.groups[r - 1]
    }

    pub fn contains(&self, c: &Cycle) -> bool {
        if c.geometry() != self.geom || c.arity() == 0 || c.arity() > self.max_arity {
            return false;
        }
        self.group(c.arity())
            .contains(&self.indexer(c.arity()).encode(c))
    }

    /// The echelon basis of the arity-`r` group as cycles.
    pub fn basis(&self, r: usize) -> Vec<Cycle> {
        let ix = self.indexer(r);
        self.group(r).rows().map(|v| ix.decode(v)).collect()
    }

    /// Basis vectors of the arity-`r` group that have an essential term.
    pub fn essential_basis(&self, r: usize) -> Vec<Cycle> {
        self.basis(r)
            .into_iter()
            .filter(|c| c.essential_count() > 0)
            .collect()
    }

    /// Whether some member of the arity-`r` group has the basis element
    /// `m` in its decomposition.
    pub fn touches(&self, m: &[crate::basis::Factor]) -> bool {
        let r = m.len();
        r >= 1 && r <= self.max_arity && self.group(r).touches(self.indexer(r).index(m))
    }
}

/// On-disk description of a candidate family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    #[serde(rename = "D")]
    pub dim: u32,
    pub max_arity: usize,
    /// Cycles in the text grammar; the arity of each is read off its terms.
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splitting: Option<Vec<u32>>,
    /// The form is small, so the description of Ch̄(X²) by one cycle applies.
    #[serde(default)]
    pub small: bool,
}

impl FamilyFile {
    /// The family spanned by the generators, not yet closed.
    pub fn build(&self) -> Result<RationalFamily> {
        let q = Quadric::new(self.dim);
        let mut f = RationalFamily::new(q, self.max_arity)?;
        for g in &self.generators {
            if let Some(c) = parse_cycle_any(g, q)? {
                f.add_generator(&c)?;
            }
        }
        if let Some(s) = &self.splitting {
            f = f.with_splitting(SplittingData::for_quadric(q, s.clone())?);
        }
        Ok(f)
    }
}

struct Engine {
    geom: Quadric,
    max_arity: usize,
    spaces: Vec<Subspace>,
    lists: Vec<Vec<Cycle>>,
    queue: VecDeque<(usize, usize)>,
}

impl Engine {
    fn push_raw(&mut self, c: Cycle) {
        let r = c.arity();
        let ix = Indexer::new(self.geom, r);
        if let Some(red) = self.spaces[r - 1].insert(&ix.encode(&c)) {
            self.lists[r - 1].push(ix.decode(&red));
            self.queue.push_back((r, self.lists[r - 1].len() - 1));
        }
    }

    /// Adds the essential parts of the homogeneous components of `c`.
    fn offer(&mut self, c: Cycle) {
        let r = c.arity();
        if r == 0 || r > self.max_arity || c.is_zero() {
            return;
        }
        let q = self.geom;
        for k in c.dimensions() {
            let part = c.filter(|m| monomial_is_essential(m) && monomial_dimension(m, q) == k);
            if !part.is_zero() {
                self.push_raw(part);
            }
        }
    }

    fn process(&mut self, r: usize, pos: usize) {
        let v = self.lists[r - 1][pos].clone();
        let essential = v.essential_count() > 0;
        let rr = self.max_arity;

        if essential {
            let peers = self.lists[r - 1].clone();
            for w in &peers {
                self.offer(mul_unchecked(&v, w));
            }
            if r >= 2 {
                let mut swap: Vec<usize> = (0..r).collect();
                swap.swap(0, 1);
                self.offer(permute_unchecked(&v, &swap));
                let shift: Vec<usize> = (0..r).map(|j| (j + 1) % r).collect();
                self.offer(permute_unchecked(&v, &shift));
                self.offer(pushforward_projection_unchecked(&v));
                self.offer(pullback_diagonal_unchecked(&v));
            }
            self.offer(steenrod_total(&v));
            if r < rr {
                self.offer(pullback_projection(&v));
            }
        }
        if r < rr {
            self.offer(pushforward_diagonal_unchecked(&v));
        }
        if !essential {
            // Products and compositions with essential items are produced
            // when those items are processed.
            return;
        }
        for s in 1..=rr {
            if r + s < 3 || r + s - 2 > rr {
                continue;
            }
            let peers = self.lists[s - 1].clone();
            for w in &peers {
                self.offer(compose_unchecked(&v, w));
                self.offer(compose_unchecked(w, &v));
            }
        }
    }
}

/// The smallest family containing the given one and `h^0`, `h^1`, closed
/// under sums, products, homogeneous components, permutations, push-forward
/// and pull-back along the first projection and the first diagonal, the
/// total Steenrod operation and composition of correspondences.
pub fn closure(family: &RationalFamily) -> RationalFamily {
    let geom = family.geom;
    let rr = family.max_arity;
    let mut eng = Engine {
        geom,
        max_arity: rr,
        spaces: (1..=rr)
            .map(|r| Subspace::new(Indexer::new(geom, r).len()))
            .collect(),
        lists: vec![Vec::new(); rr],
        queue: VecDeque::new(),
    };
    // Every product of powers of h is rational.
    for r in 1..=rr {
        for m in enumerate_basis(geom, r, None).expect("arity >= 1") {
            if !monomial_is_essential(&m) {
                eng.push_raw(Cycle::basis(geom, &m));
            }
        }
    }
    for r in 1..=rr {
        for g in family.basis(r) {
            eng.offer(g);
        }
    }
    while let Some((r, pos)) = eng.queue.pop_front() {
        eng.process(r, pos);
    }
    RationalFamily {
        geom,
        max_arity: rr,
        groups: eng.spaces,
        splitting: family.splitting.clone(),
        closed: true,
    }
}
