//! Minimal and primordial cycles on X².

use std::collections::{BTreeMap, BTreeSet};

use crate::basis::{monomial_dimension, monomial_is_essential, Factor, Monomial, Quadric};
use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::gf2::Subspace;
use crate::ring::{mul_by_monomial, transpose};

use super::family::RationalFamily;
use super::splitting::SplittingData;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimordialReport {
    pub minimal_cycles: Vec<Cycle>,
    pub primordial: Vec<Cycle>,
    /// Shell index `q` of each primordial cycle, in the same order.
    pub f_map: Vec<usize>,
}

impl PrimordialReport {
    pub fn len(&self) -> usize {
        self.primordial.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primordial.is_empty()
    }

    pub fn contains(&self, c: &Cycle) -> bool {
        self.primordial.contains(c)
    }
}

/// Essential parts, per dimension `>= D`, of the arity-2 rows.
fn slices(family: &RationalFamily) -> BTreeMap<u32, Vec<Cycle>> {
    let q = family.geometry();
    let mut out: BTreeMap<u32, Vec<Cycle>> = BTreeMap::new();
    for c in family.essential_basis(2) {
        for k in c.dimensions() {
            if k < q.dim() {
                continue;
            }
            let part = c.filter(|m| monomial_is_essential(m) && monomial_dimension(m, q) == k);
            if !part.is_zero() {
                out.entry(k).or_default().push(part);
            }
        }
    }
    out
}

fn diagonal_essential(q: Quadric) -> Cycle {
    let terms = (0..=q.half()).flat_map(|i| {
        [
            [Factor::h(i), Factor::l(i)]
                .into_iter()
                .collect::<Monomial>(),
            [Factor::l(i), Factor::h(i)].into_iter().collect(),
        ]
    });
    Cycle::from_terms(q, 2, terms)
}

/// The atoms of the essential part of the arity-2 group in dimensions at
/// least `D`: basis cells are grouped by the set of echelon rows containing
/// them. Fails when an atom is not rational or when the `D`-dimensional
/// atoms do not add up to the essential part of the diagonal.
pub fn minimal_cycles(family: &RationalFamily) -> Result<Vec<Cycle>> {
    if family.max_arity() < 2 {
        return Err(Error::InvalidArgument("minimal cycles need arity 2".into()));
    }
    let q = family.geometry();
    let ix = family.indexer(2);
    let mut atoms = Vec::new();
    for (_, rows) in slices(family) {
        let mut span = Subspace::new(ix.len());
        for r in &rows {
            span.insert(&ix.encode(r));
        }
        let mut groups: BTreeMap<Vec<usize>, Vec<Monomial>> = BTreeMap::new();
        let cells: BTreeSet<Monomial> = rows.iter().flat_map(|r| r.terms().to_vec()).collect();
        for m in cells {
            let sig = rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.contains(&m))
                .map(|(i, _)| i)
                .collect();
            groups.entry(sig).or_default().push(m);
        }
        let found: Vec<Cycle> = groups
            .into_values()
            .map(|ms| Cycle::from_terms(q, 2, ms))
            .collect();
        for a in &found {
            if !span.contains(&ix.encode(a)) {
                return Err(Error::FamilyInconsistent(format!(
                    "family is not closed under intersection: {} is not rational",
                    a.render()
                )));
            }
        }
        if found.len() != span.dimension() {
            return Err(Error::FamilyInconsistent(format!(
                "{} atoms for a group of rank {}",
                found.len(),
                span.dimension()
            )));
        }
        atoms.extend(found);
    }
    let top: Vec<&Cycle> = atoms
        .iter()
        .filter(|a| a.homogeneous_dimension() == Some(q.dim()))
        .collect();
    let total = Cycle::sum(q, 2, top);
    if total != diagonal_essential(q) {
        return Err(Error::FamilyInconsistent(format!(
            "dimension-D minimal cycles sum to {}",
            total.render()
        )));
    }
    Ok(atoms)
}

/// All derivatives `a · (h^i x h^j)` with `i + j <= dim(a) - D`.
pub fn derivatives(a: &Cycle) -> Vec<Cycle> {
    let q = a.geometry();
    let Some(dim) = a.homogeneous_dimension() else {
        return Vec::new();
    };
    let top = dim.saturating_sub(q.dim());
    let mut out = Vec::new();
    for order in 0..=top {
        for i in 0..=order {
            out.push(mul_by_monomial(a, &[Factor::h(i), Factor::h(order - i)]));
        }
    }
    out
}

fn highest_derivatives(a: &Cycle) -> Vec<Cycle> {
    let q = a.geometry();
    let order = a
        .homogeneous_dimension()
        .unwrap_or(0)
        .saturating_sub(q.dim());
    (0..=order)
        .map(|i| mul_by_monomial(a, &[Factor::h(i), Factor::h(order - i)]))
        .collect()
}

/// Builds the chain `Π_1 ⊂ ... ⊂ Π_h` shell by shell and checks that the
/// derivatives of the result are exactly the minimal cycles.
pub fn primordial_cycles(family: &RationalFamily, s: &SplittingData) -> Result<PrimordialReport> {
    let q = family.geometry();
    if !s.is_complete_for(q) {
        return Err(Error::InvalidArgument(format!(
            "Witt indices {:?} do not sum to d+1 = {}",
            s.witt_indices(),
            q.half() + 1
        )));
    }
    let atoms = minimal_cycles(family)?;
    let mut primordial: Vec<Cycle> = Vec::new();
    let mut f_map = Vec::new();
    for shell in 1..=s.height() {
        let (j0, j1) = (s.j(shell - 1), s.j(shell));
        let alpha = Cycle::sum(
            q,
            2,
            primordial
                .iter()
                .flat_map(highest_derivatives)
                .collect::<Vec<_>>()
                .iter(),
        );
        if (j0..j1).all(|i| alpha.contains(&[Factor::h(i), Factor::l(i)])) {
            continue;
        }
        let cell = [Factor::h(j0), Factor::l(j1 - 1)];
        let Some(pi) = atoms.iter().find(|a| a.contains(&cell)) else {
            return Err(Error::FamilyInconsistent(format!(
                "no rational cycle contains h{j0} x l{} (shell {shell})",
                j1 - 1
            )));
        };
        if transpose(pi, 0, 1) != *pi {
            return Err(Error::FamilyInconsistent(format!(
                "primordial cycle {} is not symmetric",
                pi.render()
            )));
        }
        let dim = pi.homogeneous_dimension().expect("atoms are homogeneous");
        let upper: Vec<&Cycle> = atoms
            .iter()
            .filter(|a| a.homogeneous_dimension() == Some(dim + 1))
            .collect();
        for b in upper {
            for (i, j) in [(1, 0), (0, 1)] {
                if mul_by_monomial(b, &[Factor::h(i), Factor::h(j)]) == *pi {
                    return Err(Error::FamilyInconsistent(format!(
                        "{} is a derivative of {}",
                        pi.render(),
                        b.render()
                    )));
                }
            }
        }
        primordial.push(pi.clone());
        f_map.push(shell);
    }
    let derived: BTreeSet<Vec<Monomial>> = primordial
        .iter()
        .flat_map(derivatives)
        .map(|c| c.terms().to_vec())
        .collect();
    let atom_set: BTreeSet<Vec<Monomial>> = atoms.iter().map(|c| c.terms().to_vec()).collect();
    if derived != atom_set {
        return Err(Error::FamilyInconsistent(format!(
            "{} derivatives of primordial cycles against {} minimal cycles",
            derived.len(),
            atom_set.len()
        )));
    }
    Ok(PrimordialReport {
        minimal_cycles: atoms,
        primordial,
        f_map,
    })
}
