use crate::basis::{Factor, Monomial};
use crate::cycle::Cycle;
use crate::error::{Error, Result};

use super::family::RationalFamily;
use super::splitting::SplittingData;

/// `1 + max{i : l_i rational}`, or `0` when no `l_i` is rational.
pub fn witt_index_readoff(family: &RationalFamily) -> u32 {
    let q = family.geometry();
    (0..=q.half())
        .rev()
        .find(|&i| family.contains(&Cycle::basis(q, &[Factor::l(i)])))
        .map_or(0, |i| i + 1)
}

/// Reads `j_1, j_2, ...` off the family: `j_q` is the largest `j` such that
/// `h^0 x h^{j_1} x ... x h^{j_{q-1}} x l_{j-1}` occurs in a rational cycle.
pub fn splitting_readoff(family: &RationalFamily) -> Result<SplittingData> {
    let q = family.geometry();
    let d = q.half();
    let mut partial: Vec<u32> = Vec::new();
    loop {
        let arity = partial.len() + 2;
        if arity > family.max_arity() {
            return Err(Error::InsufficientArity {
                needed: arity,
                available: family.max_arity(),
                partial,
            });
        }
        let prev = partial.last().copied().unwrap_or(0);
        let mut prefix: Monomial = std::iter::once(Factor::h(0)).collect();
        prefix.extend(partial.iter().map(|&j| Factor::h(j)));
        let found = (prev + 1..=d + 1).rev().find(|&j| {
            let mut m = prefix.clone();
            m.push(Factor::l(j - 1));
            family.touches(&m)
        });
        match found {
            Some(j) => {
                partial.push(j);
                if j == d + 1 {
                    break;
                }
            }
            None => {
                return Err(Error::FamilyInconsistent(format!(
                    "insufficient data: no rational cycle contains h0 x ... x l_(j-1) \
                     for j > {prev} at arity {arity}"
                )))
            }
        }
    }
    let indices = std::iter::once(partial[0])
        .chain(partial.windows(2).map(|w| w[1] - w[0]))
        .collect();
    SplittingData::new(indices)
}
