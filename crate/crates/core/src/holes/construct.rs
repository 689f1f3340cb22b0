//! The cycle `μ = μ₀ + μ′` on X³ and the cycle `ξ` on X² built from it.

use crate::basis::{enumerate_basis, Factor, Kind, Monomial};
use crate::correspondence::{compose_unchecked, delta_pullback_q};
use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::ring::{external_product, mul_by_monomial, sym, transpose};
use crate::steenrod::steenrod_k;

use super::params::HoleParams;

fn mono(fs: &[Factor]) -> Monomial {
    fs.iter().copied().collect()
}

/// `μ₀ = Sym(Σ_{i=1}^{N_b} h^0 x h^{(i-1)b+a} x l_{ib+a-1})`.
pub fn build_mu_zero(p: &HoleParams) -> Cycle {
    let q = p.quadric();
    let (a, b) = (p.a(), p.b());
    let base = Cycle::from_terms(
        q,
        3,
        (1..=p.n_b()).map(|i| {
            mono(&[
                Factor::h(0),
                Factor::h((i - 1) * b + a),
                Factor::l(i * b + a - 1),
            ])
        }),
    );
    sym(&base)
}

/// `χ_j = h^a x (Sym(Σ_{i=1}^{N_c} h^{(i-1)c+b+a} x l_{ic+b+a-1}) · (h^{(j-1)a} x h^{c-b-ja}))`.
pub fn build_chi(p: &HoleParams, j: u32) -> Result<Cycle> {
    if j == 0 || j > p.j_count() {
        return Err(Error::InvalidArgument(format!(
            "j = {j} outside 1..={}",
            p.j_count()
        )));
    }
    let q = p.quadric();
    let (a, b, c) = (p.a(), p.b(), p.c());
    let inner = sym(&Cycle::from_terms(
        q,
        2,
        (1..=p.n_c())
            .map(|i| mono(&[Factor::h((i - 1) * c + b + a), Factor::l(i * c + b + a - 1)])),
    ));
    let inner = mul_by_monomial(&inner, &[Factor::h((j - 1) * a), Factor::h(c - b - j * a)]);
    external_product(&Cycle::basis(q, &[Factor::h(a)]), &inner)
}

/// The `3J` candidate summands of `μ′`: `χ_j`, then `t₁₂(χ_j)`, then
/// `t₁₃(χ_j)`, each for `j = 1..=J`.
pub fn mu_prime_generators(p: &HoleParams) -> Vec<Cycle> {
    let chis: Vec<Cycle> = (1..=p.j_count())
        .map(|j| build_chi(p, j).expect("j in range"))
        .collect();
    let mut out = chis.clone();
    out.extend(chis.iter().map(|c| transpose(c, 0, 1)));
    out.extend(chis.iter().map(|c| transpose(c, 0, 2)));
    out
}

/// `μ′` for a choice of generators encoded as bits of `mask`.
pub fn mu_prime(p: &HoleParams, mask: u64) -> Result<Cycle> {
    let gens = mu_prime_generators(p);
    if gens.len() < 64 && mask >> gens.len() != 0 {
        return Err(Error::InvalidArgument(format!(
            "mask {mask:#x} has bits beyond the {} generators",
            gens.len()
        )));
    }
    let chosen: Vec<&Cycle> = gens
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, g)| g)
        .collect();
    Ok(Cycle::sum(p.quadric(), 3, chosen))
}

/// `S^{2a}(x) · (h^0 x h^0 x h^{b-1})`.
pub fn inner_factor(p: &HoleParams, x: &Cycle) -> Result<Cycle> {
    let s = steenrod_k(x, 2 * p.a())?;
    Ok(mul_by_monomial(
        &s,
        &[Factor::h(0), Factor::h(0), Factor::h(p.b() - 1)],
    ))
}

/// `δ*(outer ∘ inner)` with `inner` read as a correspondence X² → X and
/// `outer` as X → X².
pub fn pair_xi(inner: &Cycle, outer: &Cycle) -> Result<Cycle> {
    delta_pullback_q(&compose_unchecked(inner, outer))
}

/// `ξ = δ*(μ ∘ (S^{2a}(μ) · (h^0 x h^0 x h^{b-1})))`.
pub fn build_xi(mu: &Cycle, p: &HoleParams) -> Result<Cycle> {
    if mu.arity() != 3 {
        return Err(Error::ArityMismatch {
            expected: 3,
            found: mu.arity(),
        });
    }
    p.quadric().check_same(mu.geometry())?;
    pair_xi(&inner_factor(p, mu)?, mu)
}

/// The basis element `h^a x l_{b-a-1}`.
pub fn target(p: &HoleParams) -> Monomial {
    mono(&[Factor::h(p.a()), Factor::l(p.b() - p.a() - 1)])
}

/// `Sym(Σ h^{(i-1)b+a} x l_{ib-a-1} + h^{(i-1)b+3a} x l_{ib+a-1})`.
pub fn expected_first_summand(p: &HoleParams) -> Cycle {
    let (a, b) = (p.a(), p.b());
    let base = Cycle::from_terms(
        p.quadric(),
        2,
        (1..=p.n_b()).flat_map(|i| {
            [
                mono(&[Factor::h((i - 1) * b + a), Factor::l(i * b - a - 1)]),
                mono(&[Factor::h((i - 1) * b + 3 * a), Factor::l(i * b + a - 1)]),
            ]
        }),
    );
    sym(&base)
}

/// `Sym(Σ h^0 x h^{(i-1)b+2a} x l_{ib-1})`.
pub fn expected_s2a_mu_zero(p: &HoleParams) -> Cycle {
    let (a, b) = (p.a(), p.b());
    sym(&Cycle::from_terms(
        p.quadric(),
        3,
        (1..=p.n_b()).map(|i| {
            mono(&[
                Factor::h(0),
                Factor::h((i - 1) * b + 2 * a),
                Factor::l(i * b - 1),
            ])
        }),
    ))
}

/// Essential basis elements of the dimension of `μ` that avoid `h^0`,
/// avoid `h^a`, and whose `h`-powers are multiples of `a`.
pub fn admissible_without_h_a(p: &HoleParams) -> Vec<Monomial> {
    let q = p.quadric();
    let dim = 2 * q.dim() + p.b() - 1;
    let a = p.a();
    enumerate_basis(q, 3, Some(dim))
        .expect("arity 3")
        .into_iter()
        .filter(|m| {
            m.iter().any(|f| f.kind == Kind::L)
                && m.iter().all(|f| {
                    f.kind == Kind::L || (f.index != 0 && f.index != a && f.index % a == 0)
                })
        })
        .collect()
}

/// Whether every admissible element without an `h^a` factor leaves the
/// coefficient of `h^a x l_{b-a-1}` in both mixed blocks untouched.
pub fn h_a_free_terms_are_inert(p: &HoleParams) -> Result<bool> {
    let q = p.quadric();
    let mu0 = build_mu_zero(p);
    let inner0 = inner_factor(p, &mu0)?;
    let t = target(p);
    for m in admissible_without_h_a(p) {
        let e = Cycle::basis(q, &m);
        if pair_xi(&inner0, &e)?.contains(&t) || pair_xi(&inner_factor(p, &e)?, &mu0)?.contains(&t)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mu_zero_shape() {
        let p = HoleParams::new(4, 3, 1).unwrap();
        let mu = build_mu_zero(&p);
        assert_eq!(mu.len(), 18);
        assert!(mu.contains(&mono(&[Factor::h(0), Factor::h(1), Factor::l(4)])));
        assert!(mu.contains(&mono(&[Factor::l(12), Factor::h(9), Factor::h(0)])));
        assert_eq!(mu.homogeneous_dimension(), Some(2 * 24 + 3));
    }

    #[test]
    fn chi_one() {
        let p = HoleParams::new(4, 3, 1).unwrap();
        assert_eq!(
            build_chi(&p, 1).unwrap().render(),
            "h1 x h5 x l9 + h1 x l12 x h8"
        );
        assert!(build_chi(&p, 5).is_err());
        assert_eq!(mu_prime_generators(&p).len(), 12);
    }
}
