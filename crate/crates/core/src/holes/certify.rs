//! Certification that `h^a x l_{b-a-1}` lies in `ξ` for every admissible
//! `μ′`.

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::render_monomial;
use crate::cycle::Cycle;
use crate::error::{Error, Result};

use super::construct::{
    build_mu_zero, build_xi, inner_factor, mu_prime, mu_prime_generators, pair_xi, target,
};
use super::params::HoleParams;

/// Above `2^BRUTE_LIMIT_BITS` cases `Auto` switches to the bilinear method.
pub const BRUTE_LIMIT_BITS: u32 = 20;

const MAX_LISTED_FAILURES: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Brute,
    Bilinear,
    Auto,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Method::Brute),
            "bilinear" => Ok(Method::Bilinear),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::InvalidArgument(format!(
                "unknown method {s:?}; expected brute, bilinear or auto"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSummary {
    pub n: u32,
    pub m: u32,
    pub p: u32,
    pub a: u32,
    pub b: u32,
    pub c: u32,
    pub d: u32,
    #[serde(rename = "D")]
    pub dim: u32,
    pub n_b: u32,
    pub n_c: u32,
    pub j_count: u32,
}

impl From<&HoleParams> for ParamSummary {
    fn from(p: &HoleParams) -> Self {
        ParamSummary {
            n: p.n,
            m: p.m,
            p: p.p,
            a: p.a(),
            b: p.b(),
            c: p.c(),
            d: p.d(),
            dim: p.dim(),
            n_b: p.n_b(),
            n_c: p.n_c(),
            j_count: p.j_count(),
        }
    }
}

/// Target coefficients of the three blocks that involve `μ′`, generator
/// by generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockParities {
    /// `[g][h]`: outer `g`, inner `h`.
    pub mu_prime_mu_prime: Vec<Vec<u8>>,
    pub mu_prime_outer_mu_zero_inner: Vec<u8>,
    pub mu_zero_outer_mu_prime_inner: Vec<u8>,
}

impl BlockParities {
    pub fn all_zero(&self) -> bool {
        self.mu_prime_mu_prime.iter().flatten().all(|&x| x == 0)
            && self.mu_prime_outer_mu_zero_inner.iter().all(|&x| x == 0)
            && self.mu_zero_outer_mu_prime_inner.iter().all(|&x| x == 0)
    }

    /// Coefficient of `x_g` in the target coefficient as a polynomial in
    /// the selection bits.
    pub fn linear(&self) -> Vec<u8> {
        (0..self.mu_prime_outer_mu_zero_inner.len())
            .map(|g| {
                self.mu_prime_outer_mu_zero_inner[g]
                    ^ self.mu_zero_outer_mu_prime_inner[g]
                    ^ self.mu_prime_mu_prime[g][g]
            })
            .collect()
    }

    /// Pairs `g < h` whose monomial `x_g x_h` survives.
    pub fn quadratic(&self) -> Vec<[usize; 2]> {
        let n = self.mu_prime_mu_prime.len();
        let mut out = Vec::new();
        for g in 0..n {
            for h in g + 1..n {
                if self.mu_prime_mu_prime[g][h] ^ self.mu_prime_mu_prime[h][g] == 1 {
                    out.push([g, h]);
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruteSummary {
    pub cases: u64,
    pub failures: u64,
    pub failing_masks: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub params: ParamSummary,
    pub method: Method,
    pub target: String,
    pub mu_zero: String,
    pub generators: Vec<String>,
    pub xi_mu_zero: String,
    pub xi_dimension: Option<u32>,
    pub constant_term: bool,
    pub blocks: BlockParities,
    pub per_block_zero: bool,
    pub brute: Option<BruteSummary>,
    /// Whether the bilinear expansion predicts the target for every mask.
    pub bilinear_certified: bool,
    pub certified: bool,
}

fn bit(b: bool) -> u8 {
    u8::from(b)
}

fn block_parities(p: &HoleParams, mu0: &Cycle, gens: &[Cycle]) -> Result<BlockParities> {
    let t = target(p);
    let inner0 = inner_factor(p, mu0)?;
    let inners: Vec<Cycle> = gens
        .iter()
        .map(|g| inner_factor(p, g))
        .collect::<Result<_>>()?;
    let mu_prime_mu_prime = gens
        .par_iter()
        .map(|outer| {
            inners
                .iter()
                .map(|inner| Ok(bit(pair_xi(inner, outer)?.contains(&t))))
                .collect::<Result<Vec<u8>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mu_prime_outer_mu_zero_inner = gens
        .iter()
        .map(|g| Ok(bit(pair_xi(&inner0, g)?.contains(&t))))
        .collect::<Result<_>>()?;
    let mu_zero_outer_mu_prime_inner = inners
        .iter()
        .map(|inner| Ok(bit(pair_xi(inner, mu0)?.contains(&t))))
        .collect::<Result<_>>()?;
    Ok(BlockParities {
        mu_prime_mu_prime,
        mu_prime_outer_mu_zero_inner,
        mu_zero_outer_mu_prime_inner,
    })
}

fn brute_force(p: &HoleParams, mu0: &Cycle, nbits: u32) -> Result<BruteSummary> {
    let t = target(p);
    let total = 1u64 << nbits;
    let mut failing: Vec<u64> = (0..total)
        .into_par_iter()
        .map(|mask| {
            let mu = mu0.add(&mu_prime(p, mask)?)?;
            Ok((!build_xi(&mu, p)?.contains(&t)).then_some(mask))
        })
        .collect::<Result<Vec<Option<u64>>>>()?
        .into_iter()
        .flatten()
        .collect();
    let failures = failing.len() as u64;
    failing.truncate(MAX_LISTED_FAILURES);
    Ok(BruteSummary {
        cases: total,
        failures,
        failing_masks: failing,
    })
}

/// `μ = μ₀ + μ′(mask)` and `ξ(μ)`, for auditing a single case.
pub fn single_case(p: &HoleParams, mask: u64) -> Result<(Cycle, Cycle)> {
    let mu = build_mu_zero(p).add(&mu_prime(p, mask)?)?;
    let xi = build_xi(&mu, p)?;
    Ok((mu, xi))
}

/// Checks that `h^a x l_{b-a-1}` occurs in `ξ(μ₀ + μ′)` for all `2^{3J}`
/// choices of `μ′`. `jobs` bounds the worker count.
pub fn verify_contradiction(
    p: &HoleParams,
    method: Method,
    jobs: Option<usize>,
) -> Result<Certificate> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        builder = builder.num_threads(j.max(1));
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| verify_inner(p, method))
}

fn verify_inner(p: &HoleParams, method: Method) -> Result<Certificate> {
    let mu0 = build_mu_zero(p);
    let gens = mu_prime_generators(p);
    let nbits = gens.len() as u32;
    let method = match method {
        Method::Auto if nbits <= BRUTE_LIMIT_BITS => Method::Brute,
        Method::Auto => Method::Bilinear,
        m => m,
    };
    if method == Method::Brute && nbits > BRUTE_LIMIT_BITS + 10 {
        return Err(Error::InvalidArgument(format!(
            "2^{nbits} cases are too many for brute force"
        )));
    }
    let xi0 = build_xi(&mu0, p)?;
    let t = target(p);
    let constant_term = xi0.contains(&t);
    let blocks = block_parities(p, &mu0, &gens)?;
    let bilinear_certified =
        constant_term && blocks.linear().iter().all(|&x| x == 0) && blocks.quadratic().is_empty();
    let brute = if method == Method::Brute {
        Some(brute_force(p, &mu0, nbits)?)
    } else {
        None
    };
    let certified = match &brute {
        Some(b) => b.failures == 0,
        None => bilinear_certified,
    };
    Ok(Certificate {
        params: p.into(),
        method,
        target: render_monomial(&t),
        mu_zero: mu0.render(),
        generators: gens.iter().map(Cycle::render).collect(),
        xi_mu_zero: xi0.render(),
        xi_dimension: xi0.homogeneous_dimension(),
        constant_term,
        per_block_zero: blocks.all_zero(),
        blocks,
        brute,
        bilinear_certified,
        certified,
    })
}
