//! Necessary conditions on the rational part of Ch(X̄^*).

use serde::Serialize;

use crate::basis::{
    monomial_dimension, monomial_is_essential, render_monomial, Factor, Monomial, Quadric,
};
use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::gf2::Subspace;
use crate::isotropy::{generic_point_pullback, pr_multi, IsotropySignature};
use crate::ring::mul_by_monomial;
use crate::steenrod::steenrod_k;

use super::family::RationalFamily;
use super::minimal::PrimordialReport;
use super::splitting::SplittingData;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &'static str) -> Self {
        CheckResult {
            name,
            passed: true,
            detail: String::new(),
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        CheckResult {
            name,
            passed: false,
            detail: detail.into(),
        }
    }

    fn from_option(name: &'static str, witness: Option<String>) -> Self {
        match witness {
            None => Self::pass(name),
            Some(w) => Self::fail(name, w),
        }
    }
}

fn mono(fs: &[Factor]) -> Monomial {
    fs.iter().copied().collect()
}

fn hl(i: u32, j: u32) -> Monomial {
    mono(&[Factor::h(i), Factor::l(j)])
}

fn lh(i: u32, j: u32) -> Monomial {
    mono(&[Factor::l(i), Factor::h(j)])
}

fn is_power_of_two(n: u32) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// Fails iff the arity-1 group has an essential element; any `l_i` yields
/// `l_0` after multiplication by `h^i`.
pub fn check_springer(family: &RationalFamily) -> CheckResult {
    let witness = family
        .basis(1)
        .into_iter()
        .find(|c| c.essential_count() > 0)
        .map(|c| format!("essential arity-1 cycle {}", c.render()));
    CheckResult::from_option("springer", witness)
}

/// The smallest `i` such that `h^0 x l_i + l_i x h^0` is rational while
/// `D - i + 1` is not a power of two.
pub fn binary_size_violation(family: &RationalFamily) -> Option<u32> {
    let q = family.geometry();
    if family.max_arity() < 2 {
        return None;
    }
    (0..=q.half()).find(|&i| {
        let c = Cycle::from_terms(q, 2, [hl(0, i), lh(i, 0)]);
        family.contains(&c) && !is_power_of_two(q.dim() - i + 1)
    })
}

pub fn check_binary_size(family: &RationalFamily) -> CheckResult {
    let q = family.geometry();
    CheckResult::from_option(
        "binary_size",
        binary_size_violation(family).map(|i| {
            format!(
                "h0 x l{i} + l{i} x h0 is rational but D-i+1 = {} is not a power of 2",
                q.dim() - i + 1
            )
        }),
    )
}

/// Parity of the number of essential terms of dimension at least `D`.
pub fn check_even_essential(a: &Cycle) -> bool {
    let q = a.geometry();
    a.terms()
        .iter()
        .filter(|m| monomial_is_essential(m) && monomial_dimension(m, q) >= q.dim())
        .count()
        % 2
        == 0
}

/// Basis elements of dimension `D + k - 1` that a rational cycle cannot
/// contain, for `k >= 1`.
pub fn forbidden_cells(q: Quadric, s: &SplittingData, k: u32) -> Vec<Monomial> {
    let d = q.half();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    for shell in 1..=s.height() {
        let (iq, j0) = (s.i(shell), s.j(shell - 1));
        for i in iq.saturating_sub(k) + 1..iq {
            let (hi, li) = (j0 + i, j0 + i + k - 1);
            if hi > d || li > d {
                continue;
            }
            out.push(hl(hi, li));
            out.push(lh(li, hi));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// A forbidden basis element contained in `a`, if any.
pub fn forbidden_witness(a: &Cycle, s: &SplittingData) -> Option<Monomial> {
    let q = a.geometry();
    if a.arity() != 2 {
        return None;
    }
    for dim in a.dimensions() {
        if dim < q.dim() + 1 {
            continue;
        }
        let cells = forbidden_cells(q, s, dim + 1 - q.dim());
        if let Some(m) = cells.into_iter().find(|m| a.contains(m)) {
            return Some(m);
        }
    }
    None
}

pub fn check_forbidden(a: &Cycle, s: &SplittingData) -> bool {
    forbidden_witness(a, s).is_none()
}

/// A pair of mirrored cells of which `a` contains exactly one.
pub fn pairs_witness(a: &Cycle, s: &SplittingData) -> Option<(Monomial, Monomial)> {
    let q = a.geometry();
    let d = q.half();
    if a.arity() != 2 {
        return None;
    }
    for dim in a.dimensions() {
        if dim < q.dim() {
            continue;
        }
        let k = dim - q.dim();
        for shell in 1..=s.height() {
            let (iq, j0, j1) = (s.i(shell), s.j(shell - 1), s.j(shell));
            if k >= iq {
                continue;
            }
            for i in 1..=iq - k {
                let left = hl(j0 + i - 1, j0 + i - 1 + k);
                let right = lh(j1 - i, j1 - i - k);
                if j1 - i > d || j0 + i - 1 + k > d {
                    continue;
                }
                if a.contains(&left) != a.contains(&right) {
                    return Some((left, right));
                }
            }
        }
    }
    None
}

pub fn check_pairs(a: &Cycle, s: &SplittingData) -> bool {
    pairs_witness(a, s).is_none()
}

fn run_on_rows<F>(family: &RationalFamily, name: &'static str, f: F) -> CheckResult
where
    F: Fn(&Cycle) -> Option<String>,
{
    if family.max_arity() < 2 {
        return CheckResult::pass(name);
    }
    let witness = family
        .essential_basis(2)
        .iter()
        .find_map(|c| f(c).map(|w| format!("{w} in {}", c.render())));
    CheckResult::from_option(name, witness)
}

pub fn check_family_even_essential(family: &RationalFamily) -> CheckResult {
    run_on_rows(family, "even_essential", |c| {
        (!check_even_essential(c)).then(|| "odd number of essential terms".to_string())
    })
}

pub fn check_family_pairs(family: &RationalFamily, s: &SplittingData) -> CheckResult {
    run_on_rows(family, "pairs", |c| {
        pairs_witness(c, s).map(|(l, r)| {
            format!(
                "unmatched pair {} / {}",
                render_monomial(&l),
                render_monomial(&r)
            )
        })
    })
}

pub fn check_family_forbidden(family: &RationalFamily, s: &SplittingData) -> CheckResult {
    run_on_rows(family, "forbidden", |c| {
        forbidden_witness(c, s).map(|m| format!("forbidden cell {}", render_monomial(&m)))
    })
}

/// `l_d x l_d` appears in no rational cycle (even `D`).
pub fn check_herovyj(family: &RationalFamily) -> CheckResult {
    let q = family.geometry();
    if !q.is_even() || family.max_arity() < 2 {
        return CheckResult::pass("herovyj");
    }
    let d = q.half();
    let m = [Factor::l(d), Factor::l(d)];
    if family.touches(&m) {
        CheckResult::fail("herovyj", format!("l{d} x l{d} occurs in a rational cycle"))
    } else {
        CheckResult::pass("herovyj")
    }
}

/// `Sym(Σ_{i=1}^{(d+1)/a} h^{(i-1)a} x l_{ia-1})`.
pub fn known_pi(q: Quadric, a: u32) -> Cycle {
    let n = (q.half() + 1) / a;
    let terms = (1..=n).flat_map(|i| [hl((i - 1) * a, i * a - 1), lh(i * a - 1, (i - 1) * a)]);
    Cycle::from_terms(q, 2, terms)
}

fn essential_slice(family: &RationalFamily, dim: u32) -> Subspace {
    let ix = family.indexer(2);
    let mut s = Subspace::new(ix.len());
    for c in family.essential_basis(2) {
        let part = c.filter(|m| {
            monomial_is_essential(m) && monomial_dimension(m, family.geometry()) == dim
        });
        s.insert(&ix.encode(&part));
    }
    s
}

/// Divisibility of the Witt indices by `a = i_1`, rationality of `π` and
/// the description of every slice of dimension at least `2d` by the
/// derivatives of `π`.
pub fn check_known(family: &RationalFamily, s: &SplittingData) -> CheckResult {
    const NAME: &str = "known";
    let q = family.geometry();
    let a = s.i(1);
    if let Some(bad) = s.witt_indices().iter().find(|&&i| i % a != 0) {
        return CheckResult::fail(NAME, format!("i_1 = {a} does not divide {bad}"));
    }
    if !s.is_complete_for(q) {
        return CheckResult::fail(NAME, "Witt indices do not sum to d+1");
    }
    if family.max_arity() < 2 {
        return CheckResult::fail(NAME, "arity-2 group missing");
    }
    let pi = known_pi(q, a);
    if !family.contains(&pi) {
        return CheckResult::fail(NAME, format!("{} is not rational", pi.render()));
    }
    let ix = family.indexer(2);
    let two_d = 2 * q.half();
    for k in 0..=(2 * q.dim() - two_d) {
        let actual = essential_slice(family, two_d + k);
        let mut expected = Subspace::new(ix.len());
        for j in 1..=a.saturating_sub(k) {
            let dv = mul_by_monomial(&pi, &[Factor::h(j - 1), Factor::h(a - k - j)]);
            expected.insert(&ix.encode(&dv.filter(|m| monomial_is_essential(m))));
        }
        if !actual.is_subspace_of(&expected) || !expected.is_subspace_of(&actual) {
            return CheckResult::fail(
                NAME,
                format!(
                    "essential part of dimension {} has rank {}, expected {}",
                    two_d + k,
                    actual.dimension(),
                    expected.dimension()
                ),
            );
        }
    }
    CheckResult::pass(NAME)
}

/// `#Π - 1 <= #Π_1`, and `#Π <= #Π_1` unless the binary cycle
/// `h^0 x l_{i_1-1} + l_{i_1-1} x h^0` is primordial.
pub fn check_neravenstva(
    pi: &PrimordialReport,
    pi1: &PrimordialReport,
    i1: u32,
    contains_binary: bool,
) -> CheckResult {
    let (n, n1) = (pi.primordial.len(), pi1.primordial.len());
    if n > n1 + 1 {
        return CheckResult::fail(
            "neravenstva",
            format!("#Π = {n} exceeds #Π_1 + 1 = {}", n1 + 1),
        );
    }
    if !contains_binary && n > n1 {
        return CheckResult::fail(
            "neravenstva",
            format!(
                "#Π = {n} > #Π_1 = {n1} without h0 x l{} + l{} x h0 in Π",
                i1 - 1,
                i1 - 1
            ),
        );
    }
    CheckResult::pass("neravenstva")
}

/// Every rational cycle pulled back to the generic point and projected to
/// the anisotropic part through any signature must be rational there.
pub fn check_supplement(
    family: &RationalFamily,
    inner: &RationalFamily,
    s: &SplittingData,
) -> Result<CheckResult> {
    const NAME: &str = "supplement";
    let q = family.geometry();
    let a = s.i(1);
    if 2 * a > q.dim() {
        return Ok(CheckResult::pass(NAME));
    }
    let expected = Quadric::new(q.dim() - 2 * a);
    if inner.geometry() != expected {
        return Err(Error::GeometryMismatch {
            left: expected.dim(),
            right: inner.geometry().dim(),
        });
    }
    for r in 2..=family.max_arity() {
        for c in family.essential_basis(r) {
            let g = generic_point_pullback(&c)?;
            for sig in IsotropySignature::enumerate(q, a, r - 1)? {
                let sn = sig.s();
                if sn == 0 || sn > inner.max_arity() {
                    continue;
                }
                let img = pr_multi(&g, &sig)?;
                if !inner.contains(&img) {
                    return Ok(CheckResult::fail(
                        NAME,
                        format!(
                            "image {} of {} under {:?} is not in the inner family",
                            img.render(),
                            c.render(),
                            sig.indices()
                        ),
                    ));
                }
            }
        }
    }
    Ok(CheckResult::pass(NAME))
}

/// Every applicable check. Shell checks need splitting data; the
/// supplement check also needs the inner family.
pub fn check_all(
    family: &RationalFamily,
    inner: Option<&RationalFamily>,
) -> Result<Vec<CheckResult>> {
    let mut out = vec![
        check_springer(family),
        check_binary_size(family),
        check_family_even_essential(family),
        check_herovyj(family),
    ];
    if let Some(s) = family.splitting() {
        out.push(check_family_pairs(family, s));
        out.push(check_family_forbidden(family, s));
        if let Some(inner) = inner {
            out.push(check_supplement(family, inner, s)?);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum I1Exclusion {
    Excluded,
    NotExcluded,
}

/// Tries to rule out `i_1 = i1` for a form of dimension `D + 2`.
///
/// A rational `α` of dimension `D + i1 - 1` containing `h^0 x l_{i1-1}`
/// has its other cells of that row either forbidden or free. With `2^r`
/// the 2-part of `D + 2 - i1`, the functional "coefficient of
/// `h^0 x l_{i1-1-2^r}` plus coefficient of `l_{i1-1} x h^{2^r}`" applied
/// to `S^{2^r}(α)` must vanish by the pair rule; when it equals one on
/// every admissible `α`, the value is excluded.
pub fn i1_exclusion_via_steenrod(q: Quadric, i1: u32) -> Result<I1Exclusion> {
    let d = q.half();
    if i1 == 0 || i1 > d + 1 {
        return Err(Error::InvalidArgument(format!(
            "first Witt index {i1} outside 1..={}",
            d + 1
        )));
    }
    let n = q.dim() + 2 - i1;
    let p = 1u32 << n.trailing_zeros();
    if i1 <= p {
        return Ok(I1Exclusion::NotExcluded);
    }
    let k = i1 - 1;
    let target = hl(0, k - p);
    let mirror = lh(k, p);
    let f = |cell: Monomial| -> Result<bool> {
        let img = steenrod_k(&Cycle::basis(q, &cell), p)?;
        Ok(img.contains(&target) != img.contains(&mirror))
    };
    let forced = f(hl(0, k))? != f(lh(k, 0))?;
    let mut free_zero = true;
    for x in i1..=d {
        if x + k > d {
            break;
        }
        if f(hl(x, x + k))? || f(lh(x + k, x))? {
            free_zero = false;
            break;
        }
    }
    Ok(if forced && free_zero {
        I1Exclusion::Excluded
    } else {
        I1Exclusion::NotExcluded
    })
}
