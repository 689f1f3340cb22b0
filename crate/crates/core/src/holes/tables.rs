//! Closed forms for `S^{<=2a}` on `h^{ia}` and `l_{ia-1}`, valid when
//! `d + 1 ≡ a (mod 4a)`.

use crate::basis::{Factor, Quadric};
use crate::cycle::Cycle;

use super::params::HoleParams;

fn h_or_zero(q: Quadric, i: i64) -> Option<Factor> {
    (0..=q.half() as i64)
        .contains(&i)
        .then(|| Factor::h(i as u32))
}

fn l_or_zero(q: Quadric, i: i64) -> Option<Factor> {
    (0..=q.half() as i64)
        .contains(&i)
        .then(|| Factor::l(i as u32))
}

fn single(q: Quadric, fs: impl IntoIterator<Item = Option<Factor>>) -> Cycle {
    Cycle::from_terms(
        q,
        1,
        fs.into_iter()
            .flatten()
            .map(|f| std::iter::once(f).collect()),
    )
}

/// `S^{<=2a}(h^{ia})` read off `i mod 4`.
pub fn table_h(params: &HoleParams, i: u32) -> Cycle {
    let q = params.quadric();
    let a = params.a() as i64;
    let i = i as i64;
    let shifts: &[i64] = match i % 4 {
        0 => &[0],
        1 => &[0, 1],
        2 => &[0, 2],
        _ => &[0, 1, 2],
    };
    single(q, shifts.iter().map(|s| h_or_zero(q, (i + s) * a)))
}

/// `S^{<=2a}(l_{ia-1})` read off `i mod 4`.
pub fn table_l(params: &HoleParams, i: u32) -> Cycle {
    let q = params.quadric();
    let a = params.a() as i64;
    let i = i as i64;
    let shifts: &[i64] = match i % 4 {
        0 => &[0, 2],
        1 => &[0, 1],
        2 => &[0],
        _ => &[0, 1, 2],
    };
    single(q, shifts.iter().map(|s| l_or_zero(q, (i - s) * a - 1)))
}
