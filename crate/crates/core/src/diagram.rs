//! Text pictures of the basis of Ch^{<=D}(X̄²).
//!
//! Row `c` lists the basis elements of codimension `c`, ordered by the
//! codimension of the first factor (`h^i x ?` before `l_j x ?` of the same
//! codimension), with `l_d x l_d` left out for even `D`.

use crate::basis::{monomial_codimension, Factor, Kind, Monomial, Quadric};
use crate::cycle::Cycle;
use crate::error::{Error, Result};
use crate::structure::SplittingData;

pub const NON_ESSENTIAL: char = '∘';
pub const ESSENTIAL: char = '∗';
pub const MARKED: char = '●';

/// The cells of row `c`, in display order.
pub fn pyramid_row(q: Quadric, c: u32) -> Vec<Monomial> {
    let d = q.half();
    let mut cells: Vec<(u32, u8, Monomial)> = Vec::new();
    let factors: Vec<Factor> = (0..=d)
        .map(Factor::h)
        .chain((0..=d).map(Factor::l))
        .collect();
    for &a in &factors {
        for &b in &factors {
            let m: Monomial = [a, b].into_iter().collect();
            if monomial_codimension(&m, q) != c {
                continue;
            }
            if q.is_even() && a == Factor::l(d) && b == Factor::l(d) {
                continue;
            }
            let class = match (a.kind, b.kind) {
                (Kind::H, Kind::L) => 0,
                (Kind::H, Kind::H) => 1,
                (Kind::L, Kind::H) => 2,
                (Kind::L, Kind::L) => 3,
            };
            cells.push((a.codimension(q), class, m));
        }
    }
    cells.sort();
    cells.into_iter().map(|(_, _, m)| m).collect()
}

/// Whether an essential cell lies in a shell triangle: both indices in the
/// same `[j_{q-1}, j_q)`.
pub fn allowed_by_shells(s: &SplittingData, m: &[Factor]) -> bool {
    let (x, y) = match (m[0].kind, m[1].kind) {
        (Kind::H, Kind::L) => (m[0].index, m[1].index),
        (Kind::L, Kind::H) => (m[1].index, m[0].index),
        _ => return false,
    };
    if y < x {
        return false;
    }
    (1..=s.height()).any(|q| {
        let range = s.j(q - 1)..s.j(q);
        range.contains(&x) && range.contains(&y)
    })
}

/// One character per cell, rows `0..=D`.
pub fn pyramid_symbols(
    q: Quadric,
    cycle: Option<&Cycle>,
    splitting: Option<&SplittingData>,
) -> Result<Vec<String>> {
    if let Some(c) = cycle {
        q.check_same(c.geometry())?;
        if c.arity() != 2 {
            return Err(Error::ArityMismatch {
                expected: 2,
                found: c.arity(),
            });
        }
    }
    if let Some(s) = splitting {
        if !s.is_complete_for(q) {
            return Err(Error::InvalidArgument(format!(
                "Witt indices {:?} do not sum to d+1 = {}",
                s.witt_indices(),
                q.half() + 1
            )));
        }
    }
    Ok((0..=q.dim())
        .map(|c| {
            pyramid_row(q, c)
                .iter()
                .map(|m| {
                    let marked = cycle.is_some_and(|z| z.contains(m))
                        || splitting.is_some_and(|s| allowed_by_shells(s, m));
                    if marked {
                        MARKED
                    } else if crate::basis::monomial_is_essential(m) {
                        ESSENTIAL
                    } else {
                        NON_ESSENTIAL
                    }
                })
                .collect()
        })
        .collect())
}

/// The centred pyramid, symbols separated by single spaces.
pub fn render_pyramid(
    q: Quadric,
    cycle: Option<&Cycle>,
    splitting: Option<&SplittingData>,
) -> Result<String> {
    let rows = pyramid_symbols(q, cycle, splitting)?;
    let width = rows.iter().map(|r| r.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let n = r.chars().count();
        out.push_str(&" ".repeat(width - n));
        let spaced: Vec<String> = r.chars().map(String::from).collect();
        out.push_str(&spaced.join(" "));
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correspondence::diagonal_class;

    #[test]
    fn row_order() {
        let q = Quadric::new(8);
        let r: Vec<String> = pyramid_row(q, 4)
            .iter()
            .map(|m| crate::basis::render_monomial(m))
            .collect();
        assert_eq!(
            r,
            ["h0 x l4", "h0 x h4", "h1 x h3", "h2 x h2", "h3 x h1", "h4 x h0", "l4 x h0"]
        );
    }

    #[test]
    fn diagonal_marks_bottom_row() {
        let q = Quadric::new(2);
        let rows = pyramid_symbols(q, Some(&diagonal_class(q)), None).unwrap();
        assert_eq!(rows[2], "●●∘●●");
    }
}
