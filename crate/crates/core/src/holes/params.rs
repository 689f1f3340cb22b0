use serde::{Deserialize, Serialize};

use crate::basis::Quadric;
use crate::error::{Error, Result};
use crate::structure::SplittingData;

/// Shape `dim φ = 2^n + 2^{n-1} + ... + 2^m + 2^p` with `n >= 4`,
/// `3 <= m <= n-1`, `1 <= p <= m-2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HoleParams {
    pub n: u32,
    pub m: u32,
    pub p: u32,
}

impl HoleParams {
    pub fn new(n: u32, m: u32, p: u32) -> Result<Self> {
        if !(4..=12).contains(&n) {
            return Err(Error::InvalidArgument(format!("n = {n} outside 4..=12")));
        }
        if m < 3 || m > n - 1 {
            return Err(Error::InvalidArgument(format!(
                "m = {m} outside 3..={}",
                n - 1
            )));
        }
        if p < 1 || p > m - 2 {
            return Err(Error::InvalidArgument(format!(
                "p = {p} outside 1..={}",
                m - 2
            )));
        }
        let s = HoleParams { n, m, p };
        let (a, b, c, d) = (s.a(), s.b(), s.c(), s.d());
        assert_eq!((d - a + 1) % b, 0);
        assert_eq!((d - b - a + 1) % c, 0);
        assert_eq!(b % (4 * a), 0);
        assert_eq!((d + 1) % b, a % b);
        Ok(s)
    }

    pub fn a(&self) -> u32 {
        1 << (self.p - 1)
    }

    pub fn b(&self) -> u32 {
        1 << (self.m - 1)
    }

    pub fn c(&self) -> u32 {
        1 << self.m
    }

    /// `2^{n-1} + ... + 2^{m-1} + 2^{p-1} - 1`.
    pub fn d(&self) -> u32 {
        (1 << self.n) - (1 << (self.m - 1)) + self.a() - 1
    }

    pub fn dim(&self) -> u32 {
        2 * self.d()
    }

    pub fn quadric(&self) -> Quadric {
        Quadric::new(self.dim())
    }

    pub fn dim_form(&self) -> u32 {
        self.dim() + 2
    }

    pub fn n_b(&self) -> u32 {
        (self.d() - self.a() + 1) / self.b()
    }

    pub fn n_c(&self) -> u32 {
        (self.d() - self.b() - self.a() + 1) / self.c()
    }

    /// Number of candidate `χ_j`: `(c - b) / a`.
    pub fn j_count(&self) -> u32 {
        (self.c() - self.b()) / self.a()
    }

    pub fn splitting(&self) -> SplittingData {
        forced_witt_sequence(self.n, self.dim_form()).expect("valid parameters")
    }
}

/// The higher Witt indices `(2^{p-1}, 2^{m-1}, 2^m, ..., 2^{n-1})` forced
/// for a form in `I^n` of dimension `2^n + ... + 2^m + 2^p`.
pub fn forced_witt_sequence(n: u32, dim: u32) -> Result<SplittingData> {
    if !(2..=30).contains(&n) {
        return Err(Error::InvalidArgument(format!("n = {n} outside 2..=30")));
    }
    let top = 1u32 << (n + 1);
    for m in 2..n {
        let base = top - (1 << m);
        if dim <= base {
            continue;
        }
        let rest = dim - base;
        if rest.is_power_of_two() && rest >= 2 && rest < (1 << (m - 1)) {
            let p = rest.trailing_zeros();
            let mut v = vec![1 << (p - 1)];
            v.extend((m - 1..n).map(|k| 1u32 << k));
            return SplittingData::new(v);
        }
    }
    Err(Error::InvalidArgument(format!(
        "{dim} is not of the form 2^{n} + ... + 2^m + 2^p with p <= m-2"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_quantities() {
        let s = HoleParams::new(4, 3, 1).unwrap();
        assert_eq!((s.a(), s.b(), s.c(), s.d()), (1, 4, 8, 12));
        assert_eq!((s.n_b(), s.n_c(), s.j_count()), (3, 1, 4));
        let t = HoleParams::new(5, 4, 2).unwrap();
        assert_eq!((t.a(), t.b(), t.c(), t.d()), (2, 8, 16, 25));
        assert_eq!(t.j_count(), 4);
        assert!(HoleParams::new(4, 4, 1).is_err());
        assert!(HoleParams::new(4, 3, 2).is_err());
        assert!(HoleParams::new(3, 3, 1).is_err());
    }

    #[test]
    fn forced_sequences() {
        let s = forced_witt_sequence(4, 26).unwrap();
        assert_eq!(s.witt_indices(), &[1, 4, 8]);
        assert_eq!(s.partial_sums(), vec![1, 5, 13]);
        assert_eq!(
            forced_witt_sequence(5, 50).unwrap().witt_indices(),
            &[1, 8, 16]
        );
        assert!(forced_witt_sequence(4, 20).is_err());
        let p = HoleParams::new(5, 4, 2).unwrap();
        assert!(p.splitting().is_complete_for(p.quadric()));
    }
}
