use serde::{Deserialize, Serialize};

use crate::basis::Quadric;
use crate::error::{Error, Result};

/// Higher Witt indices `i_1, ..., i_h` of an anisotropic form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SplittingData {
    witt_indices: Vec<u32>,
}

impl SplittingData {
    pub fn new(witt_indices: Vec<u32>) -> Result<Self> {
        if witt_indices.is_empty() || witt_indices.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "higher Witt indices must be a non-empty list of positive integers, got {witt_indices:?}"
            )));
        }
        Ok(SplittingData { witt_indices })
    }

    /// Like `new`, additionally requiring `j_h = d + 1`.
    pub fn for_quadric(q: Quadric, witt_indices: Vec<u32>) -> Result<Self> {
        let s = Self::new(witt_indices)?;
        if s.j(s.height()) != q.half() + 1 {
            return Err(Error::InvalidArgument(format!(
                "Witt indices {:?} sum to {}, expected d+1 = {} for D={}",
                s.witt_indices,
                s.j(s.height()),
                q.half() + 1,
                q.dim()
            )));
        }
        Ok(s)
    }

    pub fn height(&self) -> usize {
        self.witt_indices.len()
    }

    pub fn witt_indices(&self) -> &[u32] {
        &self.witt_indices
    }

    /// `i_q` for `q` in `1..=h`.
    pub fn i(&self, q: usize) -> u32 {
        self.witt_indices[q - 1]
    }

    /// `j_q = i_1 + ... + i_q`, with `j_0 = 0`.
    pub fn j(&self, q: usize) -> u32 {
        self.witt_indices[..q].iter().sum()
    }

    pub fn partial_sums(&self) -> Vec<u32> {
        (1..=self.height()).map(|q| self.j(q)).collect()
    }

    pub fn is_complete_for(&self, q: Quadric) -> bool {
        self.j(self.height()) == q.half() + 1
    }

    /// Dimension of the form: `D + 2`.
    pub fn dim_form(&self, q: Quadric) -> u32 {
        q.dim() + 2
    }
}
