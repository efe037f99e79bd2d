use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A subset of `{1, …, N}`, kept sorted and duplicate free.
///
/// Used both for the H-prime index sets of quantum affine spaces and for the
/// retained positions of a subexpression of a fixed reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Diagram {
    members: Vec<usize>,
}

pub type SubexpressionDiagram = Diagram;

impl Diagram {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full(n: usize) -> Self {
        Diagram { members: (1..=n).collect() }
    }

    /// Validated constructor: every member must lie in `1..=n`.
    pub fn new(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut members: Vec<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m == 0 || m > n) {
            return Err(Error::IndexOutOfRange { index: bad, bound: n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(Diagram { members })
    }

    /// Bit `k` of `mask` set means position `k + 1` belongs to the diagram.
    pub fn from_mask(mask: u64) -> Self {
        let mut members = Vec::with_capacity(mask.count_ones() as usize);
        let mut m = mask;
        while m != 0 {
            let k = m.trailing_zeros() as usize;
            members.push(k + 1);
            m &= m - 1;
        }
        Diagram { members }
    }

    /// Inverse of [`Diagram::from_mask`]; `None` if a member exceeds 64.
    pub fn to_mask(&self) -> Option<u64> {
        self.members.iter().try_fold(0u64, |acc, &m| (m <= 64).then(|| acc | 1 << (m - 1)))
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.members.binary_search(&k).is_ok()
    }

    pub fn is_subset(&self, other: &Diagram) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn max_member(&self) -> Option<usize> {
        self.members.last().copied()
    }

    /// Sorted complement `{ℓ_1 < … < ℓ_d}` within `{1, …, n}`.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        (1..=n).filter(|&k| !self.contains(k)).collect()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}
