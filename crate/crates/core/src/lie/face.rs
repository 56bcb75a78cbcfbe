use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lie::lattice::{CartanPoint, RatWeight};

/// Nonempty subset of the alcove vertex labels `{0, ..., l}`.
///
/// Ordered lexicographically on the increasing member sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FaceIndex {
    bits: u32,
}

impl FaceIndex {
    pub fn new(members: &[usize], rank: usize) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFace);
        }
        let mut bits = 0u32;
        for &i in members {
            if i > rank {
                return Err(Error::IndexOutOfRange { index: i, max: rank });
            }
            bits |= 1 << i;
        }
        Ok(FaceIndex { bits })
    }

    pub fn from_bits(bits: u32) -> Result<Self> {
        if bits == 0 {
            Err(Error::EmptyFace)
        } else {
            Ok(FaceIndex { bits })
        }
    }

    pub fn singleton(i: usize) -> Self {
        FaceIndex { bits: 1 << i }
    }

    /// `{0, ..., rank}`
    pub fn full(rank: usize) -> Self {
        FaceIndex {
            bits: (1u32 << (rank + 1)) - 1,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn members(&self) -> Vec<usize> {
        (0..32).filter(|&i| self.bits & (1 << i) != 0).collect()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        i < 32 && self.bits & (1 << i) != 0
    }

    pub fn is_subset_of(&self, other: &FaceIndex) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_full(&self, rank: usize) -> bool {
        *self == FaceIndex::full(rank)
    }

    /// Drops the `r`-th smallest member. `None` if that empties the set.
    pub fn omit_position(&self, r: usize) -> Option<FaceIndex> {
        let i = self.members()[r];
        self.without(i)
    }

    pub fn without(&self, i: usize) -> Option<FaceIndex> {
        let bits = self.bits & !(1 << i);
        (bits != 0).then_some(FaceIndex { bits })
    }

    pub fn with(&self, i: usize) -> FaceIndex {
        FaceIndex {
            bits: self.bits | (1 << i),
        }
    }

    /// Number of members strictly below `i`.
    pub fn position_of(&self, i: usize) -> usize {
        (self.bits & ((1u32 << i) - 1)).count_ones() as usize
    }

    /// Wall labels not in the face; these index the simple roots of `G_I`.
    pub fn complement(&self, rank: usize) -> Vec<usize> {
        (0..=rank).filter(|&i| !self.contains(i)).collect()
    }

    /// All nonempty faces of the alcove of the given rank, in canonical order.
    pub fn all(rank: usize) -> Vec<FaceIndex> {
        let mut v: Vec<FaceIndex> = (1..(1u32 << (rank + 1)))
            .map(|bits| FaceIndex { bits })
            .collect();
        v.sort();
        v
    }

    pub fn all_of_size(rank: usize, size: usize) -> Vec<FaceIndex> {
        FaceIndex::all(rank)
            .into_iter()
            .filter(|f| f.len() == size)
            .collect()
    }
}

impl Ord for FaceIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.members().cmp(&other.members())
    }
}

impl PartialOrd for FaceIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FaceIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.members().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl FromStr for FaceIndex {
    type Err = Error;

    /// Parses `"0,1,2"` or `"{0,1}"`; the range check needs the rank and is
    /// done by [`FaceIndex::new`].
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let members = inner
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("not a face index list: {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if members.iter().any(|&i| i >= 31) {
            return Err(Error::Parse(format!("face label too large: {s:?}")));
        }
        FaceIndex::new(&members, 30)
    }
}

/// Data attached to a face of the alcove.
#[derive(Debug, Clone)]
pub struct FaceData {
    pub face: FaceIndex,
    /// Wall labels `i` not in the face; `alpha_i` for these are the simple
    /// roots of `G_I` (label 0 stands for minus the highest root).
    pub simple_root_labels: Vec<usize>,
    /// Positive roots of `G_I` in weight coordinates.
    pub positive_roots: Vec<Vec<i64>>,
    pub rho_i: RatWeight,
    pub nu_i: RatWeight,
    pub nu_i_sharp: CartanPoint,
    /// Basis of the coroot lattice of `G_I`, in coroot coordinates.
    pub coroot_lattice_basis: Vec<Vec<i64>>,
    /// Order of `W_I` from the simple factors of the subdiagram.
    pub weyl_order: u128,
}
