//! The index set `I_{d,n}` of strictly increasing vectors in `[1, n]^d`,
//! ordered componentwise.

use std::fmt;

use itertools::Itertools;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A strictly increasing vector `1 <= i_1 < ... < i_d <= n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrassmannIndex {
    n: usize,
    entries: Vec<usize>,
}

impl GrassmannIndex {
    /// Validates `entries` as an element of `I_{d,n}` with `d = entries.len()`.
    ///
    /// Positions in errors are 1-based.
    pub fn new(entries: &[i64], n: usize) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyIndex);
        }
        if entries.len() > n {
            return Err(Error::domain(format!(
                "index has {} entries but n = {n}",
                entries.len()
            )));
        }
        let mut prev = 0i64;
        for (pos, &value) in entries.iter().enumerate() {
            if value < 1 || value > n as i64 {
                return Err(Error::OutOfRange {
                    position: pos + 1,
                    value,
                    n,
                });
            }
            if value <= prev {
                return Err(Error::NotIncreasing {
                    position: pos + 1,
                    value,
                });
            }
            prev = value;
        }
        Ok(GrassmannIndex {
            n,
            entries: entries.iter().map(|&v| v as usize).collect(),
        })
    }

    /// `(1, 2, ..., d)`, the minimum of `I_{d,n}`.
    pub fn minimum(d: usize, n: usize) -> Result<Self> {
        check_bounds(d, n)?;
        Ok(GrassmannIndex {
            n,
            entries: (1..=d).collect(),
        })
    }

    pub fn d(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// Entries as signed lattice coordinates.
    pub fn to_lattice(&self) -> Vec<i64> {
        self.entries.iter().map(|&v| v as i64).collect()
    }

    /// `|i| = i_1 + ... + i_d`.
    pub fn weight(&self) -> usize {
        self.entries.iter().sum()
    }

    fn check_shape(&self, other: &GrassmannIndex) -> Result<()> {
        if self.d() != other.d() {
            return Err(Error::ShapeMismatch {
                expected: self.d(),
                found: other.d(),
            });
        }
        if self.n != other.n {
            return Err(Error::domain(format!(
                "indices belong to different n ({} vs {})",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Hyphen-joined entries, e.g. `2-4`.
    pub fn hyphenated(&self) -> String {
        self.entries.iter().join("-")
    }
}

impl fmt::Display for GrassmannIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.entries.iter().join(","))
    }
}

impl Serialize for GrassmannIndex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(serializer)
    }
}

fn check_bounds(d: usize, n: usize) -> Result<()> {
    if d < 1 || d > n {
        return Err(Error::domain(format!(
            "need 1 <= d <= n, got d = {d}, n = {n}"
        )));
    }
    Ok(())
}

/// Componentwise `j <= i`.
pub fn leq(j: &GrassmannIndex, i: &GrassmannIndex) -> Result<bool> {
    j.check_shape(i)?;
    Ok(j.entries.iter().zip(&i.entries).all(|(a, b)| a <= b))
}

/// All of `I_{d,n}` in lexicographic order.
pub fn enumerate(d: usize, n: usize) -> Result<Vec<GrassmannIndex>> {
    check_bounds(d, n)?;
    Ok((1..=n)
        .combinations(d)
        .map(|entries| GrassmannIndex { n, entries })
        .collect())
}

/// The elements `k = i - e_q` with `j <= k`, paired with the 1-based
/// position `q`. These are exactly the `k` in `I_{d,n}` with `j <= k < i`
/// and `|k| = |i| - 1`.
pub fn lower_neighbors(
    i: &GrassmannIndex,
    j: &GrassmannIndex,
) -> Result<Vec<(usize, GrassmannIndex)>> {
    if !leq(j, i)? {
        return Err(Error::NotContained);
    }
    if i == j {
        return Err(Error::domain("lower_neighbors requires i != j"));
    }
    Ok(decrements(i, j).collect())
}

/// Same as [`lower_neighbors`] without precondition checks.
pub(crate) fn decrements<'a>(
    i: &'a GrassmannIndex,
    j: &'a GrassmannIndex,
) -> impl Iterator<Item = (usize, GrassmannIndex)> + 'a {
    (0..i.d()).filter_map(move |q| {
        let below = if q == 0 { 0 } else { i.entries[q - 1] };
        let v = i.entries[q];
        if v - 1 > below && v > j.entries[q] {
            let mut entries = i.entries.clone();
            entries[q] -= 1;
            Some((q + 1, GrassmannIndex { n: i.n, entries }))
        } else {
            None
        }
    })
}
