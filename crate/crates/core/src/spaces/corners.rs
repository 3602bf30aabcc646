use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// ℕ ∪ {+∞}, with infinity as the top element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtNat {
    Finite(u32),
    Infinity,
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Finite(n) => write!(f, "{n}"),
            ExtNat::Infinity => f.write_str("INF"),
        }
    }
}

impl FromStr for ExtNat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(ExtNat::Infinity);
        }
        s.parse::<u32>()
            .map(ExtNat::Finite)
            .map_err(|_| Error::domain(format!("not an extended natural: '{s}'")))
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtNat::Finite(n) => s.serialize_u32(*n),
            ExtNat::Infinity => s.serialize_str("INF"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u32),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(n) => Ok(ExtNat::Finite(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

fn dominated_by(a: &[ExtNat], b: &[ExtNat]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Antichain of corners; the set it represents is the union of the boxes
/// below each corner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerSet {
    dim: usize,
    corners: BTreeSet<Vec<ExtNat>>,
}

impl CornerSet {
    /// Builds a corner set, dropping corners dominated by another one.
    pub fn new(dim: usize, corners: impl IntoIterator<Item = Vec<ExtNat>>) -> Result<Self> {
        let all: BTreeSet<Vec<ExtNat>> = corners.into_iter().collect();
        if let Some(bad) = all.iter().find(|c| c.len() != dim) {
            return Err(Error::domain(format!(
                "corner of length {} in a dimension-{dim} corner set",
                bad.len()
            )));
        }
        let corners = all
            .iter()
            .filter(|c| !all.iter().any(|o| o != *c && dominated_by(c, o)))
            .cloned()
            .collect();
        Ok(CornerSet { dim, corners })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn corners(&self) -> &BTreeSet<Vec<ExtNat>> {
        &self.corners
    }

    pub fn contains(&self, point: &[u32]) -> bool {
        self.corners
            .iter()
            .any(|c| point.iter().zip(c).all(|(&p, &q)| ExtNat::Finite(p) <= q))
    }

    pub fn has_infinite_corner(&self) -> bool {
        self.corners.iter().any(|c| c.contains(&ExtNat::Infinity))
    }
}

/// Every finite tuple under some corner. Infinite coordinates are truncated at
/// `cap`, which is required whenever a corner has an infinite coordinate.
pub fn downward_closure(c: &CornerSet, cap: Option<&[u32]>) -> Result<BTreeSet<Vec<u32>>> {
    if let Some(cap) = cap {
        if cap.len() != c.dim {
            return Err(Error::domain(format!(
                "cap has length {}, expected {}",
                cap.len(),
                c.dim
            )));
        }
    }
    let mut out = BTreeSet::new();
    for corner in &c.corners {
        let bounds = corner
            .iter()
            .enumerate()
            .map(|(k, e)| match (e, cap) {
                (ExtNat::Finite(n), _) => Ok(*n),
                (ExtNat::Infinity, Some(cap)) => Ok(cap[k]),
                (ExtNat::Infinity, None) => {
                    Err(Error::domain("a cap is required for infinite corners"))
                }
            })
            .collect::<Result<Vec<u32>>>()?;
        let mut point = vec![0u32; c.dim];
        loop {
            out.insert(point.clone());
            // odometer increment
            let mut k = 0;
            while k < c.dim && point[k] == bounds[k] {
                point[k] = 0;
                k += 1;
            }
            if k == c.dim {
                break;
            }
            point[k] += 1;
        }
    }
    Ok(out)
}

/// Maximal elements of a downward-closed set.
pub fn minimal_corners(points: &BTreeSet<Vec<u32>>) -> Result<CornerSet> {
    let dim = points.iter().next().map_or(0, Vec::len);
    if points.iter().any(|p| p.len() != dim) {
        return Err(Error::domain("points have mixed dimensions"));
    }
    for p in points {
        for k in 0..dim {
            if p[k] > 0 {
                let mut below = p.clone();
                below[k] -= 1;
                if !points.contains(&below) {
                    return Err(Error::domain(format!(
                        "set is not downward closed: {p:?} present but {below:?} missing"
                    )));
                }
            }
        }
    }
    let maximal = points.iter().filter(|p| {
        (0..dim).all(|k| {
            let mut above = (*p).clone();
            above[k] += 1;
            !points.contains(&above)
        })
    });
    CornerSet::new(
        dim,
        maximal.map(|p| p.iter().map(|&e| ExtNat::Finite(e)).collect()),
    )
}
