//! Finite multisets over place ids.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A marking: a finite multiset of places. Zero entries are never stored, so
/// equality is extensional.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Marking {
    counts: BTreeMap<String, u64>,
}

impl Marking {
    pub fn new() -> Self {
        Self::default()
    }

    /// The marking with a single token in `place`, written `[place]`.
    pub fn singleton(place: impl Into<String>) -> Self {
        let mut m = Self::new();
        m.set(place, 1);
        m
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut m = Self::new();
        for (p, n) in pairs {
            m.add(p, n);
        }
        m
    }

    pub fn get(&self, place: &str) -> u64 {
        self.counts.get(place).copied().unwrap_or(0)
    }

    pub fn set(&mut self, place: impl Into<String>, n: u64) {
        let place = place.into();
        if n == 0 {
            self.counts.remove(&place);
        } else {
            self.counts.insert(place, n);
        }
    }

    pub fn add(&mut self, place: impl Into<String>, n: u64) {
        let place = place.into();
        let cur = self.get(&place);
        self.set(place, cur + n);
    }

    /// Iterates the nonzero entries in place order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.counts.iter().map(|(p, n)| (p.as_str(), *n))
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.counts.keys().map(String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `|m|`, the total number of tokens.
    pub fn size(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `self ⊆ other`, pointwise `≤`.
    pub fn is_subset(&self, other: &Marking) -> bool {
        self.iter().all(|(p, n)| n <= other.get(p))
    }

    /// `self ⊂ other`: pointwise strictly less on every place of the
    /// universe `places`. Places missing from `places` are ignored.
    pub fn is_strict_subset_on<'a>(&self, other: &Marking, places: impl IntoIterator<Item = &'a str>) -> bool {
        places.into_iter().all(|p| self.get(p) < other.get(p))
    }

    /// `self ⊆ other` and `self ≠ other`, the covering order used for
    /// unboundedness detection.
    pub fn is_proper_subset(&self, other: &Marking) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn sum(&self, other: &Marking) -> Marking {
        let mut out = self.clone();
        for (p, n) in other.iter() {
            out.add(p, n);
        }
        out
    }

    /// `self - other`, defined only when `other ⊆ self`.
    pub fn diff(&self, other: &Marking) -> Result<Marking> {
        if !other.is_subset(self) {
            return Err(Error::Domain);
        }
        let mut out = self.clone();
        for (p, n) in other.iter() {
            let cur = out.get(p);
            out.set(p, cur - n);
        }
        Ok(out)
    }

    /// Keeps only the entries whose place satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&str) -> bool) -> Marking {
        Marking {
            counts: self
                .counts
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, n)| (p.clone(), *n))
                .collect(),
        }
    }

    /// Renames every place through `f`, summing collisions.
    pub fn map_places(&self, mut f: impl FnMut(&str) -> String) -> Marking {
        let mut out = Marking::new();
        for (p, n) in self.iter() {
            out.add(f(p), n);
        }
        out
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (p, n)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}:{n}")?;
        }
        f.write_str("]")
    }
}

impl<S: Into<String>> FromIterator<(S, u64)> for Marking {
    fn from_iter<I: IntoIterator<Item = (S, u64)>>(iter: I) -> Self {
        Marking::from_pairs(iter)
    }
}
