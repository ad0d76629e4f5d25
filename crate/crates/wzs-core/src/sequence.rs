//! Sequences (finite multisets) over a finite abelian group, their weighted
//! sum sets, and divisibility inside the monoid of weighted zero-sum
//! sequences.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::Error;
use crate::group::{Elem, FiniteAbelianGroup, GSubset, WeightSet};
use crate::Result;

/// A sequence over `G`: an unordered multiset of group elements, stored as
/// an exponent table indexed by the dense element index.
#[derive(Clone)]
pub struct Sequence {
    group: Arc<FiniteAbelianGroup>,
    counts: Vec<u32>,
}

impl PartialEq for Sequence {
    fn eq(&self, other: &Self) -> bool {
        self.group.same_group(&other.group) && self.counts == other.counts
    }
}
impl Eq for Sequence {}

impl std::hash::Hash for Sequence {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.counts.hash(state);
    }
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sequence({self})")
    }
}

impl fmt::Display for Sequence {
    /// Canonical serialization: sorted `(coords)^multiplicity` list.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut first = true;
        for (i, &v) in self.counts.iter().enumerate() {
            if v == 0 {
                continue;
            }
            if !first {
                write!(f, ",")?;
            }
            first = false;
            let coords: Vec<String> = self
                .group
                .coords(Elem(i as u16))
                .iter()
                .map(u64::to_string)
                .collect();
            write!(f, "({})", coords.join(","))?;
            if v > 1 {
                write!(f, "^{v}")?;
            }
        }
        write!(f, "]")
    }
}

impl Sequence {
    pub fn empty(group: Arc<FiniteAbelianGroup>) -> Self {
        let n = group.order();
        Sequence {
            group,
            counts: vec![0; n],
        }
    }

    pub fn from_elems(group: Arc<FiniteAbelianGroup>, elems: &[Elem]) -> Self {
        let mut s = Sequence::empty(group);
        for &e in elems {
            s.counts[e.0 as usize] += 1;
        }
        s
    }

    pub fn from_counts(group: Arc<FiniteAbelianGroup>, counts: Vec<u32>) -> Result<Self> {
        if counts.len() != group.order() {
            return Err(Error::GroupMismatch);
        }
        Ok(Sequence { group, counts })
    }

    /// Parses the literal grammar `[(1),(1),(2,3)^2]`: parenthesized
    /// coordinate tuples with optional `^k` multiplicity.
    pub fn parse(group: Arc<FiniteAbelianGroup>, text: &str) -> Result<Self> {
        let t = text.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("sequence literal must be bracketed: {text}")))?;
        let mut s = Sequence::empty(group.clone());
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' at: {rest}")))?;
            let close = open
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed tuple in: {text}")))?;
            let coords: Vec<i64> = if open[..close].trim().is_empty() {
                Vec::new()
            } else {
                open[..close]
                    .split(',')
                    .map(|c| {
                        c.trim()
                            .parse::<i64>()
                            .map_err(|e| Error::Parse(format!("bad coordinate {c:?}: {e}")))
                    })
                    .collect::<Result<_>>()?
            };
            let elem = group.from_coords(&coords).map_err(|_| {
                Error::Parse(format!(
                    "tuple has {} coordinates, group has rank {}",
                    coords.len(),
                    group.rank()
                ))
            })?;
            rest = open[close + 1..].trim_start();
            let mut mult = 1u32;
            if let Some(after) = rest.strip_prefix('^') {
                let end = after
                    .find(|c: char| !c.is_ascii_digit())
                    .unwrap_or(after.len());
                mult = after[..end]
                    .parse()
                    .map_err(|e| Error::Parse(format!("bad multiplicity in {text}: {e}")))?;
                rest = after[end..].trim_start();
            }
            s.counts[elem.0 as usize] += mult;
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            } else if !rest.is_empty() {
                return Err(Error::Parse(format!("expected ',' at: {rest}")));
            }
        }
        Ok(s)
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn len(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(|&v| v == 0)
    }

    pub fn multiplicity(&self, e: Elem) -> u32 {
        self.counts[e.0 as usize]
    }

    pub fn support(&self) -> GSubset {
        let mut s = GSubset::EMPTY;
        for (i, &v) in self.counts.iter().enumerate() {
            if v > 0 {
                s.insert(Elem(i as u16));
            }
        }
        s
    }

    /// Occurrences in dense-index order, with multiplicity.
    pub fn iter_occurrences(&self) -> impl Iterator<Item = Elem> + '_ {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, &v)| std::iter::repeat(Elem(i as u16)).take(v as usize))
    }

    pub fn mul(&self, other: &Sequence) -> Result<Sequence> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| a + b)
            .collect();
        Ok(Sequence {
            group: self.group.clone(),
            counts,
        })
    }

    pub fn pow(&self, k: u32) -> Sequence {
        Sequence {
            group: self.group.clone(),
            counts: self.counts.iter().map(|&v| v * k).collect(),
        }
    }

    pub fn push(&mut self, e: Elem) {
        self.counts[e.0 as usize] += 1;
    }

    /// True when `self` divides `other` in the free monoid (exponentwise).
    pub fn is_subsequence_of(&self, other: &Sequence) -> bool {
        self.group.same_group(&other.group)
            && self
                .counts
                .iter()
                .zip(&other.counts)
                .all(|(&a, &b)| a <= b)
    }

    /// Multiset difference `other = self · result`; errors on underflow.
    pub fn quotient_in(&self, other: &Sequence) -> Result<Sequence> {
        if !self.group.same_group(&other.group) {
            return Err(Error::GroupMismatch);
        }
        if !self.is_subsequence_of(other) {
            return Err(Error::NotASubsequence);
        }
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(&a, &b)| b - a)
            .collect();
        Ok(Sequence {
            group: self.group.clone(),
            counts,
        })
    }

    /// Canonical total order: by length, then by exponent table.
    pub fn canonical_cmp(&self, other: &Sequence) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.counts.cmp(&other.counts))
    }

    /// The ordinary (unweighted) sum.
    pub fn sigma(&self) -> Elem {
        let mut acc = self.group.zero();
        for (i, &v) in self.counts.iter().enumerate() {
            acc = self
                .group
                .add(acc, self.group.scale(v as i64, Elem(i as u16)));
        }
        acc
    }

    /// The set of weighted sums, by per-occurrence orbit-sumset folding.
    pub fn sigma_gamma(&self, gamma: &WeightSet) -> GSubset {
        let mut acc = GSubset::singleton(self.group.zero());
        for (i, &v) in self.counts.iter().enumerate() {
            let orbit = gamma.orbit(Elem(i as u16));
            for _ in 0..v {
                acc = self.group.sumset(acc, orbit);
            }
        }
        acc
    }

    /// Weighted sums over all nonempty subsequences, by the reachability
    /// recurrence `R ← R ∪ (R + orbit(g)) ∪ orbit(g)`.
    pub fn big_sigma_gamma(&self, gamma: &WeightSet) -> GSubset {
        let mut reach = GSubset::EMPTY;
        for (i, &v) in self.counts.iter().enumerate() {
            let orbit = gamma.orbit(Elem(i as u16));
            for _ in 0..v {
                reach = reach.union(self.group.sumset(reach, orbit)).union(orbit);
            }
        }
        reach
    }

    pub fn is_wzs(&self, gamma: &WeightSet) -> bool {
        self.sigma_gamma(gamma).contains(self.group.zero())
    }

    pub fn is_wzs_free(&self, gamma: &WeightSet) -> bool {
        !self.big_sigma_gamma(gamma).contains(self.group.zero())
    }

    /// Divisibility in the monoid of weighted zero-sum sequences: both must
    /// be members, the exponents must nest, and the quotient must again be a
    /// member.
    pub fn divides_in_monoid(&self, other: &Sequence, gamma: &WeightSet) -> Result<bool> {
        if !self.is_wzs(gamma) || !other.is_wzs(gamma) {
            return Err(Error::NotInMonoid);
        }
        if !self.is_subsequence_of(other) {
            return Ok(false);
        }
        Ok(self.quotient_in(other)?.is_wzs(gamma))
    }
}
