//! The cube graph as a linear system over its twelve edge labels.
//!
//! Edges are numbered 1..=12 at every public interface. Each vertex is the
//! triple of edges meeting there; a labelling is magic with sum `r` when all
//! eight triples add up to `r`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, RangeInclusive};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const EDGE_COUNT: usize = 12;
pub const VERTEX_COUNT: usize = 8;

/// Edge label type. Labels are small; counts elsewhere are arbitrary precision.
pub type Label = u32;

/// The common vertex sum of a magic labelling.
pub type MagicSum = u32;

/// Largest magic sum accepted by the command line and the oracle helpers.
pub const DEFAULT_MAX_SUM: MagicSum = 1_000_000;

/// Edge ids incident to each vertex, one row per vertex equation.
pub const INCIDENCE: [[usize; 3]; VERTEX_COUNT] = [
    [1, 2, 9],
    [1, 3, 10],
    [2, 4, 12],
    [3, 4, 11],
    [5, 6, 9],
    [5, 7, 10],
    [6, 8, 12],
    [7, 8, 11],
];

/// The two endpoints (0-based vertex indices) of every edge, indexed by `edge - 1`.
pub fn edge_endpoints() -> [(usize, usize); EDGE_COUNT] {
    let mut ends = [(usize::MAX, usize::MAX); EDGE_COUNT];
    for (v, triple) in INCIDENCE.iter().enumerate() {
        for &e in triple {
            let slot = &mut ends[e - 1];
            if slot.0 == usize::MAX {
                slot.0 = v;
            } else {
                slot.1 = v;
            }
        }
    }
    ends
}

/// Twelve nonnegative edge labels in edge order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeLabelling([Label; EDGE_COUNT]);

impl EdgeLabelling {
    pub const fn new(labels: [Label; EDGE_COUNT]) -> Self {
        Self(labels)
    }

    pub const fn zero() -> Self {
        Self([0; EDGE_COUNT])
    }

    pub const fn constant(t: Label) -> Self {
        Self([t; EDGE_COUNT])
    }

    /// The unit vector e_i. Panics if `edge` is not in 1..=12.
    pub const fn unit(edge: usize) -> Self {
        assert!(edge >= 1 && edge <= EDGE_COUNT);
        let mut labels = [0; EDGE_COUNT];
        labels[edge - 1] = 1;
        Self(labels)
    }

    /// Indicator vector of a set of edges.
    pub const fn indicator(edges: &[usize]) -> Self {
        let mut labels = [0; EDGE_COUNT];
        let mut i = 0;
        while i < edges.len() {
            labels[edges[i] - 1] += 1;
            i += 1;
        }
        Self(labels)
    }

    pub fn from_signed(values: [i64; EDGE_COUNT]) -> Result<Self> {
        let mut labels = [0; EDGE_COUNT];
        for (dst, &v) in labels.iter_mut().zip(values.iter()) {
            *dst = Label::try_from(v).map_err(|_| {
                if v < 0 {
                    Error::InvalidLabelling(format!("negative label {v}"))
                } else {
                    Error::Overflow
                }
            })?;
        }
        Ok(Self(labels))
    }

    /// Label of edge `edge` (1-based).
    pub fn get(&self, edge: usize) -> Label {
        self.0[edge - 1]
    }

    pub fn labels(&self) -> &[Label; EDGE_COUNT] {
        &self.0
    }

    pub fn to_signed(&self) -> [i64; EDGE_COUNT] {
        self.0.map(i64::from)
    }

    pub fn min_label(&self) -> Label {
        *self.0.iter().min().expect("twelve labels")
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| u64::from(x)).sum()
    }

    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        let mut out = [0; EDGE_COUNT];
        for ((o, a), b) in out.iter_mut().zip(&self.0).zip(&other.0) {
            *o = a.checked_add(*b)?;
        }
        Some(Self(out))
    }

    pub fn checked_scale(&self, k: Label) -> Option<Self> {
        let mut out = [0; EDGE_COUNT];
        for (o, a) in out.iter_mut().zip(&self.0) {
            *o = a.checked_mul(k)?;
        }
        Some(Self(out))
    }

    /// Subtracts `t` from every label, if no label drops below zero.
    pub fn checked_lower(&self, t: Label) -> Option<Self> {
        let mut out = [0; EDGE_COUNT];
        for (o, a) in out.iter_mut().zip(&self.0) {
            *o = a.checked_sub(t)?;
        }
        Some(Self(out))
    }
}

impl Add for EdgeLabelling {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("label overflow")
    }
}

impl Mul<EdgeLabelling> for Label {
    type Output = EdgeLabelling;

    fn mul(self, rhs: EdgeLabelling) -> EdgeLabelling {
        rhs.checked_scale(self).expect("label overflow")
    }
}

impl From<[Label; EDGE_COUNT]> for EdgeLabelling {
    fn from(labels: [Label; EDGE_COUNT]) -> Self {
        Self(labels)
    }
}

impl fmt::Display for EdgeLabelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for EdgeLabelling {
    type Err = Error;

    /// Parses "x1,...,x12" (whitespace around entries is ignored).
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(',').map(str::trim).collect();
        if parts.len() != EDGE_COUNT {
            return Err(Error::InvalidLabelling(format!(
                "expected {EDGE_COUNT} comma-separated labels, got {}",
                parts.len()
            )));
        }
        let mut labels = [0; EDGE_COUNT];
        for (dst, p) in labels.iter_mut().zip(parts) {
            *dst = p
                .parse()
                .map_err(|_| Error::InvalidLabelling(format!("`{p}` is not a nonnegative integer")))?;
        }
        Ok(Self(labels))
    }
}

fn vertex_sum(labels: &[Label; EDGE_COUNT], triple: &[usize; 3]) -> u64 {
    triple.iter().map(|&e| u64::from(labels[e - 1])).sum()
}

/// The magic sum of `l`, or `None` when the vertex sums disagree.
pub fn magic_sum_of(l: &EdgeLabelling) -> Option<MagicSum> {
    let r = vertex_sum(&l.0, &INCIDENCE[0]);
    INCIDENCE[1..]
        .iter()
        .all(|t| vertex_sum(&l.0, t) == r)
        .then(|| MagicSum::try_from(r).ok())
        .flatten()
}

pub fn is_magic(l: &EdgeLabelling) -> bool {
    magic_sum_of(l).is_some()
}

/// True iff the twelve labels are pairwise different.
pub fn is_distinct(l: &EdgeLabelling) -> bool {
    let mut seen = l.0;
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

/// Exhaustive oracle for the magic labellings with sum `r`.
///
/// Five labels are free; the remaining seven follow from the vertex equations:
/// x9 = r-x1-x2, x10 = r-x1-x3, x12 = r-x2-x4, x11 = r-x3-x4,
/// x6 = x1+x2-x5, x7 = x1+x3-x5, x8 = x4+x5-x1.
/// Candidates with a negative entry are dropped and survivors are rechecked
/// with [`magic_sum_of`]. Independent of the cone decomposition.
#[derive(Clone, Debug)]
pub struct BruteForce {
    r: i64,
    x1_end: i64,
    free: [i64; 5],
    done: bool,
}

impl BruteForce {
    pub fn new(r: MagicSum) -> Self {
        Self::with_x1_range(r, 0..=r)
    }

    /// Restricts the outermost free label `x1` to `range`, so disjoint ranges
    /// can be scanned in parallel.
    pub fn with_x1_range(r: MagicSum, range: RangeInclusive<Label>) -> Self {
        let start = i64::from(*range.start());
        let end = i64::from(*range.end()).min(i64::from(r));
        Self {
            r: i64::from(r),
            x1_end: end,
            free: [start, 0, 0, 0, 0],
            done: start > end,
        }
    }

    fn advance(&mut self) {
        let r = self.r;
        for slot in (0..5).rev() {
            let limit = if slot == 0 { self.x1_end } else { r };
            if self.free[slot] < limit {
                self.free[slot] += 1;
                for lower in self.free.iter_mut().skip(slot + 1) {
                    *lower = 0;
                }
                return;
            }
        }
        self.done = true;
    }

    fn candidate(&self) -> Option<EdgeLabelling> {
        let r = self.r;
        let [x1, x2, x3, x4, x5] = self.free;
        let values = [
            x1,
            x2,
            x3,
            x4,
            x5,
            x1 + x2 - x5,
            x1 + x3 - x5,
            x4 + x5 - x1,
            r - x1 - x2,
            r - x1 - x3,
            r - x3 - x4,
            r - x2 - x4,
        ];
        if values.iter().any(|&v| v < 0) {
            return None;
        }
        let l = EdgeLabelling::from_signed(values).ok()?;
        (magic_sum_of(&l) == Some(r as MagicSum)).then_some(l)
    }
}

impl Iterator for BruteForce {
    type Item = EdgeLabelling;

    fn next(&mut self) -> Option<EdgeLabelling> {
        while !self.done {
            let found = self.candidate();
            self.advance();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Streams every magic labelling with sum `r`.
pub fn brute_force_enumerate(r: MagicSum) -> BruteForce {
    BruteForce::new(r)
}

/// Materialized form of [`brute_force_enumerate`] for set comparisons.
pub fn brute_force_set(r: MagicSum) -> BTreeSet<EdgeLabelling> {
    brute_force_enumerate(r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ALPHA1: EdgeLabelling = EdgeLabelling::new([0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0]);

    #[test]
    fn magic_sum_examples() {
        assert_eq!(magic_sum_of(&EdgeLabelling::zero()), Some(0));
        assert_eq!(magic_sum_of(&ALPHA1), Some(1));
        assert_eq!(magic_sum_of(&EdgeLabelling::constant(1)), Some(3));
        assert_eq!(magic_sum_of(&EdgeLabelling::unit(1)), None);
    }

    #[test]
    fn distinct_examples() {
        let ramp = EdgeLabelling::new([0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]);
        assert!(is_distinct(&ramp));
        assert!(!is_distinct(&EdgeLabelling::zero()));
        assert!(!is_distinct(&ALPHA1));
    }

    #[test]
    fn incidence_is_the_cube() {
        let ends = edge_endpoints();
        for (v, triple) in INCIDENCE.iter().enumerate() {
            for &e in triple {
                assert!(ends[e - 1].0 == v || ends[e - 1].1 == v);
            }
        }
        // every edge appears in exactly two triples
        for e in 1..=EDGE_COUNT {
            assert_eq!(INCIDENCE.iter().filter(|t| t.contains(&e)).count(), 2);
        }
        // bipartite: 2-colour by BFS
        let mut colour = [None::<bool>; VERTEX_COUNT];
        colour[0] = Some(false);
        let mut queue = vec![0];
        while let Some(v) = queue.pop() {
            for &(a, b) in &ends {
                let w = if a == v { b } else if b == v { a } else { continue };
                match colour[w] {
                    None => {
                        colour[w] = Some(!colour[v].unwrap());
                        queue.push(w);
                    }
                    Some(c) => assert_ne!(Some(c), colour[v]),
                }
            }
        }
        assert!(colour.iter().all(Option::is_some), "connected");
        // girth 4: no shared neighbours pair forms a triangle, some 4-cycle exists
        let adj = |a: usize, b: usize| ends.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b));
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    assert!(!(adj(a, b) && adj(b, c) && adj(c, a)));
                }
            }
        }
    }

    #[test]
    fn parse_and_display() {
        let l: EdgeLabelling = "0, 1,1,0,1,0,0,1,0,0,0,0".parse().unwrap();
        assert_eq!(l, ALPHA1);
        assert_eq!(l.to_string(), "0,1,1,0,1,0,0,1,0,0,0,0");
        assert!("1,2,3".parse::<EdgeLabelling>().is_err());
        assert!("0,1,1,0,1,0,0,1,0,0,0,-1".parse::<EdgeLabelling>().is_err());
        assert_eq!(serde_json::to_string(&l).unwrap(), "[0,1,1,0,1,0,0,1,0,0,0,0]");
    }

    #[test]
    fn oracle_small_sums() {
        assert_eq!(brute_force_set(0), BTreeSet::from([EdgeLabelling::zero()]));
        assert_eq!(brute_force_enumerate(1).count(), 9);
        assert_eq!(brute_force_enumerate(2).count(), 42);
        assert!(brute_force_set(1).contains(&ALPHA1));
    }

    #[test]
    fn oracle_partitions_by_x1() {
        let whole = brute_force_set(5);
        let mut parts = BTreeSet::new();
        for lo in 0..=5 {
            for l in BruteForce::with_x1_range(5, lo..=lo) {
                assert_eq!(l.get(1), lo);
                assert!(parts.insert(l));
            }
        }
        assert_eq!(parts, whole);
        assert_eq!(BruteForce::with_x1_range(5, 6..=9).count(), 0);
    }

    #[test]
    fn oracle_properties() {
        for r in 0..=6 {
            for l in brute_force_enumerate(r) {
                assert_eq!(magic_sum_of(&l), Some(r));
                assert_eq!(l.total(), 4 * u64::from(r));
                let t = l.min_label();
                if t > 0 {
                    let lowered = l.checked_lower(t).unwrap();
                    assert_eq!(magic_sum_of(&lowered), Some(r - 3 * t));
                }
            }
        }
    }
}
