//! Counting and streaming magic labellings through the eight-type
//! decomposition, plus the distinct-label and ordering-constrained counts.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::cone::{compose, ConeType, TypeDecomposition};
use crate::cube::{is_distinct, EdgeLabelling, Label, MagicSum, EDGE_COUNT};
use crate::error::{Error, Result};
use crate::symmetry::GROUP_ORDER;

/// Weak compositions of `total` into six parts, in lexicographic order.
#[derive(Clone, Debug)]
pub struct Compositions {
    parts: [Label; 6],
    total: Label,
    // Positions below this one never change.
    frozen: usize,
    done: bool,
}

impl Compositions {
    pub fn new(total: Label) -> Self {
        let mut parts = [0; 6];
        parts[5] = total;
        Self { parts, total, frozen: 0, done: false }
    }

    /// Only the compositions whose first part is `first`.
    pub fn with_first(total: Label, first: Label) -> Self {
        let mut parts = [0; 6];
        parts[0] = first;
        parts[5] = total.saturating_sub(first);
        Self { parts, total, frozen: 1, done: first > total }
    }
}

impl Iterator for Compositions {
    type Item = [Label; 6];

    fn next(&mut self) -> Option<[Label; 6]> {
        if self.done {
            return None;
        }
        let out = self.parts;
        // rightmost position below the last with mass after it
        match (self.frozen..5).rev().find(|&i| self.parts[i + 1..].iter().any(|&p| p > 0)) {
            Some(i) => {
                self.parts[i] += 1;
                self.parts[i + 1..].fill(0);
                let used: Label = self.parts[..=i].iter().sum();
                self.parts[5] = self.total - used;
            }
            None => self.done = true,
        }
        Some(out)
    }
}

/// `C(n + 5, 5)`: six-part weak compositions of `n`.
fn compositions_count(n: u64) -> BigUint {
    (1..=5u64).fold(BigUint::one(), |acc, i| acc * BigUint::from(n + i) / BigUint::from(i))
}

/// Number of magic labellings with sum `r`, summed over the eight types.
pub fn count_by_type(r: MagicSum) -> BigUint {
    ConeType::ALL
        .iter()
        .filter_map(|t| r.checked_sub(t.offset()))
        .map(|n| compositions_count(u64::from(n)))
        .sum()
}

/// Labellings of one type with one fixed leading multiplicity.
pub fn enumerate_slice(r: MagicSum, ty: ConeType, k1: Label) -> impl Iterator<Item = EdgeLabelling> {
    let n = r.checked_sub(ty.offset());
    let ks = match n {
        Some(n) => Compositions::with_first(n, k1),
        None => Compositions::with_first(0, 1),
    };
    ks.map(move |ks| compose(&TypeDecomposition::new(ty, ks)).expect("label overflow"))
}

/// All `(type, k1)` work units for sum `r`, in stream order.
pub fn slices(r: MagicSum) -> Vec<(ConeType, Label)> {
    ConeType::ALL
        .iter()
        .filter_map(|&t| r.checked_sub(t.offset()).map(|n| (t, n)))
        .flat_map(|(t, n)| (0..=n).map(move |k| (t, k)))
        .collect()
}

/// Every magic labelling with sum `r`, types in order and multiplicities
/// lexicographic within each type.
pub fn enumerate_by_type(r: MagicSum) -> impl Iterator<Item = EdgeLabelling> {
    ConeType::ALL.into_iter().flat_map(move |ty| {
        let ks = match r.checked_sub(ty.offset()) {
            Some(n) => Compositions::new(n),
            None => Compositions::with_first(0, 1),
        };
        ks.map(move |ks| compose(&TypeDecomposition::new(ty, ks)).expect("label overflow"))
    })
}

/// Counts labellings with sum `r` accepted by `keep`, in parallel over slices.
pub fn count_matching<F>(r: MagicSum, keep: F) -> BigUint
where
    F: Fn(&EdgeLabelling) -> bool + Sync,
{
    let total: u64 = slices(r)
        .into_par_iter()
        .map(|(ty, k1)| enumerate_slice(r, ty, k1).filter(|l| keep(l)).count() as u64)
        .sum();
    BigUint::from(total)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DistinctMode {
    /// Every distinct labelling.
    Raw,
    /// One per orbit of the automorphism group.
    Orbits,
}

/// Number of magic labellings with sum `r` and twelve different labels.
///
/// In orbit mode the raw count is divided by 48; panics if it is not a multiple.
pub fn count_distinct(r: MagicSum, mode: DistinctMode) -> BigUint {
    let raw = count_matching(r, is_distinct);
    match mode {
        DistinctMode::Raw => raw,
        DistinctMode::Orbits => orbits_from_raw(&raw),
    }
}

fn orbits_from_raw(raw: &BigUint) -> BigUint {
    let order = BigUint::from(GROUP_ORDER);
    assert!(
        (raw % &order).is_zero(),
        "distinct count {raw} is not a multiple of {GROUP_ORDER}"
    );
    raw / order
}

fn as_decimal<S: Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

fn as_opt_decimal<S: Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => as_decimal(v, s),
        None => s.serialize_none(),
    }
}

/// Counts at one magic sum; counts serialize as decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub r: MagicSum,
    #[serde(serialize_with = "as_decimal")]
    pub total: BigUint,
    #[serde(serialize_with = "as_opt_decimal", skip_serializing_if = "Option::is_none")]
    pub distinct_raw: Option<BigUint>,
    #[serde(serialize_with = "as_opt_decimal", skip_serializing_if = "Option::is_none")]
    pub distinct_orbits: Option<BigUint>,
}

impl CountReport {
    pub fn new(r: MagicSum, with_distinct: bool) -> Self {
        let (distinct_raw, distinct_orbits) = if with_distinct {
            let raw = count_distinct(r, DistinctMode::Raw);
            let orbits = orbits_from_raw(&raw);
            (Some(raw), Some(orbits))
        } else {
            (None, None)
        };
        Self { r, total: count_by_type(r), distinct_raw, distinct_orbits }
    }
}

/// Conjunction of label comparisons `x_a > x_b`, pins `x_e = v`, and an
/// optional all-labels-distinct requirement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderingConstraint {
    greater: Vec<(usize, usize)>,
    pins: Vec<(usize, Label)>,
    distinct: bool,
}

impl OrderingConstraint {
    /// Rejects edge ids outside 1..=12 and cyclic comparison chains.
    pub fn new(greater: Vec<(usize, usize)>, pins: Vec<(usize, Label)>) -> Result<Self> {
        for &e in greater.iter().flat_map(|(a, b)| [a, b]).chain(pins.iter().map(|(e, _)| e)) {
            if !(1..=EDGE_COUNT).contains(&e) {
                return Err(Error::EdgeOutOfRange(e));
            }
        }
        let c = Self { greater, pins, distinct: false };
        if !c.is_acyclic() {
            return Err(Error::CyclicConstraint);
        }
        Ok(c)
    }

    /// x1 = 0, x6 > x1, and x_j > x6 for every other edge.
    pub fn second_smallest_at_6() -> Self {
        let mut greater = vec![(6, 1)];
        greater.extend((2..=EDGE_COUNT).filter(|&j| j != 6).map(|j| (j, 6)));
        Self::new(greater, vec![(1, 0)]).expect("acyclic")
    }

    /// x1 = 0, x4 > x1, x_j > x4 for every other edge, and x7 > x6.
    pub fn second_smallest_at_4() -> Self {
        let mut greater = vec![(4, 1)];
        greater.extend((2..=EDGE_COUNT).filter(|&j| j != 4).map(|j| (j, 4)));
        greater.push((7, 6));
        Self::new(greater, vec![(1, 0)]).expect("acyclic")
    }

    pub fn with_distinct(mut self) -> Self {
        self.distinct = true;
        self
    }

    fn is_acyclic(&self) -> bool {
        // Kahn's algorithm on the "a > b" graph.
        let mut indegree = [0usize; EDGE_COUNT + 1];
        for &(a, _) in &self.greater {
            indegree[a] += 1;
        }
        let mut ready: Vec<usize> = (1..=EDGE_COUNT).filter(|&e| indegree[e] == 0).collect();
        let mut seen = 0;
        while let Some(b) = ready.pop() {
            seen += 1;
            for &(a, _) in self.greater.iter().filter(|&&(_, bb)| bb == b) {
                indegree[a] -= 1;
                if indegree[a] == 0 {
                    ready.push(a);
                }
            }
        }
        seen == EDGE_COUNT
    }

    pub fn is_satisfied_by(&self, l: &EdgeLabelling) -> bool {
        self.pins.iter().all(|&(e, v)| l.get(e) == v)
            && self.greater.iter().all(|&(a, b)| l.get(a) > l.get(b))
            && (!self.distinct || is_distinct(l))
    }
}

/// Number of magic labellings with sum `r` satisfying `c`.
pub fn count_constrained(r: MagicSum, c: &OrderingConstraint) -> BigUint {
    count_matching(r, |l| c.is_satisfied_by(l))
}

/// Orbit counts for sums `0..=max_r`, assembled from representatives with
/// smallest label 0: `g_r = Σ_{m ≥ 0} c_{r - 3m}`, where `c_s` counts the
/// distinct labellings at sum `s` in either canonical shape. Adding the
/// all-ones labelling raises the sum by 3.
pub fn assemble_orbit_series(max_r: MagicSum) -> Vec<BigUint> {
    let c = representative_counts(max_r);
    let mut g = c.clone();
    for r in 3..g.len() {
        let prev = g[r - 3].clone();
        g[r] += prev;
    }
    g
}

/// `c_s` for `s` in `0..=max_r`.
pub fn representative_counts(max_r: MagicSum) -> Vec<BigUint> {
    let f1 = OrderingConstraint::second_smallest_at_6().with_distinct();
    let f2 = OrderingConstraint::second_smallest_at_4().with_distinct();
    (0..=max_r)
        .map(|s| count_matching(s, |l| f1.is_satisfied_by(l) || f2.is_satisfied_by(l)))
        .collect()
}

/// All interleavings of `pi` and `sigma` that keep each one's internal order.
pub fn shuffles<T: Clone + PartialEq>(pi: &[T], sigma: &[T]) -> Result<Vec<Vec<T>>> {
    if pi.iter().any(|p| sigma.contains(p)) {
        return Err(Error::OverlappingSymbols);
    }
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(pi.len() + sigma.len());
    interleave(pi, sigma, &mut buf, &mut out);
    Ok(out)
}

fn interleave<T: Clone>(a: &[T], b: &[T], buf: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
    if a.is_empty() && b.is_empty() {
        out.push(buf.clone());
        return;
    }
    if let Some((head, rest)) = a.split_first() {
        buf.push(head.clone());
        interleave(rest, b, buf, out);
        buf.pop();
    }
    if let Some((head, rest)) = b.split_first() {
        buf.push(head.clone());
        interleave(a, rest, buf, out);
        buf.pop();
    }
}
