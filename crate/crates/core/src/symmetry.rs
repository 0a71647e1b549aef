//! Edge action of the cube's automorphism group.
//!
//! The 48 automorphisms are found by testing every vertex bijection for
//! adjacency preservation and translating survivors into edge permutations.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::cube::{edge_endpoints, is_distinct, magic_sum_of, EdgeLabelling, EDGE_COUNT, VERTEX_COUNT};
use crate::error::{Error, Result};

pub const GROUP_ORDER: usize = 48;

/// A bijection on edge ids; `image(i)` is where edge `i` goes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgePermutation([u8; EDGE_COUNT]);

impl EdgePermutation {
    pub fn identity() -> Self {
        let mut image = [0u8; EDGE_COUNT];
        for (i, slot) in image.iter_mut().enumerate() {
            *slot = i as u8;
        }
        Self(image)
    }

    /// From 1-based images, e.g. `[2, 1, 3, ...]` swaps edges 1 and 2.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        if images.len() != EDGE_COUNT {
            return Err(Error::InvalidPermutation(format!(
                "expected {EDGE_COUNT} images, got {}",
                images.len()
            )));
        }
        let mut image = [0u8; EDGE_COUNT];
        let mut hit = [false; EDGE_COUNT];
        for (slot, &e) in image.iter_mut().zip(images) {
            if !(1..=EDGE_COUNT).contains(&e) {
                return Err(Error::EdgeOutOfRange(e));
            }
            if std::mem::replace(&mut hit[e - 1], true) {
                return Err(Error::InvalidPermutation(format!("edge {e} is hit twice")));
            }
            *slot = (e - 1) as u8;
        }
        Ok(Self(image))
    }

    /// Builds a permutation from disjoint cycles of 1-based edge ids.
    pub fn from_cycles(cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=EDGE_COUNT).collect();
        let mut moved = BTreeSet::new();
        for cycle in cycles {
            for (k, &e) in cycle.iter().enumerate() {
                if !(1..=EDGE_COUNT).contains(&e) {
                    return Err(Error::EdgeOutOfRange(e));
                }
                if !moved.insert(e) {
                    return Err(Error::InvalidPermutation(format!("edge {e} repeated in cycles")));
                }
                images[e - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    /// Image of a 1-based edge id.
    pub fn image(&self, edge: usize) -> usize {
        usize::from(self.0[edge - 1]) + 1
    }

    pub fn images(&self) -> Vec<usize> {
        (1..=EDGE_COUNT).map(|e| self.image(e)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn after(&self, other: &Self) -> Self {
        Self(other.0.map(|i| self.0[usize::from(i)]))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0u8; EDGE_COUNT];
        for (i, &j) in self.0.iter().enumerate() {
            inv[usize::from(j)] = i as u8;
        }
        Self(inv)
    }

    /// Disjoint cycles of length ≥ 2, each starting at its smallest edge.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = [false; EDGE_COUNT];
        let mut out = Vec::new();
        for start in 0..EDGE_COUNT {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                cycle.push(e + 1);
                e = usize::from(self.0[e]);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Moves label of edge `i` to edge `self.image(i)`.
    pub fn apply(&self, l: &EdgeLabelling) -> EdgeLabelling {
        let src = l.labels();
        let mut out = [0; EDGE_COUNT];
        for (i, &j) in self.0.iter().enumerate() {
            out[usize::from(j)] = src[i];
        }
        EdgeLabelling::new(out)
    }
}

impl fmt::Display for EdgePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            write!(f, "({})", c.iter().join(","))?;
        }
        Ok(())
    }
}

impl FromStr for EdgePermutation {
    type Err = Error;

    /// Parses cycle notation such as `(2,3)(9,10)`; `()` is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidPermutation(s.to_string());
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body_end = rest.find(')').ok_or_else(bad)?;
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let body = &body[..body_end - 1];
            if !body.trim().is_empty() {
                let cycle = body
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>>>()?;
                cycles.push(cycle);
            }
            rest = rest[body_end + 1..].trim_start();
        }
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        Self::from_cycles(&refs)
    }
}

impl Serialize for EdgePermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for EdgePermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Self::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// A finite group of edge permutations, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationGroup {
    elements: Vec<EdgePermutation>,
}

impl PermutationGroup {
    pub fn trivial() -> Self {
        Self { elements: vec![EdgePermutation::identity()] }
    }

    /// The group generated by `generators`.
    pub fn generated_by(generators: &[EdgePermutation]) -> Self {
        let mut seen = BTreeSet::from([EdgePermutation::identity()]);
        let mut queue = VecDeque::from([EdgePermutation::identity()]);
        while let Some(g) = queue.pop_front() {
            for s in generators {
                let h = s.after(&g);
                if seen.insert(h) {
                    queue.push_back(h);
                }
            }
        }
        Self { elements: seen.into_iter().collect() }
    }

    pub fn elements(&self) -> &[EdgePermutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, u: &EdgePermutation) -> bool {
        self.elements.binary_search(u).is_ok()
    }

    pub fn is_closed(&self) -> bool {
        self.contains(&EdgePermutation::identity())
            && self.elements.iter().all(|a| {
                self.contains(&a.inverse()) && self.elements.iter().all(|b| self.contains(&a.after(b)))
            })
    }

    /// Elements fixing `edge`.
    pub fn stabilizer(&self, edge: usize) -> Result<Self> {
        if !(1..=EDGE_COUNT).contains(&edge) {
            return Err(Error::EdgeOutOfRange(edge));
        }
        Ok(Self {
            elements: self.elements.iter().copied().filter(|u| u.image(edge) == edge).collect(),
        })
    }

    /// Orbits of the edge action, ordered by smallest member.
    pub fn orbits(&self) -> Vec<BTreeSet<usize>> {
        let mut assigned = [false; EDGE_COUNT];
        let mut out = Vec::new();
        for e in 1..=EDGE_COUNT {
            if assigned[e - 1] {
                continue;
            }
            let orbit: BTreeSet<usize> = self.elements.iter().map(|u| u.image(e)).collect();
            for &f in &orbit {
                assigned[f - 1] = true;
            }
            out.push(orbit);
        }
        out
    }
}

/// All edge permutations induced by vertex automorphisms of the cube.
pub fn build_group() -> PermutationGroup {
    let ends = edge_endpoints();
    let mut edge_of = [[None::<usize>; VERTEX_COUNT]; VERTEX_COUNT];
    for (e, &(a, b)) in ends.iter().enumerate() {
        edge_of[a][b] = Some(e);
        edge_of[b][a] = Some(e);
    }
    let mut elements = Vec::new();
    'perm: for phi in (0..VERTEX_COUNT).permutations(VERTEX_COUNT) {
        let mut image = [0u8; EDGE_COUNT];
        for (e, &(a, b)) in ends.iter().enumerate() {
            match edge_of[phi[a]][phi[b]] {
                Some(f) => image[e] = f as u8,
                None => continue 'perm,
            }
        }
        elements.push(EdgePermutation(image));
    }
    elements.sort();
    elements.dedup();
    assert_eq!(elements.len(), GROUP_ORDER, "cube automorphism group has wrong order");
    PermutationGroup { elements }
}

/// The automorphism group, built on first use.
pub fn cube_group() -> &'static PermutationGroup {
    static GROUP: OnceLock<PermutationGroup> = OnceLock::new();
    GROUP.get_or_init(build_group)
}

/// Edges whose labels can never be the second smallest when edge 1 is
/// strictly smallest.
pub const EXCLUDED_SECOND_SMALLEST: [usize; 5] = [2, 3, 8, 9, 10];

/// For a magic labelling whose edge 1 carries the strictly smallest label,
/// reports whether the minimum of the other eleven labels avoids edges
/// 2, 3, 8, 9 and 10.
pub fn check_second_smallest_exclusion(l: &EdgeLabelling) -> Result<bool> {
    if magic_sum_of(l).is_none() {
        return Err(Error::Inapplicable("labelling is not magic"));
    }
    let x = l.labels();
    if x[1..].iter().any(|&v| v <= x[0]) {
        return Err(Error::Inapplicable("edge 1 is not strictly smallest"));
    }
    let second = *x[1..].iter().min().expect("eleven labels");
    Ok(EXCLUDED_SECOND_SMALLEST.iter().all(|&e| l.get(e) != second))
}

/// Which of the two canonical shapes a representative has.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// x1 smallest, x6 second smallest.
    #[serde(rename = "i")]
    I,
    /// x1 smallest, x4 second smallest, x6 < x7.
    #[serde(rename = "ii")]
    II,
}

/// Shape of a distinct labelling, if it is canonical.
pub fn canonical_shape(l: &EdgeLabelling) -> Option<Shape> {
    let x = l.labels();
    let smallest_then = |second: usize| {
        (1..=EDGE_COUNT)
            .filter(|&e| e != 1)
            .all(|e| x[0] < x[e - 1])
            && (1..=EDGE_COUNT)
                .filter(|&e| e != 1 && e != second)
                .all(|e| x[second - 1] < x[e - 1])
    };
    if smallest_then(6) {
        Some(Shape::I)
    } else if smallest_then(4) && x[5] < x[6] {
        Some(Shape::II)
    } else {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CanonicalForm {
    pub labelling: EdgeLabelling,
    pub permutation: EdgePermutation,
    pub shape: Shape,
}

/// The unique image of a distinct magic labelling under `group` that has
/// one of the two canonical shapes.
///
/// Panics when zero or several group elements qualify.
pub fn canonical_form_in(group: &PermutationGroup, l: &EdgeLabelling) -> Result<CanonicalForm> {
    if magic_sum_of(l).is_none() {
        return Err(Error::NotMagic);
    }
    if !is_distinct(l) {
        return Err(Error::NotDistinct);
    }
    let mut hits = group.elements().iter().filter_map(|u| {
        let beta = u.apply(l);
        canonical_shape(&beta).map(|shape| CanonicalForm { labelling: beta, permutation: *u, shape })
    });
    let first = hits.next();
    let extra = hits.count();
    match (first, extra) {
        (Some(c), 0) => Ok(c),
        (None, _) => panic!("no canonical image for {l}"),
        (Some(_), n) => panic!("{} canonical images for {l}", n + 1),
    }
}

pub fn canonical_form(l: &EdgeLabelling) -> Result<CanonicalForm> {
    canonical_form_in(cube_group(), l)
}
