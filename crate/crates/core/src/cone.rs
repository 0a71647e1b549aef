//! Perfect-matching basis of the magic labellings and the eight-type
//! decomposition into shifted free monoids.
//!
//! Every magic labelling is written in the basis α1..α6 with integer
//! coordinates q1..q6. The sign pattern of (q4, q5) and of the four sums
//! 2q_i + q5 selects exactly one of eight types, each of which is a shift
//! plus a free monoid on six linearly independent matchings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cube::{magic_sum_of, EdgeLabelling, Label, MagicSum, EDGE_COUNT};
use crate::error::{Error, Result};

/// The nine perfect matchings α1..α9, indexed by `i - 1`.
pub const ALPHA: [EdgeLabelling; 9] = [
    EdgeLabelling::indicator(&[2, 3, 5, 8]),
    EdgeLabelling::indicator(&[1, 4, 6, 7]),
    EdgeLabelling::indicator(&[1, 5, 11, 12]),
    EdgeLabelling::indicator(&[2, 6, 10, 11]),
    EdgeLabelling::indicator(&[1, 4, 5, 8]),
    EdgeLabelling::indicator(&[4, 8, 9, 10]),
    EdgeLabelling::indicator(&[3, 7, 9, 12]),
    EdgeLabelling::indicator(&[2, 3, 6, 7]),
    EdgeLabelling::indicator(&[9, 10, 11, 12]),
];

/// The all-ones labelling T.
pub const ALL_ONES: EdgeLabelling = EdgeLabelling::constant(1);

/// α_i for `i` in 1..=9.
pub fn alpha(i: usize) -> EdgeLabelling {
    ALPHA[i - 1]
}

/// A symbol appearing in a linear relation between basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sym {
    Alpha(usize),
    T,
}

/// `Σ lhs = Σ rhs` with integer coefficients.
#[derive(Clone, Debug)]
pub struct Relation {
    pub lhs: Vec<(i64, Sym)>,
    pub rhs: Vec<(i64, Sym)>,
}

impl Relation {
    fn new(lhs: &[(i64, Sym)], rhs: &[(i64, Sym)]) -> Self {
        Self { lhs: lhs.to_vec(), rhs: rhs.to_vec() }
    }
}

/// The constant vectors α1..α9 and T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisTable {
    pub alphas: [EdgeLabelling; 9],
    pub total: EdgeLabelling,
}

impl Default for BasisTable {
    fn default() -> Self {
        Self { alphas: ALPHA, total: ALL_ONES }
    }
}

impl BasisTable {
    fn vector(&self, s: Sym) -> [i64; EDGE_COUNT] {
        match s {
            Sym::Alpha(i) => self.alphas[i - 1].to_signed(),
            Sym::T => self.total.to_signed(),
        }
    }

    fn combine(&self, terms: &[(i64, Sym)]) -> [i64; EDGE_COUNT] {
        let mut out = [0i64; EDGE_COUNT];
        for &(c, s) in terms {
            for (o, v) in out.iter_mut().zip(self.vector(s)) {
                *o += c * v;
            }
        }
        out
    }

    pub fn holds(&self, rel: &Relation) -> bool {
        self.combine(&rel.lhs) == self.combine(&rel.rhs)
    }

    /// Checks every identity from [`relations`] against this table.
    pub fn verify_relations(&self) -> bool {
        relations().iter().all(|r| self.holds(r))
    }
}

/// The linear relations among α1..α9 and T. Chained equalities are split
/// into separate relations; the two halved identities are stored with the
/// denominator cleared.
pub fn relations() -> Vec<Relation> {
    use Sym::{Alpha as A, T};
    vec![
        Relation::new(&[(1, A(1))], &[(1, A(3)), (1, A(4)), (1, A(6)), (1, A(7)), (-1, A(2)), (-2, A(9))]),
        Relation::new(&[(1, A(2))], &[(1, A(3)), (1, A(4)), (1, A(6)), (1, A(7)), (-1, A(1)), (-2, A(9))]),
        Relation::new(&[(1, A(3))], &[(1, A(1)), (1, A(2)), (1, A(4)), (1, A(7)), (-1, A(6)), (-2, A(8))]),
        Relation::new(&[(1, A(4))], &[(1, A(1)), (1, A(2)), (1, A(3)), (1, A(6)), (-2, A(5)), (-1, A(7))]),
        Relation::new(&[(1, A(6))], &[(1, A(1)), (1, A(2)), (1, A(4)), (1, A(7)), (-1, A(3)), (-2, A(8))]),
        Relation::new(&[(1, A(5))], &[(1, A(1)), (1, A(2)), (-1, A(8))]),
        Relation::new(&[(1, A(5))], &[(1, A(3)), (1, A(6)), (-1, A(9))]),
        Relation::new(&[(2, A(5))], &[(1, A(1)), (1, A(2)), (1, A(3)), (1, A(6)), (-1, A(4)), (-1, A(7))]),
        Relation::new(&[(1, T)], &[(1, A(1)), (1, A(2)), (1, A(9))]),
        Relation::new(&[(1, T)], &[(1, A(3)), (1, A(6)), (1, A(8))]),
        Relation::new(&[(1, T)], &[(1, A(4)), (1, A(5)), (1, A(7))]),
        Relation::new(&[(2, T)], &[(1, A(1)), (1, A(2)), (1, A(3)), (1, A(4)), (1, A(6)), (1, A(7))]),
    ]
}

/// Checks the relations on the standard table.
pub fn verify_relations() -> bool {
    BasisTable::default().verify_relations()
}

/// Coordinates q1..q6 of a labelling in the basis α1..α6.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QCoords(pub [i64; 6]);

impl QCoords {
    /// q1α1 + ... + q6α6, coordinate by coordinate.
    pub fn reconstruct(&self) -> [i64; EDGE_COUNT] {
        let [q1, q2, q3, q4, q5, q6] = self.0;
        [
            q2 + q3 + q5,
            q1 + q4,
            q1,
            q2 + q5 + q6,
            q1 + q3 + q5,
            q2 + q4,
            q2,
            q1 + q5 + q6,
            q6,
            q4 + q6,
            q3 + q4,
            q3,
        ]
    }

    pub fn reconstruct_labelling(&self) -> Option<EdgeLabelling> {
        EdgeLabelling::from_signed(self.reconstruct()).ok()
    }

    /// Membership conditions C1 (q1,q2,q3,q6 ≥ 0), C2 (q_i+q4 ≥ 0) and
    /// C3 (four three-term sums with q5 ≥ 0).
    pub fn satisfies_c1_c2_c3(&self) -> bool {
        let [q1, q2, q3, q4, q5, q6] = self.0;
        let c1 = [q1, q2, q3, q6].iter().all(|&q| q >= 0);
        let c2 = [q1, q2, q3, q6].iter().all(|&q| q + q4 >= 0);
        let c3 = [q1 + q3 + q5, q1 + q5 + q6, q2 + q3 + q5, q2 + q5 + q6]
            .iter()
            .all(|&s| s >= 0);
        c1 && c2 && c3
    }
}

/// q-coordinates of a magic labelling; `None` when `l` is not magic.
pub fn q_coordinates(l: &EdgeLabelling) -> Option<QCoords> {
    magic_sum_of(l)?;
    let x = l.to_signed();
    let q1 = x[2];
    let q2 = x[6];
    let q3 = x[11];
    let q6 = x[8];
    let q4 = x[1] - x[2];
    let q5 = x[4] - x[2] - x[11];
    let q = QCoords([q1, q2, q3, q4, q5, q6]);
    debug_assert_eq!(q.reconstruct(), x);
    Some(q)
}

pub fn satisfies_c1_c2_c3(q: &QCoords) -> bool {
    q.satisfies_c1_c2_c3()
}

/// The eight types of the decomposition, in their canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConeType {
    #[serde(rename = "t1")]
    T1,
    #[serde(rename = "t2")]
    T2,
    #[serde(rename = "t31")]
    T31,
    #[serde(rename = "t32")]
    T32,
    #[serde(rename = "t33")]
    T33,
    #[serde(rename = "t34")]
    T34,
    #[serde(rename = "t351")]
    T351,
    #[serde(rename = "t352")]
    T352,
}

impl ConeType {
    pub const ALL: [ConeType; 8] = [
        ConeType::T1,
        ConeType::T2,
        ConeType::T31,
        ConeType::T32,
        ConeType::T33,
        ConeType::T34,
        ConeType::T351,
        ConeType::T352,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConeType::T1 => "t1",
            ConeType::T2 => "t2",
            ConeType::T31 => "t31",
            ConeType::T32 => "t32",
            ConeType::T33 => "t33",
            ConeType::T34 => "t34",
            ConeType::T351 => "t351",
            ConeType::T352 => "t352",
        }
    }

    /// Shift vector of the type.
    pub fn base(self) -> EdgeLabelling {
        match self {
            ConeType::T1 => EdgeLabelling::zero(),
            ConeType::T2 => alpha(7),
            ConeType::T31 => alpha(9),
            ConeType::T32 => alpha(1) + alpha(9),
            ConeType::T33 => alpha(6) + alpha(8),
            ConeType::T34 => alpha(8),
            ConeType::T351 => alpha(4) + alpha(7),
            ConeType::T352 => ALL_ONES,
        }
    }

    /// Matching indices of the six generators, in k1..k6 order.
    pub fn basis_indices(self) -> [usize; 6] {
        match self {
            ConeType::T1 => [1, 2, 3, 4, 5, 6],
            ConeType::T2 => [1, 2, 3, 5, 6, 7],
            ConeType::T31 => [2, 3, 4, 6, 7, 9],
            ConeType::T32 => [1, 3, 4, 6, 7, 9],
            ConeType::T33 => [1, 2, 4, 6, 7, 8],
            ConeType::T34 => [1, 2, 3, 4, 7, 8],
            ConeType::T351 | ConeType::T352 => [1, 2, 3, 4, 6, 7],
        }
    }

    pub fn basis(self) -> [EdgeLabelling; 6] {
        self.basis_indices().map(alpha)
    }

    /// Magic sum of the shift vector.
    pub fn offset(self) -> MagicSum {
        match self {
            ConeType::T1 => 0,
            ConeType::T2 | ConeType::T31 | ConeType::T34 => 1,
            ConeType::T32 | ConeType::T33 | ConeType::T351 => 2,
            ConeType::T352 => 3,
        }
    }
}

impl fmt::Display for ConeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConeType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConeType::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownType(s.to_string()))
    }
}

/// A type tag with its six multiplicities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TypeDecomposition {
    #[serde(rename = "type")]
    pub ty: ConeType,
    pub ks: [Label; 6],
}

impl TypeDecomposition {
    pub fn new(ty: ConeType, ks: [Label; 6]) -> Self {
        Self { ty, ks }
    }

    /// Builds a decomposition from signed multiplicities, rejecting negatives.
    pub fn from_signed(ty: ConeType, ks: [i64; 6]) -> Result<Self> {
        let mut out = [0; 6];
        for (i, (&k, dst)) in ks.iter().zip(out.iter_mut()).enumerate() {
            if k < 0 {
                return Err(Error::NegativeMultiplicity { index: i + 1, value: k });
            }
            *dst = Label::try_from(k).map_err(|_| Error::Overflow)?;
        }
        Ok(Self { ty, ks: out })
    }

    pub fn magic_sum(&self) -> u64 {
        u64::from(self.ty.offset()) + self.ks.iter().map(|&k| u64::from(k)).sum::<u64>()
    }
}

/// base(type) + Σ k_j · basis_j(type).
pub fn compose(d: &TypeDecomposition) -> Result<EdgeLabelling> {
    let mut acc = d.ty.base();
    for (&k, b) in d.ks.iter().zip(d.ty.basis()) {
        let term = b.checked_scale(k).ok_or(Error::Overflow)?;
        acc = acc.checked_add(&term).ok_or(Error::Overflow)?;
    }
    Ok(acc)
}

/// Multiplicities for the region selected by `q`, each attached to the
/// generator it multiplies in that type's basis order.
fn region_multiplicities(q: &QCoords) -> (ConeType, [i64; 6]) {
    let [q1, q2, q3, q4, q5, q6] = q.0;
    if q4 >= 0 && q5 >= 0 {
        return (ConeType::T1, [q1, q2, q3, q4, q5, q6]);
    }
    if q4 < 0 && q5 >= 2 * q4 {
        return (ConeType::T2, [q1 + q4, q2 + q4, q3 + q4, q5 - 2 * q4, q6 + q4, -(q4 + 1)]);
    }
    // q5 < 0 and q5 < 2 q4 from here on.
    if 2 * q1 + q5 < 0 && q1 <= q2 {
        // α2, α3, α4, α6, α7, α9
        return (
            ConeType::T31,
            [q2 - q1, q1 + q3 + q5, q1 + q4, q1 + q5 + q6, q1, -(2 * q1 + q5 + 1)],
        );
    }
    if 2 * q2 + q5 < 0 && q2 < q1 {
        // α1, α3, α4, α6, α7, α9
        return (
            ConeType::T32,
            [q1 - q2 - 1, q2 + q3 + q5, q2 + q4, q2 + q5 + q6, q2, -(2 * q2 + q5 + 1)],
        );
    }
    if 2 * q3 + q5 < 0 && q3 < q6 {
        // α1, α2, α4, α6, α7, α8
        return (
            ConeType::T33,
            [q1 + q3 + q5, q2 + q3 + q5, q3 + q4, q6 - q3 - 1, q3, -(2 * q3 + q5 + 1)],
        );
    }
    if 2 * q6 + q5 < 0 && q6 <= q3 {
        // α1, α2, α3, α4, α7, α8
        return (
            ConeType::T34,
            [q1 + q5 + q6, q2 + q5 + q6, q3 - q6, q4 + q6, q6, -(2 * q6 + q5 + 1)],
        );
    }
    let p35 = q5 < 0 && q5 < 2 * q4 && [q1, q2, q3, q6].iter().all(|&q| 2 * q + q5 >= 0);
    assert!(p35, "q = {q:?} lies in no region of the decomposition");
    // α1, α2, α3, α4, α6, α7
    if q5 % 2 == 0 {
        let h = q5 / 2;
        (ConeType::T351, [q1 + h, q2 + h, q3 + h, q4 - h - 1, q6 + h, -(h + 1)])
    } else {
        let lo = (q5 - 1) / 2;
        let hi = (q5 + 1) / 2;
        (ConeType::T352, [q1 + lo, q2 + lo, q3 + lo, q4 - hi, q6 + lo, -hi])
    }
}

/// Writes a magic labelling as one of the eight types.
///
/// Panics if no region matches or a multiplicity comes out negative; either
/// would be a counterexample to the decomposition.
pub fn classify(l: &EdgeLabelling) -> Result<TypeDecomposition> {
    let q = q_coordinates(l).ok_or(Error::NotMagic)?;
    let (ty, ks) = region_multiplicities(&q);
    assert!(
        ks.iter().all(|&k| k >= 0),
        "negative multiplicity for {l}: {ty} {ks:?} (q = {q:?})"
    );
    let d = TypeDecomposition::from_signed(ty, ks).expect("multiplicities checked above");
    debug_assert_eq!(compose(&d).as_ref(), Ok(l));
    Ok(d)
}

/// Rank over the rationals of a list of integer vectors (fraction-free elimination).
pub fn rank(rows: &[[i64; EDGE_COUNT]]) -> usize {
    let mut m: Vec<[i128; EDGE_COUNT]> = rows.iter().map(|r| r.map(i128::from)).collect();
    let mut rank = 0;
    for col in 0..EDGE_COUNT {
        let Some(p) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank];
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in 0..EDGE_COUNT {
                row[j] = row[j] * pivot[col] - pivot[j] * f;
            }
            let g = row.iter().fold(0i128, |g, &x| num_integer::gcd(g, x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{brute_force_enumerate, is_magic};

    #[test]
    fn alphas_are_perfect_matchings() {
        for a in ALPHA {
            assert_eq!(magic_sum_of(&a), Some(1));
            assert_eq!(a.total(), 4);
            assert!(a.labels().iter().all(|&x| x <= 1));
        }
        assert_eq!(magic_sum_of(&ALL_ONES), Some(3));
        assert_eq!(ALPHA[0], EdgeLabelling::new([0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn relations_hold() {
        assert!(verify_relations());
        assert_eq!(relations().len(), 12);
    }

    #[test]
    fn swapping_alpha1_alpha2_keeps_relations() {
        let mut table = BasisTable::default();
        table.alphas.swap(0, 1);
        assert!(table.verify_relations());
    }

    #[test]
    fn zeroed_alpha9_breaks_relations() {
        let mut table = BasisTable::default();
        table.alphas[8] = EdgeLabelling::zero();
        assert!(!table.verify_relations());
        let t_rel = &relations()[8];
        assert!(!table.holds(t_rel));
    }

    #[test]
    fn q_coordinate_examples() {
        assert_eq!(q_coordinates(&alpha(7)), Some(QCoords([1, 1, 1, -1, -2, 1])));
        assert_eq!(q_coordinates(&ALL_ONES), Some(QCoords([1, 1, 1, 0, -1, 1])));
        assert_eq!(q_coordinates(&alpha(1)), Some(QCoords([1, 0, 0, 0, 0, 0])));
        assert_eq!(q_coordinates(&EdgeLabelling::unit(3)), None);
    }

    #[test]
    fn condition_examples() {
        assert!(QCoords([1, 1, 1, -1, -2, 1]).satisfies_c1_c2_c3());
        assert!(!QCoords([0, 0, 0, 0, -1, 0]).satisfies_c1_c2_c3());
        assert!(QCoords([0; 6]).satisfies_c1_c2_c3());
    }

    #[test]
    fn classify_examples() {
        let cases = [
            (alpha(1), ConeType::T1, [1, 0, 0, 0, 0, 0]),
            (alpha(7), ConeType::T2, [0; 6]),
            (alpha(9), ConeType::T31, [0; 6]),
            (ALL_ONES, ConeType::T352, [0; 6]),
        ];
        for (l, ty, ks) in cases {
            assert_eq!(classify(&l), Ok(TypeDecomposition::new(ty, ks)), "{l}");
        }
        assert_eq!(q_coordinates(&alpha(9)), Some(QCoords([0, 0, 1, 0, -1, 1])));
        assert_eq!(classify(&EdgeLabelling::unit(1)), Err(Error::NotMagic));
    }

    #[test]
    fn compose_examples() {
        let d = TypeDecomposition::new(ConeType::T1, [1, 0, 0, 0, 0, 0]);
        assert_eq!(compose(&d).unwrap(), EdgeLabelling::new([0, 1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0]));
        let d = TypeDecomposition::new(ConeType::T352, [0; 6]);
        assert_eq!(compose(&d).unwrap(), EdgeLabelling::constant(1));
        let d = TypeDecomposition::new(ConeType::T2, [0, 0, 0, 0, 0, 1]);
        assert_eq!(compose(&d).unwrap(), EdgeLabelling::new([0, 0, 2, 0, 0, 0, 2, 0, 2, 0, 0, 2]));
        assert_eq!(
            TypeDecomposition::from_signed(ConeType::T1, [0, 0, -1, 0, 0, 0]),
            Err(Error::NegativeMultiplicity { index: 3, value: -1 })
        );
        let huge = TypeDecomposition::new(ConeType::T2, [Label::MAX, 0, 0, 0, 0, 0]);
        assert_eq!(compose(&huge), Err(Error::Overflow));
    }

    #[test]
    fn shifts_and_generators_are_magic() {
        for ty in ConeType::ALL {
            assert_eq!(magic_sum_of(&ty.base()), Some(ty.offset()));
            for b in ty.basis() {
                assert!(is_magic(&(ty.base() + b)));
            }
        }
    }

    #[test]
    fn decomposition_serializes_with_paper_tags() {
        let d = TypeDecomposition::new(ConeType::T31, [1, 2, 3, 4, 5, 6]);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"type":"t31","ks":[1,2,3,4,5,6]}"#);
        let back: TypeDecomposition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<TypeDecomposition>(r#"{"type":"t4","ks":[0,0,0,0,0,0]}"#).is_err());
        assert!(serde_json::from_str::<TypeDecomposition>(r#"{"type":"t1","ks":[0,0,-1,0,0,0]}"#).is_err());
    }

    #[test]
    fn round_trip_small_sums() {
        for r in 0..=4 {
            for l in brute_force_enumerate(r) {
                let d = classify(&l).unwrap();
                assert_eq!(d.magic_sum(), u64::from(r));
                assert_eq!(compose(&d).unwrap(), l);
            }
        }
    }
}
