//! Cross-checks between the decomposition, the oracle, the group action
//! and the closed forms. Each check reports a name, a verdict and a short
//! detail line.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use serde::Serialize;

use crate::cone::{self, classify, compose, rank, ConeType, QCoords, TypeDecomposition};
use crate::cube::{brute_force_enumerate, brute_force_set, is_distinct, MagicSum};
use crate::enumerate::{
    assemble_orbit_series, count_by_type, count_constrained, count_distinct, enumerate_by_type, Compositions,
    DistinctMode, OrderingConstraint,
};
use crate::series::{closed_form_f1_specialized, closed_form_g, closed_form_gstar, forward_difference, gstar_numerator_factor};
use crate::symmetry::{build_group, canonical_form, check_second_smallest_exclusion, EdgePermutation, PermutationGroup};

/// Printed leading coefficients of the distinct-labelling series, from y^17.
pub const PRINTED_GSTAR: [u64; 7] = [6, 13, 34, 60, 128, 199, 331];

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Cone,
    Symmetry,
    Series,
    Distinct,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.to_string(), passed, detail: detail.into() }
    }
}

pub fn run(suite: Suite, max_sum: MagicSum) -> Vec<CheckResult> {
    match suite {
        Suite::All => [Suite::Cone, Suite::Symmetry, Suite::Series, Suite::Distinct]
            .into_iter()
            .flat_map(|s| run(s, max_sum))
            .collect(),
        Suite::Cone => cone_suite(max_sum),
        Suite::Symmetry => symmetry_suite(max_sum),
        Suite::Series => series_suite(max_sum),
        Suite::Distinct => distinct_suite(max_sum),
    }
}

fn cone_suite(max_sum: MagicSum) -> Vec<CheckResult> {
    let mut out = vec![CheckResult::new("relations", cone::verify_relations(), "12 identities among α1..α9, T")];

    let ranks: Vec<usize> = ConeType::ALL
        .iter()
        .map(|t| rank(&t.basis().map(|b| b.to_signed())))
        .collect();
    out.push(CheckResult::new("type-bases-independent", ranks.iter().all(|&r| r == 6), format!("ranks {ranks:?}")));

    let mut bad = 0usize;
    let mut seen = 0usize;
    for r in 0..=max_sum {
        for l in brute_force_enumerate(r) {
            seen += 1;
            let ok = classify(&l).ok().and_then(|d| compose(&d).ok()) == Some(l);
            bad += usize::from(!ok);
        }
    }
    out.push(CheckResult::new("compose-after-classify", bad == 0, format!("{seen} labellings, {bad} mismatches")));

    let k_max = max_sum.min(5);
    let mut bad = 0usize;
    let mut seen = 0usize;
    for ty in ConeType::ALL {
        for n in 0..=k_max {
            for ks in Compositions::new(n) {
                seen += 1;
                let d = TypeDecomposition::new(ty, ks);
                let back = compose(&d).ok().and_then(|l| classify(&l).ok());
                bad += usize::from(back != Some(d));
            }
        }
    }
    out.push(CheckResult::new(
        "classify-after-compose",
        bad == 0,
        format!("{seen} decompositions with Σk ≤ {k_max}, {bad} mismatches"),
    ));

    let mut failures = Vec::new();
    for r in 0..=max_sum {
        let stream: Vec<_> = enumerate_by_type(r).collect();
        let set: BTreeSet<_> = stream.iter().copied().collect();
        if set.len() != stream.len() || set != brute_force_set(r) {
            failures.push(r);
        }
    }
    out.push(CheckResult::new(
        "types-partition-oracle",
        failures.is_empty(),
        format!("r ≤ {max_sum}, failing sums {failures:?}"),
    ));

    let mut bad = 0usize;
    for q in q_box(5) {
        let nonneg = q.reconstruct().iter().all(|&x| x >= 0);
        bad += usize::from(q.satisfies_c1_c2_c3() != nonneg);
    }
    out.push(CheckResult::new("membership-conditions", bad == 0, format!("q in [-5,5]^6, {bad} disagreements")));
    out
}

/// All q in `[-b, b]^6`.
pub fn q_box(b: i64) -> impl Iterator<Item = QCoords> {
    let side = (2 * b + 1) as usize;
    (0..side.pow(6)).map(move |mut idx| {
        let mut q = [0i64; 6];
        for slot in q.iter_mut() {
            *slot = (idx % side) as i64 - b;
            idx /= side;
        }
        QCoords(q)
    })
}

fn u1_generators() -> [EdgePermutation; 2] {
    [
        EdgePermutation::from_cycles(&[&[2, 3], &[9, 10], &[6, 7], &[11, 12]]).expect("valid cycles"),
        EdgePermutation::from_cycles(&[&[3, 10], &[4, 5], &[7, 11], &[6, 12], &[2, 9]]).expect("valid cycles"),
    ]
}

fn symmetry_suite(max_sum: MagicSum) -> Vec<CheckResult> {
    let u = build_group();
    let mut out = Vec::new();
    let faithful = u.elements().iter().filter(|g| g.is_identity()).count() == 1;
    out.push(CheckResult::new("group-order", u.len() == 48 && u.is_closed(), format!("|U| = {}", u.len())));
    out.push(CheckResult::new("action-faithful", faithful, "only the identity fixes every edge"));

    let u1 = u.stabilizer(1).expect("edge 1 exists");
    let gens = u1_generators();
    let has_gens = gens.iter().all(|g| u1.contains(g));
    out.push(CheckResult::new(
        "stabilizer-of-edge-1",
        u1.len() == 4 && has_gens && u1 == PermutationGroup::generated_by(&gens),
        format!("|U1| = {}, contains generators: {has_gens}", u1.len()),
    ));
    let orbits = u1.orbits();
    let expected: Vec<BTreeSet<usize>> = [&[1][..], &[2, 3, 9, 10], &[4, 5], &[6, 7, 11, 12], &[8]]
        .iter()
        .map(|o| o.iter().copied().collect())
        .collect();
    out.push(CheckResult::new("stabilizer-orbits", orbits == expected, format!("{orbits:?}")));

    let mut applicable = 0usize;
    let mut bad = 0usize;
    let mut not_preserved = 0usize;
    for r in 0..=max_sum {
        let set = brute_force_set(r);
        for l in &set {
            if let Ok(ok) = check_second_smallest_exclusion(l) {
                applicable += 1;
                bad += usize::from(!ok);
            }
        }
        for g in u.elements() {
            let image: BTreeSet<_> = set.iter().map(|l| g.apply(l)).collect();
            not_preserved += usize::from(image != set);
        }
    }
    out.push(CheckResult::new(
        "second-smallest-exclusion",
        bad == 0,
        format!("{applicable} applicable labellings with r ≤ {max_sum}, {bad} violations"),
    ));
    out.push(CheckResult::new(
        "group-preserves-magic-sets",
        not_preserved == 0,
        format!("r ≤ {max_sum}, {not_preserved} failures"),
    ));

    let r = 17;
    let distinct: Vec<_> = brute_force_enumerate(r).filter(is_distinct).collect();
    let mut bad = 0usize;
    for l in &distinct {
        let unique = canonical_form(l).is_ok();
        let orbit: BTreeSet<_> = u.elements().iter().map(|g| g.apply(l)).collect();
        bad += usize::from(!unique || orbit.len() != 48);
    }
    out.push(CheckResult::new(
        "canonical-form-unique",
        bad == 0 && !distinct.is_empty(),
        format!("{} distinct labellings at r = {r}, {bad} failures", distinct.len()),
    ));
    out
}

fn series_suite(max_sum: MagicSum) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let g = closed_form_g().expand(200);
    let bad: Vec<usize> = (0..=200u32)
        .filter(|&r| BigInt::from(count_by_type(r)) != g[r as usize])
        .map(|r| r as usize)
        .collect();
    out.push(CheckResult::new("g-matches-type-count", bad.is_empty(), format!("r ≤ 200, mismatches at {bad:?}")));
    let bad: Vec<MagicSum> = (0..=max_sum)
        .filter(|&r| BigInt::from(brute_force_enumerate(r).count()) != g[r as usize])
        .collect();
    out.push(CheckResult::new("g-matches-oracle", bad.is_empty(), format!("r ≤ {max_sum}, mismatches at {bad:?}")));

    let counts: Vec<BigInt> = (0..=30).map(|r| BigInt::from(count_by_type(r))).collect();
    let d6 = forward_difference(&counts, 6);
    out.push(CheckResult::new(
        "degree-five-polynomial",
        d6.iter().all(Zero::is_zero),
        "sixth differences of counts for r ≤ 30",
    ));

    let n_sum: BigInt = gstar_numerator_factor().coeffs().iter().sum();
    out.push(CheckResult::new(
        "numerator-checksum",
        gstar_numerator_factor().degree() == Some(86) && n_sum == BigInt::from(7_264_857_600u64),
        format!("N(1) = {n_sum}"),
    ));
    let gstar = closed_form_gstar();
    let coeffs = gstar.expand(23);
    let printed: Vec<BigInt> = PRINTED_GSTAR.iter().map(|&c| BigInt::from(c)).collect();
    out.push(CheckResult::new(
        "gstar-printed-terms",
        coeffs[17..] == printed[..] && coeffs[..17].iter().all(Zero::is_zero),
        format!("y^17..y^23: {:?}", coeffs[17..].iter().map(ToString::to_string).collect::<Vec<_>>()),
    ));
    out.push(CheckResult::new(
        "gstar-period",
        gstar.quasi_period() == 720_720,
        format!("lcm of denominator orders = {}", gstar.quasi_period()),
    ));

    let spec = closed_form_f1_specialized().expand(14);
    for (name, c) in [
        ("f1-constrained-count", OrderingConstraint::second_smallest_at_6()),
        ("f2-constrained-count", OrderingConstraint::second_smallest_at_4()),
    ] {
        let got: Vec<BigInt> = (8..=14).map(|r| BigInt::from(count_constrained(r, &c))).collect();
        out.push(CheckResult::new(
            name,
            got[..] == spec[8..],
            format!("r = 8..14: {:?}", got.iter().map(ToString::to_string).collect::<Vec<_>>()),
        ));
    }
    out
}

fn distinct_suite(max_sum: MagicSum) -> Vec<CheckResult> {
    let top = max_sum.max(18);
    let gstar = closed_form_gstar().expand(top as usize);
    let mut out = Vec::new();
    let mut details = Vec::new();
    let mut ok = true;
    for r in 16..=top {
        let raw = count_distinct(r, DistinctMode::Raw);
        let divisible = (&raw % BigUint::from(48u32)).is_zero();
        let orbits = &raw / BigUint::from(48u32);
        ok &= divisible && BigInt::from(orbits.clone()) == gstar[r as usize];
        details.push(format!("r={r}: raw {raw}"));
    }
    out.push(CheckResult::new("distinct-orbits-match-gstar", ok, details.join(", ")));

    let assembled = assemble_orbit_series(top);
    let ok = assembled.iter().zip(&gstar).all(|(a, g)| BigInt::from(a.clone()) == *g);
    out.push(CheckResult::new("convolution-matches-gstar", ok, format!("r ≤ {top}")));
    out
}
