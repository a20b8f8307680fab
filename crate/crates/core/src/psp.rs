//! Products of bounded p-groups: the rank-2 PSP example and the splitting
//! of coordinate data into a finite summand plus a complement.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::linalg::{minimal_summand, next_prime, EnumBound, FinitePGroup, LinalgError, SubgroupGens};

/// `(a, b)` ranging over `Z^2 \ {0}` ordered by `(|a| + |b|, a, b)`.
pub fn pair_enumeration() -> impl Iterator<Item = (i64, i64)> {
    (1i64..).flat_map(|n| {
        (-n..=n).flat_map(move |a| {
            let r = n - a.abs();
            if r == 0 {
                vec![(a, 0)]
            } else {
                vec![(a, -r), (a, r)]
            }
        })
    })
}

/// 1-based position of `(a, b)` in [`pair_enumeration`]; `None` for the origin.
pub fn enumeration_index(a: i64, b: i64) -> Option<u64> {
    if a == 0 && b == 0 {
        return None;
    }
    let n = a.unsigned_abs() + b.unsigned_abs();
    // 2n(n-1) nonzero pairs have smaller norm
    let before = 2 * n * (n - 1);
    let within = pair_enumeration_level(n as i64).position(|q| q == (a, b)).expect("pair of norm n") as u64;
    Some(before + within + 1)
}

fn pair_enumeration_level(n: i64) -> impl Iterator<Item = (i64, i64)> {
    (-n..=n).flat_map(move |a| {
        let r = n - a.abs();
        if r == 0 {
            vec![(a, 0)]
        } else {
            vec![(a, -r), (a, r)]
        }
    })
}

/// Nonnegative pairs other than the origin ordered by `(x + y, x, y)`.
fn pick_candidates() -> impl Iterator<Item = (i64, i64)> {
    (1i64..).flat_map(|n| (0..=n).map(move |x| (x, n - x)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PspStep {
    pub j: u64,
    pub a: i64,
    pub b: i64,
    pub x: i64,
    pub y: i64,
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PspExample {
    pub steps: Vec<PspStep>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PspError {
    #[error("the pair (0, 0) has no enumeration index")]
    ZeroPair,
    #[error("step {j}: {message}")]
    Invariant { j: u64, message: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("prime {p}: {message}")]
    Decomposition { p: u64, message: String },
}

/// The first `steps` coordinates of `x = (x_j)`, `y = (y_j)` in `prod Z/p_j`.
///
/// Each pick avoids every earlier enumerated combination, so `a x_j + b y_j`
/// can vanish mod `p_j` only before the index of `(a, b)`.
pub fn psp_example(steps: u64) -> PspExample {
    let pairs: Vec<(i64, i64)> = pair_enumeration().take(steps as usize).collect();
    let mut out = Vec::with_capacity(steps as usize);
    let mut prev = 1;
    for j in 1..=steps as usize {
        let seen = &pairs[..j];
        let (x, y) = pick_candidates()
            .find(|&(x, y)| seen.iter().all(|&(a, b)| a * x + b * y != 0))
            .expect("only finitely many lines to avoid");
        let largest = seen.iter().map(|&(a, b)| (a * x + b * y).unsigned_abs()).max().unwrap_or(0);
        let p = next_prime(prev.max(largest));
        prev = p;
        let (a, b) = pairs[j - 1];
        out.push(PspStep { j: j as u64, a, b, x, y, p });
    }
    PspExample { steps: out }
}

/// Recomputes every invariant of `e` without trusting its construction.
pub fn verify_psp(e: &PspExample) -> Result<(), PspError> {
    let mut expected = pair_enumeration();
    let mut prev = 0;
    for (i, s) in e.steps.iter().enumerate() {
        let fail = |message: String| PspError::Invariant { j: s.j, message };
        if s.j != i as u64 + 1 {
            return Err(fail(format!("numbered {} at position {}", s.j, i + 1)));
        }
        if expected.next() != Some((s.a, s.b)) {
            return Err(fail(format!("pair ({}, {}) out of enumeration order", s.a, s.b)));
        }
        if !crate::linalg::is_prime(s.p) || s.p <= prev {
            return Err(fail(format!("{} is not a prime above {prev}", s.p)));
        }
        prev = s.p;
        for k in &e.steps[..=i] {
            let c = k.a * s.x + k.b * s.y;
            if c == 0 || c.rem_euclid(s.p as i64) == 0 {
                return Err(fail(format!("combination of step {} vanishes mod {}", k.j, s.p)));
            }
        }
    }
    Ok(())
}

/// `#{j : a x_j + b y_j = 0 mod p_j}` over the computed steps.
pub fn combo_zero_count(e: &PspExample, a: i64, b: i64) -> Result<u64, PspError> {
    if a == 0 && b == 0 {
        return Err(PspError::ZeroPair);
    }
    Ok(e.steps.iter().filter(|s| (a * s.x + b * s.y).rem_euclid(s.p as i64) == 0).count() as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitWitness {
    pub modulus: u64,
    pub classes: Vec<u64>,
    pub a: i64,
    pub b: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndecomposabilityEvidence {
    pub steps: u64,
    pub splits_checked: u64,
    pub pairs_checked: u64,
    /// Combinations that vanish on all but finitely many coordinates of one
    /// side of a split; empty when the evidence is clean.
    pub witnesses: Vec<SplitWitness>,
}

/// Splits the coordinates by residue class of `j` modulo 2..=`max_modulus`
/// and looks for a combination `a x + b y` (|a|, |b| <= `radius`) supported on
/// one side only, up to the finitely many coordinates before its index.
pub fn indecomposability_evidence(e: &PspExample, max_modulus: u64, radius: i64) -> IndecomposabilityEvidence {
    let mut splits = 0;
    let mut pairs = 0;
    let mut witnesses = Vec::new();
    for m in 2..=max_modulus {
        // proper nonempty class sets containing class 0, so each split is seen once
        for mask in 0u64..(1 << (m - 1)) {
            let side: Vec<u64> = std::iter::once(0).chain((1..m).filter(|c| mask & (1 << (c - 1)) != 0)).collect();
            if side.len() as u64 == m {
                continue;
            }
            splits += 1;
            for a in -radius..=radius {
                for b in -radius..=radius {
                    let Some(k) = enumeration_index(a, b) else { continue };
                    pairs += 1;
                    for inside in [true, false] {
                        // vanishing on every late coordinate of the other side
                        let other: Vec<&PspStep> =
                            e.steps.iter().filter(|s| s.j >= k && side.contains(&(s.j % m)) != inside).collect();
                        if !other.is_empty() && other.iter().all(|s| (a * s.x + b * s.y).rem_euclid(s.p as i64) == 0) {
                            let classes =
                                if inside { side.clone() } else { (0..m).filter(|c| !side.contains(c)).collect() };
                            witnesses.push(SplitWitness { modulus: m, classes, a, b });
                        }
                    }
                }
            }
        }
    }
    IndecomposabilityEvidence { steps: e.steps.len() as u64, splits_checked: splits, pairs_checked: pairs, witnesses }
}

/// Torsion at finitely many primes, with elements of the product given by
/// their entries there. Coordinates omit primes where they vanish.
#[derive(Clone, Debug)]
pub struct CoordinateData {
    pub torsion: BTreeMap<u64, FinitePGroup>,
    pub coords: Vec<BTreeMap<u64, Vec<i128>>>,
}

#[derive(Clone, Debug)]
pub struct PrimeSplit {
    pub summand: SubgroupGens,
    pub complement: SubgroupGens,
}

/// Per prime, the least summand `F_p` of `T_p` containing every coordinate
/// entry and a complement `S_p`, each checked before it is returned.
pub fn decompose_extension(cd: &CoordinateData, bound: EnumBound) -> Result<BTreeMap<u64, PrimeSplit>, PspError> {
    let mut out = BTreeMap::new();
    for (&p, t) in &cd.torsion {
        let gens: Vec<Vec<i128>> = cd.coords.iter().filter_map(|c| c.get(&p).cloned()).collect();
        let n = SubgroupGens::new(t.clone(), gens)?;
        let (summand, complement) = minimal_summand(&n, bound)?;
        let split = PrimeSplit { summand, complement };
        check_split(&n, &split).map_err(|message| PspError::Decomposition { p, message })?;
        out.insert(p, split);
    }
    Ok(out)
}

/// Order count, trivial intersection, containment and purity by brute force.
pub fn check_split(n: &SubgroupGens, s: &PrimeSplit) -> Result<(), String> {
    let t = n.ambient();
    if s.summand.order() * s.complement.order() != t.order() {
        return Err("orders do not multiply to |T_p|".into());
    }
    if !s.summand.intersection_is_trivial(&s.complement) {
        return Err("summand and complement intersect".into());
    }
    if !s.summand.contains_subgroup(n) {
        return Err("a coordinate lies outside the summand".into());
    }
    let inside = s.summand.elements();
    let p = t.prime() as i128;
    for x in inside.iter().filter(|x| !t.is_zero(x)) {
        // largest h with x in p^h F
        let mut level = inside.clone();
        let mut h = 0u32;
        loop {
            level = level.iter().map(|f| t.scale(p, f)).collect();
            if !level.contains(x) {
                break;
            }
            h += 1;
        }
        let ambient = t.height(x);
        if ambient != Some(h) {
            return Err(format!("{x:?} has height {h} in the summand but {ambient:?} in T_p"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_order() {
        let first: Vec<_> = pair_enumeration().take(8).collect();
        assert_eq!(first, vec![(-1, 0), (0, -1), (0, 1), (1, 0), (-2, 0), (-1, -1), (-1, 1), (0, -2)]);
        for (i, (a, b)) in pair_enumeration().take(300).enumerate() {
            assert_eq!(enumeration_index(a, b), Some(i as u64 + 1));
        }
        assert_eq!(enumeration_index(0, 0), None);
    }

    #[test]
    fn first_step() {
        let e = psp_example(1);
        assert_eq!(e.steps[0], PspStep { j: 1, a: -1, b: 0, x: 1, y: 0, p: 2 });
        assert_eq!(combo_zero_count(&e, -1, 0), Ok(0));
        assert_eq!(combo_zero_count(&e, 0, 0), Err(PspError::ZeroPair));
    }

    #[test]
    fn invariants_and_counts() {
        let e = psp_example(60);
        verify_psp(&e).unwrap();
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                if let Some(k) = enumeration_index(a, b) {
                    assert!(combo_zero_count(&e, a, b).unwrap() < k);
                    let tail: Vec<_> = e.steps.iter().filter(|s| s.p > 2).collect();
                    for s in tail {
                        let z1 = (a * s.x + b * s.y).rem_euclid(s.p as i64) == 0;
                        let z2 = (2 * a * s.x + 2 * b * s.y).rem_euclid(s.p as i64) == 0;
                        assert_eq!(z1, z2);
                    }
                }
            }
        }
        let mut bad = e.clone();
        bad.steps[5].p = bad.steps[4].p;
        assert!(verify_psp(&bad).is_err());
    }

    #[test]
    fn split_evidence_is_clean() {
        let ev = indecomposability_evidence(&psp_example(80), 3, 2);
        assert!(ev.witnesses.is_empty(), "{:?}", ev.witnesses);
        assert_eq!(ev.splits_checked, 1 + 3);
    }

    fn data(p: u64, e: &[u32], coords: &[&[i128]]) -> CoordinateData {
        CoordinateData {
            torsion: [(p, FinitePGroup::new(p, e.to_vec()).unwrap())].into(),
            coords: coords.iter().map(|c| [(p, c.to_vec())].into()).collect(),
        }
    }

    #[test]
    fn decompose_examples() {
        let bound = EnumBound::default();
        let out = decompose_extension(&data(2, &[2, 1], &[&[2, 0]]), bound).unwrap();
        assert_eq!(out[&2].summand.order(), 4);
        assert_eq!(out[&2].complement.order(), 2);
        assert!(out[&2].summand.contains(&[1, 0]));

        let out = decompose_extension(&data(3, &[2, 1], &[&[0, 0]]), bound).unwrap();
        assert!(out[&3].summand.is_trivial());
        assert_eq!(out[&3].complement.order(), 27);

        let out = decompose_extension(&data(2, &[2, 1], &[&[1, 0], &[0, 1]]), bound).unwrap();
        assert_eq!(out[&2].summand.order(), 8);
        assert!(out[&2].complement.is_trivial());
    }

    #[test]
    fn impure_split_is_caught() {
        let t = FinitePGroup::new(2, vec![2, 1]).unwrap();
        let n = SubgroupGens::new(t.clone(), vec![vec![2, 0]]).unwrap();
        let bad =
            PrimeSplit { summand: n.clone(), complement: SubgroupGens::new(t, vec![vec![0, 1], vec![1, 0]]).unwrap() };
        assert!(check_split(&n, &bad).is_err());
    }
}
