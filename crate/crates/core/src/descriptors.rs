//! Symbolic isomorphism data for mixed groups with bounded p-torsion:
//! torsion-free rank, per-prime Ulm vectors with a tail rule, and the
//! structure classes a caller asserts about the group.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Add;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::json::{self, ParseError};
use crate::linalg::is_prime;

/// A natural number or the countable cardinal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(u64),
    Aleph0,
}

impl ExtNat {
    pub const ZERO: ExtNat = ExtNat::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, ExtNat::Fin(_))
    }

    pub fn is_zero(self) -> bool {
        self == ExtNat::ZERO
    }

    /// `self - other`, with `aleph0 - n = aleph0`; `None` when negative or
    /// when subtracting `aleph0` from a finite value.
    pub fn checked_sub(self, other: ExtNat) -> Option<ExtNat> {
        match (self, other) {
            (ExtNat::Aleph0, ExtNat::Fin(_)) => Some(ExtNat::Aleph0),
            (ExtNat::Aleph0, ExtNat::Aleph0) => None,
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_sub(b).map(ExtNat::Fin),
            (ExtNat::Fin(_), ExtNat::Aleph0) => None,
        }
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            // a sum past u64::MAX is not a finite group invariant anyone can write down
            (ExtNat::Fin(a), ExtNat::Fin(b)) => a.checked_add(b).map_or(ExtNat::Aleph0, ExtNat::Fin),
            _ => ExtNat::Aleph0,
        }
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        ExtNat::Fin(n)
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNat::Fin(n) => write!(f, "{n}"),
            ExtNat::Aleph0 => write!(f, "aleph0"),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtNat::Fin(n) => s.serialize_u64(*n),
            ExtNat::Aleph0 => s.serialize_str("aleph0"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExtNat;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative integer or \"aleph0\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtNat, E> {
                Ok(ExtNat::Fin(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtNat, E> {
                u64::try_from(v).map(ExtNat::Fin).map_err(|_| E::custom("negative cardinal"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtNat, E> {
                match v {
                    "aleph0" => Ok(ExtNat::Aleph0),
                    _ => Err(E::custom(format!("unknown cardinal {v:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// `f(0), ..., f(L-1)`: the bounded group `sum_j Z/p^{j+1}` with multiplicity `f(j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UlmVector(pub Vec<ExtNat>);

impl UlmVector {
    pub fn new(entries: Vec<ExtNat>) -> Self {
        let mut v = UlmVector(entries);
        v.normalize();
        v
    }

    pub fn from_finite(entries: &[u64]) -> Self {
        Self::new(entries.iter().map(|&n| ExtNat::Fin(n)).collect())
    }

    pub fn get(&self, j: usize) -> ExtNat {
        self.0.get(j).copied().unwrap_or(ExtNat::ZERO)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn normalize(&mut self) {
        while self.0.last().is_some_and(|e| e.is_zero()) {
            self.0.pop();
        }
    }

    pub fn has_trailing_zero(&self) -> bool {
        self.0.last().is_some_and(|e| e.is_zero())
    }

    pub fn add(&self, other: &UlmVector) -> UlmVector {
        let n = self.len().max(other.len());
        UlmVector::new((0..n).map(|j| self.get(j) + other.get(j)).collect())
    }

    /// Entrywise `self - other`; `None` if some entry would go negative.
    pub fn checked_sub(&self, other: &UlmVector) -> Option<UlmVector> {
        let n = self.len().max(other.len());
        let entries = (0..n).map(|j| self.get(j).checked_sub(other.get(j))).collect::<Option<Vec<_>>>()?;
        Some(UlmVector::new(entries))
    }

    /// Entrywise `<=`.
    pub fn le(&self, other: &UlmVector) -> bool {
        (0..self.len().max(other.len())).all(|j| self.get(j) <= other.get(j))
    }

    /// `|T_p|` finite.
    pub fn all_finite(&self) -> bool {
        self.0.iter().all(|e| e.is_finite())
    }

    /// `|p T_p|` finite: every `f(j)` with `j >= 1` finite.
    pub fn p_multiple_finite(&self) -> bool {
        self.0.iter().skip(1).all(|e| e.is_finite())
    }
}

/// Rule for every prime missing from the explicit map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Tail {
    Zero,
    /// `T_p` elementary of the given rank at each tail prime.
    Elementary {
        rank: ExtNat,
    },
}

impl Tail {
    pub fn ulm(self) -> UlmVector {
        match self {
            Tail::Zero => UlmVector::default(),
            Tail::Elementary { rank } => UlmVector::new(vec![rank]),
        }
    }

    pub fn from_rank(rank: ExtNat) -> Tail {
        if rank.is_zero() {
            Tail::Zero
        } else {
            Tail::Elementary { rank }
        }
    }

    pub fn rank(self) -> ExtNat {
        match self {
            Tail::Zero => ExtNat::ZERO,
            Tail::Elementary { rank } => rank,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionDescriptor {
    #[serde(default)]
    pub explicit: BTreeMap<u64, UlmVector>,
    pub tail: Tail,
}

impl TorsionDescriptor {
    pub fn zero() -> Self {
        TorsionDescriptor { explicit: BTreeMap::new(), tail: Tail::Zero }
    }

    pub fn at(&self, p: u64) -> UlmVector {
        self.explicit.get(&p).cloned().unwrap_or_else(|| self.tail.ulm())
    }

    /// Drops explicit entries that repeat the tail, and trims trailing zeros.
    pub fn normalize(&mut self) {
        self.tail = Tail::from_rank(self.tail.rank());
        let tail = self.tail.ulm();
        for v in self.explicit.values_mut() {
            v.normalize();
        }
        self.explicit.retain(|_, v| *v != tail);
    }

    pub fn add(&self, other: &TorsionDescriptor) -> TorsionDescriptor {
        let primes: BTreeSet<u64> = self.explicit.keys().chain(other.explicit.keys()).copied().collect();
        let explicit = primes.into_iter().map(|p| (p, self.at(p).add(&other.at(p)))).collect();
        let tail = Tail::from_rank(self.tail.rank() + other.tail.rank());
        let mut out = TorsionDescriptor { explicit, tail };
        out.normalize();
        out
    }

    /// Explicit primes of either side, plus the least prime governed by
    /// both tails: enough to compare two descriptors at every prime.
    pub fn witness_primes(&self, other: &TorsionDescriptor) -> Vec<u64> {
        let mut primes: BTreeSet<u64> = self.explicit.keys().chain(other.explicit.keys()).copied().collect();
        primes.insert(first_prime_outside(&primes));
        primes.into_iter().collect()
    }

    pub fn le(&self, other: &TorsionDescriptor) -> bool {
        self.witness_primes(other).into_iter().all(|p| self.at(p).le(&other.at(p)))
    }
}

/// Least prime not in `taken`.
pub fn first_prime_outside(taken: &BTreeSet<u64>) -> u64 {
    let mut p = 2;
    while taken.contains(&p) {
        p = crate::linalg::next_prime(p);
    }
    p
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureClass {
    Warfield,
    BalancedProjective,
    Psp,
    TfqDivisible,
    NiceFreeQe,
    Splitting,
    Unknown,
}

impl StructureClass {
    pub const ALL: [StructureClass; 7] = [
        StructureClass::Warfield,
        StructureClass::BalancedProjective,
        StructureClass::Psp,
        StructureClass::TfqDivisible,
        StructureClass::NiceFreeQe,
        StructureClass::Splitting,
        StructureClass::Unknown,
    ];
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDescriptor {
    pub rank: ExtNat,
    pub torsion: TorsionDescriptor,
    pub classes: BTreeSet<StructureClass>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    NotPrime { p: u64 },
    TrailingZero { p: u64 },
    BalancedWithoutWarfield,
    NoClasses,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotPrime { p } => write!(f, "explicit key {p} is not prime"),
            Violation::TrailingZero { p } => write!(f, "Ulm vector at {p} has a trailing zero"),
            Violation::BalancedWithoutWarfield => write!(f, "balanced_projective requires warfield"),
            Violation::NoClasses => write!(f, "class set is empty; use [\"unknown\"]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionPredicates {
    pub bounded_p_torsion: bool,
    pub all_tp_finite: bool,
    pub all_ptp_finite: bool,
}

impl GroupDescriptor {
    /// The zero group. It carries every class so that it is a two-sided
    /// identity for [`direct_sum`].
    pub fn zero() -> Self {
        GroupDescriptor { rank: ExtNat::ZERO, torsion: TorsionDescriptor::zero(), classes: StructureClass::ALL.into() }
    }

    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        json::to_pretty(self)
    }

    pub fn normalized(&self) -> Self {
        let mut d = self.clone();
        d.torsion.normalize();
        if d.classes.is_empty() {
            d.classes.insert(StructureClass::Unknown);
        }
        d
    }

    /// Same rank and Ulm data at every prime; classes are not compared.
    pub fn same_invariants(&self, other: &GroupDescriptor) -> bool {
        self.rank == other.rank
            && self
                .torsion
                .witness_primes(&other.torsion)
                .into_iter()
                .all(|p| self.torsion.at(p) == other.torsion.at(p))
    }

    /// Rank and every Ulm entry bounded by `other`'s.
    pub fn is_sub_descriptor_of(&self, other: &GroupDescriptor) -> bool {
        self.rank <= other.rank && self.torsion.le(&other.torsion)
    }
}

pub fn validate(d: &GroupDescriptor) -> Vec<Violation> {
    let mut out = Vec::new();
    for (&p, v) in &d.torsion.explicit {
        if !is_prime(p) {
            out.push(Violation::NotPrime { p });
        }
        if v.has_trailing_zero() {
            out.push(Violation::TrailingZero { p });
        }
    }
    if d.classes.is_empty() {
        out.push(Violation::NoClasses);
    }
    if d.classes.contains(&StructureClass::BalancedProjective) && !d.classes.contains(&StructureClass::Warfield) {
        out.push(Violation::BalancedWithoutWarfield);
    }
    out
}

pub fn direct_sum(a: &GroupDescriptor, b: &GroupDescriptor) -> GroupDescriptor {
    let classes: BTreeSet<StructureClass> = a.classes.intersection(&b.classes).copied().collect();
    GroupDescriptor { rank: a.rank + b.rank, torsion: a.torsion.add(&b.torsion), classes }.normalized()
}

pub fn torsion_predicates(d: &GroupDescriptor) -> TorsionPredicates {
    let explicit = d.torsion.explicit.values();
    TorsionPredicates {
        bounded_p_torsion: true,
        all_tp_finite: explicit.clone().all(UlmVector::all_finite) && d.torsion.tail.rank().is_finite(),
        all_ptp_finite: explicit.clone().all(UlmVector::p_multiple_finite),
    }
}

/// `G_p / T_p` for one prime: bounded part, divisible rank, free rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalShape {
    pub bounded: UlmVector,
    pub divisible_rank: ExtNat,
    pub free_rank: ExtNat,
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use ExtNat::{Aleph0, Fin};

    fn desc(rank: ExtNat, explicit: &[(u64, Vec<ExtNat>)], tail: Tail, classes: &[StructureClass]) -> GroupDescriptor {
        GroupDescriptor {
            rank,
            torsion: TorsionDescriptor {
                explicit: explicit.iter().map(|(p, v)| (*p, UlmVector(v.clone()))).collect(),
                tail,
            },
            classes: classes.iter().copied().collect(),
        }
    }

    #[test]
    fn extnat_arithmetic() {
        assert_eq!(Fin(2) + Fin(3), Fin(5));
        assert_eq!(Fin(2) + Aleph0, Aleph0);
        assert!(Fin(u64::MAX) < Aleph0);
        assert_eq!(Aleph0.checked_sub(Fin(4)), Some(Aleph0));
        assert_eq!(Fin(1).checked_sub(Fin(2)), None);
        assert_eq!(Fin(1).checked_sub(Aleph0), None);
    }

    #[test]
    fn json_schema() {
        let text = r#"{"rank": 1, "torsion": {"explicit": {"2": [1, "aleph0"]},
                       "tail": {"kind": "elementary", "rank": "aleph0"}}, "classes": ["warfield", "nice_free_qe"]}"#;
        let d = GroupDescriptor::from_json(text).unwrap();
        assert_eq!(d.torsion.at(2), UlmVector(vec![Fin(1), Aleph0]));
        assert_eq!(d.torsion.at(3), UlmVector(vec![Aleph0]));
        assert!(d.classes.contains(&StructureClass::NiceFreeQe));
        assert_eq!(GroupDescriptor::from_json(&d.to_json()).unwrap(), d);
        assert!(GroupDescriptor::from_json(r#"{"rank": -1, "torsion": {"tail": {"kind": "zero"}}, "classes": []}"#)
            .is_err());
        assert!(
            GroupDescriptor::from_json(r#"{"rank": 0, "torsion": {"tail": {"kind": "odd"}}, "classes": []}"#).is_err()
        );
    }

    #[test]
    fn validation_examples() {
        let ok = desc(Fin(1), &[(2, vec![Fin(1)])], Tail::Zero, &[StructureClass::Warfield]);
        assert!(validate(&ok).is_empty());
        let bp = desc(Fin(1), &[], Tail::Zero, &[StructureClass::BalancedProjective]);
        assert_eq!(validate(&bp), vec![Violation::BalancedWithoutWarfield]);
        let trailing = desc(Fin(0), &[(3, vec![Fin(1), Fin(0)])], Tail::Zero, &[StructureClass::Unknown]);
        assert_eq!(validate(&trailing), vec![Violation::TrailingZero { p: 3 }]);
        let composite = desc(Fin(0), &[(4, vec![Fin(1)])], Tail::Zero, &[StructureClass::Unknown]);
        assert_eq!(validate(&composite), vec![Violation::NotPrime { p: 4 }]);
    }

    #[test]
    fn direct_sum_examples() {
        let d = desc(Fin(1), &[(2, vec![Fin(1)])], Tail::Elementary { rank: Fin(1) }, &[StructureClass::Unknown]);
        assert_eq!(direct_sum(&d, &GroupDescriptor::zero()), d.normalized());
        assert_eq!(direct_sum(&GroupDescriptor::zero(), &d), d.normalized());

        let a = desc(Fin(1), &[(2, vec![Fin(1)])], Tail::Zero, &[StructureClass::Warfield]);
        let b = desc(Fin(0), &[(2, vec![Fin(0), Fin(1)])], Tail::Zero, &[StructureClass::Psp]);
        let s = direct_sum(&a, &b);
        assert_eq!(s.rank, Fin(1));
        assert_eq!(s.torsion.at(2), UlmVector::from_finite(&[1, 1]));
        assert_eq!(s.classes, [StructureClass::Unknown].into());

        let e1 = desc(Fin(0), &[], Tail::Elementary { rank: Fin(1) }, &[StructureClass::Unknown]);
        let e2 = desc(Fin(0), &[], Tail::Elementary { rank: Aleph0 }, &[StructureClass::Unknown]);
        assert_eq!(direct_sum(&e1, &e2).torsion.tail, Tail::Elementary { rank: Aleph0 });
    }

    #[test]
    fn missing_prime_borrows_the_other_tail() {
        let a = desc(Fin(0), &[(2, vec![Fin(0), Fin(1)])], Tail::Zero, &[StructureClass::Unknown]);
        let b = desc(Fin(0), &[], Tail::Elementary { rank: Fin(2) }, &[StructureClass::Unknown]);
        let s = direct_sum(&a, &b);
        assert_eq!(s.torsion.at(2), UlmVector::from_finite(&[2, 1]));
        assert_eq!(s.torsion.at(5), UlmVector::from_finite(&[2]));
    }

    #[test]
    fn predicate_examples() {
        let tail = desc(Fin(0), &[], Tail::Elementary { rank: Aleph0 }, &[StructureClass::Unknown]);
        let t = torsion_predicates(&tail);
        assert!(t.bounded_p_torsion && !t.all_tp_finite && t.all_ptp_finite);
        let z4 = desc(Fin(0), &[(2, vec![Fin(0), Aleph0])], Tail::Zero, &[StructureClass::Unknown]);
        assert!(!torsion_predicates(&z4).all_ptp_finite);
        let example_b = desc(Fin(1), &[], Tail::Elementary { rank: Fin(1) }, &[StructureClass::Unknown]);
        assert!(torsion_predicates(&example_b).all_tp_finite);
    }

    fn arb_extnat() -> impl Strategy<Value = ExtNat> {
        prop_oneof![4 => (0u64..4).prop_map(Fin), 1 => Just(Aleph0)]
    }

    fn arb_descriptor() -> impl Strategy<Value = GroupDescriptor> {
        let explicit = prop::collection::btree_map(
            prop::sample::select(vec![2u64, 3, 5, 7]),
            prop::collection::vec(arb_extnat(), 0..4),
            0..3,
        );
        let tail = prop_oneof![Just(Tail::Zero), arb_extnat().prop_map(|rank| Tail::Elementary { rank })];
        let classes = prop::collection::btree_set(prop::sample::select(StructureClass::ALL.to_vec()), 1..3);
        (arb_extnat(), explicit, tail, classes).prop_map(|(rank, explicit, tail, classes)| {
            GroupDescriptor {
                rank,
                torsion: TorsionDescriptor {
                    explicit: explicit.into_iter().map(|(p, v)| (p, UlmVector::new(v))).collect(),
                    tail,
                },
                classes,
            }
            .normalized()
        })
    }

    proptest! {
        #[test]
        fn sum_is_commutative_and_associative(a in arb_descriptor(), b in arb_descriptor(), c in arb_descriptor()) {
            prop_assert_eq!(direct_sum(&a, &b), direct_sum(&b, &a));
            prop_assert_eq!(direct_sum(&direct_sum(&a, &b), &c), direct_sum(&a, &direct_sum(&b, &c)));
            prop_assert_eq!(direct_sum(&a, &GroupDescriptor::zero()), a.clone());
        }

        #[test]
        fn finiteness_of_p_multiples_is_conjunctive(a in arb_descriptor(), b in arb_descriptor()) {
            let s = torsion_predicates(&direct_sum(&a, &b)).all_ptp_finite;
            prop_assert_eq!(s, torsion_predicates(&a).all_ptp_finite && torsion_predicates(&b).all_ptp_finite);
        }

        #[test]
        fn json_round_trip(a in arb_descriptor()) {
            prop_assert_eq!(GroupDescriptor::from_json(&a.to_json()).unwrap(), a);
        }
    }
}
