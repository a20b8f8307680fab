//! Three-valued decision procedures over [`GroupDescriptor`]s. Every YES or
//! NO names the statement it rests on and carries a witness; UNDECIDED is
//! reserved for B+E groups outside every proven class.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::descriptors::{
    first_prime_outside, torsion_predicates, validate, ExtNat, GroupDescriptor, LocalShape, StructureClass, Tail,
    TorsionDescriptor, UlmVector, Violation,
};

/// Route tags. Each names the statement a verdict rests on.
pub mod routes {
    pub const MAIN_BASSIAN: &str = "thm:main-bassian";
    pub const STEP: &str = "prop:step";
    pub const ONEWAY: &str = "cor:oneway";
    pub const WARFIELD: &str = "cor:warfield";
    pub const NICE2: &str = "thm:nice2";
    pub const DIVISIBLE: &str = "cor:divisible";
    pub const PSP: &str = "cor:psp";
    pub const FIRST: &str = "cor:first";
    pub const CONJECTURE: &str = "conjecture:1.3";
    pub const HOPFIAN: &str = "prop:hopfian";
    pub const EMBEDS: &str = "cor:embeds";

    /// Tag and a one-line reading of the statement behind it.
    pub const TABLE: &[(&str, &str)] = &[
        (MAIN_BASSIAN, "Bassian iff finite torsion-free rank and every T_p finite"),
        (STEP, "B+E iff finite torsion-free rank and every pT_p finite"),
        (ONEWAY, "generalized Bassian implies B+E"),
        (WARFIELD, "a Warfield B+E-group is generalized Bassian"),
        (NICE2, "a B+E-group with a free nice quasi-essential subgroup is generalized Bassian"),
        (DIVISIBLE, "a B+E-group with G/T divisible is generalized Bassian"),
        (PSP, "a PSP B+E-group is generalized Bassian"),
        (FIRST, "B+E with G = A + S, S torsion, A without infinite elementary summands, is generalized Bassian"),
        (CONJECTURE, "open: B+E iff generalized Bassian"),
        (HOPFIAN, "a B+E-group is Bassian iff it is Hopfian"),
        (EMBEDS, "B+E iff it embeds in a generalized Bassian group"),
    ];

    pub fn is_known(tag: &str) -> bool {
        TABLE.iter().any(|(t, _)| *t == tag)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Undecided,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    InfiniteRank,
    /// `f_p(level)` is infinite.
    InfiniteTorsion {
        p: u64,
        level: usize,
    },
    Criterion {
        rank_finite: bool,
        all_tp_finite: bool,
        all_ptp_finite: bool,
    },
    Split {
        bassian: GroupDescriptor,
        elementary: GroupDescriptor,
    },
    Class {
        class: StructureClass,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub verdict: Verdict,
    pub route: String,
    pub witness: Option<Witness>,
}

impl Report {
    fn new(verdict: Verdict, route: &str, witness: Witness) -> Self {
        Report { verdict, route: route.to_string(), witness: Some(witness) }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("descriptor is not B+E: {0:?}")]
    NotBPlusE(Box<Report>),
    #[error("invalid descriptor: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

fn criterion(d: &GroupDescriptor) -> Witness {
    let t = torsion_predicates(d);
    Witness::Criterion {
        rank_finite: d.rank.is_finite(),
        all_tp_finite: t.all_tp_finite,
        all_ptp_finite: t.all_ptp_finite,
    }
}

/// First prime at which `f_p(j)` is infinite for some `j >= from`.
fn infinite_entry(t: &TorsionDescriptor, from: usize) -> Option<(u64, usize)> {
    for (&p, v) in &t.explicit {
        if let Some(j) = (from..v.len()).find(|&j| !v.get(j).is_finite()) {
            return Some((p, j));
        }
    }
    if from == 0 && t.tail.rank() == ExtNat::Aleph0 {
        return Some((first_prime_outside(&t.explicit.keys().copied().collect()), 0));
    }
    None
}

pub fn is_bassian(d: &GroupDescriptor) -> Report {
    use routes::MAIN_BASSIAN;
    if !d.rank.is_finite() {
        return Report::new(Verdict::No, MAIN_BASSIAN, Witness::InfiniteRank);
    }
    match infinite_entry(&d.torsion, 0) {
        Some((p, level)) => Report::new(Verdict::No, MAIN_BASSIAN, Witness::InfiniteTorsion { p, level }),
        None => Report::new(Verdict::Yes, MAIN_BASSIAN, criterion(d)),
    }
}

pub fn is_b_plus_e(d: &GroupDescriptor) -> Report {
    use routes::STEP;
    if !d.rank.is_finite() {
        return Report::new(Verdict::No, STEP, Witness::InfiniteRank);
    }
    if let Some((p, level)) = infinite_entry(&d.torsion, 1) {
        return Report::new(Verdict::No, STEP, Witness::InfiniteTorsion { p, level });
    }
    let (bassian, elementary) = split_unchecked(d);
    Report::new(Verdict::Yes, STEP, Witness::Split { bassian, elementary })
}

fn require_b_plus_e(d: &GroupDescriptor) -> Result<(), ClassifyError> {
    let v = validate(d);
    if !v.is_empty() {
        return Err(ClassifyError::Invalid(v));
    }
    let r = is_b_plus_e(d);
    if r.verdict != Verdict::Yes {
        return Err(ClassifyError::NotBPlusE(Box::new(r)));
    }
    Ok(())
}

/// Finite `f(0)` stays with the Bassian part; an infinite `f(0)` moves
/// whole to the elementary part.
fn split_unchecked(d: &GroupDescriptor) -> (GroupDescriptor, GroupDescriptor) {
    let mut b_explicit = BTreeMap::new();
    let mut e_explicit = BTreeMap::new();
    for (&p, v) in &d.torsion.explicit {
        let mut entries = v.0.clone();
        if let Some(f0) = entries.first_mut() {
            if !f0.is_finite() {
                *f0 = ExtNat::ZERO;
                e_explicit.insert(p, UlmVector::new(vec![ExtNat::Aleph0]));
            }
        }
        b_explicit.insert(p, UlmVector::new(entries));
    }
    let (b_tail, e_tail) = match d.torsion.tail {
        Tail::Elementary { rank: ExtNat::Aleph0 } => (Tail::Zero, d.torsion.tail),
        t => (t, Tail::Zero),
    };
    // the elementary part must also be zero at explicit primes that keep the tail's place
    if e_tail != Tail::Zero {
        for &p in d.torsion.explicit.keys() {
            e_explicit.entry(p).or_insert_with(UlmVector::default);
        }
    }
    let bassian = GroupDescriptor {
        rank: d.rank,
        torsion: TorsionDescriptor { explicit: b_explicit, tail: b_tail },
        classes: [StructureClass::Unknown].into(),
    }
    .normalized();
    let proven: BTreeSet<StructureClass> =
        StructureClass::ALL.into_iter().filter(|c| *c != StructureClass::Unknown).collect();
    let elementary = GroupDescriptor {
        rank: ExtNat::ZERO,
        torsion: TorsionDescriptor { explicit: e_explicit, tail: e_tail },
        classes: proven,
    }
    .normalized();
    (bassian, elementary)
}

pub fn b_plus_e_split(d: &GroupDescriptor) -> Result<(GroupDescriptor, GroupDescriptor), ClassifyError> {
    require_b_plus_e(d)?;
    Ok(split_unchecked(d))
}

/// Proven classes in route priority order.
const CLASS_ROUTES: [(StructureClass, &str); 6] = [
    (StructureClass::Warfield, routes::WARFIELD),
    (StructureClass::BalancedProjective, routes::WARFIELD),
    (StructureClass::Psp, routes::PSP),
    (StructureClass::TfqDivisible, routes::DIVISIBLE),
    (StructureClass::NiceFreeQe, routes::NICE2),
    (StructureClass::Splitting, routes::FIRST),
];

pub fn generalized_bassian(d: &GroupDescriptor) -> Report {
    let bpe = is_b_plus_e(d);
    if bpe.verdict == Verdict::No {
        return Report { verdict: Verdict::No, route: routes::ONEWAY.into(), witness: bpe.witness };
    }
    let bassian = is_bassian(d);
    if bassian.verdict == Verdict::Yes {
        return bassian;
    }
    for (class, route) in CLASS_ROUTES {
        if d.classes.contains(&class) {
            return Report::new(Verdict::Yes, route, Witness::Class { class });
        }
    }
    Report { verdict: Verdict::Undecided, route: routes::CONJECTURE.into(), witness: bpe.witness }
}

/// True when every `G_p / T_p` is free plus divisible, with no bounded part.
pub fn nice_check(shapes: &BTreeMap<u64, LocalShape>) -> bool {
    shapes.values().all(|s| s.bounded.is_zero())
}

/// Same rank and torsion, with `G/T` made divisible.
pub fn embed_into_gb(d: &GroupDescriptor) -> Result<GroupDescriptor, ClassifyError> {
    require_b_plus_e(d)?;
    let mut out = d.clone();
    out.classes.remove(&StructureClass::Unknown);
    out.classes.insert(StructureClass::TfqDivisible);
    Ok(out)
}

pub fn hopfian_equiv(d: &GroupDescriptor) -> Result<Report, ClassifyError> {
    require_b_plus_e(d)?;
    let b = is_bassian(d);
    Ok(Report { verdict: b.verdict, route: routes::HOPFIAN.into(), witness: b.witness })
}
