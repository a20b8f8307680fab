#![allow(dead_code)]

use std::collections::BTreeMap;

use mixedab_core::descriptors::{Tail, TorsionDescriptor, UlmVector};
use mixedab_core::valuated::{
    ulm_free, validate_track, value_at, FreeValuated, HeightValue, TrackTail, ValuatedCyclic, ValueTrack,
};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PRIMES: [u64; 4] = [2, 3, 5, 7];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A valid track with finite values at most `max_value`, at most
/// `max_jumps` listed jumps, and sometimes an infinite tail.
pub fn track(rng: &mut impl Rng, max_value: u64, max_jumps: usize) -> ValueTrack {
    if rng.gen_ratio(1, 12) {
        return ValueTrack::infinite();
    }
    let v0 = rng.gen_range(0..=3.min(max_value));
    let mut jumps = Vec::new();
    let (mut last_pos, mut last_val) = (0u64, v0);
    for _ in 0..rng.gen_range(0..=max_jumps) {
        let pos = last_pos + rng.gen_range(1..=3);
        let before = last_val + (pos - 1 - last_pos);
        if before + 2 > max_value {
            break;
        }
        let v = rng.gen_range(before + 2..=max_value);
        jumps.push((pos, HeightValue::Fin(v)));
        (last_pos, last_val) = (pos, v);
    }
    let tail = if rng.gen_ratio(1, 4) { TrackTail::InfAt(last_pos + rng.gen_range(1..=3)) } else { TrackTail::Gapless };
    let t = ValueTrack { v0: HeightValue::Fin(v0), jumps, tail };
    assert!(validate_track(&t).is_empty(), "generator produced {t:?}");
    t
}

pub fn jumpy_track(rng: &mut impl Rng) -> ValueTrack {
    let v0 = rng.gen_range(0..=2);
    let jumps = if rng.gen_bool(0.5) { vec![(1, HeightValue::Fin(v0 + rng.gen_range(2..=4)))] } else { vec![] };
    let t = ValueTrack { v0: HeightValue::Fin(v0), jumps, tail: TrackTail::Jumpy(rng.gen_range(2..=3)) };
    assert!(validate_track(&t).is_empty(), "generator produced {t:?}");
    t
}

pub fn cyclic(rng: &mut impl Rng, max_primes: usize) -> ValuatedCyclic {
    let n = rng.gen_range(1..=max_primes);
    let primes: Vec<u64> = PRIMES.choose_multiple(rng, n).copied().collect();
    ValuatedCyclic { tracks: primes.into_iter().map(|p| (p, track(rng, 8, 3))).collect() }
}

pub fn free(rng: &mut impl Rng, max_rank: usize) -> FreeValuated {
    let rank = rng.gen_range(1..=max_rank);
    FreeValuated { coords: (0..rank).map(|_| cyclic(rng, 3)).collect() }
}

/// A free valuation with one JUMPY coordinate somewhere.
pub fn jumpy_free(rng: &mut impl Rng) -> FreeValuated {
    let mut f = free(rng, 3);
    let i = rng.gen_range(0..f.rank());
    let p = *PRIMES.choose(rng).unwrap();
    f.coords[i].tracks.insert(p, jumpy_track(rng));
    f
}

/// Largest finite value that matters for the Ulm invariants of `t`.
fn support(t: &ValueTrack) -> usize {
    let mut top = 0;
    let mut k = 0;
    while let HeightValue::Fin(v) = value_at(t, k) {
        top = v as usize;
        if k > 64 {
            break;
        }
        k += 1;
    }
    top + 2
}

/// `f_F` as a torsion descriptor with zero tail.
pub fn ulm_descriptor(f: &FreeValuated) -> TorsionDescriptor {
    let mut explicit = BTreeMap::new();
    for p in f.primes() {
        let bound = f.coords.iter().map(|c| support(&c.track(p))).max().unwrap_or(0);
        explicit.insert(p, UlmVector::from_finite(&ulm_free(f, p, bound)));
    }
    let mut d = TorsionDescriptor { explicit, tail: Tail::Zero };
    d.normalize();
    d
}
