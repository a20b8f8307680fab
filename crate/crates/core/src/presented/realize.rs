use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::presentation::{ChainGen, Manifest, Presentation, Relation};
use super::RealizeError;
use crate::descriptors::{TorsionDescriptor, UlmVector};
use crate::valuated::{
    tight_data, ulm_free, validate_track, value_at, FreeValuated, HeightValue, TightData, TrackTail, ValuatedCyclic,
    ValueTrack,
};

pub const DEFAULT_JUMP_CUT: u64 = 8;

/// Positions where the track is not one more than at the previous position,
/// with their values. Position 0 is always included; a JUMPY tail contributes
/// `jump_cut` further positions.
fn jump_schedule(t: &ValueTrack, jump_cut: u64) -> Vec<(u64, HeightValue)> {
    let mut out = vec![(0, t.v0)];
    if t.v0 == HeightValue::Inf {
        return out;
    }
    for &(k, v) in &t.jumps {
        out.push((k, v));
        if v == HeightValue::Inf {
            return out;
        }
    }
    let last = t.jumps.last().map_or(0, |j| j.0);
    match t.tail {
        TrackTail::Gapless => {}
        TrackTail::InfAt(s) => out.push((s, HeightValue::Inf)),
        TrackTail::Jumpy(_) => out.extend((last + 1..=last + jump_cut).map(|k| (k, value_at(t, k)))),
    }
    out
}

fn check_tracks(f: &FreeValuated) -> Result<(), RealizeError> {
    match f.validate().into_iter().next() {
        Some(v) => Err(RealizeError::InvalidTrack { coord: v.coord, p: v.p, violation: v.violation }),
        None => Ok(()),
    }
}

fn p_power(p: u64, k: u64) -> BigInt {
    BigInt::from(p).pow(k as u32)
}

/// Rank-one realization of `x`: for every prime and every position `k` of
/// the jump schedule, a chain `p y_1 = p^k x`, `p y_{j+1} = y_j` whose length
/// is the value at `k`, or one infinite chain when that value is infinite.
pub fn realize_cyclic(x: &ValuatedCyclic, primes: &[u64], jump_cut: u64) -> Result<Presentation, RealizeError> {
    for (&p, t) in &x.tracks {
        if let Some(v) = validate_track(t).into_iter().next() {
            return Err(RealizeError::InvalidTrack { coord: 0, p, violation: v.to_string() });
        }
    }
    let mut all: Vec<u64> = x.tracks.keys().copied().chain(primes.iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    let mut chains = Vec::new();
    for p in all {
        for (k, v) in jump_schedule(&x.track(p), jump_cut) {
            let root = Relation::single("x", p_power(p, k));
            match v {
                HeightValue::Inf => {
                    chains.push(ChainGen { id: format!("y_{p}_{k}_inf"), p, exp: 1, rel: root, inf: true })
                }
                HeightValue::Fin(n) => {
                    let mut rel = root;
                    for j in 1..=n {
                        let id = format!("y_{p}_{k}_{j}");
                        chains.push(ChainGen { id: id.clone(), p, exp: 1, rel, inf: false });
                        rel = Relation::single(&id, 1.into());
                    }
                }
            }
        }
    }
    Ok(Presentation {
        base: vec!["x".into()],
        chains,
        manifest: Manifest { jump_cut, source: "realize_cyclic".into() },
    })
}

/// Realization of a free valuated group from its decomposition data.
///
/// Per prime: an infinite chain over each coordinate with an infinite part,
/// one generator `p^{n_p} y = p^{m_i} x_i` for each gapless coordinate whose
/// level-`n_p` element is not already a `p`-multiple of a lower layer, and one
/// generator `p^m y = p^k x_i` for each layer element of value `m < n_p` not
/// lying in `p F_p(m-1)`.
pub fn realize_free(f: &FreeValuated, td: &TightData) -> Result<Presentation, RealizeError> {
    check_tracks(f)?;
    let base: Vec<String> = (0..f.rank()).map(|i| format!("x{i}")).collect();
    let mut chains = Vec::new();
    for p in f.primes() {
        let entry = td.get(&p).ok_or(RealizeError::HypothesisAbsent(p))?;
        for c in &entry.inf_coords {
            let rel = Relation::single(&base[c.index], p_power(p, c.start));
            chains.push(ChainGen { id: format!("y_{p}_inf_{}", c.index), p, exp: 1, rel, inf: true });
        }
        for (i, coord) in f.coords.iter().enumerate() {
            let t = coord.track(p);
            if let TrackTail::Jumpy(_) = t.tail {
                return Err(RealizeError::HypothesisAbsent(p));
            }
            for (k, v) in jump_schedule(&t, 0) {
                let HeightValue::Fin(m) = v else { continue };
                if m == 0 {
                    continue;
                }
                if m > entry.n_p {
                    return Err(RealizeError::HypothesisAbsent(p));
                }
                let family = if m == entry.n_p { "top".to_string() } else { m.to_string() };
                let rel = Relation::single(&base[i], p_power(p, k));
                chains.push(ChainGen { id: format!("y_{p}_{family}_{i}"), p, exp: m as u32, rel, inf: false });
            }
        }
    }
    Ok(Presentation { base, chains, manifest: Manifest { jump_cut: 0, source: "realize_free".into() } })
}

/// [`realize_free`] with the decomposition data computed from `f`.
pub fn realize_free_auto(f: &FreeValuated) -> Result<Presentation, RealizeError> {
    check_tracks(f)?;
    let td = tight_data(f).map_err(RealizeError::HypothesisAbsent)?;
    realize_free(f, &td)
}

/// Index past which every `f(alpha)` of the coordinates at `p` vanishes.
fn ulm_support(f: &FreeValuated, p: u64) -> Result<usize, RealizeError> {
    let mut top = 0;
    for c in &f.coords {
        let t = c.track(p);
        if let TrackTail::Jumpy(_) = t.tail {
            return Err(RealizeError::InfiniteSupport(p));
        }
        let last_finite = match t.inf_start() {
            Some(0) => continue,
            Some(s) => value_at(&t, s - 1),
            None => t.last_jump().1,
        };
        if let HeightValue::Fin(v) = last_finite {
            top = top.max(v as usize + 1);
        }
    }
    Ok(top)
}

/// `f_S = f_G - f_F` at every prime where either side is explicit.
pub fn warfield_split(fg: &TorsionDescriptor, f: &FreeValuated) -> Result<TorsionDescriptor, RealizeError> {
    check_tracks(f)?;
    let mut primes: Vec<u64> = fg.explicit.keys().copied().chain(f.primes()).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut explicit = BTreeMap::new();
    for p in primes {
        let ff = UlmVector::from_finite(&ulm_free(f, p, ulm_support(f, p)?));
        let g = fg.at(p);
        let s = g.checked_sub(&ff).ok_or_else(|| {
            let index = (0..ff.len()).find(|&j| g.get(j).checked_sub(ff.get(j)).is_none()).unwrap_or(0);
            RealizeError::Negative { p, index }
        })?;
        explicit.insert(p, s);
    }
    let mut out = TorsionDescriptor { explicit, tail: fg.tail };
    out.normalize();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptors::{ExtNat, Tail};
    use crate::presented::{check_realization, truncate, BoundedHeight};

    fn track(json: &str) -> ValueTrack {
        serde_json::from_str(json).unwrap()
    }

    fn cyclic(p: u64, json: &str) -> ValuatedCyclic {
        ValuatedCyclic { tracks: [(p, track(json))].into() }
    }

    #[test]
    fn gapless_needs_nothing() {
        let pres = realize_cyclic(&ValuatedCyclic::default(), &[2, 3], 8).unwrap();
        assert_eq!(pres.base, vec!["x"]);
        assert!(pres.chains.is_empty());
    }

    #[test]
    fn one_jump() {
        let x = cyclic(2, r#"{"v0": 0, "jumps": [[1, 3]]}"#);
        let pres = realize_cyclic(&x, &[], 8).unwrap();
        assert_eq!(pres.chains.len(), 3);
        assert_eq!(pres.chains[0].rel.coeffs["x"], BigInt::from(2));
        let m = truncate(&pres, 2, 8).unwrap();
        assert_eq!(m.height(&m.generator("x", 2.into()).unwrap()).unwrap(), BoundedHeight::Exact(3));
        assert_eq!(m.ulm(3).unwrap(), vec![1, 0, 0]);
        let check = check_realization(&x.clone().into(), &pres, 2, 12).unwrap();
        assert!(check.valuation_match && check.tight, "{check:?}");
    }

    #[test]
    fn all_infinite() {
        let x = cyclic(3, r#"{"v0": "inf"}"#);
        let pres = realize_cyclic(&x, &[], 8).unwrap();
        assert_eq!(pres.chains.len(), 1);
        assert!(pres.chains[0].inf);
        let m = truncate(&pres, 3, 4).unwrap();
        assert_eq!(m.inf_marked().len(), 6);
        assert!(check_realization(&x.into(), &pres, 3, 8).unwrap().tight);
    }

    #[test]
    fn jumpy_is_cut() {
        let x = cyclic(2, r#"{"v0": 0, "tail": {"jumpy": 2}}"#);
        let pres = realize_cyclic(&x, &[], 3).unwrap();
        assert_eq!(pres.manifest.jump_cut, 3);
        // positions 1..=3 with values 2, 4, 6
        assert_eq!(pres.chains.len(), 12);
        let check = check_realization(&x.into(), &pres, 2, 5).unwrap();
        assert!(check.valuation_match, "{check:?}");
    }

    #[test]
    fn invalid_track_is_refused() {
        let x = cyclic(2, r#"{"v0": 0, "jumps": [[1, 1]]}"#);
        assert!(matches!(realize_cyclic(&x, &[], 8), Err(RealizeError::InvalidTrack { .. })));
    }

    #[test]
    fn free_examples() {
        let gapless = FreeValuated { coords: vec![ValuatedCyclic { tracks: [(2, ValueTrack::gapless(0))].into() }] };
        let pres = realize_free_auto(&gapless).unwrap();
        assert!(pres.chains.is_empty());
        assert!(truncate(&pres, 2, 6).unwrap().torsion_factors().is_empty());

        let jump: FreeValuated = cyclic(2, r#"{"v0": 0, "jumps": [[1, 3]]}"#).into();
        let pres = realize_free_auto(&jump).unwrap();
        assert_eq!(truncate(&pres, 2, 6).unwrap().torsion_factors(), vec![BigInt::from(2)]);
        assert!(check_realization(&jump, &pres, 2, 8).unwrap().zero_tight);

        let jumpy: FreeValuated = cyclic(2, r#"{"v0": 0, "tail": {"jumpy": 2}}"#).into();
        assert_eq!(realize_free_auto(&jumpy), Err(RealizeError::HypothesisAbsent(2)));
        assert_eq!(realize_free(&jumpy, &TightData::new()), Err(RealizeError::HypothesisAbsent(2)));
    }

    #[test]
    fn free_mixed_rank_two() {
        let f = FreeValuated {
            coords: vec![
                cyclic(2, r#"{"v0": 1, "jumps": [[1, 4], [3, 8]]}"#),
                ValuatedCyclic {
                    tracks: [(2, track(r#"{"v0": 0, "jumps": [[2, 5]], "tail": "inf"}"#)), (3, track(r#"{"v0": 2}"#))]
                        .into(),
                },
            ],
        };
        let pres = realize_free_auto(&f).unwrap();
        for p in [2, 3, 5] {
            let check = check_realization(&f, &pres, p, 12).unwrap();
            assert!(check.valuation_match && check.zero_tight, "p = {p}: {check:?}");
        }
    }

    #[test]
    fn split_examples() {
        let f: FreeValuated = cyclic(2, r#"{"v0": 0, "jumps": [[1, 3]]}"#).into();
        let fg = |v: &[u64]| TorsionDescriptor { explicit: [(2, UlmVector::from_finite(v))].into(), tail: Tail::Zero };
        assert_eq!(warfield_split(&fg(&[1]), &f).unwrap(), TorsionDescriptor::zero());
        let s = warfield_split(&fg(&[2]), &f).unwrap();
        assert_eq!(s.at(2), UlmVector::from_finite(&[1]));
        assert_eq!(warfield_split(&fg(&[0, 1]), &f), Err(RealizeError::Negative { p: 2, index: 0 }));
        let aleph = TorsionDescriptor { explicit: BTreeMap::new(), tail: Tail::Elementary { rank: ExtNat::Aleph0 } };
        assert_eq!(warfield_split(&aleph, &f).unwrap().at(2), UlmVector::new(vec![ExtNat::Aleph0]));
    }
}
