//! Free valuated groups of finite rank, one valued track per prime per
//! coordinate. A track lists `|p^k x|_p` through its jumps; between jumps
//! the value climbs by exactly one.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::json::{self, ParseError};
use crate::linalg::is_prime;

/// Largest jump position, jump value or stride the parser accepts.
pub const MAX_TRACK_ENTRY: u64 = 4096;
/// Largest rank a valuation file may declare.
pub const MAX_RANK: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HeightValue {
    Fin(u64),
    Inf,
}

impl HeightValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            HeightValue::Fin(n) => Some(n),
            HeightValue::Inf => None,
        }
    }

    pub fn plus(self, n: u64) -> HeightValue {
        match self {
            HeightValue::Fin(v) => HeightValue::Fin(v.saturating_add(n)),
            HeightValue::Inf => HeightValue::Inf,
        }
    }
}

impl fmt::Display for HeightValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeightValue::Fin(n) => write!(f, "{n}"),
            HeightValue::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for HeightValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            HeightValue::Fin(n) => s.serialize_u64(*n),
            HeightValue::Inf => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for HeightValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = HeightValue;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<HeightValue, E> {
                Ok(HeightValue::Fin(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<HeightValue, E> {
                u64::try_from(v).map(HeightValue::Fin).map_err(|_| E::custom("negative value"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<HeightValue, E> {
                match v {
                    "inf" => Ok(HeightValue::Inf),
                    _ => Err(E::custom(format!("unknown value {v:?}"))),
                }
            }
        }
        d.deserialize_any(V)
    }
}

/// Behaviour past the last listed jump.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TrackTail {
    Gapless,
    /// Infinite from position `k` on.
    InfAt(u64),
    /// `v(k+1) = v(k) + s` forever.
    Jumpy(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum RawTail {
    Gapless,
    /// Shorthand for infinite right after the last listed jump.
    Inf,
    InfAt(u64),
    Jumpy(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawTrack", into = "RawTrack")]
pub struct ValueTrack {
    pub v0: HeightValue,
    pub jumps: Vec<(u64, HeightValue)>,
    pub tail: TrackTail,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTrack {
    v0: HeightValue,
    #[serde(default)]
    jumps: Vec<(u64, HeightValue)>,
    #[serde(default = "gapless")]
    tail: RawTail,
}

fn gapless() -> RawTail {
    RawTail::Gapless
}

impl TryFrom<RawTrack> for ValueTrack {
    type Error = String;

    fn try_from(r: RawTrack) -> Result<Self, String> {
        let last = r.jumps.last().map_or(0, |j| j.0);
        let tail = match r.tail {
            RawTail::Gapless => TrackTail::Gapless,
            RawTail::Inf => TrackTail::InfAt(last + 1),
            RawTail::InfAt(k) => TrackTail::InfAt(k),
            RawTail::Jumpy(s) => TrackTail::Jumpy(s),
        };
        let t = ValueTrack { v0: r.v0, jumps: r.jumps, tail };
        // size limits are enforced at parse time so that nothing downstream loops on them
        if let Some(v) = validate_track(&t).into_iter().find(|v| matches!(v, TrackViolation::TooLarge { .. })) {
            return Err(v.to_string());
        }
        Ok(t)
    }
}

impl From<ValueTrack> for RawTrack {
    fn from(t: ValueTrack) -> Self {
        let tail = match t.tail {
            TrackTail::Gapless => RawTail::Gapless,
            TrackTail::InfAt(k) => RawTail::InfAt(k),
            TrackTail::Jumpy(s) => RawTail::Jumpy(s),
        };
        RawTrack { v0: t.v0, jumps: t.jumps, tail }
    }
}

impl ValueTrack {
    /// `v(k) = v0 + k`.
    pub fn gapless(v0: u64) -> Self {
        ValueTrack { v0: HeightValue::Fin(v0), jumps: Vec::new(), tail: TrackTail::Gapless }
    }

    pub fn infinite() -> Self {
        ValueTrack { v0: HeightValue::Inf, jumps: Vec::new(), tail: TrackTail::Gapless }
    }

    /// Position where the track first becomes infinite.
    pub fn inf_start(&self) -> Option<u64> {
        if self.v0 == HeightValue::Inf {
            return Some(0);
        }
        if let Some(&(k, _)) = self.jumps.iter().find(|j| j.1 == HeightValue::Inf) {
            return Some(k);
        }
        match self.tail {
            TrackTail::InfAt(k) => Some(k),
            _ => None,
        }
    }

    /// Last listed jump and its value; `(0, v0)` when there are none.
    pub fn last_jump(&self) -> (u64, HeightValue) {
        self.jumps.last().copied().unwrap_or((0, self.v0))
    }

    /// True for the default track `v(k) = k`.
    pub fn is_trivial(&self) -> bool {
        self.v0 == HeightValue::Fin(0) && self.jumps.is_empty() && self.tail == TrackTail::Gapless
    }
}

/// `|p^k x|_p` from the jump encoding.
pub fn value_at(t: &ValueTrack, k: u64) -> HeightValue {
    let (mut pos, mut cur) = (0u64, t.v0);
    for &(kj, vj) in &t.jumps {
        if kj > k || cur == HeightValue::Inf {
            break;
        }
        pos = kj;
        cur = vj;
    }
    let HeightValue::Fin(v) = cur else { return HeightValue::Inf };
    let past_jumps = t.jumps.last().is_none_or(|&(last, _)| pos == last);
    if !past_jumps {
        return HeightValue::Fin(v.saturating_add(k - pos));
    }
    match t.tail {
        TrackTail::InfAt(start) if k >= start => HeightValue::Inf,
        TrackTail::Gapless | TrackTail::InfAt(_) => HeightValue::Fin(v.saturating_add(k - pos)),
        TrackTail::Jumpy(s) => HeightValue::Fin(v.saturating_add(s.saturating_mul(k - pos))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrackViolation {
    JumpAtZero,
    PositionsNotIncreasing {
        k: u64,
    },
    /// `v(k) = v(k-1) + 1`: listed as a jump but is not one.
    NotAJump {
        k: u64,
    },
    Decreasing {
        k: u64,
    },
    JumpAfterInf {
        k: u64,
    },
    InfTailTooEarly {
        k: u64,
    },
    StrideTooSmall {
        s: u64,
    },
    TooLarge {
        what: &'static str,
        value: u64,
    },
}

impl fmt::Display for TrackViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TrackViolation::JumpAtZero => write!(f, "jump positions start at 1"),
            TrackViolation::PositionsNotIncreasing { k } => write!(f, "jump position {k} out of order"),
            TrackViolation::NotAJump { k } => write!(f, "value at {k} is the previous value plus one, not a jump"),
            TrackViolation::Decreasing { k } => write!(f, "value at {k} does not exceed the previous value"),
            TrackViolation::JumpAfterInf { k } => write!(f, "jump at {k} after the track became infinite"),
            TrackViolation::InfTailTooEarly { k } => write!(f, "infinite tail at {k} does not follow the last jump"),
            TrackViolation::StrideTooSmall { s } => write!(f, "jumpy stride {s} is below 2"),
            TrackViolation::TooLarge { what, value } => write!(f, "{what} {value} exceeds {MAX_TRACK_ENTRY}"),
        }
    }
}

pub fn validate_track(t: &ValueTrack) -> Vec<TrackViolation> {
    let mut out = Vec::new();
    let mut check_size = |what, value: u64| {
        if value > MAX_TRACK_ENTRY {
            out.push(TrackViolation::TooLarge { what, value });
        }
    };
    if let HeightValue::Fin(v) = t.v0 {
        check_size("value", v);
    }
    for &(k, v) in &t.jumps {
        check_size("position", k);
        if let HeightValue::Fin(v) = v {
            check_size("value", v);
        }
    }
    match t.tail {
        TrackTail::InfAt(k) => check_size("position", k),
        TrackTail::Jumpy(s) => check_size("stride", s),
        TrackTail::Gapless => {}
    }
    if !out.is_empty() {
        return out;
    }

    let (mut pos, mut cur) = (0u64, t.v0);
    for &(k, v) in &t.jumps {
        if k == 0 {
            out.push(TrackViolation::JumpAtZero);
            continue;
        }
        if k <= pos {
            out.push(TrackViolation::PositionsNotIncreasing { k });
            continue;
        }
        let HeightValue::Fin(c) = cur else {
            out.push(TrackViolation::JumpAfterInf { k });
            continue;
        };
        let prev = c + (k - 1 - pos);
        match v {
            HeightValue::Inf => {}
            HeightValue::Fin(n) if n == prev + 1 => out.push(TrackViolation::NotAJump { k }),
            HeightValue::Fin(n) if n <= prev => out.push(TrackViolation::Decreasing { k }),
            HeightValue::Fin(_) => {}
        }
        pos = k;
        cur = v;
    }
    match t.tail {
        TrackTail::InfAt(k) if k <= pos || k == 0 => out.push(TrackViolation::InfTailTooEarly { k }),
        TrackTail::Jumpy(s) if s < 2 => out.push(TrackViolation::StrideTooSmall { s }),
        _ => {}
    }
    out
}

/// Tracks of one free generator, by prime. Unlisted primes carry `v(k) = k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuatedCyclic {
    #[serde(default)]
    pub tracks: BTreeMap<u64, ValueTrack>,
}

impl ValuatedCyclic {
    pub fn track(&self, p: u64) -> ValueTrack {
        self.tracks.get(&p).cloned().unwrap_or_else(|| ValueTrack::gapless(0))
    }
}

/// Valuated coproduct of cyclics: one [`ValuatedCyclic`] per basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FreeValuated {
    pub coords: Vec<ValuatedCyclic>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoordViolation {
    pub coord: usize,
    pub p: u64,
    pub violation: String,
}

impl FreeValuated {
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let f: FreeValuated = json::from_str(text)?;
        if f.coords.len() > MAX_RANK {
            return Err(ParseError::Invalid(format!("rank {} exceeds {MAX_RANK}", f.coords.len())));
        }
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        json::to_pretty(self)
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Every prime with a listed track on some coordinate.
    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.coords.iter().flat_map(|c| c.tracks.keys().copied()).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    pub fn validate(&self) -> Vec<CoordViolation> {
        let mut out = Vec::new();
        if self.coords.is_empty() {
            out.push(CoordViolation { coord: 0, p: 0, violation: "no coordinates".into() });
        }
        for (i, c) in self.coords.iter().enumerate() {
            for (&p, t) in &c.tracks {
                if !is_prime(p) {
                    out.push(CoordViolation { coord: i, p, violation: format!("{p} is not prime") });
                }
                out.extend(validate_track(t).into_iter().map(|v| CoordViolation {
                    coord: i,
                    p,
                    violation: v.to_string(),
                }));
            }
        }
        out
    }
}

impl From<ValuatedCyclic> for FreeValuated {
    fn from(x: ValuatedCyclic) -> Self {
        FreeValuated { coords: vec![x] }
    }
}

/// `f(alpha)` for `alpha < bound`: positions `k >= 1` whose value leaps from
/// `alpha` to at least `alpha + 2`.
pub fn ulm_track(t: &ValueTrack, bound: usize) -> Vec<u64> {
    let mut f = vec![0; bound];
    let mut k = 1;
    while let HeightValue::Fin(prev) = value_at(t, k - 1) {
        if prev >= bound as u64 {
            break;
        }
        let jumps = match value_at(t, k) {
            HeightValue::Inf => true,
            HeightValue::Fin(v) => v >= prev + 2,
        };
        if jumps {
            f[prev as usize] += 1;
        }
        k += 1;
    }
    f
}

pub fn ulm_valuated(x: &ValuatedCyclic, p: u64, bound: usize) -> Vec<u64> {
    ulm_track(&x.track(p), bound)
}

/// Sum of [`ulm_valuated`] over the coordinates.
pub fn ulm_free(f: &FreeValuated, p: u64, bound: usize) -> Vec<u64> {
    let mut out = vec![0; bound];
    for c in &f.coords {
        for (o, v) in out.iter_mut().zip(ulm_valuated(c, p, bound)) {
            *o += v;
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InfCoord {
    pub index: usize,
    /// First position with infinite value.
    pub start: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FinCoord {
    pub index: usize,
    /// `m_i` with `|p^{m_i} x_i| = n_p`, gapless from there on.
    pub offset: u64,
}

/// Decomposition data at one prime: `F_p(n_p)` splits as the span of the
/// `p^{m_i} x_i` plus the infinite part.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TightEntry {
    pub p: u64,
    pub n_p: u64,
    pub inf_coords: Vec<InfCoord>,
    pub fin_coords: Vec<FinCoord>,
}

pub type TightData = BTreeMap<u64, TightEntry>;

/// Decomposition data at `p`, or `None` when some coordinate keeps jumping.
///
/// `n_p` is the least level at or above 2 where every finite coordinate has
/// gone gapless and every infinite coordinate has already become infinite.
pub fn tight_hypothesis(f: &FreeValuated, p: u64) -> Option<TightEntry> {
    let mut n_p = 2;
    let mut infs = Vec::new();
    let mut fins = Vec::new();
    for (index, c) in f.coords.iter().enumerate() {
        let t = c.track(p);
        if let Some(start) = t.inf_start() {
            if start > 0 {
                let last = value_at(&t, start - 1).finite().expect("finite before the infinite start");
                n_p = n_p.max(last + 1);
            }
            infs.push(InfCoord { index, start });
            continue;
        }
        if let TrackTail::Jumpy(_) = t.tail {
            return None;
        }
        let (pos, v) = t.last_jump();
        let v = v.finite().expect("finite track");
        n_p = n_p.max(v);
        fins.push((index, pos, v));
    }
    let fin_coords = fins.into_iter().map(|(index, pos, v)| FinCoord { index, offset: pos + (n_p - v) }).collect();
    Some(TightEntry { p, n_p, inf_coords: infs, fin_coords })
}

/// [`tight_hypothesis`] at every listed prime; the first failing prime otherwise.
pub fn tight_data(f: &FreeValuated) -> Result<TightData, u64> {
    f.primes().into_iter().map(|p| tight_hypothesis(f, p).map(|e| (p, e)).ok_or(p)).collect()
}
