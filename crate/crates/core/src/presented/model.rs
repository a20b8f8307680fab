use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::presentation::Presentation;
use super::ModelError;
use crate::linalg::{p_valuation, snf, IntMatrix, Smith};
use crate::valuated::{ulm_free, value_at, FreeValuated, HeightValue};

pub const MIN_DEPTH: u32 = 4;
pub const MAX_DEPTH: u32 = 1024;

/// A p-height as far as a depth-`B` model can tell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundedHeight {
    Exact(u32),
    GeqB,
    Inf,
}

/// Finite integer model of a presentation localized at `p`.
///
/// Chains at other primes are divided out (their prime is a unit here), and
/// unbounded chains at `p` are cut after `depth + 2` links; the cut links
/// are `inf_marked` and stand for the infinitely divisible part.
#[derive(Clone, Debug)]
pub struct TruncatedModel {
    p: u64,
    depth: u32,
    columns: Vec<String>,
    relations: IntMatrix,
    inf_marked: Vec<usize>,
    /// Generator id to a column vector over a denominator prime to `p`.
    values: BTreeMap<String, (Vec<BigInt>, BigInt)>,
    smith: Smith,
    /// `Some(a)` for a cyclic factor of order `p^a` (a = 0: trivial), `None` for a free one.
    factors: Vec<Option<u32>>,
    inf_smith: Smith,
}

fn combine(
    values: &BTreeMap<String, (Vec<BigInt>, BigInt)>,
    coeffs: &BTreeMap<String, BigInt>,
    width: usize,
) -> (Vec<BigInt>, BigInt) {
    let den = coeffs.keys().fold(BigInt::one(), |acc, g| acc.lcm(&values[g].1));
    let mut num = vec![BigInt::zero(); width];
    for (g, c) in coeffs {
        let (v, d) = &values[g];
        let scale = c * (&den / d);
        for (n, x) in num.iter_mut().zip(v) {
            if !x.is_zero() {
                *n += &scale * x;
            }
        }
    }
    reduce(num, den)
}

fn reduce(mut num: Vec<BigInt>, mut den: BigInt) -> (Vec<BigInt>, BigInt) {
    let g = num.iter().fold(den.clone(), |acc, x| acc.gcd(x));
    if !g.is_one() && !g.is_zero() {
        for x in num.iter_mut() {
            *x = &*x / &g;
        }
        den /= &g;
    }
    (num, den)
}

fn unit(width: usize, i: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); width];
    v[i] = BigInt::one();
    v
}

pub fn truncate(pres: &Presentation, p: u64, depth: u32) -> Result<TruncatedModel, ModelError> {
    if depth < MIN_DEPTH {
        return Err(ModelError::DepthTooSmall(depth));
    }
    if depth > MAX_DEPTH {
        return Err(ModelError::DepthTooLarge(depth));
    }
    let problems = pres.validate();
    if !problems.is_empty() {
        return Err(ModelError::Invalid(problems.join("; ")));
    }
    let links = depth as usize + 2;
    let mut columns: Vec<String> = pres.base.clone();
    for c in pres.chains.iter().filter(|c| c.p == p) {
        if c.inf {
            columns.extend((1..=links).map(|i| format!("{}#{i}", c.id)));
        } else {
            columns.push(c.id.clone());
        }
    }
    let width = columns.len();
    let pb = BigInt::from(p);

    let mut values = BTreeMap::new();
    for (i, id) in pres.base.iter().enumerate() {
        values.insert(id.clone(), (unit(width, i), BigInt::one()));
    }
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut inf_marked = Vec::new();
    let mut col = pres.base.len();
    for c in &pres.chains {
        let (num, den) = combine(&values, &c.rel.coeffs, width);
        if c.p != p {
            let q = BigInt::from(c.p).pow(c.exp);
            values.insert(c.id.clone(), reduce(num, den * q));
            continue;
        }
        // p^exp * den * y - num = 0
        let mut row: Vec<BigInt> = num.iter().map(|x| -x).collect();
        row[col] += pb.pow(c.exp) * &den;
        rows.push(row);
        values.insert(c.id.clone(), (unit(width, col), BigInt::one()));
        if c.inf {
            for i in 1..links {
                let mut row = vec![BigInt::zero(); width];
                row[col + i] = pb.clone();
                row[col + i - 1] = BigInt::from(-1);
                rows.push(row);
            }
            inf_marked.extend(col..col + links);
            col += links;
        } else {
            col += 1;
        }
    }
    let relations = IntMatrix::from_rows_with_cols(rows, width);
    let smith = snf(&relations);
    let rank = smith.rank();
    let diag = smith.s.diagonal_entries();
    let factors = (0..width)
        .map(|j| if j < rank { Some(p_valuation(&diag[j], p).expect("nonzero factor") as u32) } else { None })
        .collect();

    // columns of [R^T | E_inf] span the relations plus the marked generators
    let mut span_rows = vec![Vec::with_capacity(relations.rows() + inf_marked.len()); width];
    for (j, row) in span_rows.iter_mut().enumerate() {
        row.extend((0..relations.rows()).map(|i| relations[(i, j)].clone()));
        row.extend(inf_marked.iter().map(|&m| if m == j { BigInt::one() } else { BigInt::zero() }));
    }
    let span = IntMatrix::from_rows_with_cols(span_rows, relations.rows() + inf_marked.len());
    let inf_smith = snf(&span);

    Ok(TruncatedModel { p, depth, columns, relations, inf_marked, values, smith, factors, inf_smith })
}

impl TruncatedModel {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn inf_marked(&self) -> &[usize] {
        &self.inf_marked
    }

    /// Column vector of an integer word in the presentation's generators,
    /// scaled by a unit at `p`.
    pub fn element(&self, word: &BTreeMap<String, BigInt>) -> Result<Vec<BigInt>, ModelError> {
        if let Some(g) = word.keys().find(|g| !self.values.contains_key(*g)) {
            return Err(ModelError::UnknownGenerator(g.clone()));
        }
        Ok(combine(&self.values, word, self.columns.len()).0)
    }

    /// `c * id`
    pub fn generator(&self, id: &str, c: BigInt) -> Result<Vec<BigInt>, ModelError> {
        self.element(&[(id.to_string(), c)].into())
    }

    fn check_len(&self, e: &[BigInt]) -> Result<(), ModelError> {
        if e.len() != self.columns.len() {
            return Err(ModelError::Length { expected: self.columns.len(), found: e.len() });
        }
        Ok(())
    }

    /// Coordinates of `e` along the Smith factors of the model.
    fn coordinates(&self, e: &[BigInt]) -> Vec<BigInt> {
        let v = &self.smith.v;
        (0..v.cols()).map(|j| (0..v.rows()).map(|i| &v[(i, j)] * &e[i]).sum()).collect()
    }

    /// Lies in the span of the marked generators, locally at `p`.
    pub fn is_infinitely_divisible(&self, e: &[BigInt]) -> Result<bool, ModelError> {
        self.check_len(e)?;
        Ok(self.inf_smith.solve_local(e, self.p).map_err(|err| ModelError::Invalid(err.to_string()))?.is_some())
    }

    /// Height of `e` in the local model; `None` when `e` is zero there.
    fn raw_height(&self, e: &[BigInt], free_only: bool) -> Option<u64> {
        let mut best: Option<u64> = None;
        for (c, f) in self.coordinates(e).iter().zip(&self.factors) {
            let h = match f {
                Some(_) if free_only => continue,
                Some(a) => match p_valuation(c, self.p) {
                    Some(v) if v < u64::from(*a) => v,
                    _ => continue,
                },
                None => match p_valuation(c, self.p) {
                    Some(v) => v,
                    None => continue,
                },
            };
            best = Some(best.map_or(h, |b| b.min(h)));
        }
        best
    }

    pub fn height(&self, e: &[BigInt]) -> Result<BoundedHeight, ModelError> {
        if self.is_infinitely_divisible(e)? {
            return Ok(BoundedHeight::Inf);
        }
        Ok(match self.raw_height(e, false) {
            Some(h) if h < u64::from(self.depth) => BoundedHeight::Exact(h as u32),
            Some(_) => BoundedHeight::GeqB,
            // zero is in every span, so this is unreachable in practice
            None => BoundedHeight::Inf,
        })
    }

    /// Height of the image of `e` in `M / T`; `None` when that image is zero.
    pub fn free_quotient_height(&self, e: &[BigInt]) -> Result<Option<u64>, ModelError> {
        self.check_len(e)?;
        Ok(self.raw_height(e, true))
    }

    /// Orders `p^a` of the cyclic torsion factors, ascending.
    pub fn torsion_factors(&self) -> Vec<BigInt> {
        let pb = BigInt::from(self.p);
        self.factors.iter().filter_map(|f| f.filter(|&a| a > 0)).map(|a| pb.pow(a)).collect()
    }

    pub fn free_rank(&self) -> usize {
        self.factors.iter().filter(|f| f.is_none()).count()
    }

    /// `f(alpha)` for `alpha < bound`: torsion factors of order exactly `p^{alpha+1}`.
    pub fn ulm(&self, bound: usize) -> Result<Vec<u64>, ModelError> {
        if bound + 2 > self.depth as usize {
            return Err(ModelError::BoundTooLarge { bound, depth: self.depth });
        }
        let mut f = vec![0; bound];
        for a in self.factors.iter().flatten() {
            if *a >= 1 && (*a as usize) <= bound {
                f[*a as usize - 1] += 1;
            }
        }
        Ok(f)
    }
}

pub fn height(m: &TruncatedModel, e: &[BigInt]) -> Result<BoundedHeight, ModelError> {
    m.height(e)
}

pub fn ulm_model(m: &TruncatedModel, bound: usize) -> Result<Vec<u64>, ModelError> {
    m.ulm(bound)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationCheck {
    pub p: u64,
    pub depth: u32,
    pub valuation_match: bool,
    pub tight: bool,
    pub zero_tight: bool,
    pub mismatches: Vec<String>,
}

/// Whether a model height is what the valuation predicts, allowing for the
/// model's horizon.
pub fn height_agrees(expected: HeightValue, observed: BoundedHeight, depth: u32) -> bool {
    match (expected, observed) {
        (HeightValue::Inf, BoundedHeight::Inf) => true,
        (HeightValue::Fin(v), BoundedHeight::Exact(h)) => v == u64::from(h),
        (HeightValue::Fin(v), BoundedHeight::GeqB) => v >= u64::from(depth),
        _ => false,
    }
}

const MAX_REPORTED: usize = 16;

/// Compares the model of `pres` at `p` against the valuation `x`, whose
/// coordinates are the presentation's base generators in order.
pub fn check_realization(
    x: &FreeValuated,
    pres: &Presentation,
    p: u64,
    depth: u32,
) -> Result<RealizationCheck, ModelError> {
    if pres.base.len() != x.rank() {
        return Err(ModelError::RankMismatch { base: pres.base.len(), rank: x.rank() });
    }
    let m = truncate(pres, p, depth)?;
    let pb = BigInt::from(p);
    let top = depth - 2;
    let mut mismatches = Vec::new();
    let mut probe = |word: BTreeMap<String, BigInt>, expected: HeightValue, label: String| -> Result<(), ModelError> {
        let observed = m.height(&m.element(&word)?)?;
        if !height_agrees(expected, observed, depth) {
            mismatches.push(format!("{label}: expected {expected}, model says {observed:?}"));
        }
        Ok(())
    };
    let tracks: Vec<_> = x.coords.iter().map(|c| c.track(p)).collect();
    for k in 0..=top {
        let pk = pb.pow(k);
        for (i, t) in tracks.iter().enumerate() {
            probe(
                [(pres.base[i].clone(), pk.clone())].into(),
                value_at(t, k.into()),
                format!("p^{k} {}", pres.base[i]),
            )?;
            for (j, u) in tracks.iter().enumerate().skip(i + 1) {
                let word = [(pres.base[i].clone(), pk.clone()), (pres.base[j].clone(), pk.clone())].into();
                let expected = value_at(t, k.into()).min(value_at(u, k.into()));
                probe(word, expected, format!("p^{k} ({} + {})", pres.base[i], pres.base[j]))?;
            }
        }
    }
    let bound = top as usize;
    let from_model = m.ulm(bound)?;
    let from_valuation = ulm_free(x, p, bound);
    let valuation_match = mismatches.is_empty();
    mismatches.truncate(MAX_REPORTED);
    if from_model != from_valuation {
        mismatches.push(format!("Ulm invariants: valuation {from_valuation:?}, model {from_model:?}"));
    }
    Ok(RealizationCheck {
        p,
        depth,
        valuation_match,
        tight: from_model == from_valuation,
        zero_tight: from_model.first() == from_valuation.first(),
        mismatches,
    })
}
