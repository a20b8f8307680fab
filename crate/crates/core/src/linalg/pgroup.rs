//! Finite abelian p-groups `Z/p^e1 + ... + Z/p^er` and their subgroups.
//!
//! A subgroup `N` is handled through its preimage lattice `L` in `Z^r`,
//! which always contains `p^e1 Z + ... + p^er Z`. The Hermite normal form of
//! `L` is unique, so it doubles as the canonical name of `N`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{is_prime, smith, IntMatrix, LinalgError};

pub const ENUM_BOUND_ENV: &str = "MIXEDAB_MAX_ENUM";

/// Ceiling on the groups the oracles will touch: `|G| <= p^max_exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBound {
    pub max_exponent: u32,
}

impl Default for EnumBound {
    fn default() -> Self {
        EnumBound { max_exponent: 12 }
    }
}

impl EnumBound {
    /// Default bound, overridden by `MIXEDAB_MAX_ENUM` when it parses.
    pub fn from_env() -> Self {
        std::env::var(ENUM_BOUND_ENV)
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .map(|max_exponent| EnumBound { max_exponent })
            .unwrap_or_default()
    }
}

/// `Z/p^{e_1} + ... + Z/p^{e_r}` with `e_1 >= ... >= e_r >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinitePGroup {
    p: u64,
    exponents: Vec<u32>,
}

impl FinitePGroup {
    pub fn new(p: u64, exponents: Vec<u32>) -> Result<Self, LinalgError> {
        if !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        if exponents.contains(&0) {
            return Err(LinalgError::BadGroup("cyclic factor exponents must be >= 1".into()));
        }
        if exponents.windows(2).any(|w| w[0] < w[1]) {
            return Err(LinalgError::BadGroup("exponents must be sorted descending".into()));
        }
        let total: u32 = exponents.iter().sum();
        // keep p^(sum e_i) inside i128 with headroom for lattice arithmetic
        if (total as f64) * (p as f64).log2() > 60.0 {
            return Err(LinalgError::BadGroup(format!("group order {p}^{total} too large")));
        }
        Ok(FinitePGroup { p, exponents })
    }

    pub fn trivial(p: u64) -> Result<Self, LinalgError> {
        Self::new(p, Vec::new())
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    pub fn moduli(&self) -> Vec<i128> {
        self.exponents.iter().map(|&e| (self.p as i128).pow(e)).collect()
    }

    /// `log_p |G|`
    pub fn log_order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn order(&self) -> i128 {
        (self.p as i128).pow(self.log_order())
    }

    pub fn check_bound(&self, bound: EnumBound) -> Result<(), LinalgError> {
        if self.log_order() > bound.max_exponent {
            return Err(LinalgError::BoundExceeded {
                p: self.p,
                log_order: self.log_order(),
                max_exponent: bound.max_exponent,
            });
        }
        Ok(())
    }

    pub fn reduce(&self, v: &[i128]) -> Vec<i128> {
        v.iter().zip(self.moduli()).map(|(x, m)| x.rem_euclid(m)).collect()
    }

    pub fn zero(&self) -> Vec<i128> {
        vec![0; self.rank()]
    }

    pub fn is_zero(&self, v: &[i128]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn add(&self, a: &[i128], b: &[i128]) -> Vec<i128> {
        let s: Vec<i128> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&s)
    }

    pub fn scale(&self, k: i128, a: &[i128]) -> Vec<i128> {
        let s: Vec<i128> = a.iter().map(|x| x * k).collect();
        self.reduce(&s)
    }

    /// p-height of an element; `None` for zero (infinite height).
    pub fn height(&self, v: &[i128]) -> Option<u32> {
        self.reduce(v).iter().filter(|&&x| x != 0).map(|&x| valuation_i128(x, self.p)).min()
    }

    pub fn element_order(&self, v: &[i128]) -> i128 {
        let p = self.p as i128;
        self.reduce(v)
            .iter()
            .zip(self.moduli())
            .map(|(&x, m)| if x == 0 { 1 } else { m / p.pow(valuation_i128(x, self.p)) })
            .max()
            .unwrap_or(1)
    }

    /// Every element, in mixed-radix order with the last coordinate fastest.
    pub fn elements(&self) -> impl Iterator<Item = Vec<i128>> + '_ {
        let moduli = self.moduli();
        let total = self.order();
        (0..total).map(move |mut idx| {
            let mut v = vec![0; moduli.len()];
            for k in (0..moduli.len()).rev() {
                v[k] = idx % moduli[k];
                idx /= moduli[k];
            }
            v
        })
    }
}

impl fmt::Debug for FinitePGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.exponents.iter().map(|e| format!("Z/{}^{}", self.p, e)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn valuation_i128(mut x: i128, p: u64) -> u32 {
    let p = p as i128;
    let mut v = 0;
    while x != 0 && x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Hermite normal form of a full-rank lattice in `Z^r`: upper triangular,
/// positive pivots, entries above each pivot reduced into `[0, pivot)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hnf {
    rows: Vec<Vec<i128>>,
}

impl Hnf {
    /// The lattice `p^e1 Z + ... + p^er Z` (preimage of the zero subgroup).
    fn of_moduli(moduli: &[i128]) -> Self {
        let r = moduli.len();
        let rows = (0..r)
            .map(|i| {
                let mut row = vec![0; r];
                row[i] = moduli[i];
                row
            })
            .collect();
        Hnf { rows }
    }

    fn reduce_against(&self, v: &mut [i128], from: usize) {
        for j in from..self.rows.len() {
            let piv = self.rows[j][j];
            let q = v[j].div_euclid(piv);
            if q != 0 {
                for (x, h) in v[j..].iter_mut().zip(&self.rows[j][j..]) {
                    *x -= q * h;
                }
            }
        }
    }

    fn insert(&mut self, mut v: Vec<i128>) {
        let r = self.rows.len();
        for k in 0..r {
            self.reduce_against(&mut v, k);
            if v[k] == 0 {
                continue;
            }
            let (a, b) = (self.rows[k][k], v[k]);
            let (g, x, y) = xgcd(a, b);
            let (ag, bg) = (a / g, b / g);
            let old = std::mem::take(&mut self.rows[k]);
            let new_row: Vec<i128> = old.iter().zip(&v).map(|(h, w)| x * h + y * w).collect();
            v = old.iter().zip(&v).map(|(h, w)| ag * w - bg * h).collect();
            self.rows[k] = new_row;
            let mut row = std::mem::take(&mut self.rows[k]);
            self.reduce_against(&mut row, k + 1);
            self.rows[k] = row;
        }
        self.normalize();
    }

    fn normalize(&mut self) {
        let r = self.rows.len();
        for (k, row) in self.rows.iter_mut().enumerate() {
            if row[k] < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
        }
        // Ascending, so that reducing column k never disturbs a finished column.
        for k in 0..r {
            let pivot_row = self.rows[k].clone();
            for i in 0..k {
                let q = self.rows[i][k].div_euclid(pivot_row[k]);
                if q != 0 {
                    for (x, h) in self.rows[i][k..].iter_mut().zip(&pivot_row[k..]) {
                        *x -= q * h;
                    }
                }
            }
        }
    }

    fn contains(&self, v: &[i128]) -> bool {
        let mut w = v.to_vec();
        for (k, row) in self.rows.iter().enumerate() {
            if w[k].rem_euclid(row[k]) != 0 {
                return false;
            }
            let q = w[k] / row[k];
            for (x, h) in w[k..].iter_mut().zip(&row[k..]) {
                *x -= q * h;
            }
        }
        true
    }

    /// `|Z^r / L|`
    fn index(&self) -> i128 {
        self.rows.iter().enumerate().map(|(k, row)| row[k]).product()
    }

    fn to_matrix(&self) -> IntMatrix {
        let r = self.rows.len();
        IntMatrix::from_rows_with_cols(
            self.rows.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect(),
            r,
        )
    }
}

/// A subgroup of a [`FinitePGroup`] given by generators.
#[derive(Clone)]
pub struct SubgroupGens {
    ambient: FinitePGroup,
    gens: Vec<Vec<i128>>,
    hnf: Hnf,
}

impl SubgroupGens {
    pub fn new(ambient: FinitePGroup, gens: Vec<Vec<i128>>) -> Result<Self, LinalgError> {
        if let Some(bad) = gens.iter().find(|g| g.len() != ambient.rank()) {
            return Err(LinalgError::BadGroup(format!(
                "generator of length {} in group of rank {}",
                bad.len(),
                ambient.rank()
            )));
        }
        let gens: Vec<Vec<i128>> = gens.iter().map(|g| ambient.reduce(g)).collect();
        let mut hnf = Hnf::of_moduli(&ambient.moduli());
        for g in &gens {
            hnf.insert(g.clone());
        }
        Ok(SubgroupGens { ambient, gens, hnf })
    }

    pub fn trivial(ambient: FinitePGroup) -> Self {
        let hnf = Hnf::of_moduli(&ambient.moduli());
        SubgroupGens { ambient, gens: Vec::new(), hnf }
    }

    pub fn whole(ambient: FinitePGroup) -> Self {
        let r = ambient.rank();
        let gens = (0..r)
            .map(|i| {
                let mut e = vec![0; r];
                e[i] = 1;
                e
            })
            .collect();
        Self::new(ambient, gens).expect("unit vectors have the right length")
    }

    pub fn ambient(&self) -> &FinitePGroup {
        &self.ambient
    }

    pub fn gens(&self) -> &[Vec<i128>] {
        &self.gens
    }

    pub fn order(&self) -> i128 {
        self.ambient.order() / self.hnf.index()
    }

    pub fn contains(&self, v: &[i128]) -> bool {
        v.len() == self.ambient.rank() && self.hnf.contains(v)
    }

    pub fn contains_subgroup(&self, other: &SubgroupGens) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Same subgroup, generated by its reduced Hermite rows.
    pub fn canonical(&self) -> SubgroupGens {
        let gens: Vec<Vec<i128>> =
            self.hnf.rows.iter().map(|row| self.ambient.reduce(row)).filter(|g| g.iter().any(|&x| x != 0)).collect();
        SubgroupGens { ambient: self.ambient.clone(), gens, hnf: self.hnf.clone() }
    }

    pub fn join(&self, other: &SubgroupGens) -> SubgroupGens {
        let mut out = self.clone();
        for g in &other.gens {
            out = out.with(g);
        }
        out
    }

    /// `self + <g>`
    pub fn with(&self, g: &[i128]) -> SubgroupGens {
        let g = self.ambient.reduce(g);
        let mut hnf = self.hnf.clone();
        hnf.insert(g.clone());
        let mut gens = self.gens.clone();
        gens.push(g);
        SubgroupGens { ambient: self.ambient.clone(), gens, hnf }
    }

    pub fn intersection_is_trivial(&self, other: &SubgroupGens) -> bool {
        self.join(other).order() == self.order() * other.order()
    }

    /// All elements, in the ambient enumeration order.
    pub fn elements(&self) -> Vec<Vec<i128>> {
        self.ambient.elements().filter(|v| self.contains(v)).collect()
    }

    fn key(&self) -> &Hnf {
        &self.hnf
    }
}

impl PartialEq for SubgroupGens {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.hnf == other.hnf
    }
}

impl Eq for SubgroupGens {}

impl std::hash::Hash for SubgroupGens {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.hnf.hash(state);
    }
}

impl fmt::Debug for SubgroupGens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}> in {:?}", self.canonical().gens, self.ambient)
    }
}

fn sort_key(s: &SubgroupGens) -> (i128, Hnf) {
    (s.order(), s.key().clone())
}

/// Every subgroup of `g`, sorted by order and then by Hermite form.
/// Fails when `g` exceeds `bound` or more than `limit` subgroups exist.
pub fn enumerate_subgroups(g: &FinitePGroup, limit: usize, bound: EnumBound) -> Result<Vec<SubgroupGens>, LinalgError> {
    g.check_bound(bound)?;
    let elements: Vec<Vec<i128>> = g.elements().collect();
    let start = SubgroupGens::trivial(g.clone());
    let mut seen: HashSet<Hnf> = HashSet::from([start.hnf.clone()]);
    let mut frontier = vec![start.clone()];
    let mut all = vec![start];
    let p = g.prime() as i128;
    // Each subgroup is reachable from 0 through steps of index p.
    while let Some(h) = frontier.pop() {
        for x in &elements {
            if h.contains(x) || !h.contains(&g.scale(p, x)) {
                continue;
            }
            let k = h.with(x);
            if seen.insert(k.hnf.clone()) {
                if all.len() >= limit {
                    return Err(LinalgError::TooManySubgroups(limit));
                }
                all.push(k.canonical());
                frontier.push(k);
            }
        }
    }
    all.sort_by_key(sort_key);
    Ok(all.into_iter().map(|s| s.canonical()).collect())
}

/// A complement `C` with `N + C = G` and `N ∩ C = 0`, or `None` when `N` is
/// not a direct summand.
///
/// The quotient `G/N` is split into cyclic factors through the Smith form of
/// the lattice of `N`; each factor generator is then corrected by an element
/// of `N` so that its order matches the factor. The correction exists for
/// every factor exactly when `N` is a summand.
pub fn is_summand(n: &SubgroupGens, bound: EnumBound) -> Result<Option<SubgroupGens>, LinalgError> {
    let g = n.ambient();
    g.check_bound(bound)?;
    let r = g.rank();
    if r == 0 {
        return Ok(Some(SubgroupGens::trivial(g.clone())));
    }
    let basis = n.hnf.to_matrix();
    // snf(B^T) = U' B^T V': the columns w_i of U'^{-1} form a basis of Z^r
    // with L = sum d_i w_i.
    let sm = smith::snf(&basis.transpose());
    let factors = sm.s.diagonal_entries();
    let w_basis = unimodular_inverse(&sm.u)?;
    let moduli = g.moduli();
    let mut complement = SubgroupGens::trivial(g.clone());
    for (i, d) in factors.iter().enumerate() {
        let d = d.to_i128().ok_or(LinalgError::Internal("factor overflow".into()))?;
        if d == 1 {
            continue;
        }
        let w: Vec<i128> = (0..r)
            .map(|k| w_basis[(k, i)].to_i128().ok_or(LinalgError::Internal("transform overflow".into())))
            .collect::<Result<_, _>>()?;
        let c = g.reduce(&w);
        // Find z, t with z*B + t*diag(m_k / gcd(d, m_k)) = c.
        let system_rows: Vec<Vec<BigInt>> = (0..r)
            .map(|k| {
                let mut row: Vec<BigInt> = (0..r).map(|j| basis[(j, k)].clone()).collect();
                row.extend((0..r).map(|j| {
                    if j == k {
                        BigInt::from(moduli[k] / gcd_i128(d, moduli[k]))
                    } else {
                        BigInt::from(0)
                    }
                }));
                row
            })
            .collect();
        let system = IntMatrix::from_rows_with_cols(system_rows, 2 * r);
        let rhs: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        let Some(sol) = smith::solve_linear(&system, &rhs)? else {
            return Ok(None);
        };
        let lifted: Vec<i128> = (0..r)
            .map(|k| {
                let shift: BigInt = (0..r).map(|j| &sol[j] * &basis[(j, k)]).sum();
                let x = (BigInt::from(c[k]) - shift) % BigInt::from(moduli[k]);
                x.to_i128().expect("reduced below modulus")
            })
            .collect();
        complement = complement.with(&lifted);
    }
    if complement.order() * n.order() != g.order() || !complement.intersection_is_trivial(n) {
        return Err(LinalgError::Internal(format!("complement check failed for {n:?}")));
    }
    Ok(Some(complement.canonical()))
}

fn unimodular_inverse(u: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let n = u.rows();
    let sm = smith::snf(u);
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![BigInt::from(0); n];
        e[j] = BigInt::from(1);
        cols.push(sm.solve(&e)?.ok_or(LinalgError::Internal("transform is not unimodular".into()))?);
    }
    Ok(IntMatrix::from_rows_with_cols(cols, n).transpose())
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    xgcd(a, b).0
}

/// The least-order direct summand containing `n`, ties broken by Hermite
/// form, together with a complement.
///
/// Searches upward through subgroups containing `n` one index-p step at a
/// time, testing each layer with [`is_summand`].
pub fn minimal_summand(n: &SubgroupGens, bound: EnumBound) -> Result<(SubgroupGens, SubgroupGens), LinalgError> {
    const MAX_VISITED: usize = 200_000;
    let g = n.ambient();
    g.check_bound(bound)?;
    let p = g.prime() as i128;
    let elements: Vec<Vec<i128>> = g.elements().collect();
    let mut layer: BTreeSet<(i128, Hnf)> = BTreeSet::new();
    let mut by_key = std::collections::HashMap::new();
    let start = n.canonical();
    layer.insert(sort_key(&start));
    by_key.insert(start.hnf.clone(), start);
    let mut visited = 1usize;
    loop {
        for (_, key) in &layer {
            let cand = &by_key[key];
            if let Some(c) = is_summand(cand, bound)? {
                return Ok((cand.clone(), c));
            }
        }
        let mut next = BTreeSet::new();
        let mut next_map = std::collections::HashMap::new();
        for (_, key) in &layer {
            let h: &SubgroupGens = &by_key[key];
            for x in &elements {
                if h.contains(x) || !h.contains(&g.scale(p, x)) {
                    continue;
                }
                let k = h.with(x).canonical();
                if !next_map.contains_key(&k.hnf) {
                    visited += 1;
                    if visited > MAX_VISITED {
                        return Err(LinalgError::TooManySubgroups(MAX_VISITED));
                    }
                    next.insert(sort_key(&k));
                    next_map.insert(k.hnf.clone(), k);
                }
            }
        }
        if next.is_empty() {
            return Err(LinalgError::Internal("no summand found; the whole group should be one".into()));
        }
        layer = next;
        by_key = next_map;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(p: u64, e: &[u32]) -> FinitePGroup {
        FinitePGroup::new(p, e.to_vec()).unwrap()
    }

    fn sub(g: &FinitePGroup, gens: &[&[i128]]) -> SubgroupGens {
        SubgroupGens::new(g.clone(), gens.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    /// Oracle: try every subgroup as a complement.
    fn brute_complement(n: &SubgroupGens) -> Option<SubgroupGens> {
        let all = enumerate_subgroups(n.ambient(), 1_000_000, EnumBound::default()).unwrap();
        all.into_iter().find(|c| c.order() * n.order() == n.ambient().order() && c.intersection_is_trivial(n))
    }

    #[test]
    fn group_validation() {
        assert!(FinitePGroup::new(4, vec![1]).is_err());
        assert!(FinitePGroup::new(2, vec![1, 2]).is_err());
        assert!(FinitePGroup::new(2, vec![0]).is_err());
        assert_eq!(grp(3, &[2, 1]).order(), 27);
    }

    #[test]
    fn subgroup_counts() {
        let b = EnumBound::default();
        assert_eq!(enumerate_subgroups(&grp(2, &[1]), 100, b).unwrap().len(), 2);
        assert_eq!(enumerate_subgroups(&grp(2, &[1, 1]), 100, b).unwrap().len(), 5);
        assert_eq!(enumerate_subgroups(&grp(2, &[2]), 100, b).unwrap().len(), 3);
        // Z_p^3 has 1 + (p^2+p+1) + (p^2+p+1) + 1 subgroups.
        assert_eq!(enumerate_subgroups(&grp(3, &[1, 1, 1]), 100, b).unwrap().len(), 28);
        // Z_4 + Z_2: 0, three of order 2, Z_2+Z_2, two cyclic of order 4, whole.
        assert_eq!(enumerate_subgroups(&grp(2, &[2, 1]), 100, b).unwrap().len(), 8);
    }

    #[test]
    fn enumeration_respects_limits() {
        let g = grp(2, &[1, 1, 1]);
        assert!(matches!(enumerate_subgroups(&g, 3, EnumBound::default()), Err(LinalgError::TooManySubgroups(3))));
        assert!(matches!(
            enumerate_subgroups(&g, 100, EnumBound { max_exponent: 2 }),
            Err(LinalgError::BoundExceeded { .. })
        ));
    }

    #[test]
    fn summand_examples() {
        let b = EnumBound::default();
        let z2 = grp(2, &[1]);
        let c = is_summand(&sub(&z2, &[&[1]]), b).unwrap().unwrap();
        assert!(c.is_trivial());

        let z4 = grp(2, &[2]);
        assert!(is_summand(&sub(&z4, &[&[2]]), b).unwrap().is_none());
        assert!(brute_complement(&sub(&z4, &[&[2]])).is_none());

        let g = grp(2, &[2, 1]);
        let c = is_summand(&sub(&g, &[&[0, 1]]), b).unwrap().unwrap();
        assert_eq!(c.order(), 4);
        assert!(c.contains(&[1, 0]) || c.contains(&[1, 1]));
    }

    #[test]
    fn summand_agrees_with_exhaustive_search() {
        for g in [grp(2, &[2, 1]), grp(2, &[3, 1]), grp(3, &[2, 1]), grp(2, &[2, 2]), grp(2, &[2, 1, 1])] {
            for n in enumerate_subgroups(&g, 10_000, EnumBound::default()).unwrap() {
                let fast = is_summand(&n, EnumBound::default()).unwrap();
                let slow = brute_complement(&n);
                assert_eq!(fast.is_some(), slow.is_some(), "{n:?}");
                if let Some(c) = fast {
                    assert_eq!(c.order() * n.order(), g.order());
                    assert!(c.intersection_is_trivial(&n));
                }
            }
        }
    }

    #[test]
    fn minimal_summand_of_height_one_element() {
        let g = grp(2, &[2, 1]);
        let (f, s) = minimal_summand(&sub(&g, &[&[2, 0]]), EnumBound::default()).unwrap();
        assert_eq!(f.order(), 4);
        assert!(f.contains(&[2, 0]));
        assert_eq!(s.order(), 2);
        assert!(f.intersection_is_trivial(&s));
    }

    #[test]
    fn heights_and_orders() {
        let g = grp(3, &[3, 1]);
        assert_eq!(g.height(&[9, 0]), Some(2));
        assert_eq!(g.height(&[9, 1]), Some(0));
        assert_eq!(g.height(&[0, 0]), None);
        assert_eq!(g.element_order(&[3, 0]), 9);
        assert_eq!(g.element_order(&[0, 2]), 3);
    }

    #[test]
    fn canonical_form_is_unique() {
        let g = grp(2, &[2, 1]);
        let a = sub(&g, &[&[1, 1]]);
        let b = sub(&g, &[&[3, 1], &[2, 0]]);
        assert_eq!(a, b);
        assert_eq!(a.canonical().gens(), b.canonical().gens());
    }
}
