//! Smith normal form with transforms, and the solvers built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{p_valuation, IntMatrix, LinalgError};

/// `u * a * v == s`, with `u`, `v` unimodular and `s` diagonal,
/// nonnegative, each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Nonzero diagonal entries, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.s.diagonal_entries().into_iter().take_while(|d| !d.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    /// Integer solution of `a * x = b`, if one exists.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
        let c = self.u.mul_vec(b).map_err(|_| self.rhs_mismatch(b.len()))?;
        let n = self.v.rows();
        let mut y = vec![BigInt::zero(); n];
        for (i, ci) in c.iter().enumerate() {
            let d = if i < n && i < self.s.rows() { &self.s[(i, i)] } else { &BigInt::ZERO };
            if d.is_zero() {
                if !ci.is_zero() {
                    return Ok(None);
                }
            } else {
                let (q, r) = ci.div_rem(d);
                if !r.is_zero() {
                    return Ok(None);
                }
                y[i] = q;
            }
        }
        Ok(Some(self.v.mul_vec(&y)?))
    }

    /// Solution of `a * x = b` over the local ring Z_(p): returns `(x, unit)`
    /// with `a * x == unit * b` and `unit` prime to `p`.
    pub fn solve_local(&self, b: &[BigInt], p: u64) -> Result<Option<(Vec<BigInt>, BigInt)>, LinalgError> {
        let c = self.u.mul_vec(b).map_err(|_| self.rhs_mismatch(b.len()))?;
        let n = self.v.rows();
        let pb = BigInt::from(p);
        // y_i = c_i / d_i with d_i = p^e * m_i; collect the m_i to clear denominators.
        let mut parts: Vec<(usize, BigInt, BigInt)> = Vec::new();
        let mut unit = BigInt::one();
        for (i, ci) in c.iter().enumerate() {
            let d = if i < n && i < self.s.rows() { &self.s[(i, i)] } else { &BigInt::ZERO };
            if d.is_zero() {
                if !ci.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            let e = p_valuation(d, p).expect("nonzero");
            let ppow = pb.pow(e as u32);
            let (cq, cr) = ci.div_rem(&ppow);
            if !cr.is_zero() {
                return Ok(None);
            }
            let m = d / &ppow;
            unit = unit.lcm(&m);
            parts.push((i, cq, m));
        }
        let mut y = vec![BigInt::zero(); n];
        for (i, cq, m) in parts {
            y[i] = cq * (&unit / m);
        }
        Ok(Some((self.v.mul_vec(&y)?, unit)))
    }

    fn rhs_mismatch(&self, len: usize) -> LinalgError {
        LinalgError::Dimension { op: "solve", left: (self.u.rows(), self.v.rows()), right: (len, 1) }
    }
}

fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Smith normal form of `a` together with the unimodular transforms.
pub fn snf(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        // Pivot: nonzero entry of least absolute value in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = &s[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < s[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let (a, b) = (s[(t, t)].clone(), s[(i, t)].clone());
                if b.is_multiple_of(&a) {
                    let q = -(&b / &a);
                    s.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                } else {
                    let (g, x, y) = xgcd(&a, &b);
                    let (c, d) = (-(&b / &g), &a / &g);
                    s.combine_rows(t, i, &x, &y, &c, &d);
                    u.combine_rows(t, i, &x, &y, &c, &d);
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let (a, b) = (s[(t, t)].clone(), s[(t, j)].clone());
                if b.is_multiple_of(&a) {
                    let q = -(&b / &a);
                    s.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                } else {
                    let (g, x, y) = xgcd(&a, &b);
                    let (c, d) = (-(&b / &g), &a / &g);
                    s.combine_cols(t, j, &x, &y, &c, &d);
                    v.combine_cols(t, j, &x, &y, &c, &d);
                    clean = false;
                }
            }
            if !clean || (t + 1..m).any(|i| !s[(i, t)].is_zero()) {
                continue;
            }
            // Divisibility chain: fold in any row with an entry the pivot misses.
            let pivot = s[(t, t)].clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { s, u, v }
}

/// Integer solution of `a * x = b`, or `None` when no integer solution exists.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::Dimension { op: "solve_linear", left: (a.rows(), a.cols()), right: (b.len(), 1) });
    }
    snf(a).solve(b)
}

/// Solvability of `a * x = b` over Z_(p); see [`Smith::solve_local`].
pub fn solve_local(a: &IntMatrix, b: &[BigInt], p: u64) -> Result<Option<(Vec<BigInt>, BigInt)>, LinalgError> {
    if b.len() != a.rows() {
        return Err(LinalgError::Dimension { op: "solve_local", left: (a.rows(), a.cols()), right: (b.len(), 1) });
    }
    snf(a).solve_local(b, p)
}

/// Invariant factors of the cokernel of `relations` (rows are relations on
/// `cols` generators). Unit factors are dropped; zeros mark free rank and
/// trail the list.
pub fn canonical_form(relations: &IntMatrix) -> Vec<BigInt> {
    let smith = snf(relations);
    let mut out: Vec<BigInt> = smith.invariant_factors().into_iter().filter(|d| !d.is_one()).collect();
    let free = relations.cols() - smith.rank();
    out.extend(std::iter::repeat_n(BigInt::zero(), free));
    out
}
