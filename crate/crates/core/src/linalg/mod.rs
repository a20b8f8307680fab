//! Exact integer linear algebra and finite abelian p-group oracles.

mod matrix;
pub mod pgroup;
mod smith;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

pub use matrix::IntMatrix;
pub use pgroup::{enumerate_subgroups, is_summand, minimal_summand, EnumBound, FinitePGroup, SubgroupGens};
pub use smith::{canonical_form, snf, solve_linear, solve_local, Smith};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("expected {} entries for a {}x{} matrix, found {found}", .expected.0 * .expected.1, .expected.0, .expected.1)]
    Shape { expected: (usize, usize), found: usize },
    #[error("{op}: incompatible dimensions {left:?} and {right:?}")]
    Dimension { op: &'static str, left: (usize, usize), right: (usize, usize) },
    #[error("matrix is {0}x{1}, not square")]
    NotSquare(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid group: {0}")]
    BadGroup(String),
    #[error("group of order {p}^{log_order} exceeds the enumeration bound {p}^{max_exponent}")]
    BoundExceeded { p: u64, log_order: u32, max_exponent: u32 },
    #[error("more than {0} subgroups")]
    TooManySubgroups(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

/// Exponent of `p` in a nonzero integer; `None` for zero.
pub fn p_valuation(x: &BigInt, p: u64) -> Option<u64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// Deterministic for every `u64`.
pub fn is_prime(n: u64) -> bool {
    primal_check::miller_rabin(n)
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime(c) {
        c += 1;
    }
    c
}
