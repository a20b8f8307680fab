use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::json::{self, ParseError};
use crate::linalg::is_prime;

/// Most generators a presentation file may declare.
pub const MAX_GENERATORS: usize = 20_000;
/// Largest exponent in a defining relation `p^exp y = w`.
pub const MAX_EXP: u32 = 4096;

/// `w`, an integer combination of earlier generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    #[serde(with = "crate::json::bigint_map")]
    pub coeffs: BTreeMap<String, BigInt>,
}

impl Relation {
    pub fn single(id: &str, c: BigInt) -> Self {
        Relation { coeffs: [(id.to_string(), c)].into() }
    }
}

fn one() -> u32 {
    1
}

fn is_one(e: &u32) -> bool {
    *e == 1
}

/// `p^exp y = w`. With `inf` set, `y` heads an unbounded chain
/// `p y_1 = w`, `p y_{i+1} = y_i`, and `exp` must be 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainGen {
    pub id: String,
    pub p: u64,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub exp: u32,
    pub rel: Relation,
    #[serde(default)]
    pub inf: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub jump_cut: u64,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Presentation {
    pub base: Vec<String>,
    #[serde(default)]
    pub chains: Vec<ChainGen>,
    pub manifest: Manifest,
}

impl Presentation {
    /// Parses and checks the structural invariants.
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        let p: Presentation = json::from_str(text)?;
        let problems = p.validate();
        if !problems.is_empty() {
            return Err(ParseError::Invalid(problems.join("; ")));
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        json::to_pretty(self)
    }

    pub fn generator_count(&self) -> usize {
        self.base.len() + self.chains.len()
    }

    /// Primes carrying at least one chain.
    pub fn primes(&self) -> Vec<u64> {
        self.chains.iter().map(|c| c.p).collect::<BTreeSet<_>>().into_iter().collect()
    }

    /// Empty when ids are unique, every relation refers to strictly earlier
    /// generators, primes are prime and exponents are in range.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.generator_count() > MAX_GENERATORS {
            out.push(format!("{} generators exceed {MAX_GENERATORS}", self.generator_count()));
            return out;
        }
        let mut seen = BTreeSet::new();
        for id in &self.base {
            if id.is_empty() {
                out.push("empty generator id".into());
            }
            if !seen.insert(id.as_str()) {
                out.push(format!("duplicate generator {id:?}"));
            }
        }
        for c in &self.chains {
            if !is_prime(c.p) {
                out.push(format!("{}: {} is not prime", c.id, c.p));
            }
            if c.exp == 0 || c.exp > MAX_EXP {
                out.push(format!("{}: exponent {} outside 1..={MAX_EXP}", c.id, c.exp));
            }
            if c.inf && c.exp != 1 {
                out.push(format!("{}: an infinite chain has exponent 1", c.id));
            }
            for g in c.rel.coeffs.keys() {
                if !seen.contains(g.as_str()) {
                    out.push(format!("{}: relation uses {g:?} before it is defined", c.id));
                }
            }
            if c.id.is_empty() {
                out.push("empty generator id".into());
            }
            if !seen.insert(c.id.as_str()) {
                out.push(format!("duplicate generator {:?}", c.id));
            }
        }
        out
    }
}

/// Generated by `t` and one `s_p` per prime `p <= cutoff`, with `p^2 s_p = p t`.
pub fn example_b(cutoff: u64) -> Presentation {
    let chains = (2..=cutoff)
        .filter(|&p| is_prime(p))
        .map(|p| ChainGen { id: format!("s_{p}"), p, exp: 2, rel: Relation::single("t", BigInt::from(p)), inf: false })
        .collect();
    Presentation {
        base: vec!["t".into()],
        chains,
        manifest: Manifest { jump_cut: 0, source: format!("example_b(cutoff={cutoff})") },
    }
}
