//! Explicit presentations: the realization compilers, and truncated
//! p-local models that measure heights and Ulm invariants exactly.

mod model;
mod presentation;
mod realize;

use thiserror::Error;

pub use model::{
    check_realization, height, height_agrees, truncate, ulm_model, BoundedHeight, RealizationCheck, TruncatedModel,
    MAX_DEPTH, MIN_DEPTH,
};
pub use presentation::{example_b, ChainGen, Manifest, Presentation, Relation, MAX_EXP, MAX_GENERATORS};
pub use realize::{realize_cyclic, realize_free, realize_free_auto, warfield_split, DEFAULT_JUMP_CUT};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("depth {0} is below the minimum of {MIN_DEPTH}")]
    DepthTooSmall(u32),
    #[error("depth {0} exceeds {MAX_DEPTH}")]
    DepthTooLarge(u32),
    #[error("bound {bound} needs depth at least {}, have {depth}", bound + 2)]
    BoundTooLarge { bound: usize, depth: u32 },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("element has {found} coordinates, model has {expected}")]
    Length { expected: usize, found: usize },
    #[error("presentation has {base} base generators but the valuation has rank {rank}")]
    RankMismatch { base: usize, rank: usize },
    #[error("invalid presentation: {0}")]
    Invalid(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RealizeError {
    #[error("coordinate {coord} at p = {p}: {violation}")]
    InvalidTrack { coord: usize, p: u64, violation: String },
    #[error("no decomposition data at p = {0}: some coordinate keeps jumping")]
    HypothesisAbsent(u64),
    #[error("Ulm invariants at p = {0} have infinite support")]
    InfiniteSupport(u64),
    #[error("f_F exceeds f_G at p = {p}, index {index}")]
    Negative { p: u64, index: usize },
}
