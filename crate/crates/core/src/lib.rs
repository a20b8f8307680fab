//! Computer algebra for mixed abelian groups with bounded p-torsion.
//!
//! Descriptors and the classifier work symbolically. The valuated and
//! presented modules compile value tracks into explicit presentations, and
//! check them on truncated p-local models with exact integer linear algebra.

pub mod classify;
pub mod descriptors;
pub mod json;
pub mod linalg;
pub mod presented;
pub mod psp;
pub mod valuated;
