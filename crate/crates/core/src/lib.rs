//! Exact computation of τ-tilting mutation for exceptional sequences over R ⊗ kQ.

pub mod algebra;
pub mod homology;
pub mod linalg;
pub mod module;
pub mod mutation;
pub mod tilting;
