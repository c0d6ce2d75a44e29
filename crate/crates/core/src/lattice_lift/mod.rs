//! Co-minimal pairs in ℤ^d: product lifts, automorphism pairs `(A, σ(A))`,
//! and their verification on boxes.

mod build;
mod matrix;
mod verify;

pub use build::{
    REACH_FACTOR, apply_matrix, block_families, build_A_for_automorphism,
    build_pair_for_automorphism, build_quadrant_pair, claimed_partner, corollary_pairs,
    product_pair, quadrant_matrix, refined_within, verify_corollary_pairs,
};
pub use matrix::{Block, BlockTriangularSpec, IntMatrix, eight_matrices, is_two_nonzero_gl2};
pub use verify::{
    LatticePairReport, LatticeWitness, Method, WITNESS_DILATION, combine_factor_reports,
    is_in_quadrant, verify_cominimal_lattice,
};
