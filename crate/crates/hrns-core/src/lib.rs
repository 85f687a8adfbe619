//! Exact combinatorics and truncated Fock-space numerics for positive cones
//! in `Z^d` ("higher-rank numerical semigroups").
//!
//! The crate has two halves:
//!
//! * **Exact**: cone membership with decomposition certificates, gaps, axis
//!   profiles, minimal generators, seminormality and seminormalization
//!   membership, and the decision procedure for isomorphism up to coordinate
//!   permutation ([`cone`], [`iso`], [`point`]).
//! * **Numerical**: compressions of the translation operators to finite
//!   boxes, their norms by deterministic power iteration, sup-norms of
//!   symbols on the torus with certified error bounds, dilation shifts, and
//!   character-space computations (sample validation, recovery, extension,
//!   counterexample pairs) ([`fock`], [`poly`], [`character`]).
//!
//! All numerics are double precision with documented tolerances; every
//! exact claim is integer arithmetic with overflow checking. With the
//! default `parallel` feature the heavy kernels fan out over rayon, with
//! results byte-identical to the sequential build.

pub mod character;
pub mod cone;
mod exec;
pub mod fock;
pub mod iso;
pub mod point;
pub mod poly;

pub use character::{
    extend_semicharacter, gcd_counterexample, poly_membership, pullback_under_rotation,
    recover_point, restrict_evaluation, CharError, CharacterPoint, SemicharacterSample,
};
pub use cone::{
    AxisProfile, Cone, ConeError, EventualVerdict, MembershipCertificate, NormalizationVerdict,
    Seminormality,
};
pub use fock::{
    apply_polynomial, default_grid_per_dim, dilation_shift, fock_matrix, fourier_coefficient,
    norm_gap_report, operator_norm, torus_norm, FockBasis, FockError, NormReport, SparseVector,
    TruncatedOperator,
};
pub use iso::{
    decide_algebra_isomorphism, equal_up_to_permutation, induced_matrix, minimal_generators,
    IntegerMatrixWitness, IsoError, IsoWitness, MatrixClass, Permutation,
};
pub use point::{LatticePoint, Overflow};
pub use poly::{PolyError, Polynomial};
