//! Subtractive Euclidean algorithms on oriented integer Grassmannians.
//!
//! Given the integer Plücker coordinates `P` of a k-plane in ℝⁿ, the
//! algorithms in [`mee`] (k = 2 only) and [`minee`] (any k) reduce `P` by
//! unimodular changes of basis until a single coordinate `p̂` is left. The
//! recorded transforms form a multidimensional continued fraction
//! ([`transforms::Trace`]); `|p̂|` is the index of the lattice spanned by
//! any integer realization of `P`, and [`reconstruct::assemble`] turns the
//! trace back into k integer vectors whose Plücker vector is exactly `P`.
//!
//! ```
//! use grassmann_cf::{assemble, compute_plucker, mee_run, MeeOptions, PluckerVector};
//!
//! let p = PluckerVector::from_i64(2, 4, &[10, 10, 12, -15, 3, 21]).unwrap();
//! let trace = mee_run(&p, MeeOptions::default()).unwrap();
//! let tuple = assemble(&trace, &p).unwrap();
//! assert_eq!(compute_plucker(&tuple.matrix).unwrap(), p);
//! assert_eq!(tuple.sublattice_index, 1.into());
//! ```

pub mod cli;
pub mod error;
pub mod euclid;
pub mod matrix;
pub mod mee;
pub mod minee;
pub mod plucker;
pub mod positivity;
pub mod reconstruct;
pub mod sample;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use euclid::{euclid_cf, jacobi_perron, EuclidResult, JacobiPerronResult};
pub use matrix::{IntMatrix, LatticeMatrix};
pub use mee::{mee_dim_reduce, mee_run, mee_step, MeeOptions, MeeState};
pub use minee::{minee_dim_reduce, minee_run, minee_select, minee_subtract, MineeState, Selection};
pub use plucker::{
    check_relations, compute_plucker, is_primitive, lex_rank, lex_unrank, plucker_gcd, PluckerVector, SubsetIndex,
};
pub use positivity::{negative_parity, positivize_g2n, Parity, Positivized, SwapOrder};
pub use reconstruct::{admissible_tuple, assemble, sublattice_index, ReconstructionResult};
pub use transforms::{
    apply_matrix, compose, invert, push_plucker, Descriptor, StageLabel, Trace, TraceStep, UnimodularTransform,
};
pub use verify::{verify_trace, VerificationReport};
