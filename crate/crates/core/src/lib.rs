//! Greedy-approximation analytics on concrete finite-dimensional instances of
//! quasi-Banach sequence spaces.
//!
//! The crate computes, on finitely supported coefficient vectors:
//!
//! - norms for a small catalog of p-Banach sequence spaces ([`spaces`]),
//! - the thresholding-greedy combinatorics: signs, rearrangements, greedy
//!   sets and orderings ([`greedy`]),
//! - the four approximation-error sequences σₙ, σ̃ₙ, γₙ, ϑₙ with certificates
//!   ([`errors`]),
//! - weighted Lorentz sequence quasi-norms and their dyadic variants
//!   ([`lorentz`]),
//! - approximation-class quasi-norms built from weights and error sequences
//!   ([`classes`]),
//! - democracy functions and greedy-type constants of a basis ([`democracy`]),
//! - weight regularity analytics ([`weights`]),
//! - and an empirical theorem harness with explicit proof constants
//!   ([`verify`]).
//!
//! All randomized operations are driven by an explicit seed and are
//! deterministic: the same inputs produce byte-identical reports.
//!
//! ```
//! use greedylab::classes::{chain_check, ClassParams};
//! use greedylab::errors::{error_profile, ErrorOpts};
//! use greedylab::spaces::{SpaceDescriptor, SparseVector};
//! use greedylab::weights::Weight;
//!
//! let space = SpaceDescriptor::summing_c0();
//! let f = SparseVector::from_pairs([(1u64, 1.0), (2, -1.0)]).unwrap();
//!
//! let profile = error_profile(&space, &f, 2, &ErrorOpts::default()).unwrap();
//! assert_eq!(profile.sigma[1].value, 0.5);
//! assert_eq!(profile.gamma[1].value, 1.0);
//!
//! let params = ClassParams::new(Weight::power(0.5), f64::INFINITY);
//! let (norms, chain_ok) = chain_check(&space, &f, &params, &ErrorOpts::default()).unwrap();
//! assert!(chain_ok && norms.a_norm <= norms.g_norm);
//! ```

pub mod classes;
pub mod democracy;
pub mod errors;
pub mod greedy;
pub mod lorentz;
pub mod parallel;
pub mod report;
pub mod rng;
pub mod solver;
pub mod spaces;
pub mod verify;
pub mod weights;

pub use classes::{ClassKind, ClassNorms, ClassParams, GeneratorSpec, SweepReport};
pub use democracy::{ConstantEstimate, ConstantKind, DemocracyTable, TableMethod};
pub use errors::{Certificate, ErrorOpts, ErrorProfile, ErrorValue, ValueStatus};
pub use greedy::{GreedySetFamily, SignPattern, TieRule};
pub use lorentz::LorentzParams;
pub use rng::SplitMix64;
pub use spaces::{BasisBounds, SpaceDescriptor, SparseVector};
pub use verify::VerificationReport;
pub use weights::{Weight, WeightAnalysis};
