//! Computational C-systems built from a universe in a category of finite sets.
//!
//! The library has three layers:
//!
//! * a concrete carrier — skeletal finite sets with explicit morphism tables,
//!   chosen fiber products, a locally cartesian closed structure and size
//!   universes ([`finset_lcc`], generic diagram machinery in [`cat_core`]);
//! * the C-system `CC(C, p)` generated by a universe `p`, together with the
//!   representability bijections `u1`, `u2`, `eta`, `mu2` and the transport of
//!   a product structure on the universe to a `(Pi, lambda)`-structure on the
//!   C-system ([`csystem_core`], [`cc_universe`], [`pi_lambda`]);
//! * universe functors, the induced C-system homomorphism `H`, and the
//!   functoriality theorem checker ([`uc_functor`]).
//!
//! Everything is finite and enumerable, so every law the library relies on is
//! also checked by exhaustive enumeration at small sizes; the named checks are
//! packaged as suites in [`suites`] and produce machine-readable reports
//! ([`report`]).

pub mod cat_core;
pub mod cc_universe;
pub mod csystem_core;
pub mod error;
pub mod finset_lcc;
pub mod pi_lambda;
pub mod report;
pub mod suites;
pub mod uc_functor;

pub use error::Error;
