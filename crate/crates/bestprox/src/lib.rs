//! Best proximity points of cyclic maps between planar and product-space sets.
//!
//! The crate is organized around five layers:
//!
//! * [`geometry`]: points (planar and sparse product-space blocks) and the
//!   norm family used everywhere else.
//! * [`regions`]: the named corpus of sets, membership predicates, boundary
//!   parametrizations, and deterministic distance estimation.
//! * [`convexity`]: moduli of convexity (plain and directional), uniformly
//!   convex set checks, and the phi-machinery for sets that are uniformly
//!   convex only about a gauge function.
//! * [`ucprops`]: falsification harnesses for the UC / BUC / UC* properties
//!   of ordered set pairs, driven by explicit witness sequence families.
//! * [`solver`]: cyclic-map verification and the proximity-point iteration,
//!   including the coupled-to-cyclic product reduction.
//!
//! [`corpus`] ties the named regions, maps, and families into pair entries
//! with golden distances and expected verdicts; [`cli`] exposes the whole
//! thing as a command-line tool with JSON/CSV artifacts.

pub mod cli;
pub mod convexity;
pub mod corpus;
pub mod geometry;
pub mod regions;
pub mod search;
pub mod solver;
pub mod ucprops;
