//! Exact combinatorics for tropical counts of nodal plane curves and surfaces.
//!
//! The modules build on each other bottom-up: [`exactmath`] supplies rationals,
//! polynomials and linear solving; [`geometry`] handles 3-dimensional lattice
//! polytopes; [`mikhalkin`] decides which lattice paths are realizable by points
//! on a line in Mikhalkin position; [`catalog`] holds the binodal polytope
//! families; [`curvecount`] and [`census`] do the counting.

pub mod catalog;
pub mod census;
pub mod curvecount;
pub mod exactmath;
pub mod geometry;
pub mod mikhalkin;
pub mod verify;
