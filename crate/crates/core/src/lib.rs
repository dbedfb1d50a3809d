//! Exact computations for invariant foliations on nilmanifolds: basic
//! cohomology, the basic Albanese torus and map, mean curvature and
//! bundle-like checks, all over the field ℚ(s).

pub mod albanese;
pub mod corpus;
pub mod document;
pub mod exactalg;
pub mod geometry;
pub mod invforms;
pub mod liealg;
pub mod report;
