//! Stabilization of weighted graphs for cooperative matching games.
//!
//! Everything is computed in exact rational arithmetic:
//!
//! * [`lp`]: basic maximum-weight fractional matchings and minimum fractional
//!   vertex covers, certified by complementary slackness;
//! * [`cycles`]: a basic optimum whose support has the fewest odd cycles;
//! * [`stabilizers`]: minimum vertex-stabilizers and approximate
//!   edge-stabilizers;
//! * [`walk_dp`] and [`m_stabilizer`]: optimal alternating walks and the
//!   M-vertex-stabilizer;
//! * [`oracle`]: exponential brute-force references for small graphs.

pub mod cycles;
pub mod edmonds;
pub mod error;
pub mod fixtures;
pub mod fractional;
pub mod gen;
pub mod graph;
pub mod io;
pub mod lp;
pub mod m_stabilizer;
pub mod oracle;
pub mod par;
pub mod rational;
pub mod stabilizers;
pub mod walk;
pub mod walk_dp;

pub use error::{Error, Result};
pub use fractional::{BasicFractionalMatching, FractionalVertexCover, OddCycle};
pub use graph::{EdgeId, Matching, VertexId, WeightedGraph};
pub use rational::Rational;
