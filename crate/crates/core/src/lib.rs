//! Approximation algorithms for the densest k-subhypergraph problem and the
//! set union knapsack problem, with brute-force oracles, seeded instance
//! generators and a verification/benchmark harness.
//!
//! The densest k-subhypergraph solver ([`dksh::approx_dksh`]) recurses on edge
//! size through link multi-hypergraphs down to a pluggable graph (edge size 2)
//! oracle. The knapsack solver ([`sukp::approx_sukp`]) prunes, rounds profits,
//! buckets costs and splits the instance into single-profit, few-bucket classes
//! that are solved by knapsack DP, small-set enumeration or a blow-up into a
//! cardinality problem handed to the densest-subhypergraph solver.

pub mod error;
pub mod dksh;
pub mod exponents;
pub mod gen;
pub mod harness;
pub mod hypergraph;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod rational;
pub mod sukp;

pub use error::{Error, Result};
pub use hypergraph::{link_multihypergraph, Hypergraph, WeightedHypergraph};
pub use instance::{best_of, Solution, SukpInstance};
pub use rational::Rational;
