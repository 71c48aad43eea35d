//! Exact computations on the flow polytopes `F_{G(λ,n)}(a)` of graphs built
//! from Young diagrams: volumes, lattice points, vertices and face lattices,
//! each by a closed form and by a general method, so the two can be checked
//! against each other.

pub mod cli;
pub mod closed_forms;
pub mod ct_identity;
pub mod error;
pub mod exact_math;
pub mod face_lattice;
pub mod flow_core;
pub mod kostant;
pub mod lidskii;
pub mod partition_graph;

pub use error::{Error, Result};
pub use partition_graph::{build_graph, FlowGraph, NetflowVector, Partition};
