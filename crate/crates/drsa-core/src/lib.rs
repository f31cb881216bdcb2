//! Depth-restricted rectilinear Steiner arborescences.
//!
//! A problem instance places a root at the origin and terminals in the
//! plane, each with a required depth: the number of Steiner points on its
//! root path. A feasible solution is a binary arborescence, embedded
//! rectilinearly, in which every root-terminal path is a shortest path and
//! every terminal sits at exactly its required depth.
//!
//! This crate provides the domain model and verifier, the exact dyadic
//! feasibility test with its merge construction, optimal embedding of a
//! fixed topology, an exact solver for small instances, and a depth-aware
//! dynamic program for minimum tile branchings used by gadget
//! constructions.

pub mod embed;
pub mod enumerate;
pub mod feas;
pub mod fmt;
pub mod geom;
pub mod model;
pub mod oracle;
pub mod solution;
pub mod solve;
pub mod tile;
pub mod topology;

pub use embed::{optimal_embed, EmbedError};
pub use enumerate::{count_topologies, enumerate_topologies};
pub use feas::{build_depth_topology, kraft_check, trivial_solution, FeasError, KraftResult};
pub use geom::{hanan_grid, GeomError, Point};
pub use model::{validate_instance, Condition, Instance, Terminal, ValidationReport};
pub use oracle::{exhaustive_minimum, OracleError};
pub use solution::{verify_solution, EmbeddedSolution, NodeKind, SolNode, SolutionError};
pub use solve::{solve_exact, SolveError, DEFAULT_BUDGET};
pub use tile::{
    solve_tile_branching, BranchNode, BranchTree, BranchingResult, LeafRef, PortRole, Side,
    TileError, TilePort, TileProblem,
};
pub use topology::{TopoNode, Topology};
