//! Compiler from Max-2-Sat to depth-restricted rectilinear Steiner
//! arborescence instances, with gadget verification and realization
//! machinery.

pub mod bands;
pub mod compile;
pub mod dimacs;
pub mod gadgets;
pub mod layout;
pub mod maxsat;
pub mod params;
pub mod pattern;
pub mod realize;
pub mod template;

pub use bands::length_bands;
pub use compile::{compile_reduction, CompileError, GridCell, PSrc, TileGrid};
pub use dimacs::{parse_dimacs, write_dimacs, DimacsError, Lit, Max2SatInstance};
pub use gadgets::{gadget_table, table_tsv, tile_min, verify_gadget, GadgetCase, GadgetReport};
pub use maxsat::{max2sat_bruteforce, MaxSatError};
pub use params::{grid_side, ParamError, Parameters, ALPHA_MIN};
pub use realize::{build_realization, Realization, RealizeError};
pub use template::TileSpec;
