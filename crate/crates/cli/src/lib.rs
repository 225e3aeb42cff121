//! Library half of the `oscint` binary: curve file schema, report emission
//! and the order-preserving parallel map. The binary in `main.rs` wires
//! these to the subcommands.

pub mod config;
pub mod curvefile;
pub mod par;
pub mod report;
