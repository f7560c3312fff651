//! Exact adjoint Chevalley group of type G2 over local rings with 1/2 and 1/3,
//! plus a replay of the computational steps of a rigidity argument for its
//! isomorphisms as a verification suite.

pub mod chevalley;
pub mod cli;
pub mod group;
pub mod linalg;
pub mod matrix;
pub mod replay;
pub mod report;
pub mod ring;
pub mod rootsys;
