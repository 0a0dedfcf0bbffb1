//! Interval lines in 2-coloured Hales-Jewett cubes `[3]^n`.

pub mod bounds;
pub mod certificate;
pub mod cli;
pub mod cnf;
pub mod cube;
pub mod error;
pub mod gadgets;
pub mod pattern;
pub mod report;
pub mod search;
