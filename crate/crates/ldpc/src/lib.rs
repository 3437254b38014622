//! File formats, channel simulation and the command line around `ldpc-core`.

pub mod alist;
pub mod analyze;
pub mod buildlog;
pub mod catalog;
pub mod channel;
pub mod cli;
pub mod config;
pub mod manifest;
pub mod seeds;
pub mod sim;
pub mod wcsv;
