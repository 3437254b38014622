//! Structured LDPC codes whose parity-check matrices are arrays of
//! permutation matrices drawn from a Galois field of permutation matrices.
//!
//! The crate is `no_std` with `alloc`. It covers field arithmetic, the
//! Latin-square permutation field, base-matrix expansion, Tanner-graph
//! analysis (girth, cycles, trapping-set patterns), progressive construction
//! under a forbidden-structure condition, and iterative decoders.

#![no_std]

extern crate alloc;

pub mod builder;
pub mod codebuilder;
pub mod decode;
pub mod galois;
pub mod graph;
pub mod permfield;
