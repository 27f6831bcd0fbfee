//! Exact symbolic engine for boundary terms of the noncommutative residue of
//! Dirac operators with torsion, plus heat-coefficient combinatorics for a
//! nonminimal Laplace-type operator.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod exact_scalars;
pub mod multilinear;
pub mod symbol_engine;
pub mod boundary_engine;
pub mod heat_nonminimal;
