#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod configuration;
pub mod eigensolver;
pub mod error;
pub mod groebner;
pub mod lattice;
pub mod matrix;
pub mod numbers;
pub mod point;
pub mod poly;
pub mod reconstruction;
pub mod residue;
pub mod roots;
pub mod solver;
pub mod tensor;
pub mod upoly;

pub use error::{Error, Result};
