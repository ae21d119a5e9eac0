#![cfg_attr(not(test), no_std)]
extern crate alloc;

pub mod arith;
pub mod coeffs;
pub mod analysis;
pub mod operator;
