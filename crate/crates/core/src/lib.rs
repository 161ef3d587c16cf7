//! Exact verification of spherical few-distance designs.

#![allow(clippy::needless_range_loop, clippy::result_large_err)]

pub mod catalog;
pub mod code;
pub mod codefile;
pub mod design;
pub mod field;
pub mod linalg;
pub mod literal;
pub mod lp;
pub mod orthopoly;
pub mod poly;
pub mod rationality;
pub mod report;
pub mod roots;
pub mod scheme;
