//! Exact q-expansions of modular forms and the solutions of the second-order
//! modular differential equation
//!
//! `f'' − ((k+1)/6)·E2·f' + (k(k+1)/12)·E2'·f = 0`, with `' = q·d/dq`.

pub mod analysis;
pub mod error;
pub mod forms;
pub mod operators;
pub mod qseries;
pub mod solutions;

pub use error::{Error, Result};
pub use qseries::{parse_rational, Exponent, QSeries, Weight};
