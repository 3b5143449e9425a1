//! Exact Choquet integration against normalized capacities, ideals on the
//! positive integers, and finite-scale representation of ideal-invariant
//! capacities as Choquet averages of `{0,1}`-valued measures.

pub mod capacity;
pub mod choquet;
pub mod error;
pub mod ideals;
pub mod rational;
pub mod representation;
pub mod riesz;
pub mod set_capacity;
pub mod vector;
pub mod wire;

pub use error::{Error, Result};
pub use rational::Rational;
