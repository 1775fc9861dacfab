pub mod cli;
pub mod error;
pub mod families;
pub mod json;
pub mod par;
pub mod plot;
pub mod poly;
pub mod rational;
pub mod regions;
pub mod sprcheck;
pub mod synth;

pub use error::{Result, SprError};
pub use poly::Polynomial;
pub use rational::Rational;
