pub mod channel;
pub mod encoding;
pub mod modelcheck;
pub mod mtl;
pub mod pta;
pub mod rational;
pub mod reduction;
pub mod syntax;
pub mod time;

pub use rational::Rational;
pub use time::{Event, Symbol, TimeError, TimedWord};
