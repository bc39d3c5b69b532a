//! Reference implementations written straight from the definitions, with
//! no attention to speed, plus generators for test corpora.

pub mod corpus;
pub mod feasibility;
pub mod insertion;
pub mod mtl;
pub mod random;
