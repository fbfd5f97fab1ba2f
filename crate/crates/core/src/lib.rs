pub mod arith;
pub mod cli;
pub mod forms;
pub mod genus;
pub mod identities;
pub mod prover;
pub mod series;
pub mod theta;
