pub mod algebra;
pub mod arith;
pub mod catalog;
pub mod degeneration;
pub mod derivations;
pub mod exec;
pub mod linalg;
