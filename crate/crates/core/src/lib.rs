pub mod axioms;
pub mod braid;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod models;
pub mod ring;
pub mod selftest;
pub mod tensor;
pub mod tlbracket;
pub mod uqsl2;
