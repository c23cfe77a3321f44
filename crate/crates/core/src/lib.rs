pub mod arith;
pub mod cli;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod invariants;
pub mod oracle;
pub mod packer;
pub mod reference;
pub mod table;
