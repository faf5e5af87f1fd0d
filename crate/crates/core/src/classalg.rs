//! Exact class-algebra arithmetic: cyclotomic numbers, character tables,
//! class multiplication constants, permutation characters, coset graphs
//! with their component lower bound, and the recorded large-group
//! constants with their consistency checks.

pub mod cyclotomic;
pub mod monster;
pub mod ops;
pub mod table;

pub use cyclotomic::Cyc;
pub use table::CharacterTable;
