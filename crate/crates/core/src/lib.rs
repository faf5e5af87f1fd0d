//! Engel graphs, commuting graphs and prime graphs of small finite groups.
//!
//! The library enumerates permutation groups, evaluates iterated commutator
//! (Engel) words, decides strong connectivity of the directed Engel graph
//! both by search and through structural criteria built on prime-graph and
//! commuting-graph components, and carries an exact cyclotomic/character
//! toolkit for class-constant computations.

pub mod classalg;
pub mod connectivity;
pub mod digraph;
pub mod engel;
pub mod field;
pub mod group;
pub mod matgrp;
pub mod perm;
