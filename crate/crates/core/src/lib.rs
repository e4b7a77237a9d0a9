//! Finite residuated lattices and bounded hoops as operation tables.

pub mod algebra;
pub mod catalog;
pub mod constructions;
pub mod document;
pub mod enumeration;
pub mod morphisms;
pub mod set;
pub mod structure;
pub mod suite;
pub mod varieties;
