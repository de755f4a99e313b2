pub mod catalog;
pub mod exact;
pub mod maximality;
pub mod polyfield;
pub mod repanalysis;
pub mod subalgebra;
pub mod symtensor;
