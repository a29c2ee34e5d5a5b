pub mod cli;
pub mod complexes;
pub mod data;
pub mod hyperbolic;
pub mod links;
pub mod presentations;
pub mod prosequences;
