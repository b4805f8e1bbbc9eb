pub mod groupoid;
pub mod scalar;
pub mod simplicial;
pub mod crossed;
pub mod pi_functor;
pub mod tensor;
pub mod homotopy;
pub mod linalg;
pub mod chains;
pub mod normalization;
pub mod counterexample;
pub mod cli;
