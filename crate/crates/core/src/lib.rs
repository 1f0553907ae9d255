pub mod biortho;
pub mod cli;
pub mod dense;
pub mod diagnostics;
pub mod error;
pub mod lanczos;
pub mod linalg;
pub mod mtx;
pub mod projectors;
pub mod rbiortho;
pub mod rng;
pub mod sketching;
pub mod testmatrices;
