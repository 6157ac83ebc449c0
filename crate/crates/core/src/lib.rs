pub mod algebra;
pub mod error;
pub mod linalg;
pub mod scalar;
pub mod hom;
pub mod fm;
pub mod sample;
pub mod search;
pub mod checks;
pub mod parser;
