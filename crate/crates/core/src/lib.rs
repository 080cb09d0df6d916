pub mod cli;
pub mod liealg;
pub mod linalg;
pub mod modcomp;
pub mod rep;
pub mod scalar;
pub mod superpoly;
pub mod theorems;
