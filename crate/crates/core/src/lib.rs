//! Mechanical replay of the computational skeleton behind the nonexistence of
//! nonzero semistable abelian varieties over `ℤ[1/6]` and `ℤ[1/10]`.

pub mod cft_data;
pub mod dataset;
pub mod factored_real;
pub mod galois_module;
pub mod groups;
pub mod linalg;
pub mod odlyzko;
pub mod ramification;
pub mod replay;
