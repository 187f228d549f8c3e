//! Exact arithmetic for Z[ω], Z[ζ₁₂] and Q(√3), plus vectors and matrices over Z[ω].

pub mod cyclo12;
pub mod eisenstein;
pub mod linalg;
pub mod sqrt3;

pub use cyclo12::Cyc;
pub use eisenstein::{eis_divides, eis_gcd, eis_mul, Eis};
pub use linalg::{hermitian_ip, EMatrix, EVec, QEis, ScaledMatrix};
pub use sqrt3::{sqrt3_cmp, SqrtThree};
