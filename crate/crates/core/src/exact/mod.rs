//! Exact arithmetic: scalar fields, sparse elimination and Smith normal form.

pub mod cyclo;
pub mod field;
pub mod linalg;
pub mod snf;
pub mod sparse;

pub use cyclo::{sqrt_in_cyc8, Cyc8};
pub use field::{fmt_q, in_r, q, qr, Field, Fp, FpI, FromQ, GaussQ, Q};
pub use linalg::{Echelon, SVec};
pub use snf::{is_two_power, r_saturated, smith_normal_form, SnfResult};
pub use sparse::{rank_kernel, KernelBasis, Ring, Scalar, SparseMatrix};
