//! Exact arithmetic in F_q, in k = F_q(a), and in the purely inseparable
//! towers k(a^(1/p^m)).

pub mod fq;
mod param;
pub mod tower;
pub mod upoly;

pub use fq::FiniteField;
pub use param::ParamRing;
pub use tower::{FieldElem, FieldSpec, FQ_GENERATOR};

/// Wrap a printed coefficient in parentheses when it is not a single factor.
pub(crate) fn as_factor(s: String) -> String {
    if s.contains(' ') || s.contains('/') {
        format!("({s})")
    } else {
        s
    }
}
