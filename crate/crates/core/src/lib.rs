//! Exact p-polynomial algebra over F_q(a) and its purely inseparable towers,
//! with certificates for woundness, cocycle group laws and homomorphisms
//! between unipotent groups presented as p-polynomial hypersurfaces.

pub mod corpus;
pub mod error;
pub mod exec;
pub mod field;
pub mod groups;
pub mod homs;
pub mod linalg;
pub mod poly;
pub mod ppoly;
pub mod report;
pub mod session;

pub use error::{Error, Result};
pub use exec::Execution;
pub use field::{FieldElem, FieldSpec, ParamRing};
pub use poly::{Monomial, Poly, PolyRing, RelationSet};
pub use ppoly::PPoly;
