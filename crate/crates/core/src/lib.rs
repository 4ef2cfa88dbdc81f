//! Exact linear algebra over small finite fields, subspace profiles and
//! defect dimensions of partial linear maps, closed-form subspace counts as
//! polynomials in `q`, and a brute-force enumerator that checks those counts.
//!
//! Module map:
//! - [`ffield`]: finite fields `F_{p^e}` with integer-coded elements
//! - [`fqlinalg`]: matrices and canonical (RREF) subspaces of `F_q^n`
//! - [`fqpoly`]: polynomials over `F_q`, companion matrices, characteristic
//!   polynomials, Smith normal form of the pencil `xI - A`
//! - [`profiles`]: `T`-profiles, defect chains, simplicity, duality
//! - [`counting`]: partitions, `Z[q]` arithmetic and the counting formulas
//! - [`oracle`]: brute-force enumeration and verification reports

pub mod counting;
pub mod error;
pub mod ffield;
pub mod fqlinalg;
pub mod fqpoly;
pub mod oracle;
pub mod profiles;

pub use counting::{Partition, QPolynomial, SignedQPolynomial};
pub use error::{Error, Result};
pub use ffield::{FieldCtx, FieldElem};
pub use fqlinalg::{MatrixFq, Subspace};
pub use fqpoly::{PolyFq, PolyMatrix};
pub use profiles::PartialMap;
