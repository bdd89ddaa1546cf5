//! Exact arithmetic for the linearized log jet complex over `F_p`: divided
//! binomials, the generator-and-relation presentation of the complex, and
//! the contracting homotopy.

pub mod combinat;
pub mod complex;
pub mod error;
pub mod homotopy;
pub mod indexing;
pub mod linalg_fp;

pub use combinat::{Coeff, Params};
pub use complex::{JetComplex, QuotientVerdict, RelationSpec};
pub use error::{Error, Result};
pub use homotopy::{CheckResult, EtaPolynomial};
pub use indexing::{DeltaSymbol, MultiIndex};
pub use linalg_fp::{Chain, ReducedSystem};
