//! Regular polyhedra with H3 automorphism group: string C-group
//! enumeration, coset-built abstract polyhedra, and symmetric geometric
//! realizations over the field Q(√5).

pub mod cgroups;
pub mod error;
pub mod exactnum;
pub mod exec;
pub mod geomesh;
pub mod groups;
pub mod h3;
pub mod polytope;
pub mod wythoff;

pub use error::{Error, Result};
pub use exactnum::{Mat3, QSqrt5, Vec3};
pub use exec::Execution;
