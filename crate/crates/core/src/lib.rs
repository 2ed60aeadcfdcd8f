//! Exact-arithmetic workbench for tridiagonal systems of q-Racah type: exact
//! rational linear algebra, TD system construction and verification, the
//! derived operator family, a declarative identity suite, and the
//! q-tetrahedron module assemblies.

pub mod error;
pub mod fixture;
pub mod matrix;
pub mod operators;
pub mod params;
pub mod qseries;
pub mod qtet;
pub mod report;
pub mod scalar;
pub mod subspace;
pub mod suite;
pub mod tdsystem;

pub use error::Error;
pub use fixture::{load_fixture, verification_report, Fixture};
pub use matrix::Matrix;
pub use operators::{vee, w_polynomial_forms, OperatorSet};
pub use params::{random_valid_params, QRacahParams};
pub use qtet::{
    assemble_from_assumption, check_boxq, check_equitable_triple, check_segregated, check_uqsl2,
    module_one, module_two, BoxqModule,
};
pub use report::{CheckEntry, CheckReport, Status};
pub use scalar::Scalar;
pub use subspace::Subspace;
pub use suite::{catalog, run_suite, tridiagonal_actors, SuiteOptions, DEFAULT_SEED};
pub use tdsystem::{Flavor, SplitDecomposition, TdSystem};
