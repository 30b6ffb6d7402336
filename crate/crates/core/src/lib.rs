//! Exact invariants of the join `M = M³_g(n) ⋆ S³_w` of a circle bundle over
//! a closed surface with a weighted 3-sphere: fundamental group, integral,
//! rational and Q/Z (co)homology, Euler classes and torsion linking forms.
//!
//! Every (co)homology group is computed twice, once by assembling a
//! Mayer–Vietoris sequence for `M = B1 ∪ B2` with Smith normal form over
//! arbitrary-precision integers and once from closed formulas in
//! `g`, `d = gcd(n, l2)` and `l2`, and the two are compared.
//!
//! ```
//! use join_invariants::{cross_validate, validate};
//!
//! let p = validate(1, 6, 1, 3, 4).unwrap();
//! let report = cross_validate(&p).unwrap();
//! assert_eq!(report.h_integral["h2"].to_string(), "Z/2 + Z");
//! ```

pub mod blocks;
pub mod error;
pub mod fgab;
pub mod linking;
pub mod mvengine;
pub mod presentations;
pub mod report;
pub mod selftest;
pub mod zmatrix;

pub use blocks::{validate, CohomologyProfile, JoinParams, Profile, Side};
pub use error::{Error, Result};
pub use fgab::{FgAbGroup, QzGroup};
pub use linking::{fingerprint, Fingerprint, LinkingForm, QzResidue};
pub use mvengine::{
    build_report, cross_validate, cross_validate_with, integral_cohomology, integral_homology,
    qz_cohomology, rational_betti, ClosedForm,
};
pub use report::{Check, InvariantReport};
pub use selftest::{run_selftest, Fault, TupleGrid};
pub use zmatrix::{snf, IntMatrix, PresentedHom, SnfResult};
