//! Exact intersection theory and systolic invariants for rational and ruled
//! surface lattices.
//!
//! The crate computes, over exact rationals:
//!
//! * intersection pairings, anticanonical degrees and positivity screens on
//!   the divisor lattices of the plane, Hirzebruch surfaces and ruled
//!   surfaces, with any number of very general blow-ups ([`lattice`]);
//! * finite effective-curve lists — coarse screens, certified extremal-ray
//!   generators and a brute-force (−1)-class enumerator ([`curves`]);
//! * the holomorphic 2-systole over a list and the scale-invariant
//!   functional `J(ω) = sys(ω) · Ŝ(ω)`, in units of 4π ([`systole`]);
//! * closed-form suprema of the functional for every family, with exact
//!   witnesses or limit directions ([`closed_forms`]);
//! * independent numerical maximization, sampling oracles and boundary
//!   scans that reproduce the closed forms without consulting them
//!   ([`optimizer`]);
//! * a verification suite wiring all of the above into named pass/fail
//!   checks ([`verify`]).
//!
//! Values like `20π/3` are carried as the exact rational `5/3` in units of
//! 4π; floats appear only when rendering. The `systolic` CLI in this
//! workspace fronts the same functionality.
//!
//! The `book/` directory of the repository is a narrative guide whose code
//! snippets compile and run as doc-tests of this crate (see [`book`]).

pub mod closed_forms;
pub mod curves;
pub mod lattice;
pub mod optimizer;
pub mod rat;
pub mod systole;
pub mod verify;

pub mod book;

pub use closed_forms::{MassShiftResult, SupRecord, Witness, WitnessItem};
pub use curves::{coarse_curves, minus_one_curves, mori_generators, CurveClass, CurveList, MoriGenerators, Provenance};
pub use lattice::{
    build_model, build_model_capped, DivisorClass, KahlerFailure, KahlerVerdict, LatticeError,
    ModelId, SurfaceFamily, SurfaceModel, DEFAULT_BLOWUP_CAP,
};
pub use optimizer::{
    boundary_scan, grid_maximize, massshift_oracle, Chart, OptimizationReport, ParamDomain,
};
pub use rat::{parse_rat, rat, render, rint, Rat, Sign};
pub use systole::{
    hol_systole, j_functional, product_example, scale_check, JValue, SystoleCertificate,
    SystoleError,
};
pub use verify::{Check, CheckStatus, SuiteConfig, VerificationSuite};
