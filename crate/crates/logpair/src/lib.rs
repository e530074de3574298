//! Exact-arithmetic invariants of two-dimensional log pairs and cone
//! singularities.
//!
//! The crate computes, over arbitrary-precision rationals with no
//! floating-point anywhere:
//!
//! * classification and K-(semi)stability of marked spheres
//!   ([`pairs`]);
//! * orbifold cones over marked spheres, their slopes, singularity classes,
//!   normalized volumes, quotients of weighted plane germs, and
//!   destabilizing degenerations ([`cones`]);
//! * local orbifold Euler numbers of arrangement germs and cone vertices by
//!   three mutually cross-checking routes ([`euler`]);
//! * log Chern numbers of log-smooth surface pairs and Miyaoka-Yau-type
//!   audits ([`chern`]);
//! * an exhaustive grid scan verifying that a klt arrangement germ's Euler
//!   number is exactly a quarter of its normalized volume, and that the
//!   Euler number of a non-klt germ vanishes ([`scan`]).
//!
//! The scan fans out over a rayon pool when the `parallel` feature
//! (default) is enabled and falls back to a single-threaded walk otherwise;
//! either way the report is deterministic.

pub mod chern;
pub mod cones;
pub mod error;
pub mod euler;
pub mod pairs;
pub mod rat;
pub mod scan;

pub use chern::{
    bogomolov_discriminant, extension_sheaf_invariants, log_chern, my_cy_check, my_fano_check,
    BoundaryComponent, CyAudit, ExtensionSheafInvariants, LogChernNumbers, MyAudit,
    SurfaceChernData,
};
pub use cones::{
    destabilizing_degeneration, normalized_volume, ConeClass, DegenerationData, LineArrangement,
    PolarizedCone, WeightedPlanePair,
};
pub use error::{Error, Result};
pub use euler::{
    euler_line_arrangement, euler_orbifold_cone, euler_scaling, euler_via_langer, langer_local_c2,
    sbar, CaseTag, EulerResult, Method, Rank2BundleData,
};
pub use pairs::{MarkedPoint, MarkedSphere, PairClass, Positivity, Singularity};
pub use rat::{parse_rat, rat, rat_int, render_rat, Rat};
pub use scan::{
    scan_conjecture, scan_sequential, weight_alphabet, ScanConfig, ScanReport, Violation,
    KLT_IDENTITY, NON_KLT_IDENTITY,
};
