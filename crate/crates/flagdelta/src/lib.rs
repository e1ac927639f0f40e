//! Exact flag integrals `S(W; F)` and local δ-invariant lower bounds for
//! divisors on Fano threefolds, computed through chambered Zariski
//! decompositions on a surface in the threefold.

pub mod bipoly;
pub mod chamber;
pub mod config;
pub mod delta;
pub mod error;
pub mod flag;
pub mod ratfun;
pub mod svalues;
pub mod sweep;
pub mod threefold;

pub use bipoly::{Affine2, BiPoly, Point2, Polygon};
pub use chamber::{chambered_zariski, pseff_threshold_2d, Chamber, ChamberedZariski, ThresholdPiece};
pub use error::FlagError;
pub use flag::{Component, FlagPiece, FlagSurface, PltBlowup, PointData, Restriction};
pub use ratfun::{parse_poly, parse_ratfun, RatFun};
pub use threefold::{s_threefold, threefold_path, DivisorPath1D, NamedDivisor, PathPiece, ThreefoldModel};
pub use svalues::{s_w_curve, s_w_exceptional, s_w_point, s_w_point_on_exceptional, CurveValue, PointValue};
pub use sweep::{sweep_integral, Integrand};
pub use config::{load_case, load_named_case, Case, FlagCase, QuotientCase};
pub use delta::{delta_bound, prop52_quotient_bound, run_flag_case, DeltaReport, FiberType, QuotientReport};
