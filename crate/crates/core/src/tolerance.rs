//! Numeric policy: every tolerance, scale factor, and default parameter
//! used across the crate. Nothing else in the crate hard-codes a tolerance.

/// Geometric sign tests (orientation, in-circle) treat a determinant as
/// zero when its magnitude is below this factor times the local magnitude
/// of the determinant's terms.
pub const SIGN_EPS_SCALE: f64 = 1e-12;

/// Sites closer than this factor times the bounding-box diagonal are
/// snapped together before triangulation.
pub const SNAP_SCALE: f64 = 1e-9;

/// Default relaxation distance for open filled triangles, as a factor of
/// the bounding-box diagonal.
pub const SIGMA_SCALE: f64 = 1e-6;

/// Default bend factor for curvilinear edges. Must stay in [0, 1) so a
/// bent edge cannot leave the face it bends toward.
pub const DEFAULT_BEND: f64 = 0.35;

/// Default weight of the middle control point of a curvilinear edge.
pub const DEFAULT_MID_WEIGHT: f64 = 1.0;

/// Default number of chords when sampling a curve for arc length or for
/// the area of a curvilinear face.
pub const DEFAULT_EDGE_SAMPLES: usize = 64;

/// Default number of equally spaced orientations for mask diameters.
pub const DEFAULT_ORIENTATIONS: usize = 36;

/// Spoke-chain enumeration stops after this many chains and reports
/// truncation.
pub const CHAIN_CAP: usize = 10_000;

/// Components smaller than this fraction of the mask's pixel count are
/// discarded by default.
pub const MIN_PIXELS_FRACTION: f64 = 0.001;

/// Default number of connected components kept when measuring a mask.
pub const DEFAULT_KEEP_COMPONENTS: usize = 1;
