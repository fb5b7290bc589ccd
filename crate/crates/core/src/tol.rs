//! Central numerical tolerances.
//!
//! Every threshold the library applies by default lives here, as an f64,
//! converted to the working scalar at the call site. Functions that take
//! an explicit `tol` parameter use these only as documented defaults.

/// Relative singular-value cutoff for rank decisions: a singular value
/// counts iff `sigma > RANK_REL * sigma_max`.
pub const RANK_REL: f64 = 1e-9;

/// Allowed deviation of a subspace basis Gram matrix from the identity.
pub const ORTHONORMALITY: f64 = 1e-10;

/// Default projection-defect tolerance for span membership checks.
pub const SPAN_MEMBERSHIP: f64 = 1e-8;

/// Relative anti-Hermitian defect that routes expm through the
/// eigendecomposition fast path.
pub const EXPM_ANTI_HERMITIAN: f64 = 1e-12;

/// Validation tolerance for control-system generators (anti-Hermitian and
/// traceless defects) and for geodesic data membership.
pub const GENERATOR: f64 = 1e-10;

/// Unitarity / special-unitarity tolerance on decomposition inputs.
pub const UNITARY_INPUT: f64 = 1e-10;

/// Angle tie-break threshold in the closed-form SU(2) decomposition.
pub const SU2_TIE_BREAK: f64 = 1e-14;

/// Residual bound for the closed-form SU(2) decomposition.
pub const KAK_SU2_RESIDUAL: f64 = 1e-10;

/// Residual bound for the SU(n) decomposition and its factor checks.
pub const KAK_SUN_RESIDUAL: f64 = 1e-8;

/// Eigenvalue separation below which the SU(n) decomposition reports a
/// degeneracy after its clustering retries are exhausted.
pub const KAK_DEGENERACY: f64 = 1e-12;

/// Default residual tolerance for Cartan pair verification.
pub const CARTAN_VERIFY: f64 = 1e-12;

/// Residual bound for rotation-times-positive factorizations of group
/// elements, and for their factor membership checks.
pub const KP_RESIDUAL: f64 = 1e-8;

/// Componentwise deduplication tolerance for Weyl orbits.
pub const WEYL_DEDUP: f64 = 1e-12;

/// Slack in majorization partial-sum comparisons.
pub const MAJORIZATION: f64 = 1e-9;

/// Largest `||R - I||_F` the matrix-log series accepts for a trajectory
/// step ratio R; larger steps indicate too coarse a grid.
pub const LOG_STEP_MAX: f64 = 0.5;

/// Velocity tolerance for horizontality checks on discrete trajectories.
pub const HORIZONTAL: f64 = 1e-3;

/// Group-membership tolerance for trajectory points.
pub const TRAJECTORY_MEMBER: f64 = 1e-8;
