//! Numerical currents attached to `ω = f⁻¹ df`: principal values and
//! residue pairings by quadrature in Hopf coordinates, followed by an
//! `ε → 0` extrapolation with convergence diagnostics.
//!
//! Orientation is that of `dx1 ∧ dy1 ∧ dx2 ∧ dy2`, spheres carry the
//! outward normal, and circles in one variable run counterclockwise.

pub mod chart;
pub mod estimate;
pub mod forms;
pub mod one_dim;
pub mod pairing;
pub mod quadrature;
pub mod testform;

pub use chart::{constants, orientation_sign, ChartConstants};
pub use estimate::{extrapolate, CurrentEstimate, EpsilonSchedule};
pub use one_dim::{
    pv_1d, res_limit_1d, residue_1d, universal_constant, Laurent1D, TestFunction1D, DEFAULT_N_THETA,
};
pub use pairing::{pv_pair, residue_at, residue_pair, Domain, EtaMode, PairingOptions};
pub use quadrature::{build_quadrature, QuadratureRule};
pub use testform::{bump, Coefficient, TestForm2, TestForm3};
