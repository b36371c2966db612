//! Numerical toolkit for electrodynamics formulated through a three-component
//! relativistic magnetic potential in Fourier representation.
//!
//! Everything is evaluated pointwise at sampled wavevectors: under the
//! plane-wave ansatz, derivative operators become multiplication by `i·n_a`,
//! so operator identities, eigenspace decompositions, filter equations,
//! transformation laws and wave-mode claims all reduce to checkable complex
//! arithmetic. The crate is organized along those lines:
//!
//! * [`tensor`] — four-vectors, the ict-convention metric, complex-orthogonal
//!   maps, the plane-wave derivative rule, deterministic wavevector sampling.
//! * [`spaces`] — the sixteen-dimensional operator column space, its five
//!   invariant families, the contraction matrix and its eigenstructure.
//! * [`field`] — field tensors from potentials, gauge shifts, the potential
//!   transformation law, E/B extraction, the Levi-Civita dual.
//! * [`filter`] — the field equations as subspace-rejection filters, plus
//!   admissibility classification of arbitrary rank-2 amplitudes.
//! * [`massive`] — the symmetric λ = 1 family as a massive vector field:
//!   divergence-free θ, tensor G, conserved current, Klein-Gordon shell,
//!   force balance, covariant representation and transformation of C.
//! * [`wave`] — plane-wave mode classification and the exact pseudo-spectral
//!   evolver for the vacuum wave equation on a periodic grid.
//!
//! All types are immutable values and all operations are pure functions; the
//! only stateful object is a simulation in progress, which is single-owner.

// index loops mirror the tensor formulas; `!(x > 0)` deliberately catches NaN
#![allow(clippy::needless_range_loop)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod field;
pub mod filter;
pub mod massive;
pub mod spaces;
pub mod tensor;
pub mod wave;

pub use error::{Error, Result};
pub use field::{
    dual_field, dual_from_skew_family, eb_extract, field_from_four_potential, field_from_rmp,
    gauge_shift_four, gauge_shift_spatial, levi_civita, rmp_reduce, temporal_gauge, transform_rmp,
    EbFields, FieldTensor, FourPotential, Rmp,
};
pub use filter::{
    classify_admissible, em_current, filter_residuals, residual_augment,
    residual_augment_second_difference, residual_bianchi, residual_divergence, residual_symmetric,
    Admissibility, FilterResiduals, ADMISSIBLE_TOL,
};
pub use massive::{
    current_from_g, d_from_c, force_balance_residual, g_from_theta, kg_residual, phi_from_d,
    residual_current, solve_balance_scale, theta_from_c, transform_c, transform_c_strict,
    BalanceSolution, CPotential, CTransformation, CovariantPhi, CurrentFlavor, FourCurrent,
    GTensor, ThetaField, TEMPLATE_MISMATCH_TOL,
};
pub use spaces::{
    all_basis, assemble_m16, assemble_m16_trivial, basis, basis_element, eigendecompose,
    gram_orthogonality, p_columns, project, q_generator, r_operator, ColumnVec16, EigenCluster,
    EigenReport, GramReport, SubspaceId, CLUSTER_TOL, GRAM_CONDITION_LIMIT, M16,
};
pub use tensor::{
    c64, dot, flatten, fourier_diff, fourier_integrate, random_regular_wavevector,
    random_regular_wavevector_complex, unflatten, FourVector, LorentzMap, WaveVector,
    WaveVectorSampler, C64, DEFAULT_TOL, IM, REGULARITY_EPS,
};
pub use wave::{
    classify_mode, evolve, j4_diagnostic, measure_diagnostics, vacuum_residual, DiagnosticsReport,
    Evolution, GridField, ModeClass, ModeDiagnostics, ModeInit, ModeKind, ModeRecord, SimConfig,
    SpectralField, WaveModeKind, WaveSnapshot, MODE_TOL,
};
