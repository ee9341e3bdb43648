//! Step functions, decreasing rearrangements and the log F-norm.

mod axioms;
mod profile;
mod scaled;
mod step;
mod svd;

pub use axioms::{
    check_axioms, check_pair, random_pair, trial_rng, AxiomProperty, AxiomReport, AxiomViolation, Breach,
    PairInput, PairOutcome, AXIOM_TOL, DECAY_STEPS, MAX_CELLS, MAX_MASS, MAX_MODULUS, SMALL_NORM_BOUND,
    SMALL_SCALAR,
};
pub use profile::{
    log_norm, rearrange, rearrange_matrix, scalar_expansion, step_norm, NormMode, RearrangementProfile,
    Segment,
};
pub use scaled::{
    log_norm_scaled, rearrange_scaled, ScaledCell, ScaledProfile, ScaledSegment, ScaledStepFunction,
};
pub use step::{
    add_same_partition, mul_same_partition, MatrixCell, MatrixStepFunction, SquareMatrix, StepCell,
    StepFunction,
};
pub use svd::singular_values;
