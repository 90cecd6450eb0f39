//! Large-n expansion of log D_n and its building blocks.

pub mod coefficients;
pub mod propositions;
pub mod singularity;
pub mod szego;
pub mod thinning;

pub use coefficients::{
    error_scale, expansion_coefficients, gue_exact_log, gue_expansion, predict_log_hankel,
    Expansion, ExpansionCoefficients, Prediction, Term,
};
pub use propositions::{
    composed_expansion, krasovsky_expansion, krasovsky_log_ratio, ratio_beta, ratio_beta_expansion,
    ratio_field, ratio_field_expansion, ratio_potential, ratio_potential_expansion,
};
pub use singularity::{Singularity, SingularityConfig};
pub use szego::{joukowski_inverse, log_d_infinity, szego_functions, SzegoValues};
pub use thinning::{
    correlation_log, gap_probability_log, thinning_config, thinning_to_betas, GapPrediction,
    ThinningBetas, ThinningSpec,
};
