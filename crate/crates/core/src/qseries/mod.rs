//! Exact q-expansions of Siegel units and their certified numeric shadows.
//!
//! Coefficients live in Q(zeta_L) with L = 2n^2 (`cyc`), series exponents in
//! units of 1/(12 n^2) (`series`). `siegel` builds the normalized expansions,
//! orbit units, the full-product identity check, and formal logarithms;
//! `numeric` evaluates everything at sample points with interval certificates.

pub mod cyc;
pub mod numeric;
pub mod series;
pub mod siegel;

pub use cyc::{cyclotomic_polynomial, CycField, CycNumber};
pub use numeric::{
    algebraic_height, embed, lambda_bound_certified, max_embedding_abs, numeric_eval,
    phi_bound_certified, NumericCheck, QSample,
};
pub use series::QExpansion;
pub use siegel::{
    ell_units, factor_list, formal_log, gamma_constant, orbit_log_expansion, point_expansion,
    siegel_expansion, unit_orbit_expansion, verify_full_product, FullProductCheck, LogExpansion,
    SiegelCoefficients, UnitExpansion,
};
