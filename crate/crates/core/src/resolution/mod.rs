//! Minimal free resolutions over finite-dimensional graded algebras,
//! graded Betti tables and the series identities they satisfy.

mod algebra;
mod engine;
mod series;
mod table;

pub use algebra::StructuredAlgebra;
pub use engine::{FreeModule, Generator, Resolution, Stop, DEFAULT_SIZE_LIMIT};
pub use series::{
    betti_table_of_cyclic_quotient, betti_table_of_k, check_hs_poincare_identity,
    check_trampoline_functional_equation, cross_characteristic_check, hilbert_series,
    hs_poincare_residual, koszul_probe, poincare_series, FunctionalEquationReport, KoszulProbe,
    TruncatedBiSeries,
};
pub use table::BettiTable;
