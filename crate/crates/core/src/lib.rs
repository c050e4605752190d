//! Tail copulas and the multivariate maximal tail concordance measure.
//!
//! For a `d`-dimensional copula `C` with lower tail copula `Λ(x; C)`, the
//! maximal tail concordance measure is
//!
//! ```text
//! λ*(C) = max { Λ(b; C) : b ∈ (0, ∞)^d, b_1 · … · b_d = 1 }
//! ```
//!
//! and the maximizer `b*` points in the direction of the strongest joint tail
//! mass. This crate provides
//!
//! - [`stdf`]: parametric stable tail dependence functions `ℓ`;
//! - [`tail_copula`]: tail copulas of survival extreme value, Archimax,
//!   Archimedean and nested Archimedean copulas;
//! - [`nac`]: nested Archimedean trees with their recursive and closed-form
//!   maximizers;
//! - [`mtcm`]: closed forms, a multi-start simplex search over the unit-product
//!   set and a brute-force grid oracle;
//! - [`sealevel`]: the five fitted trivariate Tawn sea-level models;
//! - [`schema`]: the JSON model/tree/config formats shared with the CLI.

pub mod cli;
pub mod error;
pub mod mtcm;
pub mod nac;
pub mod numeric;
pub mod sealevel;
pub mod schema;
pub mod stdf;
pub mod tail_copula;

pub use error::{Error, Result};
pub use mtcm::{
    mtcm_archimax, mtcm_closed_mo, mtcm_dispatch, mtcm_optimize, mtcm_oracle, BudgetSet,
    Diagnostics, Method, MtcmResult, OptimizerConfig, OracleConfig,
};
pub use nac::{NacTree, VertexId};
pub use stdf::StdfModel;
pub use tail_copula::{rv_index, GeneratorTransform, TailCopulaModel};
