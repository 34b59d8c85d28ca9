//! Exact evaluation of tautological integrals over curvilinear Hilbert
//! schemes of points by iterated residues.

pub mod classes;
pub mod dual;
pub mod engine;
pub mod error;
pub mod poly;
pub mod rational;
pub mod residue;
pub mod symbol;
pub mod symmetric;

pub use error::{Error, Result};
pub use poly::{elementary_symmetric, GradedDegree, Monomial, MultiPoly};
pub use rational::ExactRational;
pub use residue::{iterated_residue, residue_one_var, LinearForm, ResidueForm};
pub use symbol::{Alphabet, SymbolId};
pub use symmetric::{expand_chern_f, reduce_theta_symmetric};
pub use classes::{ChernMonomial, IntegrandSpec};
pub use engine::{
    evaluate_numeric, k1_oracle, residue_report, tautological_integral, tautological_integral_direct,
    IntersectionTable, ResidueReport, UniversalPolynomial,
};
