//! Exact arithmetic for twisted gamma factors of simple supercuspidal
//! representations of `GL(n)` over quadratic extensions of equal-characteristic
//! local fields.
//!
//! Local fields are modeled as truncated Laurent series over finite fields, so
//! every quantity in the library (character values, zeta integrals, gamma
//! factors) is an exact element of a cyclotomic ring extended by symbols for
//! `q^(1/2)` and `q^(-s)`. Equality of gamma factors means equality of
//! canonical forms; no floating point is involved anywhere.
//!
//! Module map:
//! - [`ff`]: residue-field arithmetic, discrete-log tables, norm/trace/Frobenius
//! - [`cyclo`]: the coefficient ring of roots of unity with `Y = q^(1/2)`,
//!   `X = q^(-s)`, and monomial gamma factors
//! - [`lf`]: truncated local fields, the additive character, and multiplicative
//!   quasi-characters of depth zero and one
//! - [`chargrp`]: the finite quotient `E^x / F^x (1+P_E)` and its dual
//! - [`ssc`]: simple supercuspidal parameter triples, distinction predicates,
//!   and closed-form twisted gamma factors
//! - [`rso`]: the brute-force `GL(2)` Rankin-Selberg integral oracle
//! - [`verify`]: exhaustive verification suites cross-checking everything above

pub mod cyclo;
pub mod ff;
pub mod lf;

pub mod chargrp;
pub mod rso;
pub mod ssc;
pub mod verify;

pub use cyclo::{CycloVal, GammaMonomial};
pub use ff::{FieldTable, FqElem};
pub use lf::{AddCharPsi, ExtKind, LocalFieldCfg, MultChar, TruncSeries};
pub use ssc::SSCTriple;
