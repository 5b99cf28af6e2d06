//! Exact kernel for the rank-1 interpolating quantum groups U_{h,h'}(sl2, g).
//!
//! The crate provides, bottom up: exact coefficient rings (rationals and
//! cyclotomic fields), sparse Laurent polynomials, truncated formal series in
//! the deformation parameters (h, h'), PBW arithmetic in U(sl2), the
//! interpolating quantum numbers along two independently computed routes, the
//! presentation of the two-parameter algebra through its faithful realization
//! inside U(sl2)[[h, h']], highest-weight modules over it, and the
//! root-of-unity specialization with its dual (divided-weight) action.

pub mod cyclo;
pub mod error;
pub mod laurent;
pub mod laurent_series;
pub mod pbw;
pub mod qnum;
pub mod ring;
pub mod series;

pub use error::{Result, UhhError};
pub mod algebra;
pub mod langlands;
pub mod modules;
pub mod report;
pub mod suites;
