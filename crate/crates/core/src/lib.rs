//! Exact computation in the matrix groups behind metabelian Burnside groups.
//!
//! - [`ring`]: sparse Laurent polynomials over `Z` in `x, y, ..` and an
//!   optional `t`, plus cyclotomic integers for root-of-unity evaluation.
//! - [`ideal`]: the augmentation ideal `Σ`, the cyclotomic ideal `I(q)` and
//!   `J(q) = I(q)Σ`; membership returns a witness, a non-membership
//!   certificate, or `Unknown` with the search box that was exhausted.
//! - [`word`]: free-group words, parsing, sampling and derived-series trees.
//! - [`matrix`]: the generator matrices `M_j`, `T_i` and word evaluation.
//! - [`probe`]: claim checks that produce [`probe::ClaimReport`]s.
//! - [`cli`] and [`report`]: the `bf` command line and its JSON output.
//!
//! ```
//! use burnside::ideal::{IdealEngine, IdealSpec, SearchBox};
//! use burnside::ring::LaurentPoly;
//!
//! let spec = IdealSpec::iq(2).unwrap();
//! let p = LaurentPoly::parse("1 - x", 2).unwrap();
//! let v = IdealEngine::new().member(&p, &spec, &SearchBox::default_for(&spec), true).unwrap();
//! assert!(v.is_member() && v.reverify(&p, &spec));
//! ```

pub mod cache;
pub mod cli;
pub mod ideal;
pub mod matrix;
pub mod probe;
pub mod report;
pub mod ring;
pub mod word;
