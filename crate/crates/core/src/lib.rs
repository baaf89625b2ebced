//! Small orbifolds over simple polytopes.
//!
//! Given a simple `n`-polytope `P` and an assignment of nonzero vectors of
//! `F_2^{n-1}` to its facets (an *s-characteristic function*), the quotient
//! `(Z_2^{n-1} x P)/~` is a compact orbifold whose singular points sit over the
//! vertices of `P`. This crate builds that space combinatorially and computes
//!
//! * the face lattice, f-vector and h-vector of `P` ([`polytope`]);
//! * s-characteristic functions: validation, exhaustive search, restriction to
//!   faces, plus the integral isotropy variant ([`characteristic`]);
//! * a Morse-indexed CW structure and its integral chain complex, together with
//!   the toric analogue ([`cwstruct`]);
//! * homology over `Z`, `Q` and `Z_2` by Smith normal form, and the closed-form
//!   predictions it is checked against ([`homology`]);
//! * an explicit Δ-complex triangulation of the quotient used as a brute-force
//!   oracle ([`quotient`]);
//! * a presentation of the rational cohomology ring for even `n`
//!   ([`cohomology`]);
//! * the right-angled Coxeter group of `P` and a Reidemeister–Schreier
//!   presentation of the orbifold fundamental group ([`pi1orb`]).
//!
//! The [`cli`] module ties these together behind a JSON document format and the
//! `smallorb` binary.

pub mod characteristic;
pub mod cli;
pub mod cohomology;
pub mod cwstruct;
pub mod error;
pub mod exactalg;
pub mod homology;
pub mod pi1orb;
pub mod polytope;
pub mod quotient;

pub use error::{Error, Result};
