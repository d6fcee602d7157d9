//! Exact-arithmetic engine for Koszul and de Rham homology of graded local
//! cohomology modules of squarefree monomial ideals.
//!
//! The pipeline:
//!
//! 1. [`monomial`] parses and normalizes squarefree monomial ideals and
//!    provides the chamber combinatorics (negative-support patterns).
//! 2. [`cech`] builds multidegree strands of the Cech complex on the
//!    ideal's generators and computes their cohomology with explicit bases.
//! 3. [`straight`] packages a module as finite chamber data: one vector
//!    space per chamber plus crossing maps for multiplication by each
//!    variable, with the partial-derivative action forced by the grading.
//! 4. [`homology`] computes Koszul and de Rham homology strand by strand,
//!    Euler characteristics, and the verdicts chi(dR) = (-1)^(n+1) chi(K)
//!    and the localized vanishing chi(dR) = 0.
//! 5. [`oracle`] re-derives everything by brute force on a truncated
//!    multidegree box with literal operator matrices, as an independent
//!    cross-check.
//! 6. [`cli`] drives single-ideal and corpus runs and emits reports.
//!
//! All arithmetic is exact ([`exactlin`]); reports are byte-stable across
//! runs.

pub mod cech;
pub mod cli;
pub mod exactlin;
pub mod homology;
pub mod monomial;
pub mod oracle;
pub mod straight;
