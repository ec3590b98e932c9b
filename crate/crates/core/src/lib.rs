//! Exact symbolic verification of the computations behind stable-irrationality
//! results for hypersurfaces of low bidegree in products of projective spaces.
//!
//! Polynomials have Gaussian-rational coefficients over a graded variable table.
//! Every check returns a [`cert::Certificate`] whose trace can be replayed.

#![cfg_attr(not(any(feature = "std", test)), no_std)]

extern crate alloc;

pub mod birat;
pub mod catalog;
pub mod classify;
pub mod cert;
pub mod families;
pub mod fractions;
pub mod geomcheck;
pub mod groebner;
pub mod random;
pub mod ring;
