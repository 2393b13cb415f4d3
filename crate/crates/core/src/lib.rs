//! Numerical harmonic analysis on `SL(n, R)` for `n = 2, 3`.
//!
//! The crate covers four layers, each usable on its own:
//!
//! * [`lie`]: Iwasawa and Cartan decompositions, root-system constants,
//!   lengths, chamber angles and the Cartan integration density.
//! * [`boundary`] and [`harmonic`]: the flag boundary `K/M` with its
//!   `K`-invariant probability measure, the Radon-Nikodym cocycle, the
//!   quasi-regular representation, the Harish-Chandra function and the
//!   normalized Poisson kernel, all evaluated by deterministic quadrature.
//! * [`lattice`]: exhaustive enumeration of `SL(2, Z)` (and congruence
//!   subgroups) and `SL(3, Z)` inside Cartan balls, cones and annuli.
//! * [`averages`]: the lattice operator averages weighted by the boundary
//!   map and `1/Xi`, plus the side checks (Markov normalization, two-sided
//!   equidistribution, annuli identity, Koopman baseline).
//!
//! Everything is `no_std` with `alloc`. Parallel drivers, caching and I/O
//! live in the companion `boundary-lab` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod averages;
pub mod boundary;
mod error;
pub mod functions;
pub mod harmonic;
pub mod lattice;
pub mod lie;
pub mod math;
pub mod matrix;
pub mod quadrature;
pub mod sum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
