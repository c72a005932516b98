//! Exact computations on toric fan spaces.
//!
//! Everything here works over `Q` (arbitrary precision) or `Z`; there is no
//! floating point anywhere. The crate is `no_std` and only needs `alloc`.
//!
//! * [`exactla`]: rational matrices, subspaces, Smith normal form, wedge powers.
//! * [`fans`]: rational cones and fans, orbit lattices, star subdivision, built-in fans.
//! * [`tropspace`]: the compactified fan space as a stratified cell complex and the
//!   multi-tangent spaces `F_p` / `F^p` with their face maps.
//! * [`cohomology`]: cellular cochain complexes for `H^{p,q}_Trop`, relative groups,
//!   and a Čech cross-check.
//! * [`weightss`]: `E_1`/`E_2` pages of the weight spectral sequence of a smooth toric variety.
//! * [`cycles`]: Minkowski weights, tropical cycle classes, pairings and the
//!   numerical-equivalence check for toric surfaces.
#![no_std]

extern crate alloc;

pub mod cohomology;
pub mod cycles;
mod error;
pub mod exactla;
pub mod fans;
pub mod tropspace;
pub mod weightss;

pub use error::{Error, Result};
pub use exactla::{QMatrix, QSubspace, Rational, ZMatrix};
pub use fans::{Cone, Fan};
