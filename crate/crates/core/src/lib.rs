//! Numerical library for fundamental Bessel kernels of arbitrary rank and the
//! Hankel transforms they induce, over the real and complex fields.
//!
//! The crate is organised in layers:
//!
//! * [`gamma`], [`quad`], [`classical`] — scalar special functions
//!   (complex log-gamma, adaptive Gauss–Kronrod quadrature, classical Bessel
//!   functions of complex order and argument);
//! * [`gamma_factors`] — the gamma factors attached to an index, their
//!   functional relations and the rank-doubling map;
//! * [`contours`] — Mellin–Barnes contours (vertical with pole detours, and
//!   the loop contour from minus infinity);
//! * [`kernels`] — Bessel functions of the first kind, signed-index Bessel
//!   functions via the loop contour, and the Bessel kernels over both fields
//!   via Barnes integrals, Fourier assembly and closed forms;
//! * [`asymptotics`] — Bessel functions of the second kind, the second
//!   connection formula, the exact symmetric-matrix block identity behind it,
//!   and the large-argument expansion of the kernels;
//! * [`hankel`] — Mellin transforms, Hankel transforms in Mellin and kernel
//!   form, and the rank-one factorisation into Fourier-type transforms;
//! * [`integral_reps`] — torus phase integrals and the real-variable integral
//!   representations of the complex-field kernels;
//! * [`gl2`] — gamma factors of Langlands parameters and the Bessel functions
//!   attached to unitary representations of GL(2);
//! * [`verify`] — self-contained verification suites used by the CLI.

pub mod asymptotics;
pub mod classical;
pub mod contours;
pub mod dd;
pub mod error;
pub mod gamma;
pub mod gamma_factors;
pub mod gl2;
pub mod hankel;
pub mod integral_reps;
pub mod kernels;
pub mod quad;
pub mod types;
pub mod verify;

pub use error::{Error, Result};
pub use types::*;

/// Complex double-precision scalar used throughout the crate.
pub type C64 = num_complex::Complex64;
