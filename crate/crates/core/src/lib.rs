//! Harmonic analysis on finite abelian groups and on the compact group of
//! sequences modulo `n`.
//!
//! Groups are products of cyclic groups ([`GroupSpec`]); functions are dense
//! tables in mixed-radix rank order ([`GroupFunction`]). The Haar integral,
//! characters, the Fourier transform (reference and fast), convolution and
//! translation all share one point-mass parameter ([`HaarWeight`]).

pub mod cli;
pub mod dual;
pub mod error;
pub mod fft;
pub mod function;
pub mod group;
pub mod haar;
pub mod io;
pub mod profinite;
pub mod roots;
pub mod transform;

pub use dual::{dual_group, Boundedness, Character, DualGroup, LaurentCharacter};
pub use error::{Error, Result};
pub use function::{GroupFunction, SpectrumFunction};
pub use group::{GroupElement, GroupSpec, DEFAULT_SIZE_CAP};
pub use haar::{check_invariance, integrate, uniqueness_oracle, HaarWeight};
pub use profinite::{in_neighborhood, CylinderFunction, Prefix, SequenceGroupSpec};
pub use transform::{
    convolve, fourier, fourier_fast, fourier_laplace_integers, fourier_naive, inverse_fourier, translate,
};

pub use num_complex::Complex64;
