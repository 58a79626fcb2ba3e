//! Arithmetic core for deciding the endomorphism structure of genus-2
//! Jacobians with potential quaternionic multiplication.
//!
//! The crate is organised around the computation pipeline: exact arithmetic
//! in prime fields and their quadratic extensions ([`fp`]), quadratic number
//! fields and prime splitting ([`quadfield`]), curve reduction and point
//! counting ([`curve`]), Frobenius quartics and their half-trace
//! factorizations ([`frobenius`]), rational quaternion algebras
//! ([`quaternion`]), the global endomorphism inference ([`endo`]) and
//! residual mod-ell image maximality ([`modell`]).
//!
//! Everything here is exact integer / rational arithmetic; the crate is
//! `no_std` (with `alloc`) and all functions are pure, so callers may fan
//! work out across threads freely.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod curve;
pub mod endo;
mod error;
pub mod factor;
pub mod fp;
pub mod frobenius;
pub mod modell;
pub mod poly;
pub mod quadfield;
pub mod quaternion;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
