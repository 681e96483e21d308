//! Van der Waals (non-retarded Casimir–Polder) shifts of the rotational
//! levels of polar diatomic molecules near flat and gently curved dielectric
//! surfaces, and the resulting structure of the rotational spectrum.
//!
//! All quantities are SI internally; see [`units`] for the conversion
//! constants used at the edges.

pub mod engine;
pub mod error;
pub mod greens;
pub mod materials;
pub mod rotor;
pub mod spectra;
pub mod units;

pub use error::{Error, Result};
