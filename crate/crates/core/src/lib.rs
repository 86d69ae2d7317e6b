//! Distance spectra of double joins of merged subdivision graphs.
//!
//! Graphs are built in [`graph`] and [`transforms`], distance matrices and
//! their spectra come from [`distance`], closed forms live in [`theory`]
//! behind a registry of strategies, and [`equienergetic`] assembles families
//! of graphs sharing one distance energy.

pub mod cli;
pub mod distance;
pub mod equienergetic;
pub mod error;
pub mod expr;
pub mod graph;
pub mod numlin;
pub mod theory;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
