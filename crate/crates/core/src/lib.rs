//! Amenability constants for centres of finite group algebras.

pub mod error;
pub mod group;

pub use error::{Error, Result};
pub mod chartable;
pub mod central;
pub mod numeric;
pub mod amenability;
pub mod hypergroup;
pub mod tz2;
pub mod zoo;
pub mod cli;
