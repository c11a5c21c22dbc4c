pub mod app;
pub mod attainment;
pub mod classify;
pub mod duality;
pub mod error;
pub mod norms;
pub mod rational;
pub mod rng;
pub mod sn_ideal;
pub mod spectra;

pub use error::{Error, Result};
