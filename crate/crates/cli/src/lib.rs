//! Command-line harness for the polyhedral-approximation library: body
//! specification documents, experiment drivers with CSV emission, and the
//! acceptance suite behind `verify`.

pub mod bodyspec;
pub mod experiments;
pub mod verify;
