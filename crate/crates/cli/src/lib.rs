//! Spec-file front end and command runner for `lie2alg`.

pub mod bundled;
pub mod commands;
pub mod document;
pub mod emit;
pub mod model;
