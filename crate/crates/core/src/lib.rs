//! Secret message and secret key rates over state-dependent wiretap channels
//! with non-causal encoder state information.

pub mod probkit;
pub mod regions;
pub mod gallery;
pub mod simlab;
pub mod cli;
