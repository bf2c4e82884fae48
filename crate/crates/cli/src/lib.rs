//! Command implementations and the local HTTP service behind the
//! `polychora` binary.

pub mod commands;
pub mod geometry;
pub mod service;
