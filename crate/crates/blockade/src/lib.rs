pub mod checks;
pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod peaks;
pub mod presets;
pub mod sweep;
