//! Experiment harness around `flashmod-core`: named presets, the word-error
//! rate sweep, codebook files, sweep configuration files and CSV reports.

pub mod codebook_io;
pub mod commands;
pub mod config;
pub mod presets;
pub mod report;
pub mod sim;
