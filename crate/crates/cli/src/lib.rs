//! Configuration parsing and subcommands behind the `sdcoding` binary.

pub mod commands;
pub mod config;

pub use config::{parse_config, ConfigError, RawConfig, RunConfig, TimeGrid};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
