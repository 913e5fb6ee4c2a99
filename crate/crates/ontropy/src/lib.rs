//! File formats, configuration and the command pipeline around
//! [`ontropy_core`].
//!
//! ```no_run
//! use ontropy::config::{ConfigLayer, RunConfig};
//!
//! let cfg = RunConfig::resolve(ConfigLayer {
//!     obo: Some("go-basic.obo".into()),
//!     ..Default::default()
//! });
//! let ontology = ontropy::commands::load_ontology(&cfg).unwrap();
//! println!("{} terms", ontology.len());
//! ```

pub mod annotations;
pub mod bitscores;
pub mod commands;
pub mod config;
pub mod error;
pub mod obo;
pub mod output;

pub use error::{Error, Result};
