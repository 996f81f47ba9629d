//! Configuration, exports and spectrum data for the command-line front end.

pub mod config;
pub mod export;
pub mod spectrum;

pub use config::{Format, RunConfig, CONFIG_ENV};
pub use export::{
    format_f17, graph_to_dot, write_search_csv, write_search_json, ClassTable, GraphExport, SearchExport,
    TrajectoryExport, F17, SCHEMA_VERSION,
};
pub use spectrum::{SpectrumPoint, SpectrumSeries};
