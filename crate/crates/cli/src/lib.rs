//! Library side of the `polya` command-line tool: LIBSVM I/O, model
//! bundles and experiment orchestration.

pub mod data;
pub mod experiment;
