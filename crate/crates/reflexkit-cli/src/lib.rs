//! Library side of the reflexkit command-line tool: the polytope text
//! format and the JSON report schema. The binary in `main.rs` is a thin
//! dispatcher over these.

pub mod format;
pub mod report;
