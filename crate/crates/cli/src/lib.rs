//! Library surface of the `qsd` command-line tool: table rendering, the
//! reproduction report, and its row type. The binary in `main.rs` is a thin
//! argument-parsing wrapper over these.

pub mod report;
pub mod reproduce;
pub mod table;
