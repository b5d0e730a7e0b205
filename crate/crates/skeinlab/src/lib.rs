//! Std companion to `skeinlab-core`: the diagram text format, result
//! rendering, a thread-safe memo table with parallel evaluation, and the
//! built-in corpus. The `skeinlab` binary is the command-line front end.

pub use skeinlab_core as core;

pub mod text;
pub mod render;
pub mod memo;
pub mod parallel;
pub mod corpus;
