//! IO, file formats and the command-line front end over `brunel-core`.

pub mod cli;
pub mod figure;
pub mod formats;
pub mod verify;
