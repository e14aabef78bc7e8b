//! File formats, rendering, universe storage and the command-line tool for
//! [`slimrect_core`].

pub mod cli;
pub mod format;
pub mod render;
pub mod report;
pub mod universe;
