//! Document layout analysis toolkit.

pub mod font;
pub mod geometry;
pub mod io;
pub mod layout;
pub mod ocr;
pub mod pipelines;
pub mod registry;
pub mod synth;
pub mod viz;
