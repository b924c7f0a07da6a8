//! Infographic synthesis from markdown content.
//!
//! The pipeline has three stages: rank VIF layouts for the content (by an
//! energy functional, or by nearest neighbours of a hand-drawn sketch),
//! rank VG designs and connection styles for the chosen layout through
//! TF-IDF indices over VIF clusters, then place, rotate and fill the VGs
//! and export a standalone SVG.

pub mod assets;
pub mod color;
pub mod compose;
pub mod content;
pub mod geometry;
pub mod index;
pub mod layout;
pub mod pipeline;
pub mod recommend;
