//! Exact decisions and certificates for n-strong arc connectedness (n-sac):
//! for every n distinct points, an arc visiting them in the given order.
//!
//! * [`graph`]: multigraphs, subdivision, cut vertices, Menger paths.
//! * [`route`], [`placement`], [`sac`]: ordered routing and the n-sac decision
//!   for finite graphs.
//! * [`trix`], [`trix_search`]: cell graphs of the N-trix and
//!   symmetry-reduced refutation search.
//! * [`constructions`]: gluing, circle/theta witnesses, the test corpus.
//! * [`report`], [`emit`]: JSON certificates and DOT/SVG drawings.

pub mod constructions;
pub mod emit;
pub mod error;
mod flow;
pub mod graph;
pub mod placement;
pub mod report;
pub mod route;
pub mod sac;
pub mod trix;
pub mod trix_search;

pub use error::{Result, SacError};
