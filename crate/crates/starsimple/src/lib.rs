//! Analysis toolkit for the crossing patterns two independent edges can form
//! in star-simple drawings (drawings where adjacent edges never cross).
//!
//! The crate has three layers:
//!
//! * [`map`] — combinatorial maps of two-curve arrangements and the surgery
//!   (route insertion, curve deletion) the predicates are built on;
//! * [`drawing`] — validated two-edge drawings with bags, lenses, laminar
//!   forests, deadlock/spiral tests, hitting numbers, and the property suite;
//! * applications — [`construct`] (extremal families), [`search`] (exhaustive
//!   enumeration and crossing maximization), [`bounds`] (exact arithmetic for
//!   the crossing bounds), [`geo`] (exact verification of polyline drawings),
//!   and [`render`] (meander-style SVG output).

pub mod bounds;
pub mod construct;
pub mod drawing;
pub mod geo;
pub mod map;
pub mod render;
pub mod search;
pub mod ted;

pub use drawing::TwoEdgeDrawing;
pub use map::{FaceId, TwoCurveMap};
