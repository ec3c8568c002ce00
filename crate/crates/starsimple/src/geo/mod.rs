//! Exact verification of geometric drawings: polylines with rational
//! coordinates, their pairwise intersections, the induced two-edge drawings,
//! and the global star-simple checks and crossing bounds.
//!
//! No floating point touches any decision: coordinates are arbitrary
//! precision rationals, intersections and orientations are exact, and point
//! location uses symbolically chosen ray directions.

mod gdr;
mod induce;
mod verify;

pub use gdr::{parse_geometric, serialize_geometric, GdrEdge, GdrFile};
pub use induce::{locate_vertex, InducedPair};
pub use verify::{verify, PairReport, VerificationReport, VerifyOptions, Violation};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::drawing::DrawingError;

pub type Rat = BigRational;

#[derive(Debug, Clone, Error)]
pub enum GeoError {
    #[error("format error: {0}")]
    Format(String),
    #[error("degenerate incidence: {0}")]
    DegenerateIncidence(String),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GPoint {
    pub x: Rat,
    pub y: Rat,
}

impl GPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        GPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        GPoint {
            x: Rat::from_integer(x.into()),
            y: Rat::from_integer(y.into()),
        }
    }

    pub fn sub(&self, other: &GPoint) -> GPoint {
        GPoint {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        }
    }
}

/// `det` of the matrix with columns `u`, `v`; positive when `v` lies
/// counterclockwise of `u`.
pub fn cross(u: &GPoint, v: &GPoint) -> Rat {
    &u.x * &v.y - &u.y * &v.x
}

/// Orientation of the triple `(a, b, c)`: +1 counterclockwise, -1
/// clockwise, 0 collinear.
pub fn orient(a: &GPoint, b: &GPoint, c: &GPoint) -> i8 {
    let d = cross(&b.sub(a), &c.sub(a));
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

/// How two closed segments meet.
#[derive(Debug, Clone, PartialEq)]
pub enum SegMeet {
    None,
    /// Transversal crossing of both interiors, with the point and the
    /// parameters along each segment (both strictly between 0 and 1).
    Proper {
        point: GPoint,
        t_a: Rat,
        t_b: Rat,
    },
    /// A single common point touching an endpoint of at least one segment.
    Touch {
        point: GPoint,
    },
    /// Collinear segments sharing more than one point.
    Overlap,
}

/// Exact intersection of segments `a0a1` and `b0b1`.
pub fn segment_meet(a0: &GPoint, a1: &GPoint, b0: &GPoint, b1: &GPoint) -> SegMeet {
    let da = a1.sub(a0);
    let db = b1.sub(b0);
    let denom = cross(&da, &db);
    let diff = b0.sub(a0);
    if denom.is_zero() {
        if !cross(&diff, &da).is_zero() {
            return SegMeet::None;
        }
        // Collinear: project on the dominant axis of da.
        let use_x = da.x.abs() >= da.y.abs();
        let coord = |p: &GPoint| if use_x { p.x.clone() } else { p.y.clone() };
        let (a_lo, a_hi) = minmax(coord(a0), coord(a1));
        let (b_lo, b_hi) = minmax(coord(b0), coord(b1));
        let lo = a_lo.max(b_lo);
        let hi = a_hi.min(b_hi);
        return match lo.cmp(&hi) {
            std::cmp::Ordering::Greater => SegMeet::None,
            std::cmp::Ordering::Equal => {
                let point = [a0, a1, b0, b1]
                    .into_iter()
                    .find(|p| coord(p) == lo)
                    .expect("touch point is an endpoint")
                    .clone();
                SegMeet::Touch { point }
            }
            std::cmp::Ordering::Less => SegMeet::Overlap,
        };
    }
    let t_a = cross(&diff, &db) / &denom;
    let t_b = cross(&diff, &da) / &denom;
    let zero = Rat::zero();
    let one = Rat::from_integer(BigInt::from(1));
    if t_a < zero || t_a > one || t_b < zero || t_b > one {
        return SegMeet::None;
    }
    let point = GPoint {
        x: &a0.x + &t_a * &da.x,
        y: &a0.y + &t_a * &da.y,
    };
    if t_a > zero && t_a < one && t_b > zero && t_b < one {
        SegMeet::Proper { point, t_a, t_b }
    } else {
        SegMeet::Touch { point }
    }
}

fn minmax(a: Rat, b: Rat) -> (Rat, Rat) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// True when `p` lies on the closed segment `a0a1`.
pub fn on_segment(p: &GPoint, a0: &GPoint, a1: &GPoint) -> bool {
    if orient(a0, a1, p) != 0 {
        return false;
    }
    let (xlo, xhi) = minmax(a0.x.clone(), a1.x.clone());
    let (ylo, yhi) = minmax(a0.y.clone(), a1.y.clone());
    p.x >= xlo && p.x <= xhi && p.y >= ylo && p.y <= yhi
}

/// A drawing of a graph: vertices at exact points, edges as simple
/// polylines between their vertices.
#[derive(Debug, Clone)]
pub struct GeometricDrawing {
    pub vertices: Vec<GPoint>,
    pub edges: Vec<GeoEdge>,
}

#[derive(Debug, Clone)]
pub struct GeoEdge {
    pub u: usize,
    pub v: usize,
    pub polyline: Vec<GPoint>,
}

impl GeoEdge {
    pub fn segments(&self) -> impl Iterator<Item = (&GPoint, &GPoint)> {
        self.polyline.windows(2).map(|w| (&w[0], &w[1]))
    }
}

impl GeometricDrawing {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// True when every vertex pair carries an edge.
    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n() * (self.n() - 1) / 2
    }

    pub fn edges_adjacent(&self, a: usize, b: usize) -> bool {
        let (ea, eb) = (&self.edges[a], &self.edges[b]);
        ea.u == eb.u || ea.u == eb.v || ea.v == eb.u || ea.v == eb.v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> GPoint {
        GPoint::from_ints(x, y)
    }

    #[test]
    fn proper_crossing_is_detected_with_exact_parameters() {
        let m = segment_meet(&p(0, -1), &p(0, 1), &p(-1, 0), &p(1, 0));
        match m {
            SegMeet::Proper { point, t_a, t_b } => {
                assert_eq!(point, p(0, 0));
                assert_eq!(t_a, Rat::new(1.into(), 2.into()));
                assert_eq!(t_b, Rat::new(1.into(), 2.into()));
            }
            other => panic!("expected proper crossing, got {other:?}"),
        }
    }

    #[test]
    fn touches_and_overlaps_are_classified() {
        assert!(matches!(
            segment_meet(&p(0, 0), &p(2, 0), &p(2, 0), &p(3, 1)),
            SegMeet::Touch { .. }
        ));
        assert!(matches!(
            segment_meet(&p(0, 0), &p(2, 0), &p(1, 0), &p(3, 0)),
            SegMeet::Overlap
        ));
        assert!(matches!(
            segment_meet(&p(0, 0), &p(2, 0), &p(2, 0), &p(4, 0)),
            SegMeet::Touch { .. }
        ));
        assert!(matches!(
            segment_meet(&p(0, 0), &p(2, 0), &p(0, 1), &p(2, 1)),
            SegMeet::None
        ));
        // Tangent touch: an endpoint of one segment interior to the other.
        assert!(matches!(
            segment_meet(&p(0, 0), &p(4, 0), &p(2, 0), &p(2, 3)),
            SegMeet::Touch { .. }
        ));
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, 1)), 1);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(0, -1)), -1);
        assert_eq!(orient(&p(0, 0), &p(1, 0), &p(2, 0)), 0);
    }
}
