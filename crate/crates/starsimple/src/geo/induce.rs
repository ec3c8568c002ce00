//! Induced two-edge drawings of independent edge pairs, and exact location
//! of graph vertices in the faces of such a drawing.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use super::{cross, segment_meet, GPoint, GeoError, GeometricDrawing, Rat, SegMeet};
use crate::drawing::{PointSpec, TwoEdgeDrawing};
use crate::map::{FaceId, CURVE_E, CURVE_EP};

/// Position along a polyline: segment index plus the parameter within it.
type ArcPos = (usize, Rat);

/// The combinatorial drawing induced by one independent edge pair, together
/// with the geometric data needed to locate points in its faces.
#[derive(Debug, Clone)]
pub struct InducedPair {
    /// Index of the meander edge `e` in the geometric drawing.
    pub a: usize,
    /// Index of the straight-role edge `e'`.
    pub b: usize,
    pub drawing: TwoEdgeDrawing,
    /// Crossing points by crossing index (0-based for crossing 1).
    pub crossing_points: Vec<GPoint>,
    /// Faces of the graph vertices other than the four pair endpoints,
    /// keyed by vertex index.
    pub vertex_faces: BTreeMap<usize, FaceId>,
    /// Crossing positions along `a`, sorted, paired with crossing ids.
    a_cuts: Vec<(ArcPos, u32)>,
    /// Crossing positions along `b`, sorted, paired with crossing ids.
    b_cuts: Vec<(ArcPos, u32)>,
}

/// Builds the induced drawing of edges `a` (as the meander `e`) and `b`
/// (as `e'`), locating every other graph vertex in a face.
pub fn induced_pair(gd: &GeometricDrawing, a: usize, b: usize) -> Result<InducedPair, GeoError> {
    if gd.edges_adjacent(a, b) {
        return Err(GeoError::Format(format!(
            "edges {a} and {b} are not independent"
        )));
    }
    let (ea, eb) = (&gd.edges[a], &gd.edges[b]);

    // Exact crossings with positions along both polylines.
    let mut crossings: Vec<(ArcPos, ArcPos, GPoint, i8)> = Vec::new();
    for (sa, (p0, p1)) in ea.segments().enumerate() {
        for (sb, (q0, q1)) in eb.segments().enumerate() {
            match segment_meet(p0, p1, q0, q1) {
                SegMeet::Proper { point, t_a, t_b } => {
                    let da = p1.sub(p0);
                    let db = q1.sub(q0);
                    let sign = if cross(&da, &db).is_positive() { 1 } else { -1 };
                    crossings.push(((sa, t_a), (sb, t_b), point, sign));
                }
                SegMeet::None => {}
                other => {
                    return Err(GeoError::DegenerateIncidence(format!(
                        "edges {a} and {b} meet degenerately: {other:?}"
                    )))
                }
            }
        }
    }

    // Index crossings 1..n by their order along b (the e' role).
    crossings.sort_by(|x, y| x.1.cmp(&y.1));
    let n = crossings.len();
    let crossing_points: Vec<GPoint> = crossings.iter().map(|c| c.2.clone()).collect();
    let signs: Vec<i8> = crossings.iter().map(|c| c.3).collect();
    let b_cuts: Vec<(ArcPos, u32)> = crossings
        .iter()
        .enumerate()
        .map(|(i, c)| (c.1.clone(), i as u32 + 1))
        .collect();
    let mut a_cuts: Vec<(ArcPos, u32)> = crossings
        .iter()
        .enumerate()
        .map(|(i, c)| (c.0.clone(), i as u32 + 1))
        .collect();
    a_cuts.sort_by(|x, y| x.0.cmp(&y.0));
    let order_e: Vec<u32> = a_cuts.iter().map(|&(_, id)| id).collect();

    let drawing =
        TwoEdgeDrawing::validate_lenient(&order_e, &signs, PointSpec::Faces(Vec::new()), None)?;

    let mut pair = InducedPair {
        a,
        b,
        drawing,
        crossing_points,
        vertex_faces: BTreeMap::new(),
        a_cuts,
        b_cuts,
    };
    let n_check = pair.drawing.n();
    debug_assert_eq!(n, n_check);

    // Locate every vertex that is not an endpoint of the pair, and attach
    // the faces as marker points.
    let ends = [ea.u, ea.v, eb.u, eb.v];
    let mut faces = Vec::new();
    for (w_idx, w) in gd.vertices.iter().enumerate() {
        if ends.contains(&w_idx) {
            continue;
        }
        let f = locate_vertex(gd, &pair, w)?;
        pair.vertex_faces.insert(w_idx, f);
        faces.push(f);
    }
    let outer = pair.drawing.outer().ok();
    pair.drawing = TwoEdgeDrawing::validate_lenient(
        pair.drawing.order_e(),
        pair.drawing.signs(),
        PointSpec::Faces(faces),
        if pair.drawing.is_deadlock() {
            None
        } else {
            outer
        },
    )?;
    Ok(pair)
}

impl InducedPair {
    /// Map edge of the arrangement containing the given position along
    /// curve `a` (`true`) or `b` (`false`).
    fn map_edge_at(&self, on_a: bool, pos: &ArcPos) -> crate::map::EdgeId {
        let (cuts, curve) = if on_a {
            (&self.a_cuts, CURVE_E)
        } else {
            (&self.b_cuts, CURVE_EP)
        };
        let idx = cuts.partition_point(|(p, _)| p < pos);
        self.drawing.map().curve(curve).edges[idx]
    }
}

/// Locates a point in a face of the induced arrangement by exact ray
/// casting: the first boundary point hit by a ray from `w` identifies the
/// face on `w`'s side. Ray directions are tried until one avoids every
/// joint, endpoint, and crossing of the arrangement.
pub fn locate_vertex(
    gd: &GeometricDrawing,
    pair: &InducedPair,
    w: &GPoint,
) -> Result<FaceId, GeoError> {
    let (ea, eb) = (&gd.edges[pair.a], &gd.edges[pair.b]);
    for attempt in 0..64i64 {
        let dir = ray_direction(attempt);
        match cast_ray(pair, ea, eb, w, &dir) {
            RayOutcome::Degenerate => continue,
            RayOutcome::Hit {
                on_a,
                seg,
                t,
                side_left,
            } => {
                let pos = (seg, t);
                let edge = pair.map_edge_at(on_a, &pos);
                let [fwd, _] = pair.drawing.map().edge_darts(edge);
                let face = if side_left {
                    pair.drawing.map().left_face(fwd)
                } else {
                    pair.drawing.map().right_face(fwd)
                };
                return Ok(face);
            }
            RayOutcome::Miss => {
                // w sees infinity in this direction: it lies in the
                // unbounded face, which a reference point far outside the
                // drawing identifies.
                return unbounded_face(gd, pair);
            }
        }
    }
    Err(GeoError::DegenerateIncidence(
        "no non-degenerate ray direction found for point location".into(),
    ))
}

fn ray_direction(attempt: i64) -> GPoint {
    // (0,-1), then slopes that can never repeat.
    if attempt == 0 {
        GPoint::from_ints(0, -1)
    } else {
        GPoint::from_ints(1, -(attempt + 1))
    }
}

enum RayOutcome {
    Hit {
        on_a: bool,
        seg: usize,
        t: Rat,
        side_left: bool,
    },
    Miss,
    Degenerate,
}

fn cast_ray(
    pair: &InducedPair,
    ea: &super::GeoEdge,
    eb: &super::GeoEdge,
    w: &GPoint,
    dir: &GPoint,
) -> RayOutcome {
    let mut best: Option<(Rat, bool, usize, Rat, bool)> = None; // (ray t, on_a, seg, u, left)
    for (on_a, edge) in [(true, ea), (false, eb)] {
        for (seg, (p0, p1)) in edge.segments().enumerate() {
            let e = p1.sub(p0);
            let denom = cross(dir, &e);
            let diff = p0.sub(w);
            if denom.is_zero() {
                // Parallel; collinear rays along a segment are degenerate.
                if cross(&diff, dir).is_zero() {
                    return RayOutcome::Degenerate;
                }
                continue;
            }
            let t_ray = &cross(&diff, &e) / &denom;
            let u = &cross(&diff, dir) / &denom;
            let zero = Rat::zero();
            let one = Rat::from_integer(1.into());
            if t_ray <= zero || u < zero || u > one {
                if t_ray.is_zero() && u >= zero && u <= one {
                    // w itself on the boundary: validated inputs keep
                    // vertices off edges, so treat as degenerate.
                    return RayOutcome::Degenerate;
                }
                continue;
            }
            if u.is_zero() || u == one {
                return RayOutcome::Degenerate;
            }
            let hit = GPoint {
                x: &w.x + &t_ray * &dir.x,
                y: &w.y + &t_ray * &dir.y,
            };
            if pair.crossing_points.contains(&hit) {
                return RayOutcome::Degenerate;
            }
            let side = cross(
                &e,
                &GPoint {
                    x: -dir.x.clone(),
                    y: -dir.y.clone(),
                },
            );
            debug_assert!(!side.is_zero());
            let left = side.is_positive();
            match &best {
                Some((bt, ..)) if *bt <= t_ray => {}
                _ => best = Some((t_ray, on_a, seg, u, left)),
            }
        }
    }
    match best {
        Some((_, on_a, seg, u, left)) => RayOutcome::Hit {
            on_a,
            seg,
            t: u,
            side_left: left,
        },
        None => RayOutcome::Miss,
    }
}

/// The combinatorial face corresponding to the geometric unbounded region:
/// located from a reference point strictly below and left of the whole
/// arrangement.
fn unbounded_face(gd: &GeometricDrawing, pair: &InducedPair) -> Result<FaceId, GeoError> {
    let (ea, eb) = (&gd.edges[pair.a], &gd.edges[pair.b]);
    let one = Rat::from_integer(1.into());
    let mut min_x: Option<Rat> = None;
    let mut min_y: Option<Rat> = None;
    for p in ea.polyline.iter().chain(&eb.polyline) {
        if min_x.as_ref().is_none_or(|m| p.x < *m) {
            min_x = Some(p.x.clone());
        }
        if min_y.as_ref().is_none_or(|m| p.y < *m) {
            min_y = Some(p.y.clone());
        }
    }
    let r = GPoint {
        x: min_x.unwrap() - &one,
        y: min_y.unwrap() - &one,
    };
    // Aim at interior points of the first segment of `b`; distinct targets
    // give distinct directions, so some attempt avoids every degeneracy.
    let (q0, q1) = eb.segments().next().expect("polyline has a segment");
    let d = q1.sub(q0);
    for attempt in 2..66i64 {
        let frac = Rat::new(1.into(), attempt.into());
        let target = GPoint {
            x: &q0.x + &frac * &d.x,
            y: &q0.y + &frac * &d.y,
        };
        let dir = target.sub(&r);
        match cast_ray(pair, ea, eb, &r, &dir) {
            RayOutcome::Degenerate => continue,
            RayOutcome::Hit {
                on_a,
                seg,
                t,
                side_left,
            } => {
                let pos = (seg, t);
                let edge = pair.map_edge_at(on_a, &pos);
                let [fwd, _] = pair.drawing.map().edge_darts(edge);
                let face = if side_left {
                    pair.drawing.map().left_face(fwd)
                } else {
                    pair.drawing.map().right_face(fwd)
                };
                return Ok(face);
            }
            RayOutcome::Miss => {
                return Err(GeoError::DegenerateIncidence(
                    "reference ray unexpectedly missed the arrangement".into(),
                ))
            }
        }
    }
    Err(GeoError::DegenerateIncidence(
        "no non-degenerate reference ray found for the unbounded face".into(),
    ))
}
