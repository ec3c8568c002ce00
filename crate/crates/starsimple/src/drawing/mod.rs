//! Validated drawings of two independent edges and the predicates on them:
//! bags, gaps, lenses, laminar nesting, deadlocks, minimal curves, spirals,
//! hitting numbers, admissibility, and the counting properties.

mod bags;
mod properties;
mod routes;

pub use bags::{Bag, FaceSet, LaminarForest};
pub use properties::{HittingMode, PropertyReport};
pub use routes::{CurveRoute, EEnd, SpiralMode};

use thiserror::Error;

use crate::map::{CurveId, EdgeId, FaceId, MapError, TwoCurveMap, VertexId, CURVE_E, CURVE_EP};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DrawingError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("drawing is a deadlock and no outer face was supplied")]
    NoOuterFace,
    #[error("point face {0} does not exist in the drawing")]
    BadPointFace(u32),
    #[error("outer face {given:?} contradicts the common endpoint face {endpoint_face:?}")]
    OuterMismatch {
        given: FaceId,
        endpoint_face: FaceId,
    },
    #[error("operation requires an outer face, but none is defined for this drawing")]
    OuterUndefined,
    #[error("operation is undefined on a deadlock drawing")]
    DeadlockDrawing,
    #[error("bag interiors violate laminarity: {0}")]
    LaminarityViolation(String),
    #[error("bag {0} is not a lens")]
    NotALens(u32),
    #[error("minimal curve is obstructed: {0}")]
    RouteObstructed(String),
    #[error("property violation: {0}")]
    PropertyViolation(String),
}

/// Marker points for a drawing: explicit face keys, or one marker per lens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointSpec {
    AutoLens,
    Faces(Vec<FaceId>),
}

/// A validated drawing of two independent edges `e` and `e'`.
///
/// Crossings are numbered `1..=n` by their order along `e'`; `order_e` lists
/// them in the order `e` traverses them, and `signs[i]` is the orientation of
/// crossing `i+1` (+1 when `e` passes from the left side of `e'` to the
/// right, i.e. downward for a horizontal `e'`).
#[derive(Debug, Clone)]
pub struct TwoEdgeDrawing {
    n: usize,
    order_e: Vec<u32>,
    signs: Vec<i8>,
    map: TwoCurveMap,
    outer: Option<FaceId>,
    points: Vec<FaceId>,
    deadlock: bool,
    /// 1-based position of each crossing id along `e` (index 0 unused).
    pos_e: Vec<usize>,
}

impl TwoEdgeDrawing {
    /// Validates an encoding. Fails on non-planar encodings, on deadlock
    /// drawings without an explicit outer face, and on unknown point faces.
    pub fn validate(
        order_e: &[u32],
        signs: &[i8],
        points: PointSpec,
        outer: Option<FaceId>,
    ) -> Result<Self, DrawingError> {
        Self::validate_impl(order_e, signs, points, outer, false)
    }

    /// Like [`TwoEdgeDrawing::validate`], but deadlock drawings without an
    /// outer face are represented with `outer = None` instead of failing.
    /// Operations that need the outer face then fail individually.
    pub fn validate_lenient(
        order_e: &[u32],
        signs: &[i8],
        points: PointSpec,
        outer: Option<FaceId>,
    ) -> Result<Self, DrawingError> {
        Self::validate_impl(order_e, signs, points, outer, true)
    }

    fn validate_impl(
        order_e: &[u32],
        signs: &[i8],
        points: PointSpec,
        outer: Option<FaceId>,
        allow_missing_outer: bool,
    ) -> Result<Self, DrawingError> {
        let n = order_e.len();
        let order_ep: Vec<u32> = (1..=n as u32).collect();
        let map = TwoCurveMap::build(order_e, &order_ep, signs)?;

        let endpoint_faces = [
            map.endpoint_face(0)?,
            map.endpoint_face(1)?,
            map.endpoint_face(2)?,
            map.endpoint_face(3)?,
        ];
        let deadlock = !endpoint_faces.windows(2).all(|w| w[0] == w[1]);

        let outer = if deadlock {
            match outer {
                Some(o) => {
                    if map.face_index(o).is_none() {
                        return Err(DrawingError::BadPointFace(o.0));
                    }
                    Some(o)
                }
                None if allow_missing_outer => None,
                None => return Err(DrawingError::NoOuterFace),
            }
        } else {
            let auto = endpoint_faces[0];
            if let Some(o) = outer {
                if o != auto {
                    return Err(DrawingError::OuterMismatch {
                        given: o,
                        endpoint_face: auto,
                    });
                }
            }
            Some(auto)
        };

        let mut pos_e = vec![0usize; n + 1];
        for (p, &id) in order_e.iter().enumerate() {
            pos_e[id as usize] = p + 1;
        }

        let mut d = TwoEdgeDrawing {
            n,
            order_e: order_e.to_vec(),
            signs: signs.to_vec(),
            map,
            outer,
            points: Vec::new(),
            deadlock,
            pos_e,
        };

        d.points = match points {
            PointSpec::Faces(faces) => {
                for f in &faces {
                    if d.map.face_index(*f).is_none() {
                        return Err(DrawingError::BadPointFace(f.0));
                    }
                }
                faces
            }
            PointSpec::AutoLens => d.lens_faces()?,
        };
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order_e(&self) -> &[u32] {
        &self.order_e
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn map(&self) -> &TwoCurveMap {
        &self.map
    }

    pub fn points(&self) -> &[FaceId] {
        &self.points
    }

    pub fn outer(&self) -> Result<FaceId, DrawingError> {
        self.outer.ok_or(DrawingError::OuterUndefined)
    }

    /// Position (1-based) of crossing `id` along `e`.
    pub fn pos_along_e(&self, id: u32) -> usize {
        self.pos_e[id as usize]
    }

    /// True when the four edge endpoints do not all lie in one face.
    pub fn is_deadlock(&self) -> bool {
        self.deadlock
    }

    pub fn endpoint_vertex(&self, end: EEnd) -> VertexId {
        match end {
            EEnd::Start => 0,
            EEnd::End => 1,
        }
    }

    /// The `e'` edge forming the gap of bag `i` (1-based).
    pub fn gap_edge(&self, i: u32) -> EdgeId {
        self.map.curve(CURVE_EP).edges[i as usize]
    }

    /// The `e` edges forming the piece `h_i` of bag `i`, in order along `e`.
    pub fn piece_edges(&self, i: u32) -> Vec<EdgeId> {
        let (p, q) = (self.pos_e[i as usize], self.pos_e[i as usize + 1]);
        let (lo, hi) = (p.min(q), p.max(q));
        self.map.curve(CURVE_E).edges[lo..hi].to_vec()
    }

    /// Number of lenses; the minimum number of points hitting every lens,
    /// since lens interiors are pairwise disjoint faces.
    pub fn hitting_number(&self) -> Result<usize, DrawingError> {
        Ok(self.lens_indices()?.len())
    }

    /// `(hitting_number, every lens face holds a marker point)`.
    pub fn check_hitting(&self) -> Result<(usize, bool), DrawingError> {
        let lens_faces = self.lens_faces()?;
        let ok = lens_faces.iter().all(|f| self.points.contains(f));
        Ok((lens_faces.len(), ok))
    }

    /// Lens faces with no marker point inside.
    pub fn empty_lenses(&self) -> Result<Vec<FaceId>, DrawingError> {
        Ok(self
            .lens_faces()?
            .into_iter()
            .filter(|f| !self.points.contains(f))
            .collect())
    }

    fn encoding_string(order: &[u32], signs: &[i8]) -> String {
        let mut s = format!("{}:", order.len());
        for (i, o) in order.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&o.to_string());
        }
        s.push(':');
        for &sg in signs {
            s.push(if sg > 0 { '+' } else { '-' });
        }
        s
    }

    /// All eight images of an encoding under the symmetry group generated by
    /// reversing `e`, reversing `e'`, and mirroring.
    pub fn symmetry_images(order: &[u32], signs: &[i8]) -> Vec<(Vec<u32>, Vec<i8>)> {
        let n = order.len() as u32;
        let rev_e = |o: &[u32], s: &[i8]| -> (Vec<u32>, Vec<i8>) {
            (
                o.iter().rev().copied().collect(),
                s.iter().map(|&x| -x).collect(),
            )
        };
        let rev_ep = |o: &[u32], s: &[i8]| -> (Vec<u32>, Vec<i8>) {
            let relabeled: Vec<u32> = o.iter().map(|&id| n + 1 - id).collect();
            let mut s2 = vec![0i8; s.len()];
            for (i, &x) in s.iter().enumerate() {
                s2[(n - 1 - i as u32) as usize] = -x;
            }
            (relabeled, s2)
        };
        let mirror = |o: &[u32], s: &[i8]| -> (Vec<u32>, Vec<i8>) {
            (o.to_vec(), s.iter().map(|&x| -x).collect())
        };
        let mut out = Vec::with_capacity(8);
        for use_rev_e in [false, true] {
            for use_rev_ep in [false, true] {
                for use_mirror in [false, true] {
                    let (mut o, mut s) = (order.to_vec(), signs.to_vec());
                    if use_rev_e {
                        (o, s) = rev_e(&o, &s);
                    }
                    if use_rev_ep {
                        (o, s) = rev_ep(&o, &s);
                    }
                    if use_mirror {
                        (o, s) = mirror(&o, &s);
                    }
                    out.push((o, s));
                }
            }
        }
        out
    }

    /// Canonical form of an encoding: the lexicographic minimum over the
    /// eight-element symmetry group. Idempotent; used for deduplication.
    pub fn canonical_encoding(order: &[u32], signs: &[i8]) -> (Vec<u32>, Vec<i8>) {
        Self::symmetry_images(order, signs)
            .into_iter()
            .min_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)))
            .expect("group is nonempty")
    }

    pub fn canonical_form(&self) -> String {
        let (o, s) = Self::canonical_encoding(&self.order_e, &self.signs);
        Self::encoding_string(&o, &s)
    }

    /// Swaps the roles of `e` and `e'`: crossings are re-indexed by their
    /// order along `e`, the new meander order is the inverse permutation,
    /// and all signs flip. Marker points are dropped.
    pub fn transpose(&self) -> Result<TwoEdgeDrawing, DrawingError> {
        let n = self.n;
        let mut order = vec![0u32; n];
        let mut signs = vec![0i8; n];
        for id in 1..=n {
            let new_id = self.pos_e[id];
            order[id - 1] = new_id as u32;
            signs[new_id - 1] = -self.signs[id - 1];
        }
        TwoEdgeDrawing::validate_lenient(&order, &signs, PointSpec::Faces(Vec::new()), None)
    }
}

/// Re-exported curve constants for callers that need to name the two edges.
pub const EDGE_E: CurveId = CURVE_E;
pub const EDGE_EP: CurveId = CURVE_EP;
