//! Combinatorial maps for arrangements of simple curves in the plane.
//!
//! A [`TwoCurveMap`] stores the arrangement of two open curves (plus any
//! auxiliary routes inserted later) as darts with a twin involution and a
//! counterclockwise rotation at every vertex. Faces are the orbits of
//! `twin` followed by the rotation; with counterclockwise rotations this
//! puts the orbit of a dart on its geometric *right*, so the helper
//! [`TwoCurveMap::left_face`] is what side-sensitive callers want.

use std::collections::BTreeMap;

use thiserror::Error;

/// Index of a dart (half-edge). Dense, assigned in encoding order.
pub type Dart = u32;
/// Index of a vertex.
pub type VertexId = u32;
/// Index of an edge (a twin pair of darts).
pub type EdgeId = u32;
/// Index of a curve. Curve 0 is `e`, curve 1 is `e'`; higher ids are routes.
pub type CurveId = u32;

pub const CURVE_E: CurveId = 0;
pub const CURVE_EP: CurveId = 1;

/// Canonical face identifier: the smallest dart on the face cycle.
/// Stable under recomputation of faces on an unchanged map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceId(pub Dart);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    /// Endpoint of a curve; `tail` is false at the start, true at the end.
    Endpoint { curve: CurveId, tail: bool },
    /// Crossing of `e` and `e'`; `index` is the 1-based position along `e'`.
    Crossing { index: u32 },
    /// Crossing created by inserting a route; `step` is 1-based along the route.
    RouteCrossing { route: CurveId, step: u32 },
    /// Interior starting point of an inserted route.
    RouteStart { route: CurveId },
}

#[derive(Debug, Clone)]
pub struct CurveInfo {
    /// Edge ids in order along the curve.
    pub edges: Vec<EdgeId>,
    pub start: VertexId,
    pub end: VertexId,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("malformed encoding: {0}")]
    MalformedEncoding(String),
    #[error("encoding is not plane-realizable: component has V={v}, E={e}, F={f}")]
    EulerViolation { v: usize, e: usize, f: usize },
    #[error("disconnected arrangement with a multi-face component cannot be embedded canonically")]
    AmbiguousDisconnected,
    #[error("vertex {0} is not an endpoint")]
    NotAnEndpoint(VertexId),
    #[error("route is not face-consistent: {0}")]
    DisconnectedRoute(String),
    #[error("unknown curve label {0}")]
    UnknownLabel(CurveId),
}

/// One face of the arrangement.
#[derive(Debug, Clone)]
pub struct Face {
    /// Canonical key: smallest member dart.
    pub key: FaceId,
    /// Member darts. For a single orbit this is the cycle starting at the
    /// smallest dart; for the merged face of a disconnected arrangement it
    /// is the sorted union of the component orbits.
    pub darts: Vec<Dart>,
    /// Number of orbits merged into this face (1 for connected arrangements).
    pub orbits: u32,
}

#[derive(Debug, Clone)]
pub struct TwoCurveMap {
    twin: Vec<Dart>,
    sigma: Vec<Dart>,
    origin: Vec<VertexId>,
    edge_of_dart: Vec<EdgeId>,
    /// `[forward, backward]` darts of each edge; forward points along the curve.
    edge_darts: Vec<[Dart; 2]>,
    edge_curve: Vec<CurveId>,
    vertex_kind: Vec<VertexKind>,
    /// One dart per vertex (the entry point into its rotation).
    vertex_dart: Vec<Dart>,
    vertex_degree: Vec<u32>,
    curves: Vec<CurveInfo>,
    faces: Vec<Face>,
    face_of_dart: Vec<u32>,
    components: u32,
}

impl TwoCurveMap {
    /// Builds the map of two open curves from their crossing encoding.
    ///
    /// `order_e` and `order_ep` list the crossing ids in order along each
    /// curve; both must be permutations of `1..=n`. `signs[i]` is the sign of
    /// crossing `i+1`: `+1` when the frame (direction of `e`, direction of
    /// `e'`) is counterclockwise there, which for a left-to-right `e'` means
    /// `e` passes from above to below.
    pub fn build(order_e: &[u32], order_ep: &[u32], signs: &[i8]) -> Result<Self, MapError> {
        let n = order_e.len();
        if order_ep.len() != n {
            return Err(MapError::MalformedEncoding(format!(
                "order_e has {} crossings but order_ep has {}",
                n,
                order_ep.len()
            )));
        }
        if signs.len() != n {
            return Err(MapError::MalformedEncoding(format!(
                "{} crossings but {} signs",
                n,
                signs.len()
            )));
        }
        for (name, perm) in [("order_e", order_e), ("order_ep", order_ep)] {
            let mut seen = vec![false; n];
            for &id in perm {
                if id == 0 || id as usize > n || seen[id as usize - 1] {
                    return Err(MapError::MalformedEncoding(format!(
                        "{name} is not a permutation of 1..={n}"
                    )));
                }
                seen[id as usize - 1] = true;
            }
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(MapError::MalformedEncoding("signs must be +1 or -1".into()));
        }

        // Vertices: 4 endpoints then crossings by id.
        let xing = |id: u32| 4 + id - 1;
        let vertex_kind: Vec<VertexKind> = (0..4)
            .map(|i| VertexKind::Endpoint {
                curve: if i < 2 { CURVE_E } else { CURVE_EP },
                tail: i % 2 == 1,
            })
            .chain((1..=n as u32).map(|index| VertexKind::Crossing { index }))
            .collect();

        // Edges: e's pieces in order, then e''s pieces in order. Darts are
        // allocated per edge as (forward, backward).
        let mut edge_darts = Vec::with_capacity(2 * n + 2);
        let mut edge_curve = Vec::with_capacity(2 * n + 2);
        let mut origin = Vec::with_capacity(4 * n + 4);
        let mut edge_of_dart = Vec::with_capacity(4 * n + 4);
        let mut push_edge = |from: VertexId,
                             to: VertexId,
                             curve: CurveId,
                             origin: &mut Vec<VertexId>,
                             edge_of_dart: &mut Vec<EdgeId>|
         -> EdgeId {
            let id = edge_darts.len() as EdgeId;
            let fwd = origin.len() as Dart;
            origin.push(from);
            origin.push(to);
            edge_of_dart.push(id);
            edge_of_dart.push(id);
            edge_darts.push([fwd, fwd + 1]);
            edge_curve.push(curve);
            id
        };

        let mut e_edges = Vec::with_capacity(n + 1);
        {
            let mut prev = 0; // e start vertex
            for &id in order_e {
                e_edges.push(push_edge(
                    prev,
                    xing(id),
                    CURVE_E,
                    &mut origin,
                    &mut edge_of_dart,
                ));
                prev = xing(id);
            }
            e_edges.push(push_edge(prev, 1, CURVE_E, &mut origin, &mut edge_of_dart));
        }
        let mut ep_edges = Vec::with_capacity(n + 1);
        {
            let mut prev = 2; // e' start vertex
            for &id in order_ep {
                ep_edges.push(push_edge(
                    prev,
                    xing(id),
                    CURVE_EP,
                    &mut origin,
                    &mut edge_of_dart,
                ));
                prev = xing(id);
            }
            ep_edges.push(push_edge(prev, 3, CURVE_EP, &mut origin, &mut edge_of_dart));
        }

        let dart_count = origin.len();
        let mut twin = vec![0; dart_count];
        for &[f, b] in &edge_darts {
            twin[f as usize] = b;
            twin[b as usize] = f;
        }

        // Rotations. Endpoints are fixed points; crossings are 4-cycles whose
        // orientation is the crossing sign.
        let mut sigma = vec![Dart::MAX; dart_count];
        sigma[edge_darts[e_edges[0] as usize][0] as usize] = edge_darts[e_edges[0] as usize][0];
        sigma[edge_darts[*e_edges.last().unwrap() as usize][1] as usize] =
            edge_darts[*e_edges.last().unwrap() as usize][1];
        sigma[edge_darts[ep_edges[0] as usize][0] as usize] = edge_darts[ep_edges[0] as usize][0];
        sigma[edge_darts[*ep_edges.last().unwrap() as usize][1] as usize] =
            edge_darts[*ep_edges.last().unwrap() as usize][1];

        // Position of each crossing along e (1-based), to find its e-edges.
        let mut pos_e = vec![0usize; n + 1];
        for (p, &id) in order_e.iter().enumerate() {
            pos_e[id as usize] = p + 1;
        }
        let mut pos_ep = vec![0usize; n + 1];
        for (p, &id) in order_ep.iter().enumerate() {
            pos_ep[id as usize] = p + 1;
        }
        for id in 1..=n {
            let pe = pos_e[id];
            let pp = pos_ep[id];
            let e_out = edge_darts[e_edges[pe] as usize][0];
            let e_in = edge_darts[e_edges[pe - 1] as usize][1];
            let ep_out = edge_darts[ep_edges[pp] as usize][0];
            let ep_in = edge_darts[ep_edges[pp - 1] as usize][1];
            if signs[id - 1] == 1 {
                sigma[e_out as usize] = ep_out;
                sigma[ep_out as usize] = e_in;
                sigma[e_in as usize] = ep_in;
                sigma[ep_in as usize] = e_out;
            } else {
                sigma[e_out as usize] = ep_in;
                sigma[ep_in as usize] = e_in;
                sigma[e_in as usize] = ep_out;
                sigma[ep_out as usize] = e_out;
            }
        }
        debug_assert!(sigma.iter().all(|&d| d != Dart::MAX));

        let curves = vec![
            CurveInfo {
                edges: e_edges,
                start: 0,
                end: 1,
            },
            CurveInfo {
                edges: ep_edges,
                start: 2,
                end: 3,
            },
        ];

        let mut map = TwoCurveMap {
            twin,
            sigma,
            origin,
            edge_of_dart,
            edge_darts,
            edge_curve,
            vertex_kind,
            vertex_dart: Vec::new(),
            vertex_degree: Vec::new(),
            curves,
            faces: Vec::new(),
            face_of_dart: Vec::new(),
            components: 0,
        };
        map.rebuild_vertex_index();
        map.retrace_faces()?;
        Ok(map)
    }

    fn rebuild_vertex_index(&mut self) {
        let nv = self.vertex_kind.len();
        self.vertex_dart = vec![Dart::MAX; nv];
        self.vertex_degree = vec![0; nv];
        for (d, &v) in self.origin.iter().enumerate() {
            if self.vertex_dart[v as usize] == Dart::MAX {
                self.vertex_dart[v as usize] = d as Dart;
            }
            self.vertex_degree[v as usize] += 1;
        }
    }

    /// Recomputes face orbits and validates the Euler characteristic of every
    /// connected component (`V - E + F = 2` per component on the sphere,
    /// i.e. `V - E + F = 1 + C` overall after merging outer orbits).
    fn retrace_faces(&mut self) -> Result<(), MapError> {
        let dart_count = self.twin.len();
        let mut orbit_of = vec![u32::MAX; dart_count];
        let mut orbits: Vec<Vec<Dart>> = Vec::new();
        for start in 0..dart_count as u32 {
            if orbit_of[start as usize] != u32::MAX {
                continue;
            }
            let idx = orbits.len() as u32;
            let mut cycle = Vec::new();
            let mut d = start;
            loop {
                orbit_of[d as usize] = idx;
                cycle.push(d);
                d = self.sigma[self.twin[d as usize] as usize];
                if d == start {
                    break;
                }
            }
            orbits.push(cycle);
        }

        // Connected components over vertices, walking each rotation once.
        debug_assert_eq!(self.vertex_dart.len(), self.vertex_kind.len());
        let nv = self.vertex_kind.len();
        let mut comp = vec![u32::MAX; nv];
        let mut n_comp = 0u32;
        for v0 in 0..nv {
            if comp[v0] != u32::MAX || self.vertex_dart[v0] == Dart::MAX {
                continue;
            }
            let c = n_comp;
            n_comp += 1;
            let mut stack = vec![v0 as VertexId];
            comp[v0] = c;
            while let Some(v) = stack.pop() {
                let first = self.vertex_dart[v as usize];
                let mut d = first;
                loop {
                    let w = self.origin[self.twin[d as usize] as usize];
                    if comp[w as usize] == u32::MAX {
                        comp[w as usize] = c;
                        stack.push(w);
                    }
                    d = self.sigma[d as usize];
                    if d == first {
                        break;
                    }
                }
            }
        }
        self.components = n_comp;

        // Per-component Euler check.
        let mut vc = vec![0usize; n_comp as usize];
        let mut ec = vec![0usize; n_comp as usize];
        let mut fc = vec![0usize; n_comp as usize];
        for v in 0..nv {
            vc[comp[v] as usize] += 1;
        }
        for &[f, _] in &self.edge_darts {
            ec[comp[self.origin[f as usize] as usize] as usize] += 1;
        }
        let mut orbit_comp = vec![0u32; orbits.len()];
        for (i, cycle) in orbits.iter().enumerate() {
            let c = comp[self.origin[cycle[0] as usize] as usize];
            orbit_comp[i] = c;
            fc[c as usize] += 1;
        }
        for c in 0..n_comp as usize {
            if vc[c] + fc[c] != ec[c] + 2 {
                return Err(MapError::EulerViolation {
                    v: vc[c],
                    e: ec[c],
                    f: fc[c],
                });
            }
        }

        if n_comp > 1 {
            // Components drawn side by side share one face; this is only
            // well-defined when every component is a tree-like arc with a
            // single orbit.
            if fc.iter().any(|&f| f != 1) {
                return Err(MapError::AmbiguousDisconnected);
            }
            let mut darts: Vec<Dart> = (0..dart_count as Dart).collect();
            darts.sort_unstable();
            self.faces = vec![Face {
                key: FaceId(0),
                darts,
                orbits: n_comp,
            }];
            self.face_of_dart = vec![0; dart_count];
            return Ok(());
        }

        // Canonical order: rotate each cycle to its minimum dart, sort faces
        // by key.
        let mut faces: Vec<Face> = orbits
            .into_iter()
            .map(|cycle| {
                let (min_pos, &min_dart) =
                    cycle.iter().enumerate().min_by_key(|&(_, &d)| d).unwrap();
                let mut rotated = Vec::with_capacity(cycle.len());
                rotated.extend_from_slice(&cycle[min_pos..]);
                rotated.extend_from_slice(&cycle[..min_pos]);
                Face {
                    key: FaceId(min_dart),
                    darts: rotated,
                    orbits: 1,
                }
            })
            .collect();
        faces.sort_by_key(|f| f.key);
        let mut face_of_dart = vec![0u32; dart_count];
        for (i, f) in faces.iter().enumerate() {
            for &d in &f.darts {
                face_of_dart[d as usize] = i as u32;
            }
        }
        self.faces = faces;
        self.face_of_dart = face_of_dart;
        Ok(())
    }

    pub fn crossing_count(&self) -> usize {
        self.vertex_kind
            .iter()
            .filter(|k| {
                matches!(
                    k,
                    VertexKind::Crossing { .. } | VertexKind::RouteCrossing { .. }
                )
            })
            .count()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_kind.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_darts.len()
    }

    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    pub fn components(&self) -> u32 {
        self.components
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_keys(&self) -> impl Iterator<Item = FaceId> + '_ {
        self.faces.iter().map(|f| f.key)
    }

    pub fn twin(&self, d: Dart) -> Dart {
        self.twin[d as usize]
    }

    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d as usize]
    }

    pub fn origin(&self, d: Dart) -> VertexId {
        self.origin[d as usize]
    }

    /// Target vertex of a dart.
    pub fn head(&self, d: Dart) -> VertexId {
        self.origin[self.twin[d as usize] as usize]
    }

    pub fn edge_of(&self, d: Dart) -> EdgeId {
        self.edge_of_dart[d as usize]
    }

    pub fn edge_darts(&self, e: EdgeId) -> [Dart; 2] {
        self.edge_darts[e as usize]
    }

    pub fn edge_curve(&self, e: EdgeId) -> CurveId {
        self.edge_curve[e as usize]
    }

    pub fn curve(&self, c: CurveId) -> &CurveInfo {
        &self.curves[c as usize]
    }

    pub fn curve_count(&self) -> usize {
        self.curves.len()
    }

    pub fn vertex_kind(&self, v: VertexId) -> VertexKind {
        self.vertex_kind[v as usize]
    }

    pub fn vertex_degree(&self, v: VertexId) -> u32 {
        self.vertex_degree[v as usize]
    }

    /// The vertex of the crossing with the given 1-based index along `e'`.
    pub fn crossing_vertex(&self, index: u32) -> VertexId {
        3 + index
    }

    /// Dense face index of the orbit containing `d` (the face to the
    /// geometric right of `d`).
    pub fn face_index_at(&self, d: Dart) -> usize {
        self.face_of_dart[d as usize] as usize
    }

    /// Face on the geometric right of `d` (the orbit containing `d`).
    pub fn right_face(&self, d: Dart) -> FaceId {
        self.faces[self.face_of_dart[d as usize] as usize].key
    }

    /// Face on the geometric left of `d`.
    pub fn left_face(&self, d: Dart) -> FaceId {
        self.right_face(self.twin[d as usize])
    }

    pub fn face(&self, id: FaceId) -> Option<&Face> {
        self.faces.iter().find(|f| f.key == id)
    }

    pub fn face_index(&self, id: FaceId) -> Option<usize> {
        self.faces.iter().position(|f| f.key == id)
    }

    /// The unique face incident to a degree-1 vertex.
    pub fn endpoint_face(&self, v: VertexId) -> Result<FaceId, MapError> {
        if self.vertex_degree[v as usize] != 1 {
            return Err(MapError::NotAnEndpoint(v));
        }
        Ok(self.right_face(self.vertex_dart[v as usize]))
    }

    /// All darts with origin `v`, in rotation order.
    pub fn darts_at(&self, v: VertexId) -> Vec<Dart> {
        let first = self.vertex_dart[v as usize];
        let mut out = vec![first];
        let mut d = self.sigma[first as usize];
        while d != first {
            out.push(d);
            d = self.sigma[d as usize];
        }
        out
    }

    /// Faces adjacent to each side of an edge: `(right_face(fwd), left_face(fwd))`.
    pub fn edge_sides(&self, e: EdgeId) -> (FaceId, FaceId) {
        let [f, b] = self.edge_darts[e as usize];
        (self.right_face(f), self.right_face(b))
    }

    /// Faces with a boundary cycle of exactly two darts on distinct curves:
    /// the lens-shaped cells of the arrangement.
    pub fn two_sided_faces(&self) -> Vec<FaceId> {
        self.faces
            .iter()
            .filter(|f| {
                f.orbits == 1
                    && f.darts.len() == 2
                    && self.edge_curve(self.edge_of(f.darts[0]))
                        != self.edge_curve(self.edge_of(f.darts[1]))
            })
            .map(|f| f.key)
            .collect()
    }
}

/// Where an inserted route begins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RouteStart {
    /// A fresh interior point of the given face (becomes a new vertex).
    InFace(FaceId),
    /// An existing degree-1 vertex.
    AtVertex(VertexId),
}

/// Result of [`TwoCurveMap::insert_route`].
#[derive(Debug, Clone)]
pub struct RouteOverlay {
    pub map: TwoCurveMap,
    pub route: CurveId,
    pub start_vertex: VertexId,
    pub end_vertex: VertexId,
    /// New crossing vertices, in route order.
    pub crossing_vertices: Vec<VertexId>,
    /// For each crossing, the two halves of the split edge in curve order:
    /// `(half towards the curve start, half towards the curve end)`.
    pub crossing_halves: Vec<(EdgeId, EdgeId)>,
    /// Old face key -> new face keys. Untraversed faces map to themselves;
    /// faces split by a route chord map to the two sides.
    pub face_map: BTreeMap<FaceId, Vec<FaceId>>,
}

impl TwoCurveMap {
    fn alloc_edge(&mut self, from: VertexId, to: VertexId, curve: CurveId) -> EdgeId {
        let id = self.edge_darts.len() as EdgeId;
        let fwd = self.twin.len() as Dart;
        self.origin.push(from);
        self.origin.push(to);
        self.twin.push(fwd + 1);
        self.twin.push(fwd);
        self.sigma.push(Dart::MAX);
        self.sigma.push(Dart::MAX);
        self.edge_of_dart.push(id);
        self.edge_of_dart.push(id);
        self.edge_darts.push([fwd, fwd + 1]);
        self.edge_curve.push(curve);
        id
    }

    fn alloc_vertex(&mut self, kind: VertexKind) -> VertexId {
        self.vertex_kind.push(kind);
        self.vertex_kind.len() as VertexId - 1
    }

    /// Overlays an auxiliary curve that starts at `start`, crosses the listed
    /// edges in order, and ends at the degree-1 vertex `end`.
    ///
    /// Consecutive crossed edges must border a common face along the walk;
    /// the precise side is taken from the face the route head currently
    /// occupies. Each traversed face except the first is split by the route
    /// chord. Crossed edges must be pairwise distinct.
    pub fn insert_route(
        &self,
        start: RouteStart,
        crossings: &[EdgeId],
        end: VertexId,
    ) -> Result<RouteOverlay, MapError> {
        for (i, &a) in crossings.iter().enumerate() {
            if a as usize >= self.edge_darts.len() {
                return Err(MapError::DisconnectedRoute(format!("unknown edge {a}")));
            }
            if crossings[i + 1..].contains(&a) {
                return Err(MapError::DisconnectedRoute(format!(
                    "edge {a} crossed twice by one route"
                )));
            }
        }
        if self.vertex_degree.get(end as usize).copied() != Some(1) {
            return Err(MapError::NotAnEndpoint(end));
        }

        let mut m = self.clone();
        let old_faces: Vec<(FaceId, Vec<Dart>)> = self
            .faces
            .iter()
            .map(|f| (f.key, f.darts.clone()))
            .collect();
        let route = m.curves.len() as CurveId;

        // The dangling head: the vertex the next segment leaves from, and the
        // corner of its rotation to splice into (`None` = fresh degree-0/1
        // vertex, `Some(d)` = insert after dart `d`).
        let (start_vertex, mut head_corner): (VertexId, Option<Dart>);
        let mut cur_face: FaceId;
        match start {
            RouteStart::InFace(f) => {
                if m.face_index(f).is_none() {
                    return Err(MapError::DisconnectedRoute(format!(
                        "start face {:?} does not exist",
                        f
                    )));
                }
                cur_face = f;
                start_vertex = m.alloc_vertex(VertexKind::RouteStart { route });
                head_corner = None;
            }
            RouteStart::AtVertex(v) => {
                cur_face = m.endpoint_face(v)?;
                start_vertex = v;
                head_corner = Some(m.vertex_dart[v as usize]);
            }
        }

        let mut head_vertex = start_vertex;
        let mut route_edges = Vec::new();
        let mut crossing_vertices = Vec::new();
        let mut crossing_halves = Vec::new();

        for (step, &orig_edge) in crossings.iter().enumerate() {
            // The edge keeps its id for the half towards the curve start, so
            // the original id is still the edge to cross.
            let [d_fwd, d_bwd] = m.edge_darts(orig_edge);
            let side = if m.left_face(d_fwd) == cur_face {
                d_fwd
            } else if m.left_face(d_bwd) == cur_face {
                d_bwd
            } else {
                return Err(MapError::DisconnectedRoute(format!(
                    "edge {orig_edge} does not border the current face at step {step}"
                )));
            };

            // Subdivide the crossed edge at a new vertex w. The half on
            // `side.origin`'s side keeps the edge id and the dart `side`;
            // the other half is a fresh edge reusing `twin(side)`.
            let w = m.alloc_vertex(VertexKind::RouteCrossing {
                route,
                step: step as u32 + 1,
            });
            let side_twin = m.twin[side as usize];
            let far_vertex = m.origin[side_twin as usize];
            // e1_back: new dart w -> side.origin completing the near half.
            // e2_fwd: new dart w -> far_vertex starting the far half.
            let e2 = m.alloc_edge(w, far_vertex, m.edge_curve(orig_edge));
            let [e2_fwd, e2_bwd_new] = m.edge_darts(e2);
            // Rewire: near half = (side, e2_bwd_new as its back)…  The fresh
            // pair allocated for e2 is (e2_fwd, e2_bwd); we want e1_back = the
            // dart paired with `side`, so swap roles: use e2_bwd_new as
            // e1_back and pair e2_fwd with the old twin.
            let e1_back = e2_bwd_new;
            m.origin[e1_back as usize] = w;
            m.twin[side as usize] = e1_back;
            m.twin[e1_back as usize] = side;
            m.twin[e2_fwd as usize] = side_twin;
            m.twin[side_twin as usize] = e2_fwd;
            m.edge_of_dart[e1_back as usize] = orig_edge;
            m.edge_of_dart[side_twin as usize] = e2;
            // Keep [forward, backward] along the curve for both halves.
            let curve_fwd_was_side = side == d_fwd;
            if curve_fwd_was_side {
                m.edge_darts[orig_edge as usize] = [side, e1_back];
                m.edge_darts[e2 as usize] = [e2_fwd, side_twin];
            } else {
                // `side` is the backward dart: the near half runs towards the
                // curve START, so along the curve it is (e1_back, side) and it
                // is the *later* half.
                m.edge_darts[orig_edge as usize] = [e1_back, side];
                m.edge_darts[e2 as usize] = [side_twin, e2_fwd];
            }
            // Insert the far half into the curve's edge list next to the near
            // half, in curve order.
            {
                let curve_id = m.edge_curve(orig_edge) as usize;
                let pos = m.curves[curve_id]
                    .edges
                    .iter()
                    .position(|&e| e == orig_edge)
                    .expect("edge belongs to its curve");
                if curve_fwd_was_side {
                    m.curves[curve_id].edges.insert(pos + 1, e2);
                } else {
                    m.curves[curve_id].edges.insert(pos, e2);
                }
            }
            // Record halves in curve order.
            crossing_halves.push(if curve_fwd_was_side {
                (orig_edge, e2)
            } else {
                (e2, orig_edge)
            });

            // Route segment from the previous head to w.
            let seg = m.alloc_edge(head_vertex, w, route);
            let [r_in, r_in_back] = m.edge_darts(seg);
            route_edges.push(seg);
            // Splice at the previous head.
            match head_corner {
                None => {
                    m.sigma[r_in as usize] = r_in;
                }
                Some(after) => {
                    let next = m.sigma[after as usize];
                    m.sigma[after as usize] = r_in;
                    m.sigma[r_in as usize] = next;
                }
            }
            // Rotation at w, counterclockwise: crossing from the left of
            // `side` to its right gives (e2_fwd, r_in_back, e1_back, r_out)
            // where the r_out slot is left dangling after e1_back. e2_fwd is
            // the dart leaving w in `side`'s direction in both branches.
            m.sigma[e2_fwd as usize] = r_in_back;
            m.sigma[r_in_back as usize] = e1_back;
            m.sigma[e1_back as usize] = e2_fwd;

            m.rebuild_vertex_index();
            m.retrace_faces()?;
            head_vertex = w;
            head_corner = Some(e1_back);
            cur_face = m.left_face(e1_back);
            crossing_vertices.push(w);
        }

        // Final segment to the end vertex.
        let end_dart = m.vertex_dart[end as usize];
        if m.right_face(end_dart) != cur_face {
            return Err(MapError::DisconnectedRoute(format!(
                "end vertex {end} does not lie on the final face"
            )));
        }
        let seg = m.alloc_edge(head_vertex, end, route);
        let [r_in, r_in_back] = m.edge_darts(seg);
        route_edges.push(seg);
        match head_corner {
            None => m.sigma[r_in as usize] = r_in,
            Some(after) => {
                let next = m.sigma[after as usize];
                m.sigma[after as usize] = r_in;
                m.sigma[r_in as usize] = next;
            }
        }
        if m.vertex_degree[end as usize] == 0 {
            m.sigma[r_in_back as usize] = r_in_back;
        } else {
            let next = m.sigma[end_dart as usize];
            m.sigma[end_dart as usize] = r_in_back;
            m.sigma[r_in_back as usize] = next;
        }
        m.curves.push(CurveInfo {
            edges: route_edges,
            start: start_vertex,
            end,
        });
        m.rebuild_vertex_index();
        m.retrace_faces()?;

        // Old face -> new faces, via representative old darts.
        let mut face_map = BTreeMap::new();
        for (key, darts) in old_faces {
            let mut keys: Vec<FaceId> = darts.iter().map(|&d| m.right_face(d)).collect();
            keys.sort_unstable();
            keys.dedup();
            face_map.insert(key, keys);
        }

        Ok(RouteOverlay {
            map: m,
            route,
            start_vertex,
            end_vertex: end,
            crossing_vertices,
            crossing_halves,
            face_map,
        })
    }
}

/// Face partition after deleting a curve: faces of the remaining arrangement
/// as unions of old faces.
#[derive(Debug, Clone)]
pub struct RegionQuotient {
    /// Region id (smallest member face key) per old face, keyed by face.
    region_of: BTreeMap<FaceId, FaceId>,
}

impl RegionQuotient {
    pub fn region_of_face(&self, f: FaceId) -> Option<FaceId> {
        self.region_of.get(&f).copied()
    }

    pub fn regions(&self) -> Vec<FaceId> {
        let mut regions: Vec<FaceId> = self.region_of.values().copied().collect();
        regions.sort_unstable();
        regions.dedup();
        regions
    }

    pub fn face_to_region(&self) -> &BTreeMap<FaceId, FaceId> {
        &self.region_of
    }
}

impl TwoCurveMap {
    /// Deletes a curve and reports which faces merge. Crossing vertices of
    /// the deleted curve dissolve into the surviving curves.
    pub fn delete_curve(&self, curve: CurveId) -> Result<RegionQuotient, MapError> {
        if curve as usize >= self.curves.len() {
            return Err(MapError::UnknownLabel(curve));
        }
        let nf = self.faces.len();
        let mut parent: Vec<usize> = (0..nf).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &e in &self.curves[curve as usize].edges {
            let [f, b] = self.edge_darts(e);
            let (a, c) = (self.face_index_at(f), self.face_index_at(b));
            let (ra, rc) = (find(&mut parent, a), find(&mut parent, c));
            if ra != rc {
                parent[ra.max(rc)] = ra.min(rc);
            }
        }
        let mut region_of = BTreeMap::new();
        for i in 0..nf {
            let r = find(&mut parent, i);
            region_of.insert(self.faces[i].key, self.faces[r].key);
        }
        Ok(RegionQuotient { region_of })
    }

    /// Region of the quotient in which a vertex sits, for vertices whose
    /// surviving corners all merge (endpoints of deleted or remaining
    /// pendant edges). Returns the set of distinct regions.
    pub fn vertex_regions(&self, q: &RegionQuotient, v: VertexId) -> Vec<FaceId> {
        let mut rs: Vec<FaceId> = self
            .darts_at(v)
            .iter()
            .map(|&d| {
                q.region_of_face(self.right_face(d))
                    .expect("face in quotient")
            })
            .collect();
        rs.sort_unstable();
        rs.dedup();
        rs
    }
}
