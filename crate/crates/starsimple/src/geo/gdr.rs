//! The `.gdr` file format and its validation: a JSON description of a
//! geometric graph drawing with rational coordinates.
//!
//! ```json
//! {
//!   "vertices": [["0/1", "0/1"], ["4/1", "0/1"]],
//!   "edges": [{"u": 0, "v": 1, "polyline": [["0/1", "0/1"], ["4/1", "0/1"]]}]
//! }
//! ```
//!
//! Parsing validates the topological-drawing invariants exactly: vertices
//! are distinct, polylines are simple and joined to their vertices, no
//! vertex sits in the interior of an edge, no two edges overlap or touch
//! tangentially, and no three edges pass through a single point.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{segment_meet, GPoint, GeoEdge, GeoError, GeometricDrawing, Rat, SegMeet};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GdrFile {
    pub vertices: Vec<[String; 2]>,
    pub edges: Vec<GdrEdge>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GdrEdge {
    pub u: usize,
    pub v: usize,
    pub polyline: Vec<[String; 2]>,
}

fn parse_rat(s: &str) -> Result<Rat, GeoError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n = BigInt::from_str(num.trim())
        .map_err(|_| GeoError::Format(format!("bad rational {s:?}")))?;
    let d = BigInt::from_str(den.trim())
        .map_err(|_| GeoError::Format(format!("bad rational {s:?}")))?;
    if d == BigInt::from(0) {
        return Err(GeoError::Format(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(n, d))
}

fn rat_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn parse_point(p: &[String; 2]) -> Result<GPoint, GeoError> {
    Ok(GPoint::new(parse_rat(&p[0])?, parse_rat(&p[1])?))
}

pub fn serialize_geometric(gd: &GeometricDrawing) -> String {
    let file = GdrFile {
        vertices: gd
            .vertices
            .iter()
            .map(|p| [rat_string(&p.x), rat_string(&p.y)])
            .collect(),
        edges: gd
            .edges
            .iter()
            .map(|e| GdrEdge {
                u: e.u,
                v: e.v,
                polyline: e
                    .polyline
                    .iter()
                    .map(|p| [rat_string(&p.x), rat_string(&p.y)])
                    .collect(),
            })
            .collect(),
    };
    serde_json::to_string(&file).expect("gdr files serialize")
}

/// Parses and fully validates a geometric drawing.
pub fn parse_geometric(text: &str) -> Result<GeometricDrawing, GeoError> {
    let file: GdrFile = serde_json::from_str(text).map_err(|e| GeoError::Format(e.to_string()))?;
    build_geometric(&file)
}

pub fn build_geometric(file: &GdrFile) -> Result<GeometricDrawing, GeoError> {
    let vertices: Vec<GPoint> = file
        .vertices
        .iter()
        .map(parse_point)
        .collect::<Result<_, _>>()?;
    for (i, a) in vertices.iter().enumerate() {
        for b in &vertices[i + 1..] {
            if a == b {
                return Err(GeoError::Format(format!(
                    "duplicate vertex at {:?}",
                    rat_pair(a)
                )));
            }
        }
    }

    let mut seen_pairs = BTreeSet::new();
    let mut edges = Vec::with_capacity(file.edges.len());
    for (idx, e) in file.edges.iter().enumerate() {
        if e.u >= vertices.len() || e.v >= vertices.len() || e.u == e.v {
            return Err(GeoError::Format(format!("edge {idx} has bad endpoints")));
        }
        if !seen_pairs.insert((e.u.min(e.v), e.u.max(e.v))) {
            return Err(GeoError::Format(format!(
                "edge {idx} duplicates a vertex pair"
            )));
        }
        let polyline: Vec<GPoint> = e
            .polyline
            .iter()
            .map(parse_point)
            .collect::<Result<_, _>>()?;
        if polyline.len() < 2 {
            return Err(GeoError::Format(format!(
                "edge {idx} has fewer than two points"
            )));
        }
        if polyline[0] != vertices[e.u] || polyline[polyline.len() - 1] != vertices[e.v] {
            return Err(GeoError::Format(format!(
                "edge {idx} polyline does not join its vertices"
            )));
        }
        if polyline.windows(2).any(|w| w[0] == w[1]) {
            return Err(GeoError::Format(format!("edge {idx} repeats a point")));
        }
        edges.push(GeoEdge {
            u: e.u,
            v: e.v,
            polyline,
        });
    }
    let gd = GeometricDrawing { vertices, edges };
    validate_incidences(&gd)?;
    Ok(gd)
}

fn rat_pair(p: &GPoint) -> (String, String) {
    (rat_string(&p.x), rat_string(&p.y))
}

fn validate_incidences(gd: &GeometricDrawing) -> Result<(), GeoError> {
    // Each polyline is simple.
    for (idx, e) in gd.edges.iter().enumerate() {
        let segs: Vec<(&GPoint, &GPoint)> = e.segments().collect();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let meet = segment_meet(segs[i].0, segs[i].1, segs[j].0, segs[j].1);
                let adjacent = j == i + 1;
                match meet {
                    SegMeet::None => {}
                    SegMeet::Touch { ref point } if adjacent && point == segs[j].0 => {}
                    _ => {
                        return Err(GeoError::DegenerateIncidence(format!(
                            "edge {idx} is not a simple polyline"
                        )))
                    }
                }
            }
        }
    }

    // No vertex in the relative interior of any edge.
    for (w_idx, w) in gd.vertices.iter().enumerate() {
        for (idx, e) in gd.edges.iter().enumerate() {
            let is_end = (e.u == w_idx) || (e.v == w_idx);
            for (s, (a, b)) in e.segments().enumerate() {
                if !super::on_segment(w, a, b) {
                    continue;
                }
                let at_start = s == 0 && w == &e.polyline[0];
                let at_end = s == e.polyline.len() - 2 && w == &e.polyline[e.polyline.len() - 1];
                if !(is_end && (at_start || at_end)) {
                    return Err(GeoError::DegenerateIncidence(format!(
                        "vertex {w_idx} lies on edge {idx}"
                    )));
                }
            }
        }
    }

    // Pairwise edge incidences and the triple-point check.
    let mut crossing_points: BTreeMap<(String, String), (usize, usize)> = BTreeMap::new();
    for a in 0..gd.edges.len() {
        for b in a + 1..gd.edges.len() {
            let (ea, eb) = (&gd.edges[a], &gd.edges[b]);
            let shared: Vec<&GPoint> = [eb.u, eb.v]
                .iter()
                .filter(|&&x| x == ea.u || x == ea.v)
                .map(|&x| &gd.vertices[x])
                .collect();
            for (sa, (p0, p1)) in ea.segments().enumerate() {
                for (sb, (q0, q1)) in eb.segments().enumerate() {
                    match segment_meet(p0, p1, q0, q1) {
                        SegMeet::None => {}
                        SegMeet::Overlap => {
                            return Err(GeoError::DegenerateIncidence(format!(
                                "edges {a} and {b} overlap"
                            )))
                        }
                        SegMeet::Touch { point } => {
                            // The only permitted touch is at a shared graph
                            // vertex, at the polyline ends.
                            let fine = shared.contains(&&point)
                                && ((sa == 0 && &point == p0)
                                    || (sa == ea.polyline.len() - 2 && &point == p1))
                                && ((sb == 0 && &point == q0)
                                    || (sb == eb.polyline.len() - 2 && &point == q1));
                            if !fine {
                                return Err(GeoError::DegenerateIncidence(format!(
                                    "edges {a} and {b} touch without crossing properly"
                                )));
                            }
                        }
                        SegMeet::Proper { point, .. } => {
                            let key = rat_pair(&point);
                            if let Some(&(pa, pb)) = crossing_points.get(&key) {
                                if (pa, pb) != (a, b) {
                                    return Err(GeoError::DegenerateIncidence(format!(
                                        "three edges pass through one point ({}, {})",
                                        key.0, key.1
                                    )));
                                }
                            }
                            crossing_points.insert(key, (a, b));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg_edge(u: usize, v: usize, pts: &[(i64, i64)]) -> GdrEdge {
        GdrEdge {
            u,
            v,
            polyline: pts
                .iter()
                .map(|&(x, y)| [format!("{x}/1"), format!("{y}/1")])
                .collect(),
        }
    }

    fn verts(pts: &[(i64, i64)]) -> Vec<[String; 2]> {
        pts.iter()
            .map(|&(x, y)| [format!("{x}/1"), format!("{y}/1")])
            .collect()
    }

    #[test]
    fn straight_line_k4_parses() {
        let file = GdrFile {
            vertices: verts(&[(0, 0), (4, 0), (2, 3), (2, 1)]),
            edges: vec![
                seg_edge(0, 1, &[(0, 0), (4, 0)]),
                seg_edge(0, 2, &[(0, 0), (2, 3)]),
                seg_edge(0, 3, &[(0, 0), (2, 1)]),
                seg_edge(1, 2, &[(4, 0), (2, 3)]),
                seg_edge(1, 3, &[(4, 0), (2, 1)]),
                seg_edge(2, 3, &[(2, 3), (2, 1)]),
            ],
        };
        let gd = build_geometric(&file).unwrap();
        assert_eq!(gd.n(), 4);
        assert!(gd.is_complete());
    }

    #[test]
    fn overlapping_collinear_edges_are_degenerate() {
        let file = GdrFile {
            vertices: verts(&[(0, 0), (3, 0), (1, 1), (4, 1)]),
            edges: vec![
                seg_edge(0, 1, &[(0, 0), (3, 0)]),
                seg_edge(2, 3, &[(1, 1), (1, 0), (4, 0), (4, 1)]),
            ],
        };
        assert!(matches!(
            build_geometric(&file),
            Err(GeoError::DegenerateIncidence(_))
        ));
    }

    #[test]
    fn three_concurrent_segments_are_degenerate() {
        let file = GdrFile {
            vertices: verts(&[(0, 0), (2, 2), (0, 2), (2, 0), (1, 0), (1, 2)]),
            edges: vec![
                seg_edge(0, 1, &[(0, 0), (2, 2)]),
                seg_edge(2, 3, &[(0, 2), (2, 0)]),
                seg_edge(4, 5, &[(1, 0), (1, 2)]),
            ],
        };
        match build_geometric(&file) {
            Err(GeoError::DegenerateIncidence(msg)) => {
                assert!(msg.contains("three edges"), "{msg}");
            }
            other => panic!("expected triple-point rejection, got {other:?}"),
        }
    }

    #[test]
    fn vertex_on_edge_interior_is_degenerate() {
        let file = GdrFile {
            vertices: verts(&[(0, 0), (4, 0), (2, 0), (2, 3)]),
            edges: vec![
                seg_edge(0, 1, &[(0, 0), (4, 0)]),
                seg_edge(2, 3, &[(2, 0), (2, 3)]),
            ],
        };
        assert!(matches!(
            build_geometric(&file),
            Err(GeoError::DegenerateIncidence(_))
        ));
    }

    #[test]
    fn tangential_touch_is_degenerate() {
        let file = GdrFile {
            vertices: verts(&[(0, 0), (4, 0), (2, 2), (2, 4)]),
            edges: vec![
                seg_edge(0, 1, &[(0, 0), (4, 0)]),
                // Dips down to touch the segment at (2,0) without crossing.
                seg_edge(2, 3, &[(2, 2), (1, 1), (2, 0), (3, 1), (2, 4)]),
            ],
        };
        assert!(matches!(
            build_geometric(&file),
            Err(GeoError::DegenerateIncidence(_))
        ));
    }

    #[test]
    fn parse_accepts_plain_integers_and_roundtrips() {
        let text = r#"{"vertices":[["0","0"],["4","0"]],"edges":[{"u":0,"v":1,"polyline":[["0","0"],["4","0"]]}]}"#;
        let gd = parse_geometric(text).unwrap();
        let out = serialize_geometric(&gd);
        let gd2 = parse_geometric(&out).unwrap();
        assert_eq!(serialize_geometric(&gd2), out);
    }
}
