//! Global verification of a geometric drawing: star-simplicity, empty
//! lenses, per-pair and total crossing bounds, and the deadlock/spiral
//! consistency checks.

use num_bigint::BigUint;
use serde::Serialize;

use super::induce::induced_pair;
use super::{GeoError, GeometricDrawing, SegMeet};
use crate::bounds;
use crate::drawing::SpiralMode;

#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyOptions {
    /// Also test every two-sided cell for emptiness (diagnostic; for
    /// deadlock-free pairs this coincides with the minimal-lens check).
    pub all_lenses: bool,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
#[serde(tag = "kind", content = "detail")]
pub enum Violation {
    /// Two edges sharing a vertex cross.
    AdjacentCrossing(String),
    /// A lens with no vertex inside.
    EmptyLens(String),
    /// A pair exceeds the per-pair bound.
    PairBound(String),
    /// The drawing exceeds the total bound.
    TotalBound(String),
    /// A deadlock or spiral on an otherwise clean complete drawing; this
    /// contradicts the theory and means a bug on one side or the other.
    TheoryInconsistency(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct PairReport {
    pub a: usize,
    pub b: usize,
    pub crossings: usize,
    pub lenses: usize,
    pub empty_lenses: usize,
    pub deadlock: bool,
    /// None when the pair is deadlocked (the spiral predicate needs a
    /// deadlock-free pair).
    pub spiral: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub edge_count: usize,
    pub complete: bool,
    pub star_simple: bool,
    pub total_crossings: u64,
    /// `3*(n-4)!` when `n >= 4`.
    pub pair_bound: Option<String>,
    /// `n!`.
    pub total_bound: String,
    pub pairs: Vec<PairReport>,
    pub violations: Vec<Violation>,
    pub pass: bool,
}

/// Runs every check on a parsed drawing.
pub fn verify(gd: &GeometricDrawing, opts: VerifyOptions) -> Result<VerificationReport, GeoError> {
    let n = gd.n() as u64;
    let mut violations = Vec::new();

    // Star-simplicity: adjacent edges must not cross.
    let mut star_simple = true;
    for a in 0..gd.edges.len() {
        for b in a + 1..gd.edges.len() {
            if !gd.edges_adjacent(a, b) {
                continue;
            }
            let (ea, eb) = (&gd.edges[a], &gd.edges[b]);
            for (p0, p1) in ea.segments() {
                for (q0, q1) in eb.segments() {
                    if let SegMeet::Proper { .. } = super::segment_meet(p0, p1, q0, q1) {
                        star_simple = false;
                        violations.push(Violation::AdjacentCrossing(format!(
                            "edges {a} and {b} share a vertex but cross"
                        )));
                    }
                }
            }
        }
    }

    let (pair_bound, total_bound) = if n >= 4 {
        let (p, t) = bounds::bounds_for_n(n);
        (Some(p), t)
    } else {
        (None, bounds::factorial(n))
    };

    let mut pairs = Vec::new();
    let mut total: u64 = 0;
    let mut inconsistencies = Vec::new();
    for a in 0..gd.edges.len() {
        for b in a + 1..gd.edges.len() {
            if gd.edges_adjacent(a, b) {
                continue;
            }
            let pair = induced_pair(gd, a, b)?;
            let d = &pair.drawing;
            let crossings = d.n();
            total += crossings as u64;
            let deadlock = d.is_deadlock();

            // Lens emptiness. Minimal lenses suffice; on deadlocked pairs
            // (no outer face) the two-sided cells carry the same meaning.
            let lens_faces = if deadlock {
                d.map().two_sided_faces()
            } else {
                d.lens_faces().map_err(GeoError::Drawing)?
            };
            if opts.all_lenses && !deadlock {
                let two_sided = d.map().two_sided_faces();
                debug_assert_eq!(
                    {
                        let mut l = lens_faces.clone();
                        l.sort_unstable();
                        l
                    },
                    two_sided,
                    "minimal lenses and two-sided cells must coincide"
                );
            }
            let empty: Vec<_> = lens_faces
                .iter()
                .filter(|f| !d.points().contains(f))
                .collect();
            for f in &empty {
                violations.push(Violation::EmptyLens(format!(
                    "pair ({a}, {b}) has an empty lens at face {}",
                    f.0
                )));
            }

            let spiral = if deadlock {
                None
            } else {
                Some(d.is_spiral(SpiralMode::Either).map_err(GeoError::Drawing)?)
            };

            if let Some(pb) = &pair_bound {
                if BigUint::from(crossings as u64) > *pb {
                    violations.push(Violation::PairBound(format!(
                        "pair ({a}, {b}) has {crossings} crossings, above {pb}"
                    )));
                }
            }
            if deadlock {
                inconsistencies.push(format!("pair ({a}, {b}) is a deadlock"));
            }
            if spiral == Some(true) {
                inconsistencies.push(format!("pair ({a}, {b}) forms a spiral"));
            }

            pairs.push(PairReport {
                a,
                b,
                crossings,
                lenses: lens_faces.len(),
                empty_lenses: empty.len(),
                deadlock,
                spiral,
            });
        }
    }

    if BigUint::from(total) > total_bound {
        violations.push(Violation::TotalBound(format!(
            "{total} crossings exceed the total bound {total_bound}"
        )));
    }

    // A complete star-simple drawing with no empty lens cannot contain a
    // deadlock or a spiral; finding one there contradicts the theory and is
    // reported loudly as a failure.
    let complete = gd.is_complete();
    if complete && violations.is_empty() {
        for msg in inconsistencies {
            violations.push(Violation::TheoryInconsistency(msg));
        }
    }

    let pass = violations.is_empty();
    Ok(VerificationReport {
        n: n as usize,
        edge_count: gd.edges.len(),
        complete,
        star_simple,
        total_crossings: total,
        pair_bound: pair_bound.map(|b| b.to_string()),
        total_bound: total_bound.to_string(),
        pairs,
        violations,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::super::gdr::{build_geometric, GdrEdge, GdrFile};
    use super::*;

    fn pts(v: &[(i64, i64)]) -> Vec<[String; 2]> {
        v.iter()
            .map(|&(x, y)| [x.to_string(), y.to_string()])
            .collect()
    }

    fn straight_complete(coords: &[(i64, i64)]) -> GeometricDrawing {
        let n = coords.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push(GdrEdge {
                    u,
                    v,
                    polyline: pts(&[coords[u], coords[v]]),
                });
            }
        }
        build_geometric(&GdrFile {
            vertices: pts(coords),
            edges,
        })
        .unwrap()
    }

    #[test]
    fn convex_k5_passes_with_five_crossings() {
        let gd = straight_complete(&[(0, 0), (4, 0), (6, 3), (2, 6), (-2, 3)]);
        let report = verify(&gd, VerifyOptions::default()).unwrap();
        assert!(report.pass, "violations: {:?}", report.violations);
        assert!(report.star_simple);
        assert_eq!(report.total_crossings, 5);
        assert!(report.pairs.iter().all(|p| p.crossings <= 1));
        assert!(report.pairs.iter().all(|p| p.lenses == 0));
        assert!(report
            .pairs
            .iter()
            .all(|p| !p.deadlock && p.spiral == Some(false)));
    }

    #[test]
    fn convex_k6_passes_with_fifteen_crossings() {
        let gd = straight_complete(&[(0, 0), (5, 0), (8, 2), (7, 6), (2, 7), (-2, 3)]);
        let report = verify(&gd, VerifyOptions { all_lenses: true }).unwrap();
        assert!(report.pass, "violations: {:?}", report.violations);
        assert_eq!(report.total_crossings, 15);
        assert_eq!(report.pair_bound.as_deref(), Some("6"));
        assert_eq!(report.total_bound, "720");
    }

    #[test]
    fn adjacent_crossing_is_flagged() {
        let gd = build_geometric(&GdrFile {
            vertices: pts(&[(0, 0), (4, 0), (2, 3), (2, -3)]),
            edges: vec![
                GdrEdge {
                    u: 0,
                    v: 1,
                    polyline: pts(&[(0, 0), (4, 0)]),
                },
                GdrEdge {
                    u: 0,
                    v: 2,
                    polyline: pts(&[(0, 0), (2, -1), (2, 3)]),
                },
                GdrEdge {
                    u: 2,
                    v: 3,
                    polyline: pts(&[(2, 3), (5, 1), (2, -3)]),
                },
            ],
        })
        .unwrap();
        let report = verify(&gd, VerifyOptions::default()).unwrap();
        assert!(!report.pass);
        assert!(!report.star_simple);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::AdjacentCrossing(_))));
    }

    #[test]
    fn embedded_empty_twist_is_flagged() {
        // A zigzag crossing a straight edge three times with nothing in the
        // two lenses.
        let gd = build_geometric(&GdrFile {
            vertices: pts(&[(0, 1), (4, -1), (-1, 0), (5, 0)]),
            edges: vec![
                GdrEdge {
                    u: 0,
                    v: 1,
                    polyline: pts(&[(0, 1), (1, -1), (2, 1), (4, -1)]),
                },
                GdrEdge {
                    u: 2,
                    v: 3,
                    polyline: pts(&[(-1, 0), (5, 0)]),
                },
            ],
        })
        .unwrap();
        let report = verify(&gd, VerifyOptions::default()).unwrap();
        assert!(!report.pass);
        let empties = report
            .violations
            .iter()
            .filter(|v| matches!(v, Violation::EmptyLens(_)))
            .count();
        assert_eq!(empties, 2);
        assert_eq!(report.pairs[0].crossings, 3);
        assert_eq!(report.pairs[0].lenses, 2);
    }

    #[test]
    fn vertices_inside_lenses_silence_the_empty_lens_check() {
        // Same zigzag, with two extra vertices parked inside the lenses:
        // one under the first dip, one under the peak.
        let mut file = GdrFile {
            vertices: pts(&[(0, 1), (4, -1), (-1, 0), (5, 0)]),
            edges: vec![
                GdrEdge {
                    u: 0,
                    v: 1,
                    polyline: pts(&[(0, 1), (1, -1), (2, 1), (4, -1)]),
                },
                GdrEdge {
                    u: 2,
                    v: 3,
                    polyline: pts(&[(-1, 0), (5, 0)]),
                },
            ],
        };
        file.vertices.push(["1".into(), "-1/2".into()]);
        file.vertices.push(["2".into(), "1/2".into()]);
        let gd = build_geometric(&file).unwrap();
        let report = verify(&gd, VerifyOptions::default()).unwrap();
        assert!(report.pass, "violations: {:?}", report.violations);
        assert_eq!(report.pairs[0].lenses, 2);
        assert_eq!(report.pairs[0].empty_lenses, 0);
    }
}
