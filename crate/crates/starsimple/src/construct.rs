//! Generators for the extremal two-edge families: twists, the doubling
//! family, its enhanced variant, and the spiral configuration. All are
//! produced as validated drawings with one marker per lens, ready to feed
//! the predicates and the search.

use thiserror::Error;

use crate::drawing::{DrawingError, PointSpec, TwoEdgeDrawing};
use crate::map::FaceId;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("the enhanced family is defined for k >= 2")]
    EnhancedUndefined,
    #[error("twists need at least one crossing")]
    EmptyTwist,
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstructionKind {
    Twist,
    Spiral,
    Doubling,
    Enhanced,
}

/// A named construction with the certificates its output must satisfy.
#[derive(Debug, Clone)]
pub struct ConstructionRecipe {
    pub kind: ConstructionKind,
    pub param: u64,
    pub expected_crossings: u64,
    pub expected_lenses: u64,
}

impl ConstructionRecipe {
    pub fn generate(&self) -> Result<TwoEdgeDrawing, ConstructError> {
        match self.kind {
            ConstructionKind::Twist => twist(self.param),
            ConstructionKind::Spiral => spiral_example(),
            ConstructionKind::Doubling => doubling(self.param),
            ConstructionKind::Enhanced => enhanced_doubling(self.param),
        }
    }
}

pub fn recipe(kind: ConstructionKind, param: u64) -> ConstructionRecipe {
    let (expected_crossings, expected_lenses) = match kind {
        ConstructionKind::Twist => (param, param.saturating_sub(1)),
        ConstructionKind::Spiral => (6, 2),
        ConstructionKind::Doubling => (1 << param, param),
        ConstructionKind::Enhanced => ((1 << param) + (1 << param.saturating_sub(2)), param),
    };
    ConstructionRecipe {
        kind,
        param,
        expected_crossings,
        expected_lenses,
    }
}

/// One doubling step: the meander is replaced by a hairpin running along
/// both of its sides, doubling every crossing, and the old far endpoint
/// becomes an interior point inside the new turn lens.
///
/// Crossing `o` splits into the pair `2o-1, 2o`; the outbound strand takes
/// the left one where the old crossing went upward and the right one where
/// it went downward, and the return strand takes the other in reverse order
/// with flipped signs.
pub fn doubling_step(order: &[u32], signs: &[i8]) -> (Vec<u32>, Vec<i8>) {
    let n = order.len();
    let mut new_order = Vec::with_capacity(2 * n);
    let mut new_signs = vec![0i8; 2 * n];
    let outbound = |o: u32| {
        if signs[o as usize - 1] < 0 {
            2 * o - 1
        } else {
            2 * o
        }
    };
    let comeback = |o: u32| {
        if signs[o as usize - 1] < 0 {
            2 * o
        } else {
            2 * o - 1
        }
    };
    for &o in order {
        new_order.push(outbound(o));
        new_signs[outbound(o) as usize - 1] = signs[o as usize - 1];
    }
    for &o in order.iter().rev() {
        new_order.push(comeback(o));
        new_signs[comeback(o) as usize - 1] = -signs[o as usize - 1];
    }
    (new_order, new_signs)
}

fn validated(order: &[u32], signs: &[i8]) -> Result<TwoEdgeDrawing, ConstructError> {
    Ok(TwoEdgeDrawing::validate(
        order,
        signs,
        PointSpec::AutoLens,
        None,
    )?)
}

/// `m` crossings with both orders the identity and alternating signs: the
/// stacked-arc family whose every bag is a lens. With no markers, every lens
/// is empty; its hitting number `m-1` grows with `m`.
pub fn twist(m: u64) -> Result<TwoEdgeDrawing, ConstructError> {
    if m == 0 {
        return Err(ConstructError::EmptyTwist);
    }
    let order: Vec<u32> = (1..=m as u32).collect();
    let signs: Vec<i8> = (0..m).map(|i| if i % 2 == 0 { 1 } else { -1 }).collect();
    Ok(TwoEdgeDrawing::validate(
        &order,
        &signs,
        PointSpec::Faces(Vec::new()),
        None,
    )?)
}

/// `2^k` crossings and `k` marked lenses, by `k` doubling steps from a
/// single crossing. Admissible for hitting number `k`.
pub fn doubling(k: u64) -> Result<TwoEdgeDrawing, ConstructError> {
    let (mut order, mut signs) = (vec![1u32], vec![1i8]);
    for _ in 0..k {
        (order, signs) = doubling_step(&order, &signs);
    }
    validated(&order, &signs)
}

/// The five-crossing seed of the enhanced family: one more crossing than
/// the doubled pair at the same hitting number.
pub fn enhanced_seed_encoding() -> (Vec<u32>, Vec<i8>) {
    (vec![1, 4, 3, 2, 5], vec![1, -1, 1, -1, 1])
}

/// `2^k + 2^(k-2)` crossings and `k` marked lenses for `k >= 2`: doubling
/// steps applied to the five-crossing seed.
pub fn enhanced_doubling(k: u64) -> Result<TwoEdgeDrawing, ConstructError> {
    if k < 2 {
        return Err(ConstructError::EnhancedUndefined);
    }
    let (mut order, mut signs) = enhanced_seed_encoding();
    for _ in 2..k {
        (order, signs) = doubling_step(&order, &signs);
    }
    validated(&order, &signs)
}

/// Six crossings forming a spiral: the meander tunnels around one of its
/// lenses so that every curve from that lens to an endpoint deadlocks with
/// the straight edge. Deadlock-free, spiral-positive, inadmissible for
/// every hitting number.
pub fn spiral_example() -> Result<TwoEdgeDrawing, ConstructError> {
    validated(&[5, 2, 3, 4, 1, 6], &[1, -1, 1, -1, 1, -1])
}

/// Example drawings used across the test suites. They are not part of the
/// construction families but exercise specific shapes.
pub mod fixtures {
    use super::*;

    /// Two crossings where one edge loops around an endpoint of the other:
    /// the smallest deadlock. The outer face is chosen at the far endpoint
    /// of the straight edge.
    pub fn deadlock_loop() -> TwoEdgeDrawing {
        build_deadlock(&[1, 2], &[-1, -1])
    }

    /// Three crossings with a marked lens where the loop of one edge traps
    /// an endpoint of the other.
    pub fn deadlock_enclosed_vertex() -> TwoEdgeDrawing {
        build_deadlock(&[2, 1, 3], &[1, -1, -1])
    }

    /// Nine crossings coiling inward around an endpoint hidden in the
    /// middle: unboundedly extendable, one lens, deadlocked.
    pub fn coil() -> TwoEdgeDrawing {
        build_deadlock(
            &[1, 9, 2, 8, 3, 7, 4, 6, 5],
            &[1, 1, 1, 1, 1, -1, -1, -1, -1],
        )
    }

    /// Fifteen crossings whose deepest lens sits four bags deep; also hides
    /// a spiral at another lens.
    pub fn deep_meander() -> TwoEdgeDrawing {
        TwoEdgeDrawing::validate(
            &[1, 2, 5, 8, 13, 12, 11, 10, 9, 4, 3, 14, 7, 6, 15],
            &[1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1],
            PointSpec::AutoLens,
            None,
        )
        .expect("fixture is valid")
    }

    fn build_deadlock(order: &[u32], signs: &[i8]) -> TwoEdgeDrawing {
        let probe =
            TwoEdgeDrawing::validate_lenient(order, signs, PointSpec::Faces(Vec::new()), None)
                .expect("fixture is plane-realizable");
        // Deadlocked fixtures need an explicit outer face: use the face at
        // the far endpoint of the straight edge.
        let outer: FaceId = probe.map().endpoint_face(3).expect("endpoint");
        TwoEdgeDrawing::validate(order, signs, PointSpec::Faces(Vec::new()), Some(outer))
            .expect("fixture is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::{EEnd, HittingMode, SpiralMode};

    #[test]
    fn doubling_family_counts() {
        for k in 0..=6u64 {
            let d = doubling(k).unwrap();
            assert_eq!(d.n() as u64, 1 << k, "k = {k}");
            assert_eq!(d.lens_indices().unwrap().len() as u64, k, "k = {k}");
            assert_eq!(d.points().len() as u64, k);
            let (hit, ok) = d.check_hitting().unwrap();
            assert_eq!(hit as u64, k);
            assert!(ok);
        }
    }

    #[test]
    fn doubling_small_cases_match_expected_classes() {
        // One step from a single crossing gives the two-crossing lens class.
        let d1 = doubling(1).unwrap();
        let lens = TwoEdgeDrawing::validate(&[1, 2], &[1, -1], PointSpec::AutoLens, None).unwrap();
        assert_eq!(d1.canonical_form(), lens.canonical_form());
        // Two steps give the four-crossing out-and-back meander.
        let d2 = doubling(2).unwrap();
        let meander =
            TwoEdgeDrawing::validate(&[1, 4, 3, 2], &[-1, 1, -1, 1], PointSpec::AutoLens, None)
                .unwrap();
        assert_eq!(d2.canonical_form(), meander.canonical_form());
    }

    #[test]
    fn doubling_family_is_admissible_and_spiral_free() {
        for k in 0..=3u64 {
            let d = doubling(k).unwrap();
            assert!(!d.is_deadlock());
            assert!(!d.is_spiral(SpiralMode::Either).unwrap());
            assert!(d.admissible(k as usize, HittingMode::AtMost).unwrap());
            assert!(
                !d.admissible(k.saturating_sub(1) as usize, HittingMode::AtMost)
                    .unwrap()
                    || k == 0
            );
        }
    }

    #[test]
    fn enhanced_family_counts() {
        assert_eq!(
            enhanced_doubling(0).unwrap_err(),
            ConstructError::EnhancedUndefined
        );
        assert_eq!(
            enhanced_doubling(1).unwrap_err(),
            ConstructError::EnhancedUndefined
        );
        for k in 2..=6u64 {
            let d = enhanced_doubling(k).unwrap();
            assert_eq!(d.n() as u64, (1 << k) + (1 << (k - 2)), "k = {k}");
            assert_eq!(d.lens_indices().unwrap().len() as u64, k);
        }
    }

    #[test]
    fn enhanced_seed_has_five_crossings_two_lenses() {
        let d = enhanced_doubling(2).unwrap();
        assert_eq!(d.n(), 5);
        assert_eq!(d.lens_indices().unwrap(), vec![2, 3]);
        assert!(d.admissible(2, HittingMode::AtMost).unwrap());
        d.properties_p123(EEnd::End).unwrap();
    }

    #[test]
    fn crossings_double_per_step() {
        let mut prev = doubling(0).unwrap().n();
        for k in 1..=5u64 {
            let n = doubling(k).unwrap().n();
            assert_eq!(n, 2 * prev);
            prev = n;
        }
        let mut prev = enhanced_doubling(2).unwrap().n();
        for k in 3..=6u64 {
            let n = enhanced_doubling(k).unwrap().n();
            assert_eq!(n, 2 * prev);
            prev = n;
        }
    }

    #[test]
    fn twists_have_empty_lenses() {
        assert_eq!(twist(0).unwrap_err(), ConstructError::EmptyTwist);
        let t1 = twist(1).unwrap();
        assert_eq!(t1.n(), 1);
        assert!(t1.lens_indices().unwrap().is_empty());
        for m in 3..=6u64 {
            let t = twist(m).unwrap();
            assert_eq!(t.n() as u64, m);
            assert_eq!(t.bags().unwrap().len() as u64, m - 1);
            assert_eq!(t.hitting_number().unwrap() as u64, m - 1);
            let (hit, ok) = t.check_hitting().unwrap();
            assert_eq!(hit as u64, m - 1);
            assert!(!ok, "twists carry no markers, so their lenses are empty");
            assert!(!t.empty_lenses().unwrap().is_empty());
        }
    }

    #[test]
    fn doubling_without_markers_fails_hitting() {
        let d = doubling(2).unwrap();
        let bare =
            TwoEdgeDrawing::validate(d.order_e(), d.signs(), PointSpec::Faces(Vec::new()), None)
                .unwrap();
        assert_eq!(bare.check_hitting().unwrap(), (2, false));
        assert_eq!(bare.empty_lenses().unwrap().len(), 2);
    }

    #[test]
    fn spiral_example_is_a_spiral_but_not_a_deadlock() {
        let d = spiral_example().unwrap();
        assert_eq!(d.n(), 6);
        assert!(!d.is_deadlock());
        assert!(d.is_spiral(SpiralMode::Either).unwrap());
        for k in 0..6 {
            assert!(!d.admissible(k, HittingMode::AtMost).unwrap());
        }
    }

    #[test]
    fn deadlock_fixtures_are_deadlocks() {
        assert!(fixtures::deadlock_loop().is_deadlock());
        assert!(fixtures::deadlock_enclosed_vertex().is_deadlock());
        assert!(fixtures::coil().is_deadlock());
        assert!(!fixtures::deep_meander().is_deadlock());
    }

    #[test]
    fn recipes_match_generated_drawings() {
        for (kind, params) in [
            (ConstructionKind::Twist, vec![1, 3, 5]),
            (ConstructionKind::Doubling, vec![0, 1, 2, 3]),
            (ConstructionKind::Enhanced, vec![2, 3, 4]),
            (ConstructionKind::Spiral, vec![0]),
        ] {
            for p in params {
                let r = recipe(kind, p);
                let d = r.generate().unwrap();
                assert_eq!(d.n() as u64, r.expected_crossings);
                assert_eq!(d.lens_indices().unwrap().len() as u64, r.expected_lenses);
            }
        }
    }
}
