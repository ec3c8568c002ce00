//! Bags, their laminar nesting forest, and lens detection.
//!
//! Bag `B_i` is the region enclosed by the gap `g_i` (the `e'` piece between
//! crossings `i` and `i+1`) and the `e` piece `h_i` between the same
//! crossings; "enclosed" means the side not containing the outer face. Two
//! bag interiors are always nested or disjoint, so the containment order is
//! a forest, and the bags whose `h_i` is crossing-free are exactly the
//! minimal lenses.

use super::{DrawingError, TwoEdgeDrawing};
use crate::map::{EdgeId, FaceId};

/// Set of faces, as a bitset over the dense face indices of one map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceSet {
    words: Vec<u64>,
    universe: usize,
}

impl FaceSet {
    pub fn empty(universe: usize) -> Self {
        FaceSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &FaceSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &FaceSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.universe).filter(|&i| self.contains(i))
    }
}

/// The region between consecutive crossings `i` and `i+1` along `e'`.
#[derive(Debug, Clone)]
pub struct Bag {
    /// 1-based index: the bag between crossings `i` and `i+1`.
    pub index: u32,
    /// The `e'` edge between the two crossings.
    pub gap: EdgeId,
    /// The `e` edges between the two crossings, in order along `e`.
    pub piece: Vec<EdgeId>,
    /// Faces strictly inside the Jordan curve `gap ∪ piece`.
    pub interior: FaceSet,
}

impl Bag {
    /// True when the `e` piece is crossing-free, i.e. the two crossings are
    /// consecutive along `e` as well: the bag is a minimal lens.
    pub fn is_lens(&self) -> bool {
        self.piece.len() == 1
    }
}

/// Containment forest of the bags plus lens flags.
#[derive(Debug, Clone)]
pub struct LaminarForest {
    /// Parent bag index (1-based) per bag, in bag order `1..=n-1`;
    /// `None` for roots.
    pub parent: Vec<Option<u32>>,
    /// Lens flag per bag, in bag order.
    pub lens: Vec<bool>,
}

impl LaminarForest {
    /// Ancestor chain of a bag, starting at the bag itself and ending at its
    /// root, as 1-based bag indices.
    pub fn chain(&self, index: u32) -> Vec<u32> {
        let mut out = vec![index];
        let mut cur = index;
        while let Some(p) = self.parent[cur as usize - 1] {
            out.push(p);
            cur = p;
        }
        out
    }

    pub fn roots(&self) -> Vec<u32> {
        self.parent
            .iter()
            .enumerate()
            .filter(|(_, p)| p.is_none())
            .map(|(i, _)| i as u32 + 1)
            .collect()
    }

    /// Depth of a bag in the forest (1 for roots).
    pub fn depth(&self, index: u32) -> usize {
        self.chain(index).len()
    }
}

impl TwoEdgeDrawing {
    /// All bags `B_1..B_{n-1}`, with interiors computed against the outer
    /// face. Empty for `n < 2`.
    pub fn bags(&self) -> Result<Vec<Bag>, DrawingError> {
        if self.n() < 2 {
            return Ok(Vec::new());
        }
        let outer = self.outer()?;
        let map = self.map();
        let nf = map.faces().len();
        let outer_idx = map.face_index(outer).expect("outer face exists");

        // Face adjacency across each edge.
        let mut adj: Vec<Vec<(usize, EdgeId)>> = vec![Vec::new(); nf];
        for e in 0..map.edge_count() as EdgeId {
            let [f, b] = map.edge_darts(e);
            let (a, c) = (map.face_index_at(f), map.face_index_at(b));
            adj[a].push((c, e));
            adj[c].push((a, e));
        }

        let mut bags = Vec::with_capacity(self.n() - 1);
        for i in 1..self.n() as u32 {
            let gap = self.gap_edge(i);
            let piece = self.piece_edges(i);
            let mut on_jordan = vec![false; map.edge_count()];
            on_jordan[gap as usize] = true;
            for &e in &piece {
                on_jordan[e as usize] = true;
            }

            // Everything reachable from the outer face without crossing the
            // Jordan curve is outside; the rest is the bag interior.
            let mut outside = vec![false; nf];
            outside[outer_idx] = true;
            let mut stack = vec![outer_idx];
            while let Some(f) = stack.pop() {
                for &(g, e) in &adj[f] {
                    if !on_jordan[e as usize] && !outside[g] {
                        outside[g] = true;
                        stack.push(g);
                    }
                }
            }
            let mut interior = FaceSet::empty(nf);
            for (f, out) in outside.iter().enumerate() {
                if !out {
                    interior.insert(f);
                }
            }

            // The gap must separate inside from outside.
            let [gf, gb] = map.edge_darts(gap);
            let gi = interior.contains(map.face_index_at(gf));
            let go = interior.contains(map.face_index_at(gb));
            debug_assert_ne!(gi, go, "gap of bag {i} must bound its interior");

            bags.push(Bag {
                index: i,
                gap,
                piece,
                interior,
            });
        }
        Ok(bags)
    }

    /// Indices of the lens bags: crossings consecutive along both edges.
    pub fn lens_indices(&self) -> Result<Vec<u32>, DrawingError> {
        if self.n() < 2 {
            return Ok(Vec::new());
        }
        // Lens-ness is a property of the encoding alone, but bags (and hence
        // the faces a lens bounds) need the outer face.
        self.outer()?;
        Ok((1..self.n() as u32)
            .filter(|&i| {
                let (p, q) = (self.pos_along_e(i), self.pos_along_e(i + 1));
                p.abs_diff(q) == 1
            })
            .collect())
    }

    /// The single interior face of each lens, in lens order.
    pub fn lens_faces(&self) -> Result<Vec<FaceId>, DrawingError> {
        let lenses = self.lens_indices()?;
        let map = self.map();
        let outer = if lenses.is_empty() {
            return Ok(Vec::new());
        } else {
            self.outer()?
        };
        let mut out = Vec::with_capacity(lenses.len());
        for &i in &lenses {
            let gap = self.gap_edge(i);
            let piece = self.piece_edges(i);
            debug_assert_eq!(piece.len(), 1);
            // The lens face is the two-darted face bounded by the gap and the
            // piece; it is the side of the gap whose face is not the outer
            // bound of a bigger cell, i.e. the face whose cycle has length 2.
            let [gf, gb] = map.edge_darts(gap);
            let lens_face = [gf, gb]
                .into_iter()
                .map(|d| map.right_face(d))
                .find(|&f| {
                    let face = map.face(f).expect("face exists");
                    face.orbits == 1 && face.darts.len() == 2
                })
                .ok_or_else(|| {
                    DrawingError::LaminarityViolation(format!(
                        "lens {i} has no two-sided interior face"
                    ))
                })?;
            debug_assert_ne!(lens_face, outer);
            out.push(lens_face);
        }
        Ok(out)
    }

    /// Builds the laminar forest and verifies that bag interiors are
    /// pairwise nested or disjoint.
    pub fn laminar_forest(&self) -> Result<LaminarForest, DrawingError> {
        let bags = self.bags()?;
        self.laminar_forest_of(&bags)
    }

    /// Forest construction against precomputed bags.
    pub fn laminar_forest_of(&self, bags: &[Bag]) -> Result<LaminarForest, DrawingError> {
        for (a, ba) in bags.iter().enumerate() {
            for bb in &bags[a + 1..] {
                let nested =
                    ba.interior.is_subset(&bb.interior) || bb.interior.is_subset(&ba.interior);
                if !nested && !ba.interior.is_disjoint(&bb.interior) {
                    return Err(DrawingError::LaminarityViolation(format!(
                        "bags {} and {} overlap without nesting",
                        ba.index, bb.index
                    )));
                }
            }
        }
        let mut parent = vec![None; bags.len()];
        for (a, ba) in bags.iter().enumerate() {
            let mut best: Option<(usize, usize)> = None; // (size, bag position)
            for (b, bb) in bags.iter().enumerate() {
                if a == b {
                    continue;
                }
                let (sa, sb) = (ba.interior.len(), bb.interior.len());
                if sa < sb
                    && ba.interior.is_subset(&bb.interior)
                    && best.is_none_or(|(s, _)| sb < s)
                {
                    best = Some((sb, b));
                }
            }
            parent[a] = best.map(|(_, b)| bags[b].index);
        }
        let lens_idx = self.lens_indices()?;
        let lens = bags.iter().map(|b| lens_idx.contains(&b.index)).collect();
        Ok(LaminarForest { parent, lens })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::PointSpec;

    fn draw(order: &[u32], signs: &[i8]) -> TwoEdgeDrawing {
        TwoEdgeDrawing::validate(order, signs, PointSpec::Faces(Vec::new()), None).unwrap()
    }

    #[test]
    fn single_crossing_has_no_bags() {
        let d = draw(&[1], &[1]);
        assert!(d.bags().unwrap().is_empty());
        assert!(d.lens_indices().unwrap().is_empty());
    }

    #[test]
    fn lens_drawing_has_one_root_bag() {
        let d = draw(&[1, 2], &[1, -1]);
        let bags = d.bags().unwrap();
        assert_eq!(bags.len(), 1);
        assert!(bags[0].is_lens());
        assert_eq!(bags[0].interior.len(), 1);
        let forest = d.laminar_forest().unwrap();
        assert_eq!(forest.parent, vec![None]);
        assert_eq!(forest.lens, vec![true]);
    }

    // Hand-derived structure of the four-crossing two-lens meander
    // [1,4,3,2]: bag 1 contains bag 3; bag 2 is a separate root; the lenses
    // are bags 2 and 3.
    #[test]
    fn four_crossing_meander_nesting_matches_hand_derivation() {
        let d = draw(&[1, 4, 3, 2], &[-1, 1, -1, 1]);
        let bags = d.bags().unwrap();
        assert_eq!(bags.len(), 3);
        assert_eq!(d.lens_indices().unwrap(), vec![2, 3]);
        let forest = d.laminar_forest().unwrap();
        assert_eq!(forest.parent, vec![None, None, Some(1)]);
        assert_eq!(forest.chain(3), vec![3, 1]);
        assert_eq!(forest.chain(2), vec![2]);
        assert_eq!(forest.roots(), vec![1, 2]);
        // Bag 1 holds the lens face of bag 3 plus the middle face.
        assert_eq!(bags[0].interior.len(), 2);
    }

    // Hand-derived structure of the six-crossing spiral configuration
    // [5,2,3,4,1,6]: chains are 3 ⊂ 1 ⊂ 5 and 2 ⊂ 4.
    #[test]
    fn spiral_configuration_nesting_matches_hand_derivation() {
        let d = draw(&[5, 2, 3, 4, 1, 6], &[1, -1, 1, -1, 1, -1]);
        assert!(!d.is_deadlock());
        assert_eq!(d.lens_indices().unwrap(), vec![2, 3]);
        let forest = d.laminar_forest().unwrap();
        assert_eq!(forest.parent, vec![Some(5), Some(4), Some(1), None, None]);
        assert_eq!(forest.chain(3), vec![3, 1, 5]);
        assert_eq!(forest.chain(2), vec![2, 4]);
    }

    #[test]
    fn alternating_twist_bags_are_all_lenses() {
        let d = draw(&[1, 2, 3], &[1, -1, 1]);
        let bags = d.bags().unwrap();
        assert_eq!(bags.len(), 2);
        assert!(bags.iter().all(Bag::is_lens));
        let forest = d.laminar_forest().unwrap();
        assert_eq!(forest.roots(), vec![1, 2]);
    }

    #[test]
    fn lens_faces_are_distinct_two_sided_cells() {
        let d = draw(&[1, 4, 3, 2], &[-1, 1, -1, 1]);
        let faces = d.lens_faces().unwrap();
        assert_eq!(faces.len(), 2);
        assert_ne!(faces[0], faces[1]);
        let two_sided = d.map().two_sided_faces();
        assert!(faces.iter().all(|f| two_sided.contains(f)));
    }

    #[test]
    fn deep_meander_has_four_bag_chain() {
        // Fifteen-crossing meander whose deepest lens sits four bags deep;
        // the ancestor chain of lens 12 crosses gaps 12, 8, 4, 2.
        let d = draw(
            &[1, 2, 5, 8, 13, 12, 11, 10, 9, 4, 3, 14, 7, 6, 15],
            &[1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1],
        );
        assert!(!d.is_deadlock());
        assert_eq!(d.lens_indices().unwrap(), vec![1, 3, 6, 9, 10, 11, 12]);
        let forest = d.laminar_forest().unwrap();
        assert_eq!(forest.chain(12), vec![12, 8, 4, 2]);
    }
}
