//! Exhaustive enumeration of two-edge drawings up to homeomorphism and
//! symmetry, and branch-and-bound maximization of the crossing count over
//! admissible drawings.
//!
//! Generation extends the meander curve one crossing at a time as a face
//! walk: the dangling head of `e` may only cross an `e'` piece bordering the
//! face it currently occupies, so every emitted encoding is plane-realizable
//! by construction. States are deduplicated per level by the canonical form
//! under the subgroup that fixes the walk direction (mirror and reversal of
//! `e'`); finished drawings are deduplicated under the full eight-element
//! group.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds;
use crate::construct;
use crate::drawing::{DrawingError, HittingMode, PointSpec, SpiralMode, TwoEdgeDrawing};
use crate::map::{TwoCurveMap, CURVE_EP};

#[derive(Debug, Clone, Error)]
pub enum SearchError {
    #[error("node budget exhausted before the search completed")]
    BudgetExhausted(Box<SearchReport>),
    #[error("checkpoint is incompatible: {0}")]
    BadCheckpoint(String),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

/// A partial drawing: the meander prefix built so far. The head of `e`
/// dangles in the face after its last crossing, which the encoding alone
/// determines.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WalkState {
    pub order: Vec<u32>,
    pub signs: Vec<i8>,
}

impl WalkState {
    fn root() -> Self {
        WalkState {
            order: Vec::new(),
            signs: Vec::new(),
        }
    }

    fn build_map(&self) -> TwoCurveMap {
        let order_ep: Vec<u32> = (1..=self.order.len() as u32).collect();
        TwoCurveMap::build(&self.order, &order_ep, &self.signs)
            .expect("walk states are plane-realizable by construction")
    }

    /// Canonical representative under mirror and `e'` reversal (the
    /// symmetries preserving the walk direction).
    fn walk_canonical(&self) -> WalkState {
        let n = self.order.len() as u32;
        let mut best: Option<(Vec<u32>, Vec<i8>)> = None;
        for mirror in [false, true] {
            for rev_ep in [false, true] {
                let mut order = self.order.clone();
                let mut signs = self.signs.clone();
                if rev_ep {
                    order = order.iter().map(|&id| n + 1 - id).collect();
                    let mut s2 = vec![0i8; signs.len()];
                    for (i, &x) in signs.iter().enumerate() {
                        s2[(n - 1 - i as u32) as usize] = -x;
                    }
                    signs = s2;
                }
                if mirror {
                    for s in &mut signs {
                        *s = -*s;
                    }
                }
                let cand = (order, signs);
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
        }
        let (order, signs) = best.unwrap();
        WalkState { order, signs }
    }

    /// All legal one-crossing extensions of the walk: the head crosses an
    /// `e'` piece bordering its current face, from either side.
    fn expand(&self) -> Vec<WalkState> {
        let map = self.build_map();
        let head_face = map.endpoint_face(1).expect("head of e is an endpoint");
        let mut out = Vec::new();
        for (p, &edge) in map.curve(CURVE_EP).edges.iter().enumerate() {
            let [fwd, bwd] = map.edge_darts(edge);
            for (dart, sign) in [(fwd, 1i8), (bwd, -1i8)] {
                if map.left_face(dart) != head_face {
                    continue;
                }
                let new_id = p as u32 + 1;
                let mut order: Vec<u32> = self
                    .order
                    .iter()
                    .map(|&id| if id >= new_id { id + 1 } else { id })
                    .collect();
                order.push(new_id);
                let mut signs = Vec::with_capacity(self.signs.len() + 1);
                signs.extend_from_slice(&self.signs[..p]);
                signs.push(sign);
                signs.extend_from_slice(&self.signs[p..]);
                out.push(WalkState { order, signs });
            }
        }
        out
    }

    /// Count of crossing pairs consecutive along both edges. On completed
    /// deadlock-free drawings this is the lens count; a later crossing can
    /// destroy at most one such pair.
    fn adjacent_pair_count(&self) -> usize {
        let n = self.order.len();
        let mut pos = vec![0usize; n + 1];
        for (p, &id) in self.order.iter().enumerate() {
            pos[id as usize] = p + 1;
        }
        (1..n).filter(|&i| pos[i].abs_diff(pos[i + 1]) == 1).count()
    }

    fn full_canonical(&self) -> (Vec<u32>, Vec<i8>) {
        TwoEdgeDrawing::canonical_encoding(&self.order, &self.signs)
    }
}

/// Which drawings an enumeration keeps.
#[derive(Debug, Clone, Default)]
pub struct EnumFilter {
    pub deadlock_free: bool,
    pub spiral_free: bool,
    pub max_lenses: Option<usize>,
}

impl EnumFilter {
    fn admits(&self, d: &TwoEdgeDrawing) -> Result<bool, DrawingError> {
        let restrictive = self.deadlock_free || self.spiral_free || self.max_lenses.is_some();
        if d.is_deadlock() {
            return Ok(!restrictive);
        }
        if let Some(k) = self.max_lenses {
            if d.hitting_number()? > k {
                return Ok(false);
            }
        }
        if self.spiral_free && d.is_spiral(SpiralMode::Either)? {
            return Ok(false);
        }
        Ok(true)
    }
}

/// Every homeomorphism class of two-edge drawings with exactly `n`
/// crossings, one validated representative each, in canonical order.
/// Deadlocked classes are represented without an outer face.
pub fn enumerate(n: usize, filter: &EnumFilter) -> Result<Vec<TwoEdgeDrawing>, DrawingError> {
    let mut frontier = vec![WalkState::root()];
    for _ in 0..n {
        let mut children: Vec<WalkState> = frontier
            .par_iter()
            .flat_map_iter(|s| s.expand().into_iter().map(|c| c.walk_canonical()))
            .collect();
        children.sort_unstable();
        children.dedup();
        frontier = children;
    }
    let mut classes: Vec<(Vec<u32>, Vec<i8>)> =
        frontier.par_iter().map(WalkState::full_canonical).collect();
    classes.sort_unstable();
    classes.dedup();
    let drawings: Vec<Option<TwoEdgeDrawing>> = classes
        .par_iter()
        .map(|(order, signs)| {
            let d =
                TwoEdgeDrawing::validate_lenient(order, signs, PointSpec::Faces(Vec::new()), None)
                    .expect("enumerated encodings are valid");
            match filter.admits(&d) {
                Ok(true) => Some(d),
                _ => None,
            }
        })
        .collect();
    Ok(drawings.into_iter().flatten().collect())
}

/// Outcome of a crossing-maximization search.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchReport {
    pub k: usize,
    /// Largest crossing count of an admissible drawing found.
    pub best: usize,
    /// Canonical encoding of a witness with `best` crossings.
    pub witness: Option<String>,
    /// True when every state up to the cap was explored within budget, so
    /// `best` is the true maximum over the searched range.
    pub exhaustive: bool,
    pub nodes_expanded: u64,
    pub levels_completed: usize,
    pub n_cap: usize,
    pub wall_ms: u128,
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Maximum number of state expansions.
    pub budget: u64,
    pub hitting: HittingMode,
    /// Initialize the best value from the construction families (each seed
    /// is re-verified through the admissibility predicate).
    pub seed_constructions: bool,
    /// Cap on the crossing count; defaults to the recurrence upper bound,
    /// beyond which searching is pointless.
    pub n_cap: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 1_000_000,
            hitting: HittingMode::AtMost,
            seed_constructions: true,
            n_cap: None,
        }
    }
}

/// Serializable resume point: the frontier of canonical partial states.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub k: usize,
    pub n_cap: usize,
    pub exact_hitting: bool,
    pub level: usize,
    pub nodes_expanded: u64,
    pub best: usize,
    pub witness: Option<String>,
    pub frontier: Vec<WalkState>,
}

pub const CHECKPOINT_VERSION: u32 = 1;

/// Level-synchronous breadth-first maximization driver. Results are
/// deterministic for a fixed budget regardless of worker count: levels are
/// expanded as sorted deduplicated batches, and the budget cuts a sorted
/// prefix.
pub struct MaxSearch {
    k: usize,
    n_cap: usize,
    hitting: HittingMode,
    budget: u64,
    frontier: Vec<WalkState>,
    level: usize,
    nodes_expanded: u64,
    best: usize,
    witness: Option<String>,
    exhausted_budget: bool,
    started: Instant,
}

impl MaxSearch {
    pub fn new(k: usize, opts: &SearchOptions) -> Result<Self, SearchError> {
        let n_cap = opts
            .n_cap
            .unwrap_or_else(|| bounds::c_upper_usize(k as u64));
        let mut s = MaxSearch {
            k,
            n_cap,
            hitting: opts.hitting,
            budget: opts.budget,
            frontier: vec![WalkState::root()],
            level: 0,
            nodes_expanded: 0,
            best: 0,
            witness: None,
            exhausted_budget: false,
            started: Instant::now(),
        };
        if opts.seed_constructions {
            s.seed()?;
        }
        Ok(s)
    }

    pub fn from_checkpoint(cp: Checkpoint, opts: &SearchOptions) -> Result<Self, SearchError> {
        if cp.version != CHECKPOINT_VERSION {
            return Err(SearchError::BadCheckpoint(format!(
                "version {} (expected {CHECKPOINT_VERSION})",
                cp.version
            )));
        }
        let exact = matches!(opts.hitting, HittingMode::Exact);
        if cp.exact_hitting != exact {
            return Err(SearchError::BadCheckpoint("hitting mode differs".into()));
        }
        Ok(MaxSearch {
            k: cp.k,
            n_cap: cp.n_cap,
            hitting: opts.hitting,
            budget: opts.budget,
            frontier: cp.frontier,
            level: cp.level,
            nodes_expanded: cp.nodes_expanded,
            best: cp.best,
            witness: cp.witness,
            exhausted_budget: false,
            started: Instant::now(),
        })
    }

    pub fn checkpoint(&self) -> Checkpoint {
        Checkpoint {
            version: CHECKPOINT_VERSION,
            k: self.k,
            n_cap: self.n_cap,
            exact_hitting: matches!(self.hitting, HittingMode::Exact),
            level: self.level,
            nodes_expanded: self.nodes_expanded,
            best: self.best,
            witness: self.witness.clone(),
            frontier: self.frontier.clone(),
        }
    }

    fn seed(&mut self) -> Result<(), SearchError> {
        let mut seeds = Vec::new();
        for j in 0..=self.k as u64 {
            if let Ok(d) = construct::doubling(j) {
                seeds.push(d);
            }
            if let Ok(d) = construct::enhanced_doubling(j) {
                seeds.push(d);
            }
        }
        for d in seeds {
            if d.n() <= self.n_cap && d.n() > self.best && d.admissible(self.k, self.hitting)? {
                self.best = d.n();
                self.witness = Some(d.canonical_form());
            }
        }
        Ok(())
    }

    /// True once no further level can be expanded (cap, budget, or an empty
    /// frontier).
    pub fn finished(&self) -> bool {
        self.exhausted_budget || self.frontier.is_empty() || self.level >= self.n_cap
    }

    /// Expands one level. Returns false when the search is finished.
    ///
    /// The budget is whole-level granular: a level whose frontier would
    /// push the node count past the budget is not expanded at all, so the
    /// frontier (and any checkpoint of it) always describes complete levels
    /// and resuming loses nothing.
    pub fn step_level(&mut self) -> Result<bool, SearchError> {
        if self.finished() {
            return Ok(false);
        }
        if self.nodes_expanded + self.frontier.len() as u64 > self.budget {
            self.exhausted_budget = true;
            return Ok(false);
        }
        self.nodes_expanded += self.frontier.len() as u64;

        let mut children: Vec<WalkState> = self
            .frontier
            .par_iter()
            .flat_map_iter(|s| s.expand().into_iter().map(|c| c.walk_canonical()))
            .collect();
        children.sort_unstable();
        children.dedup();
        self.level += 1;

        // Evaluate completed drawings at this level when they could improve
        // the best.
        if self.level > self.best {
            let (k, hitting) = (self.k, self.hitting);
            let mut hits: Vec<(Vec<u32>, Vec<i8>)> = children
                .par_iter()
                .filter_map(|s| {
                    let d = TwoEdgeDrawing::validate_lenient(
                        &s.order,
                        &s.signs,
                        PointSpec::Faces(Vec::new()),
                        None,
                    )
                    .ok()?;
                    match d.admissible(k, hitting) {
                        Ok(true) => Some(s.full_canonical()),
                        _ => None,
                    }
                })
                .collect();
            hits.sort_unstable();
            if let Some((order, signs)) = hits.first() {
                self.best = self.level;
                self.witness = Some(encoding_string(order, signs));
            }
        }

        // Prune states no completion of which can be admissible.
        let (n_cap, k) = (self.n_cap, self.k);
        self.frontier = children
            .into_par_iter()
            .filter(|s| {
                let remaining = n_cap - s.order.len();
                if s.adjacent_pair_count() > k + remaining {
                    return false;
                }
                // Once the fixed endpoints (start of e, both ends of e') sit
                // in different faces, faces only split further and every
                // completion is a deadlock.
                let map = s.build_map();
                let fa = map.endpoint_face(0).expect("endpoint");
                let fb = map.endpoint_face(2).expect("endpoint");
                let fc = map.endpoint_face(3).expect("endpoint");
                fa == fb && fb == fc
            })
            .collect();
        Ok(!self.finished())
    }

    pub fn report(&self) -> SearchReport {
        SearchReport {
            k: self.k,
            best: self.best,
            witness: self.witness.clone(),
            exhaustive: !self.exhausted_budget,
            nodes_expanded: self.nodes_expanded,
            levels_completed: self.level,
            n_cap: self.n_cap,
            wall_ms: self.started.elapsed().as_millis(),
        }
    }
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

/// Maximum crossing count of an admissible drawing hittable by `k` points,
/// searched exhaustively up to the cap. When the budget runs out first, the
/// best-so-far report is carried in the error.
pub fn max_crossings(k: usize, opts: &SearchOptions) -> Result<SearchReport, SearchError> {
    let mut search = MaxSearch::new(k, opts)?;
    while search.step_level()? {}
    let report = search.report();
    if report.exhaustive {
        Ok(report)
    } else {
        Err(SearchError::BudgetExhausted(Box::new(report)))
    }
}
