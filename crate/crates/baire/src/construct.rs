//! Branch-deletion constructions on cylinder complexes.
//!
//! The basic step deletes the cylinder around a target branch at a
//! height computed from where earlier targets split from it, counted in
//! *splitting* nodes of the current complex (nodes with nothing left on
//! the far side are skipped). Folding steps over a schedule produces
//! stage sequences; choosing offsets carefully preserves designated
//! witnesses through every stage, including limit stages that intersect
//! everything built so far.

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::ordinal::OrdinalIndex;
use crate::point::Point;
use crate::trie::{CylinderComplex, CylinderWord};
use crate::word::BitWord;

/// One deletion instruction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScheduleEntry {
    /// Delete the cylinder around `target` at the height the offset
    /// bookkeeping computes.
    Target { target: Point, offset: u64 },
    /// Delete the cylinder `[stem]` outright.
    ///
    /// Direct deletions are what the cardinality predicates quantify
    /// over; the offset bookkeeping can never empty a surviving sibling,
    /// so exhaustive deletions need this form.
    Stem(CylinderWord),
}

/// An ordered, non-repeating deletion schedule.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DeletionSchedule {
    pub entries: Vec<ScheduleEntry>,
}

impl DeletionSchedule {
    pub fn new(entries: Vec<ScheduleEntry>) -> DeletionSchedule {
        DeletionSchedule { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Reject schedules with syntactically repeated entries.
    pub fn validate_non_repeating(&self) -> Result<()> {
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[..i] {
                if a == b {
                    return Err(Error::Precondition(format!(
                        "schedule repeats entry {i}: non-repeating invariant violated"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Result of one deletion step.
#[derive(Debug, Clone)]
pub enum CntrOutcome {
    Applied {
        next: CylinderComplex,
        deleted: CylinderWord,
        /// Greatest first-disagreement index with any prior target.
        base_height: usize,
    },
    /// The target was no longer present; nothing happened.
    Skipped,
}

/// Depths `d ≥ min_depth` along `target` whose far side still holds some
/// of `current`, in increasing order, up to `limit` candidate depths.
///
/// The walk assumes the target lies in the complex; once it reaches a
/// FULL leaf every deeper node splits.
fn splitting_depths(
    current: &CylinderComplex,
    target: &Point,
    min_depth: usize,
    limit: usize,
) -> Vec<usize> {
    let mut out = Vec::new();
    let mut node = current.clone();
    for d in 0..limit {
        let splitting = match &node {
            CylinderComplex::Full => true,
            CylinderComplex::Empty => false,
            CylinderComplex::Split { zero, one } => {
                let sibling = if target.bit_at(d) { zero } else { one };
                !sibling.is_empty()
            }
        };
        if splitting && d >= min_depth {
            out.push(d);
        }
        node = match node {
            CylinderComplex::Full => CylinderComplex::Full,
            CylinderComplex::Empty => CylinderComplex::Empty,
            CylinderComplex::Split { zero, one } => {
                if target.bit_at(d) {
                    (*one).clone()
                } else {
                    (*zero).clone()
                }
            }
        };
    }
    out
}

/// Greatest first-disagreement index of `target` against the priors.
fn base_height(target: &Point, priors: &[Point]) -> usize {
    priors
        .iter()
        .filter_map(|p| target.first_disagreement(p))
        .max()
        .unwrap_or(0)
}

/// One branch-deletion step.
///
/// Skips to the first splitting node at or past the base height `n`,
/// proceeds `r` further splitting nodes, and deletes the cylinder that
/// pins the target's bits through the final node. The far side of that
/// node survives, so a step never empties the complex. Errors when the
/// deletion height would exceed `budget`.
pub fn cntr_step(
    current: &CylinderComplex,
    target: &Point,
    r: u64,
    priors: &[Point],
    budget: usize,
) -> Result<CntrOutcome> {
    if r < 1 {
        return Err(Error::Precondition("offset must be at least 1".into()));
    }
    if !current.contains_point(target) {
        return Ok(CntrOutcome::Skipped);
    }
    let n = base_height(target, priors);
    let depths = splitting_depths(current, target, n, budget);
    let needed = r as usize + 1;
    if depths.len() < needed {
        return Err(Error::Budget(format!(
            "deletion height for target {target} exceeds resolution budget {budget}"
        )));
    }
    let h = depths[needed - 1] + 1;
    let deleted = CylinderWord(target.prefix(h));
    let next = current.minus(&CylinderComplex::cylinder(&deleted));
    Ok(CntrOutcome::Applied {
        next,
        deleted,
        base_height: n,
    })
}

/// Per-entry record of what a run did.
#[derive(Debug, Clone)]
pub struct StepRecord {
    pub entry: ScheduleEntry,
    pub applied: bool,
    pub base_height: Option<usize>,
    pub deleted: Option<CylinderWord>,
}

/// Snapshot sequence of a finite deletion run.
#[derive(Debug, Clone)]
pub struct ConstructionState {
    /// Stage complexes; index 0 is the initial complex.
    pub stages: Vec<CylinderComplex>,
    pub deleted: Vec<CylinderWord>,
    pub witnesses: Vec<Point>,
    pub records: Vec<StepRecord>,
}

impl ConstructionState {
    fn start(initial: CylinderComplex) -> ConstructionState {
        ConstructionState {
            stages: vec![initial],
            deleted: Vec::new(),
            witnesses: Vec::new(),
            records: Vec::new(),
        }
    }

    pub fn initial(&self) -> &CylinderComplex {
        &self.stages[0]
    }

    pub fn current(&self) -> &CylinderComplex {
        self.stages.last().expect("at least the initial stage")
    }

    pub fn stage_count(&self) -> usize {
        self.stages.len()
    }

    /// Measures of every stage, initial first.
    pub fn measures(&self) -> Vec<Dyadic> {
        self.stages.iter().map(|c| c.measure()).collect()
    }

    /// Whether every depth-`d` cylinder meeting the initial complex also
    /// meets some deleted cylinder.
    pub fn deletions_dense_at_depth(&self, d: usize) -> bool {
        let initial = self.initial();
        for idx in 0u64..(1u64 << d) {
            let stem: BitWord = (0..d).map(|i| (idx >> (d - 1 - i)) & 1 == 1).collect();
            let w = CylinderWord(stem);
            if initial.restrict(&w).is_empty() {
                continue;
            }
            if !self.deleted.iter().any(|u| u.meets(&w)) {
                return false;
            }
        }
        true
    }

    /// Check the run invariants: exact reconstruction, monotone stages,
    /// witnesses in the final remainder, no repeated deletions.
    pub fn verify(&self) -> Result<()> {
        let rebuilt = self
            .initial()
            .minus(&CylinderComplex::from_cylinders(self.deleted.iter()));
        if &rebuilt != self.current() {
            return Err(Error::Invariant(
                "final stage is not the initial complex minus the deletions".into(),
            ));
        }
        for pair in self.stages.windows(2) {
            if !pair[1].is_subset_of(&pair[0]) {
                return Err(Error::Invariant("stages are not monotone".into()));
            }
        }
        for wpt in &self.witnesses {
            if !self.current().contains_point(wpt) {
                return Err(Error::Invariant(format!(
                    "witness {wpt} missing from the final stage"
                )));
            }
        }
        for (i, a) in self.deleted.iter().enumerate() {
            if self.deleted[..i].contains(a) {
                return Err(Error::Invariant(format!("deleted stem {a} repeats")));
            }
        }
        Ok(())
    }
}

/// Fold a schedule over an initial complex.
pub fn run_construction(
    initial: &CylinderComplex,
    schedule: &DeletionSchedule,
    budget: usize,
) -> Result<ConstructionState> {
    let mut state = ConstructionState::start(initial.clone());
    let mut priors: Vec<Point> = Vec::new();
    for entry in &schedule.entries {
        match entry {
            ScheduleEntry::Target { target, offset } => {
                let outcome =
                    cntr_step(state.current(), target, *offset, &priors, budget)?;
                match outcome {
                    CntrOutcome::Applied {
                        next,
                        deleted,
                        base_height,
                    } => {
                        state.records.push(StepRecord {
                            entry: entry.clone(),
                            applied: true,
                            base_height: Some(base_height),
                            deleted: Some(deleted.clone()),
                        });
                        state.deleted.push(deleted);
                        state.stages.push(next);
                    }
                    CntrOutcome::Skipped => {
                        state.records.push(StepRecord {
                            entry: entry.clone(),
                            applied: false,
                            base_height: None,
                            deleted: None,
                        });
                    }
                }
                priors.push(target.clone());
            }
            ScheduleEntry::Stem(word) => {
                if state.current().restrict(word).is_empty() {
                    state.records.push(StepRecord {
                        entry: entry.clone(),
                        applied: false,
                        base_height: None,
                        deleted: None,
                    });
                } else {
                    let next =
                        state.current().minus(&CylinderComplex::cylinder(word));
                    state.records.push(StepRecord {
                        entry: entry.clone(),
                        applied: true,
                        base_height: None,
                        deleted: Some(word.clone()),
                    });
                    state.deleted.push(word.clone());
                    state.stages.push(next);
                }
            }
        }
    }
    Ok(state)
}

/// Pick a point of `complex` under `base` that differs from everything
/// in `taken`. Extending the leftmost FULL leaf with 1s walks through
/// infinitely many distinct points, so the search always lands.
fn fresh_point_in(
    complex: &CylinderComplex,
    base: &CylinderWord,
    taken: &[Point],
) -> Point {
    let sub = complex.restrict(base);
    let leaf = sub
        .full_leaves()
        .into_iter()
        .next()
        .expect("caller guarantees a nonempty subcomplex");
    let mut stem = base.stem().clone();
    for &b in leaf.stem().bits() {
        stem.push(b);
    }
    loop {
        let candidate = Point::from_stem(&stem);
        if !taken.contains(&candidate) {
            return candidate;
        }
        stem.push(true);
    }
}

/// Witness-preserving deletion run.
///
/// Deletes around the first `steps` avoid-targets, always choosing the
/// offset large enough that the deleted cylinder misses every witness
/// recorded so far; each applied step records one fresh witness drawn
/// from the surviving far side of the final splitting node.
pub fn preserve_run(
    initial: &CylinderComplex,
    avoid: &[Point],
    keep_seed: &Point,
    steps: usize,
    budget: usize,
) -> Result<ConstructionState> {
    if !initial.contains_point(keep_seed) {
        return Err(Error::Precondition(format!(
            "seed witness {keep_seed} is not in the initial complex"
        )));
    }
    if avoid.contains(keep_seed) {
        return Err(Error::Precondition(
            "seed witness appears in the avoid list".into(),
        ));
    }
    if steps > avoid.len() {
        return Err(Error::Precondition(format!(
            "{steps} steps requested but only {} avoid targets given",
            avoid.len()
        )));
    }
    let mut state = ConstructionState::start(initial.clone());
    state.witnesses.push(keep_seed.clone());
    for (i, target) in avoid.iter().take(steps).enumerate() {
        let priors = &avoid[..i];
        if !state.current().contains_point(target) {
            state.records.push(StepRecord {
                entry: ScheduleEntry::Target {
                    target: target.clone(),
                    offset: 1,
                },
                applied: false,
                base_height: None,
                deleted: None,
            });
            continue;
        }
        let n = base_height(target, priors);
        // The deleted cylinder [target↾h] misses witness w iff h exceeds
        // their first disagreement, so push h past all of them.
        let mut guard = 0usize;
        for wpt in &state.witnesses {
            match target.first_disagreement(wpt) {
                Some(d) => guard = guard.max(d),
                None => {
                    return Err(Error::Invariant(
                        "a witness coincides with an avoid target".into(),
                    ))
                }
            }
        }
        let depths = splitting_depths(state.current(), target, n, budget);
        let pick = depths
            .iter()
            .enumerate()
            .position(|(idx, &d)| idx >= 1 && d >= guard);
        let Some(pick) = pick else {
            return Err(Error::Budget(format!(
                "no admissible deletion height for target {target} within budget {budget}"
            )));
        };
        let offset = pick as u64;
        let split_at = depths[pick];
        let h = split_at + 1;
        let deleted = CylinderWord(target.prefix(h));
        let next = state
            .current()
            .minus(&CylinderComplex::cylinder(&deleted));
        // Fresh witness from the sibling interval at the final splitting
        // node; it survives this deletion and, by the guard above, every
        // later one.
        let mut sibling_stem = target.prefix(split_at);
        sibling_stem.push(!target.bit_at(split_at));
        let mut taken = state.witnesses.clone();
        taken.extend_from_slice(avoid);
        let fresh = fresh_point_in(state.current(), &CylinderWord(sibling_stem), &taken);
        state.records.push(StepRecord {
            entry: ScheduleEntry::Target {
                target: target.clone(),
                offset,
            },
            applied: true,
            base_height: Some(n),
            deleted: Some(deleted.clone()),
        });
        state.deleted.push(deleted);
        state.stages.push(next);
        state.witnesses.push(fresh);
    }
    Ok(state)
}

/// Record of what survived at a limit stage.
#[derive(Debug, Clone)]
pub struct LimitRecord {
    pub at: OrdinalIndex,
    /// A clopen interval around the seed witness untouched by every
    /// deletion so far.
    pub preserved: CylinderWord,
    pub witness: Point,
}

/// Stage sequence of a transfinite run, stages labelled by `ω·q + n`.
#[derive(Debug, Clone)]
pub struct TransfiniteConstructionState {
    pub stages: Vec<(OrdinalIndex, CylinderComplex)>,
    pub deleted: Vec<CylinderWord>,
    pub witnesses: Vec<Point>,
    pub limits: Vec<LimitRecord>,
}

impl TransfiniteConstructionState {
    pub fn current(&self) -> &CylinderComplex {
        &self.stages.last().expect("at least the initial stage").1
    }
}

/// Run `K` ω-segments of witness-preserving deletions with a limit stage
/// after each segment.
///
/// Each limit stage recomputes the intersection of everything before it,
/// checks it against the running complex, and records a preserved clopen
/// interval around the seed. An empty limit intersection or a lost
/// witness is an internal bug, not an input error.
pub fn run_transfinite(
    initial: &CylinderComplex,
    segments: &[Vec<Point>],
    keep_seed: &Point,
    budget: usize,
    ordinal_bound: u32,
) -> Result<TransfiniteConstructionState> {
    let k = segments.len() as u32;
    if k == 0 {
        return Err(Error::Precondition("at least one segment is required".into()));
    }
    if k > ordinal_bound {
        return Err(Error::Precondition(format!(
            "{k} segments exceed the configured ordinal bound {ordinal_bound}"
        )));
    }
    if !initial.contains_point(keep_seed) {
        return Err(Error::Precondition(format!(
            "seed witness {keep_seed} is not in the initial complex"
        )));
    }
    let mut state = TransfiniteConstructionState {
        stages: vec![(OrdinalIndex::new(0, 0), initial.clone())],
        deleted: Vec::new(),
        witnesses: vec![keep_seed.clone()],
        limits: Vec::new(),
    };
    let mut all_priors: Vec<Point> = Vec::new();
    for (q, segment) in segments.iter().enumerate() {
        if segment.contains(keep_seed) {
            return Err(Error::Precondition(
                "seed witness appears in a segment's avoid list".into(),
            ));
        }
        let mut current = state.current().clone();
        for (i, target) in segment.iter().enumerate() {
            let stage_index = OrdinalIndex::new(q as u32, i as u64 + 1);
            if !current.contains_point(target) {
                all_priors.push(target.clone());
                continue;
            }
            let n = base_height(target, &all_priors);
            let mut guard = 0usize;
            for wpt in &state.witnesses {
                match target.first_disagreement(wpt) {
                    Some(d) => guard = guard.max(d),
                    None => {
                        return Err(Error::Invariant(
                            "a witness coincides with an avoid target".into(),
                        ))
                    }
                }
            }
            let depths = splitting_depths(&current, target, n, budget);
            let pick = depths
                .iter()
                .enumerate()
                .position(|(idx, &d)| idx >= 1 && d >= guard)
                .ok_or_else(|| {
                    Error::Budget(format!(
                        "no admissible deletion height for target {target} within budget {budget}"
                    ))
                })?;
            let split_at = depths[pick];
            let deleted = CylinderWord(target.prefix(split_at + 1));
            current = current.minus(&CylinderComplex::cylinder(&deleted));
            let mut sibling_stem = target.prefix(split_at);
            sibling_stem.push(!target.bit_at(split_at));
            let mut taken = state.witnesses.clone();
            for seg in segments {
                taken.extend_from_slice(seg);
            }
            let fresh = fresh_point_in(&current, &CylinderWord(sibling_stem), &taken);
            state.witnesses.push(fresh);
            state.deleted.push(deleted);
            state.stages.push((stage_index, current.clone()));
            all_priors.push(target.clone());
        }
        // Limit stage ω·(q+1): intersect everything so far.
        let limit_index = OrdinalIndex::new(q as u32 + 1, 0);
        let intersection = state
            .stages
            .iter()
            .fold(CylinderComplex::Full, |acc, (_, c)| acc.intersect(c));
        if intersection != current {
            return Err(Error::Invariant(
                "limit-stage intersection disagrees with the running complex".into(),
            ));
        }
        if intersection.is_empty() {
            return Err(Error::Invariant(
                "limit-stage intersection is empty".into(),
            ));
        }
        for wpt in &state.witnesses {
            if !intersection.contains_point(wpt) {
                return Err(Error::Invariant(format!(
                    "witness {wpt} lost at limit stage {limit_index}"
                )));
            }
        }
        // Minimal cylinder around the seed inside the limit complex: walk
        // the seed's bits down to a FULL leaf.
        let mut depth = 0;
        let mut node = intersection.clone();
        loop {
            match node {
                CylinderComplex::Full => break,
                CylinderComplex::Empty => {
                    return Err(Error::Invariant(
                        "seed witness has no surrounding interval".into(),
                    ))
                }
                CylinderComplex::Split { zero, one } => {
                    node = if keep_seed.bit_at(depth) {
                        (*one).clone()
                    } else {
                        (*zero).clone()
                    };
                    depth += 1;
                }
            }
        }
        let preserved = CylinderWord(keep_seed.prefix(depth));
        if !CylinderComplex::cylinder(&preserved).is_subset_of(&intersection) {
            return Err(Error::Invariant(
                "preserved interval escapes the limit complex".into(),
            ));
        }
        state.limits.push(LimitRecord {
            at: limit_index,
            preserved,
            witness: keep_seed.clone(),
        });
        state.stages.push((limit_index, intersection));
    }
    Ok(state)
}

/// Outcome of the category-style witness search.
#[derive(Debug, Clone)]
pub struct BctWitness {
    pub point: Point,
    /// The descending cylinder chain `D_0 ⊇ D_1 ⊇ …` that produced it.
    pub chain: Vec<CylinderWord>,
}

/// Minimal stems under `base` whose cylinders miss the complex entirely,
/// shortest first.
fn escape_stems(c: &CylinderComplex, base: &CylinderWord) -> Vec<CylinderWord> {
    let sub = c.restrict(base);
    sub.complement()
        .full_leaves()
        .into_iter()
        .map(|leaf| {
            let mut stem = base.stem().clone();
            for &b in leaf.stem().bits() {
                stem.push(b);
            }
            CylinderWord(stem)
        })
        .collect()
}

/// Find a point of `space` avoiding every listed nowhere-dense complex.
///
/// Greedily descends a chain of cylinders, the next one chosen inside
/// the current one and disjoint from the next listed set, backtracking
/// over shallower choices when a branch dead-ends. The final stem
/// extended with zeros is the witness.
pub fn bct_witness(
    space: &CylinderComplex,
    nd_sets: &[CylinderComplex],
    depth: usize,
    lookahead: usize,
) -> Result<BctWitness> {
    if space.is_empty() {
        return Err(Error::Precondition("the space is empty".into()));
    }
    for (i, nd) in nd_sets.iter().enumerate() {
        if !nd.nowhere_dense_at_depth(depth, lookahead) {
            return Err(Error::NotNowhereDense(i));
        }
    }

    fn descend(
        nd_sets: &[CylinderComplex],
        k: usize,
        at: CylinderWord,
        chain: &mut Vec<CylinderWord>,
    ) -> Option<CylinderWord> {
        chain.push(at.clone());
        if k == nd_sets.len() {
            return Some(at);
        }
        for candidate in escape_stems(&nd_sets[k], &at) {
            if let Some(found) = descend(nd_sets, k + 1, candidate, chain) {
                return Some(found);
            }
        }
        chain.pop();
        None
    }

    let mut chain = Vec::new();
    for start in space.full_leaves() {
        if let Some(stem) = descend(nd_sets, 0, start, &mut chain) {
            return Ok(BctWitness {
                point: Point::from_stem(stem.stem()),
                chain,
            });
        }
        chain.clear();
    }
    Err(Error::Invariant(
        "the listed sets cover the space at this resolution".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    fn w(s: &str) -> CylinderWord {
        CylinderWord::parse(s).unwrap()
    }

    fn target(s: &str, r: u64) -> ScheduleEntry {
        ScheduleEntry::Target {
            target: pt(s),
            offset: r,
        }
    }

    #[test]
    fn cntr_first_step_over_full() {
        // No priors: skip to the root split, proceed one more splitting
        // node, delete the two-bit cylinder. Oracle: enumerate the 8
        // depth-3 prefixes and check exactly the two under 00 are gone.
        let out = cntr_step(&CylinderComplex::Full, &pt(":0"), 1, &[], 16).unwrap();
        let CntrOutcome::Applied {
            next,
            deleted,
            base_height,
        } = out
        else {
            panic!("expected an applied step");
        };
        assert_eq!(base_height, 0);
        assert_eq!(deleted, w("00"));
        assert_eq!(next.measure().to_string(), "3/4");
        for idx in 0..8u8 {
            let stem: BitWord = (0..3).map(|i| (idx >> (2 - i)) & 1 == 1).collect();
            let inside = next.restrict(&CylinderWord(stem.clone()));
            let expect_gone = !stem.bit(0).unwrap() && !stem.bit(1).unwrap();
            assert_eq!(inside.is_empty(), expect_gone, "prefix {stem}");
        }
    }

    #[test]
    fn cntr_skips_missing_target() {
        let current = CylinderComplex::cylinder(&w("1"));
        let out = cntr_step(&current, &pt(":0"), 1, &[], 16).unwrap();
        assert!(matches!(out, CntrOutcome::Skipped));
    }

    #[test]
    fn cntr_budget_error() {
        assert!(matches!(
            cntr_step(&CylinderComplex::Full, &pt(":0"), 10, &[], 4),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn cntr_skips_non_splitting_nodes() {
        // After deleting [00], the node at depth 1 along 0101… has an
        // empty far side and must be skipped.
        let current = CylinderComplex::Full.minus(&CylinderComplex::cylinder(&w("00")));
        let out = cntr_step(&current, &pt(":01"), 1, &[pt(":0")], 16).unwrap();
        let CntrOutcome::Applied {
            deleted,
            base_height,
            ..
        } = out
        else {
            panic!("expected an applied step");
        };
        assert_eq!(base_height, 1);
        assert_eq!(deleted, w("0101"));
    }

    #[test]
    fn run_construction_examples() {
        // Empty schedule: unchanged.
        let st = run_construction(
            &CylinderComplex::Full,
            &DeletionSchedule::default(),
            16,
        )
        .unwrap();
        assert!(st.current().is_full());
        assert_eq!(st.measures().last().unwrap().to_string(), "1");

        // Dense depth-2 schedule of four targets: nonempty, nowhere
        // dense at depth 2; exhaustive depth-4 bitmap oracle.
        let schedule = DeletionSchedule::new(vec![
            target(":00", 1),
            target(":01", 1),
            target(":10", 1),
            target(":11", 1),
        ]);
        let st = run_construction(&CylinderComplex::Full, &schedule, 16).unwrap();
        st.verify().unwrap();
        assert!(!st.current().is_empty());
        assert!(st.deletions_dense_at_depth(2));
        assert!(st.current().nowhere_dense_at_depth(2, 4));
        assert_eq!(
            st.deleted,
            vec![w("00"), w("0101"), w("10"), w("1111")]
        );
        // Oracle: membership of all 16 depth-4 prefixes.
        let expected_full: Vec<&str> = vec!["0100", "0110", "0111", "1100", "1101", "1110"];
        for idx in 0..16u8 {
            let stem: BitWord = (0..4).map(|i| (idx >> (3 - i)) & 1 == 1).collect();
            let s = stem.to_string();
            let sub = st.current().restrict(&CylinderWord(stem));
            if expected_full.contains(&s.as_str()) {
                assert!(sub.is_full(), "prefix {s} should remain whole");
            } else {
                assert!(sub.is_empty(), "prefix {s} should be gone");
            }
        }

        // Deleting every depth-3 cylinder outright empties the space and
        // the measure telescopes to zero.
        let mut entries = Vec::new();
        for idx in 0..8u8 {
            let stem: BitWord = (0..3).map(|i| (idx >> (2 - i)) & 1 == 1).collect();
            entries.push(ScheduleEntry::Stem(CylinderWord(stem)));
        }
        let st = run_construction(
            &CylinderComplex::Full,
            &DeletionSchedule::new(entries),
            16,
        )
        .unwrap();
        st.verify().unwrap();
        assert!(st.current().is_empty());
        let measures = st.measures();
        assert_eq!(measures.first().unwrap().to_string(), "1");
        assert_eq!(measures.last().unwrap().to_string(), "0");
        for pair in measures.windows(2) {
            assert!(pair[1] < pair[0]);
        }
    }

    #[test]
    fn offset_one_advances_exactly_one_splitting_node() {
        // With r = 1 every step deletes at the node one splitting step
        // past the skip point, so a chain of targets along successive
        // prefixes pins the whole bookkeeping. Expected stems derived by
        // hand from the splitting-node walk.
        let schedule = DeletionSchedule::new(vec![
            target("1:0", 1),
            target("01:0", 1),
            target("001:0", 1),
            target("0001:0", 1),
        ]);
        let st = run_construction(&CylinderComplex::Full, &schedule, 16).unwrap();
        st.verify().unwrap();
        assert_eq!(st.deleted, vec![w("10"), w("01"), w("0010"), w("0001")]);
        let heights: Vec<Option<usize>> =
            st.records.iter().map(|r| r.base_height).collect();
        assert_eq!(heights, vec![Some(0), Some(0), Some(1), Some(2)]);
        let measures = st.measures();
        for pair in measures.windows(2) {
            assert!(pair[1] < pair[0]);
        }
    }

    #[test]
    fn schedule_non_repeating_validation() {
        let sch = DeletionSchedule::new(vec![target(":0", 1), target(":0", 1)]);
        assert!(sch.validate_non_repeating().is_err());
        let ok = DeletionSchedule::new(vec![target(":0", 1), target(":0", 2)]);
        assert!(ok.validate_non_repeating().is_ok());
    }

    #[test]
    fn preserve_run_examples() {
        // One avoided branch; the seed survives.
        let st = preserve_run(&CylinderComplex::Full, &[pt(":0")], &pt(":1"), 1, 16)
            .unwrap();
        st.verify().unwrap();
        assert!(st.current().contains_point(&pt(":1")));

        // Three distinct targets: at least three witnesses, all in the
        // remainder; depth-6 bitmap oracle for containment.
        let avoid = [pt(":0"), pt("01:0"), pt("11:0")];
        let st = preserve_run(&CylinderComplex::Full, &avoid, &pt(":10"), 3, 16)
            .unwrap();
        st.verify().unwrap();
        assert!(st.witnesses.len() >= 3);
        for wit in &st.witnesses {
            assert!(st.current().contains_point(wit));
            // Bitmap oracle at depth 6: the witness's 6-prefix cylinder
            // must carry surviving mass.
            let stem = wit.prefix(6);
            assert!(!st.current().restrict(&CylinderWord(stem)).is_empty());
        }
        // Every deleted cylinder misses every witness.
        for d in &st.deleted {
            for wit in &st.witnesses {
                assert!(!CylinderComplex::cylinder(d).contains_point(wit));
            }
        }

        // Seed inside the avoid list is rejected.
        assert!(matches!(
            preserve_run(&CylinderComplex::Full, &[pt(":0")], &pt(":0"), 1, 16),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn transfinite_run_preserves_seed_across_limits() {
        let segments = vec![vec![pt(":0")], vec![pt("01:0")]];
        let st = run_transfinite(
            &CylinderComplex::Full,
            &segments,
            &pt(":1"),
            16,
            2,
        )
        .unwrap();
        assert_eq!(st.limits.len(), 2);
        for rec in &st.limits {
            assert_eq!(rec.witness, pt(":1"));
            assert!(CylinderComplex::cylinder(&rec.preserved)
                .is_subset_of(st.current()));
        }
        assert!(st.current().contains_point(&pt(":1")));
        assert_eq!(st.stages.last().unwrap().0, OrdinalIndex::new(2, 0));

        // One segment reduces exactly to preserve_run.
        let single = run_transfinite(
            &CylinderComplex::Full,
            &[vec![pt(":0")]],
            &pt(":1"),
            16,
            2,
        )
        .unwrap();
        let flat = preserve_run(&CylinderComplex::Full, &[pt(":0")], &pt(":1"), 1, 16)
            .unwrap();
        assert_eq!(single.current(), flat.current());
        assert_eq!(single.witnesses, flat.witnesses);

        // Exceeding the ordinal bound errors.
        assert!(matches!(
            run_transfinite(&CylinderComplex::Full, &segments, &pt(":1"), 16, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn bct_witness_examples() {
        // No obstacles: any point of the space works.
        let found = bct_witness(&CylinderComplex::Full, &[], 2, 4).unwrap();
        assert_eq!(found.point, pt(":0"));

        // One nowhere-dense obstacle at depth 2.
        let nd = CylinderComplex::from_cylinders([w("001"), w("110")].iter());
        assert!(nd.nowhere_dense_at_depth(2, 4));
        let found = bct_witness(&CylinderComplex::Full, std::slice::from_ref(&nd), 2, 4).unwrap();
        assert!(!nd.contains_point(&found.point));
        // Depth-4 bitmap oracle: the chain's final cylinder avoids nd.
        let last = found.chain.last().unwrap();
        assert!(nd.restrict(last).is_empty());

        // FULL is not nowhere dense.
        assert!(matches!(
            bct_witness(&CylinderComplex::Full, &[CylinderComplex::Full], 2, 4),
            Err(Error::NotNowhereDense(0))
        ));
    }
}
