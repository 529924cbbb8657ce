//! Seeded generators and the property suites behind `verify`.
//!
//! Every randomized check in the toolkit flows through one caller-owned
//! generator, so a fixed seed reproduces a run byte for byte. The suites
//! count cases and failures per property; the oracles here re-derive
//! answers along independent routes (bitmaps, definition chasing) rather
//! than calling back into the code they check.

use crate::bisect::bisection_locate;
use crate::cardinality::{
    classify_cardinality, naturals_demo, verify_p_definition, CardinalityClass,
    NaturalsFamily,
};
use crate::construct::{
    bct_witness, run_construction, DeletionSchedule, ScheduleEntry,
};
use crate::dyadic::Dyadic;
use crate::metric::{
    distance, distance_transfinite, fd_compare, oplus, triangle_case, FormalDistance,
};
use crate::ordinal::OrdinalIndex;
use crate::point::Point;
use crate::pointed::PointedSet;
use crate::transfinite::TransfinitePoint;
use crate::trie::{CylinderComplex, CylinderWord};
use crate::word::BitWord;
use rand::Rng;
use std::cmp::Ordering;
use std::collections::BTreeSet;

/// Per-property tally.
#[derive(Debug, Clone)]
pub struct PropertyOutcome {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
}

/// Result of one suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub properties: Vec<PropertyOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failures == 0)
    }
}

struct Tally {
    properties: Vec<PropertyOutcome>,
}

impl Tally {
    fn new() -> Tally {
        Tally {
            properties: Vec::new(),
        }
    }

    fn check(&mut self, name: &str, ok: bool) {
        match self.properties.iter_mut().find(|p| p.name == name) {
            Some(p) => {
                p.cases += 1;
                if !ok {
                    p.failures += 1;
                }
            }
            None => self.properties.push(PropertyOutcome {
                name: name.into(),
                cases: 1,
                failures: u64::from(!ok),
            }),
        }
    }

    fn finish(self, suite: &str) -> SuiteReport {
        SuiteReport {
            suite: suite.into(),
            properties: self.properties,
        }
    }
}

/// Bounds a suite runs at; the CLI fills these from its flags.
#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub depth: usize,
    pub lookahead: usize,
    pub budget: usize,
    pub samples: u64,
    pub ordinal_bound: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            depth: 3,
            lookahead: 6,
            budget: 16,
            samples: 200,
            ordinal_bound: 2,
        }
    }
}

pub fn random_point(rng: &mut impl Rng, max_resolution: usize) -> Point {
    let max_resolution = max_resolution.max(1);
    let period_len = rng.gen_range(1..=max_resolution);
    let pre_len = rng.gen_range(0..=max_resolution - period_len.min(max_resolution));
    let pre: BitWord = (0..pre_len).map(|_| rng.gen_bool(0.5)).collect();
    let per: BitWord = (0..period_len).map(|_| rng.gen_bool(0.5)).collect();
    Point::new(pre, per).expect("period is nonempty")
}

pub fn random_complex(rng: &mut impl Rng, depth: usize) -> CylinderComplex {
    if depth == 0 || rng.gen_bool(0.3) {
        if rng.gen_bool(0.5) {
            CylinderComplex::Full
        } else {
            CylinderComplex::Empty
        }
    } else {
        CylinderComplex::split(
            random_complex(rng, depth - 1),
            random_complex(rng, depth - 1),
        )
    }
}

pub fn random_transfinite(
    rng: &mut impl Rng,
    blocks: usize,
    max_resolution: usize,
) -> TransfinitePoint {
    TransfinitePoint::new(
        (0..blocks.max(1))
            .map(|_| random_point(rng, max_resolution))
            .collect(),
    )
    .expect("at least one block")
}

/// A schedule whose derived deletions land inside every depth-`d`
/// cylinder: one target extending each stem, in shuffled order.
pub fn random_dense_schedule(rng: &mut impl Rng, d: usize) -> DeletionSchedule {
    let mut stems: Vec<BitWord> = (0..(1u64 << d))
        .map(|idx| (0..d).map(|i| (idx >> (d - 1 - i)) & 1 == 1).collect())
        .collect();
    // Fisher–Yates with the shared generator keeps runs reproducible.
    for i in (1..stems.len()).rev() {
        let j = rng.gen_range(0..=i);
        stems.swap(i, j);
    }
    let entries = stems
        .into_iter()
        .map(|mut stem| {
            for _ in 0..2 {
                stem.push(rng.gen_bool(0.5));
            }
            ScheduleEntry::Target {
                target: Point::from_stem(&stem),
                offset: rng.gen_range(1..=2),
            }
        })
        .collect();
    DeletionSchedule::new(entries)
}

/// Metric axioms, the ultrametric bound, and the formal algebra.
pub fn metric_suite(rng: &mut impl Rng, config: &SuiteConfig) -> SuiteReport {
    let mut t = Tally::new();
    let half = Dyadic::pow2_neg(1);
    for _ in 0..config.samples {
        let x = random_point(rng, 10);
        let y = random_point(rng, 10);
        let z = random_point(rng, 10);
        let dxy = distance(&x, &y);
        let dyx = distance(&y, &x);
        let dyz = distance(&y, &z);
        let dxz = distance(&x, &z);
        t.check("symmetry", dxy == dyx);
        t.check("nonnegative", dxy >= Dyadic::zero());
        t.check("identity iff zero", dxy.is_zero() == (x == y));
        t.check("triangle", &dxy + &dyz >= dxz);
        t.check("ultrametric", dxy.clone().max(dyz.clone()) >= dxz);
        t.check("bounded by half", dxy <= half);
    }
    // Carry rule over the successor grid; limit carries must error.
    for q in 0..=config.ordinal_bound {
        for n in 1..=16u64 {
            let u = FormalDistance::unit(OrdinalIndex::new(q, n));
            let carried = oplus(&u, &u);
            t.check(
                "oplus carry",
                matches!(&carried, Ok(fd) if *fd == FormalDistance::unit(OrdinalIndex::new(q, n - 1))),
            );
        }
        let at_limit = FormalDistance::unit(OrdinalIndex::new(q, 0));
        t.check("limit carry errors", oplus(&at_limit, &at_limit).is_err());
    }
    // Triangle cases with their per-case identities.
    for _ in 0..config.samples {
        let blocks = config.ordinal_bound.max(1) as usize;
        let x = random_transfinite(rng, blocks, 6);
        let y = random_transfinite(rng, blocks, 6);
        let z = random_transfinite(rng, blocks, 6);
        t.check("triangle cases", triangle_case(&x, &y, &z).is_ok());
        // Formal triangle inequality whenever the sum is defined.
        let dxy = distance_transfinite(&x, &y).unwrap();
        let dyz = distance_transfinite(&y, &z).unwrap();
        let dxz = distance_transfinite(&x, &z).unwrap();
        if let Ok(sum) = oplus(&dxy, &dyz) {
            t.check(
                "formal triangle",
                fd_compare(&sum, &dxz) != Ordering::Less,
            );
        }
    }
    // Block-0 formal distances order exactly like rational ones.
    for _ in 0..config.samples {
        let a = random_point(rng, 8);
        let b = random_point(rng, 8);
        let c = random_point(rng, 8);
        let d = random_point(rng, 8);
        let lift = |p: &Point| TransfinitePoint::new(vec![p.clone()]).unwrap();
        let formal = fd_compare(
            &distance_transfinite(&lift(&a), &lift(&b)).unwrap(),
            &distance_transfinite(&lift(&c), &lift(&d)).unwrap(),
        );
        let rational = distance(&a, &b).cmp(&distance(&c, &d));
        t.check("formal matches rational", formal == rational);
    }
    t.finish("metric")
}

/// Depth-limited bitmap model of a complex: one bit per depth-`d` stem.
pub fn complex_to_bitmap(c: &CylinderComplex, d: usize) -> Option<u64> {
    fn walk(c: &CylinderComplex, d: usize, acc: &mut u64, at: u64) -> bool {
        match c {
            CylinderComplex::Empty => true,
            CylinderComplex::Full => {
                for i in 0..(1u64 << d) {
                    *acc |= 1 << (at + i);
                }
                true
            }
            CylinderComplex::Split { zero, one } => {
                if d == 0 {
                    return false; // deeper than the bitmap resolves
                }
                walk(zero, d - 1, acc, at) && walk(one, d - 1, acc, at + (1 << (d - 1)))
            }
        }
    }
    let mut acc = 0;
    walk(c, d, &mut acc, 0).then_some(acc)
}

pub fn bitmap_to_complex(bits: u64, d: usize) -> CylinderComplex {
    fn build(bits: u64, d: usize, at: u64) -> CylinderComplex {
        if d == 0 {
            return if bits >> at & 1 == 1 {
                CylinderComplex::Full
            } else {
                CylinderComplex::Empty
            };
        }
        CylinderComplex::split(
            build(bits, d - 1, at),
            build(bits, d - 1, at + (1 << (d - 1))),
        )
    }
    build(bits, d, 0)
}

/// Boolean-algebra laws, exhaustive depth-3 oracle equivalence, measure
/// additivity, and the clopen-ball/cylinder identity.
pub fn trie_suite(rng: &mut impl Rng, config: &SuiteConfig) -> SuiteReport {
    let mut t = Tally::new();
    for _ in 0..config.samples {
        let a = random_complex(rng, 8);
        let b = random_complex(rng, 8);
        t.check(
            "de morgan",
            a.union(&b).complement() == a.complement().intersect(&b.complement()),
        );
        t.check("idempotence", a.union(&a) == a && a.intersect(&a) == a);
        t.check(
            "absorption",
            a.union(&a.intersect(&b)) == a && a.intersect(&a.union(&b)) == a,
        );
        let lhs = &a.union(&b).measure() + &a.intersect(&b).measure();
        let rhs = &a.measure() + &b.measure();
        t.check("measure additivity", lhs == rhs);
    }
    // Exhaustive oracle equivalence at depth 3: all 256 denotations.
    let d = 3usize;
    let all = 1u64 << (1 << d);
    for bits_a in 0..all {
        let a = bitmap_to_complex(bits_a, d);
        t.check(
            "bitmap round trip",
            complex_to_bitmap(&a, d) == Some(bits_a),
        );
        t.check(
            "complement matches oracle",
            complex_to_bitmap(&a.complement(), d) == Some(!bits_a & (all - 1)),
        );
        let measure_oracle = Dyadic::new((bits_a.count_ones() as u64).into(), d as u64);
        t.check("measure matches oracle", a.measure() == measure_oracle);
        let b_bits = (bits_a.rotate_left(3) ^ 0b10110101) & (all - 1);
        let b = bitmap_to_complex(b_bits, d);
        t.check(
            "union matches oracle",
            complex_to_bitmap(&a.union(&b), d) == Some(bits_a | b_bits),
        );
        t.check(
            "intersection matches oracle",
            complex_to_bitmap(&a.intersect(&b), d) == Some(bits_a & b_bits),
        );
    }
    // Random spot checks one level deeper, against 16-prefix bitmaps.
    let d4 = 4usize;
    let mask4 = (1u64 << (1 << d4)) - 1;
    for _ in 0..config.samples.min(128) {
        let bits_a = rng.gen_range(0..=mask4);
        let bits_b = rng.gen_range(0..=mask4);
        let a = bitmap_to_complex(bits_a, d4);
        let b = bitmap_to_complex(bits_b, d4);
        t.check(
            "depth-4 union matches oracle",
            complex_to_bitmap(&a.union(&b), d4) == Some(bits_a | bits_b),
        );
        t.check(
            "depth-4 intersection matches oracle",
            complex_to_bitmap(&a.intersect(&b), d4) == Some(bits_a & bits_b),
        );
        t.check(
            "depth-4 complement matches oracle",
            complex_to_bitmap(&a.complement(), d4) == Some(!bits_a & mask4),
        );
        t.check(
            "depth-4 measure matches oracle",
            a.measure() == Dyadic::new((bits_a.count_ones() as u64).into(), d4 as u64),
        );
    }
    // Membership against the bitmap: a depth-3 complex contains a point
    // iff the bit of its 3-prefix is set.
    for bits in [0u64, 0b10110101, 0b01001010, 255] {
        let c = bitmap_to_complex(bits, d);
        for _ in 0..32 {
            let p = random_point(rng, 6);
            let idx = (0..d).fold(0u64, |acc, i| acc << 1 | u64::from(p.bit_at(i)));
            t.check(
                "membership matches oracle",
                c.contains_point(&p) == (bits >> idx & 1 == 1),
            );
        }
    }
    // Clopen balls are cylinders: {y : d(x,y) ≤ 2^{−n}} = [x↾(n−1)].
    for _ in 0..config.samples.min(64) {
        let x = random_point(rng, 6);
        for n in 1..=6usize {
            let ball_cyl = CylinderComplex::cylinder(&CylinderWord(x.prefix(n - 1)));
            let mut ok = true;
            for idx in 0..(1u64 << 6) {
                let stem: BitWord = (0..6).map(|i| (idx >> (5 - i)) & 1 == 1).collect();
                let y = Point::from_stem(&stem);
                let in_ball = distance(&x, &y) <= Dyadic::pow2_neg(n as u64);
                ok &= in_ball == ball_cyl.contains_point(&y);
            }
            t.check("clopen ball is a cylinder", ok);
        }
    }
    t.finish("trie")
}

/// Dense deletions leave nonempty nowhere-dense remainders; the
/// cardinality predicate and the category witness behave.
pub fn baire_suite(rng: &mut impl Rng, config: &SuiteConfig) -> SuiteReport {
    let mut t = Tally::new();
    let d = config.depth;
    let runs = config.samples.clamp(1, 50);
    for _ in 0..runs {
        let schedule = random_dense_schedule(rng, d);
        match run_construction(&CylinderComplex::Full, &schedule, config.budget) {
            Ok(state) => {
                t.check("run verifies", state.verify().is_ok());
                t.check("dense schedule", state.deletions_dense_at_depth(d));
                t.check("remainder nonempty", !state.current().is_empty());
                t.check(
                    "remainder nowhere dense",
                    state.current().nowhere_dense_at_depth(d, config.lookahead),
                );
                // Bounded-mass bound: k deletions of stems at depth ≥ m
                // leave at least 1 − k·2^{−m}.
                let min_depth =
                    state.deleted.iter().map(|w| w.depth()).min().unwrap_or(0);
                let k = state.deleted.len() as u64;
                let floor = Dyadic::one();
                let removed = Dyadic::new(k.into(), min_depth as u64);
                let bound = if removed >= floor {
                    Dyadic::zero()
                } else {
                    &floor - &removed
                };
                t.check(
                    "mass lower bound",
                    state.current().measure() >= bound,
                );
            }
            Err(_) => {
                t.check("run verifies", false);
            }
        }
    }
    // The predicate report on FULL at a small depth.
    let p_depth = d.min(3);
    match verify_p_definition(&CylinderComplex::Full, p_depth, config.budget.max(1 << p_depth)) {
        Ok(report) => {
            t.check("exhaustive deletion empties", report.exhaustive_empty);
            t.check(
                "max nonempty family is all but one",
                report.max_k_nonempty == (1 << p_depth) - 1,
            );
        }
        Err(_) => t.check("exhaustive deletion empties", false),
    }
    // Category witnesses. A deletion remainder is one honest obstacle;
    // for families of four the obstacles must stay thin, since at finite
    // resolution fat nowhere-dense sets can jointly cover the space.
    for _ in 0..runs.min(20) {
        let schedule = random_dense_schedule(rng, d);
        if let Ok(state) =
            run_construction(&CylinderComplex::Full, &schedule, config.budget)
        {
            let remainder = state.current().clone();
            match bct_witness(&CylinderComplex::Full, std::slice::from_ref(&remainder), d, config.lookahead) {
                Ok(found) => t.check(
                    "witness escapes a remainder",
                    !remainder.contains_point(&found.point),
                ),
                Err(_) => t.check("witness escapes a remainder", false),
            }
        }
        let nd_sets: Vec<CylinderComplex> =
            (0..4).map(|_| random_thin_nowhere_dense(rng, d)).collect();
        match bct_witness(&CylinderComplex::Full, &nd_sets, d, config.lookahead.max(3)) {
            Ok(found) => {
                let avoided = nd_sets.iter().all(|c| !c.contains_point(&found.point));
                t.check("witness avoids all sets", avoided);
            }
            Err(_) => t.check("witness avoids all sets", false),
        }
    }
    t.finish("baire")
}

/// A union of a few deep cylinders: nowhere dense at `depth` by
/// construction, and thin enough that four of them never cover the
/// space (total mass at most 3/4).
pub fn random_thin_nowhere_dense(rng: &mut impl Rng, depth: usize) -> CylinderComplex {
    let depth = depth.max(2);
    let stem_len = depth + 3;
    let count = 6.min(1usize << depth);
    let mut picked: Vec<u64> = Vec::new();
    while picked.len() < count {
        let idx = rng.gen_range(0..(1u64 << stem_len));
        if !picked.contains(&idx) {
            picked.push(idx);
        }
    }
    let words: Vec<CylinderWord> = picked
        .into_iter()
        .map(|idx| {
            CylinderWord(
                (0..stem_len)
                    .map(|i| (idx >> (stem_len - 1 - i)) & 1 == 1)
                    .collect(),
            )
        })
        .collect();
    CylinderComplex::from_cylinders(words.iter())
}

/// Quantifier-chasing kernel oracle: remove extras that some cylinder of
/// depth `k ≤ horizon` isolates, round after round.
pub fn kernel_oracle(s: &PointedSet, horizon: usize) -> BTreeSet<Point> {
    let mut extras: BTreeSet<Point> = s.extras().cloned().collect();
    loop {
        let mut isolated = Vec::new();
        for p in &extras {
            let mut found = false;
            for k in 0..=horizon {
                let stem = CylinderWord(p.prefix(k));
                let body_meets = !s.body().restrict(&stem).is_empty();
                let other_extra = extras
                    .iter()
                    .any(|q| q != p && q.prefix(k) == *stem.stem());
                if !body_meets && !other_extra {
                    found = true;
                    break;
                }
            }
            if found {
                isolated.push(p.clone());
            }
        }
        if isolated.is_empty() {
            return extras;
        }
        for p in isolated {
            extras.remove(&p);
        }
    }
}

pub fn random_pointed_set(rng: &mut impl Rng, depth: usize) -> PointedSet {
    let body = random_complex(rng, depth);
    let want_extras = rng.gen_range(0..=4);
    let mut extras = Vec::new();
    let mut tries = 0;
    while extras.len() < want_extras && tries < 64 {
        tries += 1;
        let p = random_point(rng, depth.max(2));
        if !body.contains_point(&p) && !extras.contains(&p) {
            extras.push(p);
        }
    }
    let want_holes = rng.gen_range(0..=2);
    let mut holes = Vec::new();
    tries = 0;
    while holes.len() < want_holes && tries < 64 {
        tries += 1;
        let p = random_point(rng, depth.max(2));
        if body.contains_point(&p) && !holes.contains(&p) {
            holes.push(p);
        }
    }
    PointedSet::new(body, extras, holes).expect("membership checked above")
}

/// Kernel fixpoints, oracle agreement, and classification consistency.
pub fn cardinality_suite(rng: &mut impl Rng, config: &SuiteConfig) -> SuiteReport {
    let mut t = Tally::new();
    let horizon = 4usize;
    for _ in 0..config.samples.clamp(1, 100) {
        let s = random_pointed_set(rng, 4);
        let kernel = s.cb_kernel(horizon);
        t.check(
            "kernel has no isolated points",
            kernel.isolated_points(horizon).is_empty(),
        );
        t.check("kernel keeps the body", kernel.body() == s.body());
        let oracle = kernel_oracle(&s, horizon);
        let got: BTreeSet<Point> = kernel.extras().cloned().collect();
        t.check("kernel matches oracle", got == oracle);
        let class = classify_cardinality(&s, horizon);
        let expect = if !s.body().is_empty() {
            CardinalityClass::ContinuumScale
        } else if s.extras_count() > 0 {
            CardinalityClass::Finite(s.extras_count())
        } else {
            CardinalityClass::Empty
        };
        t.check("classification consistent", class == expect);
    }
    // The naturals demo rolled in as the countable contrast.
    for bound in [10u64, 20, 40] {
        let finite = naturals_demo(bound, &NaturalsFamily::Explicit(vec![3, 5])).unwrap();
        t.check(
            "finite deletions leave a tail",
            finite.remainder_size == bound - 5 && !finite.empties_in_limit,
        );
        let cofinal = naturals_demo(bound, &NaturalsFamily::Cofinal).unwrap();
        t.check(
            "cofinal deletions empty the window",
            cofinal.remainder_size == 0 && cofinal.empties_in_limit,
        );
    }
    t.finish("cardinality")
}

/// Exhaustive bisection bound over terminating points.
pub fn bisection_suite(config: &SuiteConfig) -> SuiteReport {
    let mut t = Tally::new();
    let full = PointedSet::from_body(CylinderComplex::Full);
    let max_res = config.depth.clamp(2, 8);
    let mut points = vec![Point::constant(false)];
    for len in 1..=(max_res - 1) {
        for idx in 0..(1u64 << (len - 1)) {
            let mut bits: Vec<bool> = (0..len - 1)
                .map(|i| (idx >> (len - 2 - i)) & 1 == 1)
                .collect();
            bits.push(true);
            points.push(
                Point::new(BitWord::from_bits(bits), BitWord::from_bits([false]))
                    .expect("period is nonempty"),
            );
        }
    }
    for p in points {
        match bisection_locate(&full, &p, config.budget.max(2) as u64) {
            Ok(report) => {
                t.check("membership", report.member);
                t.check(
                    "step bound",
                    report.steps as usize <= p.resolution() + 1,
                );
            }
            Err(_) => t.check("step bound", false),
        }
    }
    let half = Point::parse("1:0").unwrap();
    match bisection_locate(&full, &half, 4) {
        Ok(report) => t.check("half point hits at step one", report.steps == 1),
        Err(_) => t.check("half point hits at step one", false),
    }
    t.finish("bisection")
}

/// The initial-segment deletion story at three bounds.
pub fn naturals_suite(_config: &SuiteConfig) -> SuiteReport {
    let mut t = Tally::new();
    for bound in [10u64, 20, 40] {
        let finite = naturals_demo(bound, &NaturalsFamily::Explicit(vec![3, 5])).unwrap();
        t.check("finite remainder exact", finite.remainder_size == bound - 5);
        t.check("finite does not empty", !finite.empties_in_limit);
        let none = naturals_demo(bound, &NaturalsFamily::Explicit(vec![])).unwrap();
        t.check("no deletions keep everything", none.remainder_size == bound);
        let cofinal = naturals_demo(bound, &NaturalsFamily::Cofinal).unwrap();
        t.check("cofinal empties", cofinal.remainder_size == 0);
        t.check("cofinal empties in limit", cofinal.empties_in_limit);
    }
    t.finish("naturals")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng() -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(0xBA1DE)
    }

    #[test]
    fn all_suites_pass_at_small_bounds() {
        let config = SuiteConfig {
            samples: 50,
            ..SuiteConfig::default()
        };
        let mut r = rng();
        for report in [
            metric_suite(&mut r, &config),
            trie_suite(&mut r, &config),
            baire_suite(&mut r, &config),
            cardinality_suite(&mut r, &config),
            bisection_suite(&config),
            naturals_suite(&config),
        ] {
            for p in &report.properties {
                assert_eq!(
                    p.failures, 0,
                    "suite {} property {} failed {}/{}",
                    report.suite, p.name, p.failures, p.cases
                );
            }
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let mut a = rng();
        let mut b = rng();
        for _ in 0..20 {
            assert_eq!(random_point(&mut a, 8), random_point(&mut b, 8));
        }
        assert_eq!(random_complex(&mut a, 5), random_complex(&mut b, 5));
    }

    #[test]
    fn bitmap_oracle_is_involutive() {
        for bits in [0u64, 1, 0b10110101, 255] {
            assert_eq!(complex_to_bitmap(&bitmap_to_complex(bits, 3), 3), Some(bits));
        }
    }
}
