//! Acceptance suite: one test per criterion, each printing a pass line
//! and holding its stated runtime budget. Run with
//! `cargo test -p baire --test acceptance -- --nocapture` to see the
//! per-criterion lines.

use baire::suites::{
    self, complex_to_bitmap, kernel_oracle, random_dense_schedule, random_point,
    random_pointed_set, random_thin_nowhere_dense, random_transfinite,
};
use baire::{
    bct_witness, bisection_locate, distance, oplus, preserve_run, run_construction,
    run_transfinite, triangle_case, verify_p_definition, BitWord, CylinderComplex,
    Dyadic, Error, FormalDistance, NaturalsFamily, OrdinalIndex, Point, PointedSet,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::time::{Duration, Instant};

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0xACCE97 ^ tag)
}

fn finish(criterion: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!(
        "[acceptance] {criterion}: PASS in {} ms (budget {} ms)",
        elapsed.as_millis(),
        budget.as_millis()
    );
    assert!(
        elapsed < budget,
        "{criterion} exceeded its runtime budget: {elapsed:?}"
    );
}

#[test]
fn criterion_01_ultrametric_suite() {
    let started = Instant::now();
    let mut r = rng(1);
    let half = Dyadic::pow2_neg(1);
    for _ in 0..500 {
        let x = random_point(&mut r, 10);
        let y = random_point(&mut r, 10);
        let z = random_point(&mut r, 10);
        let dxy = distance(&x, &y);
        let dyz = distance(&y, &z);
        let dxz = distance(&x, &z);
        assert_eq!(dxy, distance(&y, &x), "symmetry");
        assert!(dxy >= Dyadic::zero(), "nonnegativity");
        assert_eq!(dxy.is_zero(), x == y, "identity of indiscernibles");
        assert!(&dxy + &dyz >= dxz, "triangle inequality");
        assert!(dxy.clone().max(dyz.clone()) >= dxz, "ultrametric");
        assert!(dxy <= half, "bound d ≤ 1/2");
    }
    finish(
        "criterion 1 (ultrametric suite, 500 triples)",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_02_formal_algebra_suite() {
    let started = Instant::now();
    for q in 0..=2u32 {
        for n in 1..=16u64 {
            let unit = FormalDistance::unit(OrdinalIndex::new(q, n));
            let sum = oplus(&unit, &unit).expect("successor carry is defined");
            assert_eq!(sum, FormalDistance::unit(OrdinalIndex::new(q, n - 1)));
        }
        let limit = FormalDistance::unit(OrdinalIndex::new(q, 0));
        assert!(matches!(
            oplus(&limit, &limit),
            Err(Error::LimitCarry(_))
        ));
    }
    let mut r = rng(2);
    let mut classified = 0;
    while classified < 200 {
        let x = random_transfinite(&mut r, 2, 6);
        let y = random_transfinite(&mut r, 2, 6);
        let z = random_transfinite(&mut r, 2, 6);
        // triangle_case checks the per-case identity internally and
        // errors if it fails.
        triangle_case(&x, &y, &z).expect("case identity holds");
        classified += 1;
    }
    finish(
        "criterion 2 (formal algebra: carries, limit errors, 200 triples)",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_03_trie_oracle_equivalence() {
    let started = Instant::now();
    let d = 3usize;
    let mask = (1u64 << (1 << d)) - 1;
    let complexes: Vec<CylinderComplex> = (0..=mask)
        .map(|bits| suites::bitmap_to_complex(bits, d))
        .collect();
    for (bits_a, a) in complexes.iter().enumerate() {
        let bits_a = bits_a as u64;
        assert_eq!(complex_to_bitmap(a, d), Some(bits_a), "round trip");
        assert_eq!(
            complex_to_bitmap(&a.complement(), d),
            Some(!bits_a & mask),
            "complement"
        );
        assert_eq!(
            a.measure(),
            Dyadic::new((bits_a.count_ones() as u64).into(), d as u64),
            "measure"
        );
        for (bits_b, b) in complexes.iter().enumerate() {
            let bits_b = bits_b as u64;
            assert_eq!(
                complex_to_bitmap(&a.union(b), d),
                Some(bits_a | bits_b),
                "union {bits_a} {bits_b}"
            );
            assert_eq!(
                complex_to_bitmap(&a.intersect(b), d),
                Some(bits_a & bits_b),
                "intersection {bits_a} {bits_b}"
            );
        }
    }
    // Membership against the bitmap for a sample of points.
    let mut r = rng(3);
    for bits in [0u64, 0b1011_0101, 0b0100_1010, 255] {
        let c = suites::bitmap_to_complex(bits, d);
        for _ in 0..64 {
            let p = random_point(&mut r, 8);
            let idx = (0..d).fold(0u64, |acc, i| acc << 1 | u64::from(p.bit_at(i)));
            assert_eq!(c.contains_point(&p), bits >> idx & 1 == 1, "membership");
        }
    }
    finish(
        "criterion 3 (trie ops vs 8-bit bitmap oracle, all 256 denotations)",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_04_dense_schedules_yield_nowhere_dense_remainders() {
    let started = Instant::now();
    let mut r = rng(4);
    for _ in 0..50 {
        let schedule = random_dense_schedule(&mut r, 3);
        let state = run_construction(&CylinderComplex::Full, &schedule, 16)
            .expect("schedule runs");
        state.verify().expect("run invariants");
        assert!(state.deletions_dense_at_depth(3), "schedule is dense");
        assert!(!state.current().is_empty(), "remainder nonempty");
        assert!(
            state.current().nowhere_dense_at_depth(3, 6),
            "remainder nowhere dense at depth 3"
        );
    }
    finish(
        "criterion 4 (50 dense depth-3 schedules: nonempty nowhere-dense remainders)",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_05_deletion_count_predicate() {
    let started = Instant::now();
    // Independent oracle: the four depth-2 cylinders as bits 00,01,10,11.
    // A family is dense iff it touches both depth-1 halves by inclusion;
    // the remainder is nonempty iff some unit is spared.
    let mut oracle_max = 0usize;
    for mask in 0u8..16 {
        let k = mask.count_ones() as usize;
        let dense = (mask & 0b0011 != 0) && (mask & 0b1100 != 0);
        let nonempty = mask != 0b1111;
        if dense && nonempty {
            oracle_max = oracle_max.max(k);
        }
        if dense && k == 3 {
            assert!(nonempty, "every dense 3-family spares a unit");
        }
    }
    assert_eq!(oracle_max, 3);

    let report = verify_p_definition(&CylinderComplex::Full, 2, 64).unwrap();
    assert!(report.exhaustive_empty, "exhaustive deletion empties");
    assert_eq!(report.max_k_nonempty, oracle_max, "max nonempty family");
    assert_eq!(report.witness.len(), 3);
    let witness_union = CylinderComplex::from_cylinders(report.witness.iter());
    assert!(!CylinderComplex::Full.minus(&witness_union).is_empty());
    finish(
        "criterion 5 (cardinality predicate at depth 2: exhaustive enumeration)",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_06_witness_preservation() {
    let started = Instant::now();
    let avoid = [
        Point::parse(":0").unwrap(),
        Point::parse("01:0").unwrap(),
        Point::parse("11:0").unwrap(),
    ];
    let seed = Point::parse(":10").unwrap();
    let state = preserve_run(&CylinderComplex::Full, &avoid, &seed, 3, 8)
        .expect("preserve run fits in budget 8");
    state.verify().expect("run invariants");
    assert!(state.witnesses.len() >= 3, "at least three witnesses");
    for w in &state.witnesses {
        assert!(
            state.current().contains_point(w),
            "witness {w} in the remainder"
        );
    }

    let segments = vec![
        vec![Point::parse(":0").unwrap()],
        vec![Point::parse("01:0").unwrap()],
    ];
    let keep = Point::parse(":1").unwrap();
    let t = run_transfinite(&CylinderComplex::Full, &segments, &keep, 8, 2)
        .expect("transfinite run");
    assert_eq!(t.limits.len(), 2, "two limit stages at K = 2");
    for rec in &t.limits {
        assert_eq!(rec.witness, keep);
        let (_, stage) = t
            .stages
            .iter()
            .find(|(at, _)| *at == rec.at)
            .expect("limit stage recorded");
        assert!(stage.contains_point(&keep), "seed survives {}", rec.at);
    }
    finish(
        "criterion 6 (preserved witnesses; seed survives both limit stages)",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_07_category_witnesses() {
    let started = Instant::now();
    let mut r = rng(7);
    for instance in 0..20 {
        let nd_sets: Vec<CylinderComplex> = (0..4)
            .map(|_| random_thin_nowhere_dense(&mut r, 3))
            .collect();
        for (i, nd) in nd_sets.iter().enumerate() {
            assert!(
                nd.nowhere_dense_at_depth(3, 6),
                "instance {instance} set {i} is nowhere dense at depth 3"
            );
        }
        let found = bct_witness(&CylinderComplex::Full, &nd_sets, 3, 6)
            .expect("a witness exists");
        for (i, nd) in nd_sets.iter().enumerate() {
            assert!(
                !nd.contains_point(&found.point),
                "instance {instance}: witness escapes set {i}"
            );
        }
    }
    finish(
        "criterion 7 (category witness avoids 4 nowhere-dense sets, 20 instances)",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_08_bisection_bounds() {
    let started = Instant::now();
    let full = PointedSet::from_body(CylinderComplex::Full);
    // All terminating canonical points of resolution ≤ 6: the zero point
    // plus every preperiod ending in 1 of length ≤ 5.
    let mut points = vec![Point::constant(false)];
    for len in 1..=5usize {
        for idx in 0..(1u64 << (len - 1)) {
            let mut bits: Vec<bool> = (0..len - 1)
                .map(|i| (idx >> (len - 2 - i)) & 1 == 1)
                .collect();
            bits.push(true);
            points.push(
                Point::new(BitWord::from_bits(bits), BitWord::from_bits([false]))
                    .unwrap(),
            );
        }
    }
    assert_eq!(points.len(), 32);
    for p in &points {
        let report = bisection_locate(&full, p, 16).expect("terminating point located");
        assert!(report.member, "{p} is in the full space");
        assert!(
            report.steps as usize <= p.resolution() + 1,
            "{p}: {} steps > resolution {} + 1",
            report.steps,
            p.resolution()
        );
    }
    let half = Point::parse("1:0").unwrap();
    let report = bisection_locate(&full, &half, 16).unwrap();
    assert_eq!(report.steps, 1, "the first midpoint is the half point");
    finish(
        "criterion 8 (bisection ≤ resolution+1 steps for all 32 terminating points)",
        started,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_09_kernel_matches_oracle() {
    let started = Instant::now();
    let mut r = rng(9);
    let horizon = 4usize;
    for case in 0..100 {
        let s = random_pointed_set(&mut r, 4);
        let kernel = s.cb_kernel(horizon);
        assert!(
            kernel.isolated_points(horizon).is_empty(),
            "case {case}: kernel has no isolated points"
        );
        let oracle = kernel_oracle(&s, horizon);
        let got: BTreeSet<Point> = kernel.extras().cloned().collect();
        assert_eq!(got, oracle, "case {case}: kernel extras match the oracle");
        assert_eq!(kernel.body(), s.body(), "case {case}: body untouched");
    }
    finish(
        "criterion 9 (kernel vs definition-chasing oracle, 100 pointed sets)",
        started,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_10_naturals_demo() {
    let started = Instant::now();
    for bound in [10u64, 20, 40] {
        let finite =
            baire::naturals_demo(bound, &NaturalsFamily::Explicit(vec![3, 5])).unwrap();
        assert_eq!(finite.remainder_size, bound - 5, "exact remainder");
        assert!(!finite.empties_in_limit, "finite deletions never empty");
        let cofinal = baire::naturals_demo(bound, &NaturalsFamily::Cofinal).unwrap();
        assert_eq!(cofinal.remainder_size, 0);
        assert!(cofinal.empties_in_limit, "cofinal deletions empty");
    }
    finish(
        "criterion 10 (naturals demo at bounds 10/20/40, exact counts)",
        started,
        Duration::from_secs(1),
    );
}
