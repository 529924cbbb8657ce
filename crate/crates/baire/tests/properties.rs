//! Property tests over randomly generated points, complexes, and runs.

use baire::export::{complex_from_json, complex_to_json};
use baire::{
    cover_check, distance, run_construction, CoverOutcome, CylinderComplex,
    CylinderWord, BitWord, DeletionSchedule, Point, ScheduleEntry,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use std::cmp::Ordering;

fn bitword(max_len: usize) -> impl Strategy<Value = BitWord> {
    prop::collection::vec(any::<bool>(), 0..=max_len).prop_map(BitWord::from_bits)
}

fn point(max_res: usize) -> impl Strategy<Value = Point> {
    (
        prop::collection::vec(any::<bool>(), 0..max_res),
        prop::collection::vec(any::<bool>(), 1..=max_res),
    )
        .prop_map(|(pre, per)| {
            Point::new(BitWord::from_bits(pre), BitWord::from_bits(per)).unwrap()
        })
}

fn complex(depth: u32) -> impl Strategy<Value = CylinderComplex> {
    let leaf = prop_oneof![
        Just(CylinderComplex::Empty),
        Just(CylinderComplex::Full),
    ];
    leaf.prop_recursive(depth, 64, 2, |inner| {
        (inner.clone(), inner)
            .prop_map(|(zero, one)| CylinderComplex::split(zero, one))
    })
}

fn half() -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(2))
}

proptest! {
    #[test]
    fn canonicalize_is_idempotent(pre in bitword(8), per in bitword(7)) {
        let mut per = per;
        per.push(true); // nonempty
        let p = Point::new(pre, per).unwrap();
        let again = Point::new(p.preperiod().clone(), p.period().clone()).unwrap();
        prop_assert_eq!(p, again);
    }

    // Sequence equality is bit-for-bit equality over a brute-force window.
    #[test]
    fn first_disagreement_is_sound(x in point(12), y in point(12)) {
        let window = 2 * (x.resolution() * y.resolution() + x.resolution() + y.resolution());
        match x.first_disagreement(&y) {
            None => {
                for i in 0..window {
                    prop_assert_eq!(x.bit_at(i), y.bit_at(i));
                }
            }
            Some(i) => {
                prop_assert_ne!(x.bit_at(i), y.bit_at(i));
                for j in 0..i {
                    prop_assert_eq!(x.bit_at(j), y.bit_at(j));
                }
            }
        }
    }

    #[test]
    fn lex_order_is_total_and_consistent(x in point(10), y in point(10), z in point(10)) {
        prop_assert_eq!(x.compare_lex(&y), y.compare_lex(&x).reverse());
        prop_assert_eq!(x.compare_lex(&y) == Ordering::Equal, x == y);
        if x.compare_lex(&y) != Ordering::Greater && y.compare_lex(&z) != Ordering::Greater {
            prop_assert_ne!(x.compare_lex(&z), Ordering::Greater);
        }
    }

    // Midpoint value identity and strict betweenness, via the rational
    // oracle.
    #[test]
    fn midpoint_is_exact(a in point(8), b in point(8)) {
        let (a, b) = match a.compare_lex(&b) {
            Ordering::Less => (a, b),
            Ordering::Greater => (b, a),
            Ordering::Equal => return Ok(()),
        };
        let m = Point::midpoint(&a, &b).unwrap();
        let expected = (a.to_rational() + b.to_rational()) * half();
        prop_assert_eq!(m.to_rational(), expected);
        if a.to_rational() < b.to_rational() {
            prop_assert_eq!(a.compare_lex(&m), Ordering::Less);
            prop_assert_eq!(m.compare_lex(&b), Ordering::Less);
        }
    }

    #[test]
    fn rational_round_trip(p in point(10)) {
        let v = p.to_rational();
        let q = Point::from_rational(&v);
        prop_assert_eq!(q.to_rational(), v);
    }

    #[test]
    fn boolean_algebra_laws(a in complex(8), b in complex(8), c in complex(8)) {
        prop_assert_eq!(
            a.union(&b).complement(),
            a.complement().intersect(&b.complement())
        );
        prop_assert_eq!(
            a.intersect(&b).complement(),
            a.complement().union(&b.complement())
        );
        prop_assert_eq!(a.union(&a), a.clone());
        prop_assert_eq!(a.intersect(&a.union(&b)), a.clone());
        prop_assert_eq!(a.union(&a.intersect(&b)), a.clone());
        prop_assert_eq!(
            a.union(&b.union(&c)),
            a.union(&b).union(&c)
        );
        prop_assert_eq!(a.complement().complement(), a);
    }

    #[test]
    fn measure_is_additive(a in complex(8), b in complex(8)) {
        let lhs = &a.union(&b).measure() + &a.intersect(&b).measure();
        let rhs = &a.measure() + &b.measure();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn measure_bounds_and_extremes(a in complex(8)) {
        let m = a.measure();
        prop_assert!(m <= baire::Dyadic::one());
        prop_assert_eq!(m.is_zero(), a.is_empty());
        prop_assert_eq!(m == baire::Dyadic::one(), a.is_full());
    }

    #[test]
    fn complex_json_round_trips(a in complex(8)) {
        prop_assert_eq!(complex_from_json(&complex_to_json(&a)).unwrap(), a);
    }

    // Distance to a member of a cylinder the point lies in is bounded by
    // the cylinder's grain: the metric matches the tree geometry.
    #[test]
    fn metric_matches_cylinders(x in point(8), n in 1usize..7) {
        let cyl = CylinderComplex::cylinder(&CylinderWord(x.prefix(n - 1)));
        // Points of the cylinder are exactly those within 2^-n.
        let probe = Point::from_stem(&x.prefix(n - 1));
        prop_assert!(cyl.contains_point(&probe));
        prop_assert!(distance(&x, &probe) <= baire::Dyadic::pow2_neg(n as u64));
    }

    #[test]
    fn cover_check_is_sound(
        stems in prop::collection::vec(bitword(4), 0..6),
        space in complex(4),
    ) {
        let cover: Vec<CylinderWord> = stems.into_iter().map(CylinderWord).collect();
        match cover_check(&space, &cover) {
            CoverOutcome::Covered(minimal) => {
                let union = CylinderComplex::from_cylinders(minimal.iter());
                prop_assert!(space.is_subset_of(&union));
                // Inclusion-minimality: dropping any element uncovers.
                for i in 0..minimal.len() {
                    let trial: Vec<CylinderWord> = minimal
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| *j != i)
                        .map(|(_, x)| x.clone())
                        .collect();
                    let u = CylinderComplex::from_cylinders(trial.iter());
                    prop_assert!(!space.is_subset_of(&u));
                }
            }
            CoverOutcome::Uncovered(witness) => {
                prop_assert!(!space.restrict(&witness).is_empty());
                for c in &cover {
                    prop_assert!(!witness.meets(c));
                }
            }
        }
    }

    // Stage monotonicity and reconstruction on random target schedules.
    #[test]
    fn runs_verify(
        targets in prop::collection::vec((point(5), 1u64..3), 0..6),
    ) {
        let entries: Vec<ScheduleEntry> = targets
            .into_iter()
            .map(|(target, offset)| ScheduleEntry::Target { target, offset })
            .collect();
        let schedule = DeletionSchedule::new(entries);
        if let Ok(state) = run_construction(&CylinderComplex::Full, &schedule, 64) {
            prop_assert!(state.verify().is_ok());
            prop_assert!(!state.current().is_empty());
        }
    }
}
