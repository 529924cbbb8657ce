//! Membership location by iterated interval bisection.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::pointed::PointedSet;
use std::cmp::Ordering;
use std::fmt;

/// Which way one bisection step went.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Left,
    Right,
    Hit,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Branch::Left => write!(f, "L"),
            Branch::Right => write!(f, "R"),
            Branch::Hit => write!(f, "HIT"),
        }
    }
}

/// One step of the bisection trace.
#[derive(Debug, Clone)]
pub struct BisectionStep {
    pub low: Point,
    pub high: Point,
    pub mid: Point,
    pub branch: Branch,
}

/// Outcome of a successful localization.
#[derive(Debug, Clone)]
pub struct BisectionReport {
    pub member: bool,
    pub steps: u64,
    pub trace: Vec<BisectionStep>,
}

/// Locate `x` in the unit interval of sequences by repeated midpoint
/// division and decide its membership in `space`.
///
/// Each step first recognizes `x` at an endpoint, then at the midpoint,
/// and otherwise recurses into the half `x` falls in lexicographically.
/// A point whose canonical form terminates is found within
/// `resolution + 1` steps; other points exhaust `max_steps` and the
/// budget error carries the trace walked so far.
pub fn bisection_locate(
    space: &PointedSet,
    x: &Point,
    max_steps: u64,
) -> Result<BisectionReport> {
    if max_steps < 1 {
        return Err(Error::Precondition("max_steps must be at least 1".into()));
    }
    let mut low = Point::constant(false);
    let mut high = Point::constant(true);
    let mut trace: Vec<BisectionStep> = Vec::new();
    for step in 1..=max_steps {
        if x == &low || x == &high {
            trace.push(BisectionStep {
                low: low.clone(),
                high: high.clone(),
                mid: x.clone(),
                branch: Branch::Hit,
            });
            return Ok(BisectionReport {
                member: space.contains(x),
                steps: step,
                trace,
            });
        }
        let mid = Point::midpoint(&low, &high)?;
        if x == &mid {
            trace.push(BisectionStep {
                low: low.clone(),
                high: high.clone(),
                mid,
                branch: Branch::Hit,
            });
            return Ok(BisectionReport {
                member: space.contains(x),
                steps: step,
                trace,
            });
        }
        match x.compare_lex(&mid) {
            Ordering::Less => {
                trace.push(BisectionStep {
                    low: low.clone(),
                    high: high.clone(),
                    mid: mid.clone(),
                    branch: Branch::Left,
                });
                high = mid;
            }
            Ordering::Greater => {
                trace.push(BisectionStep {
                    low: low.clone(),
                    high: high.clone(),
                    mid: mid.clone(),
                    branch: Branch::Right,
                });
                low = mid;
            }
            Ordering::Equal => unreachable!("equality was handled above"),
        }
    }
    Err(Error::BisectionBudget { max_steps, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trie::{CylinderComplex, CylinderWord};

    fn pt(s: &str) -> Point {
        Point::parse(s).unwrap()
    }

    #[test]
    fn first_midpoint_is_the_half_point() {
        let full = PointedSet::from_body(CylinderComplex::Full);
        let report = bisection_locate(&full, &pt("1:0"), 10).unwrap();
        assert!(report.member);
        assert_eq!(report.steps, 1);
        assert_eq!(report.trace[0].mid, pt("1:0"));
        assert_eq!(report.trace[0].branch, Branch::Hit);
    }

    #[test]
    fn quarter_point_in_right_half_space() {
        let space = PointedSet::from_body(CylinderComplex::cylinder(
            &CylinderWord::parse("1").unwrap(),
        ));
        let report = bisection_locate(&space, &pt("01:0"), 10).unwrap();
        assert!(!report.member);
        assert_eq!(report.steps, 2);
        assert_eq!(report.trace[0].branch, Branch::Left);
        assert_eq!(report.trace[1].branch, Branch::Hit);
    }

    #[test]
    fn endpoints_resolve_in_one_step() {
        let full = PointedSet::from_body(CylinderComplex::Full);
        for s in [":0", ":1"] {
            let report = bisection_locate(&full, &pt(s), 10).unwrap();
            assert_eq!(report.steps, 1);
            assert!(report.member);
        }
    }

    #[test]
    fn step_bound_for_terminating_points() {
        let full = PointedSet::from_body(CylinderComplex::Full);
        // All terminating canonical points of resolution ≤ 6.
        let mut points = vec![pt(":0")];
        for len in 1..=5usize {
            for idx in 0..(1u32 << (len - 1)) {
                // Canonical terminating preperiods end in 1.
                let mut bits: Vec<bool> =
                    (0..len - 1).map(|i| (idx >> (len - 2 - i)) & 1 == 1).collect();
                bits.push(true);
                points.push(Point::new(
                    crate::word::BitWord::from_bits(bits),
                    crate::word::BitWord::from_bits([false]),
                )
                .unwrap());
            }
        }
        for p in points {
            let report = bisection_locate(&full, &p, 16).unwrap();
            assert!(report.member);
            assert!(
                report.steps as usize <= p.resolution() + 1,
                "{p} took {} steps with resolution {}",
                report.steps,
                p.resolution()
            );
        }
    }

    #[test]
    fn non_terminating_point_exhausts_budget_with_trace() {
        let full = PointedSet::from_body(CylinderComplex::Full);
        match bisection_locate(&full, &pt(":01"), 5) {
            Err(Error::BisectionBudget { max_steps, trace }) => {
                assert_eq!(max_steps, 5);
                assert_eq!(trace.len(), 5);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }
}
