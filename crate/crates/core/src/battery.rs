//! Fixed regression battery of published values: the eight Fano tuples, the
//! surfaces for (2,3,5,30) and (2,3,4,12), their resolutions and blow-downs,
//! discrepancies, and the rigidity criterion on small tuples.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{self, ExponentTuple, GammaClass, WeightVector};
use crate::classify::{self, Status};
use crate::dualgraph::{self, IntersectionGraph};
use crate::error::Result;
use crate::geometry::{self, SingularPoint};
use crate::numfmt::fmt_rat;
use crate::symb::{self, CurveSingularity, GaussianRational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub id: String,
    pub description: String,
    pub expected: String,
    pub actual: String,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatterySummary {
    pub checks: Vec<CheckResult>,
    pub passed: usize,
    pub failed: usize,
    pub all_passed: bool,
}

impl BatterySummary {
    pub fn table(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{mark}  {:width$}  {}\n", c.id, c.description));
            if !c.passed {
                out.push_str(&format!("      expected: {}\n      actual:   {}\n", c.expected, c.actual));
            }
        }
        out.push_str(&format!("{} passed, {} failed\n", self.passed, self.failed));
        out
    }
}

/// The computations the battery reads, overridable for fault injection.
pub trait Subject {
    fn weights(&self, s: &ExponentTuple) -> WeightVector {
        arith::weights(s)
    }
    fn amplitude(&self, s: &ExponentTuple) -> BigInt {
        arith::amplitude(s)
    }
    fn canonical_square(&self, s: &ExponentTuple) -> Result<BigRational> {
        geometry::canonical_square(s)
    }
    fn delta_intersections(&self, s: &ExponentTuple) -> Result<(BigRational, BigRational)> {
        geometry::delta_intersections(s)
    }
    fn singular_points(&self, s: &ExponentTuple) -> Result<Vec<SingularPoint>> {
        geometry::singular_points(s)
    }
    fn resolution_graph(&self, s: &ExponentTuple) -> Result<IntersectionGraph> {
        geometry::resolution_graph(s)
    }
}

/// The library as shipped.
pub struct Library;

impl Subject for Library {}

fn tuple(v: &[u64]) -> ExponentTuple {
    ExponentTuple::from_u64s(v).expect("valid literal tuple")
}

struct Battery {
    checks: Vec<CheckResult>,
}

impl Battery {
    fn check(&mut self, id: &str, description: &str, expected: impl ToString, actual: impl ToString) {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        self.checks.push(CheckResult {
            id: id.into(),
            description: description.into(),
            passed: expected == actual,
            expected,
            actual,
        });
    }
}

fn show<T: ToString>(r: Result<T>) -> String {
    r.map_or_else(|e| format!("error: {e}"), |v| v.to_string())
}

fn show_rat(r: Result<BigRational>) -> String {
    show(r.map(|q| fmt_rat(&q)))
}

fn show_points(pts: Result<Vec<SingularPoint>>) -> String {
    show(pts.map(|pts| {
        pts.iter()
            .map(|p| {
                format!(
                    "{}x 1/{}({},{}) on {{{},{}}} mult {}",
                    p.count, p.order, p.type_weights[0], p.type_weights[1], p.edge[0], p.edge[1], p.mult_delta
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }))
}

fn show_weights(w: &WeightVector) -> String {
    let parts: Vec<String> = w.weights.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

fn self_ints(g: &IntersectionGraph) -> String {
    g.curves()
        .map(|c| format!("{}:{}", c.name, c.self_int))
        .collect::<Vec<_>>()
        .join(" ")
}

fn mults(g: &IntersectionGraph) -> String {
    g.edges()
        .iter()
        .map(|e| format!("{}-{}:{}", e.a, e.b, e.mult))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Stepwise replay; each entry is the graph after one blow-down.
fn replay(g: IntersectionGraph, order: &[&str]) -> Result<Vec<IntersectionGraph>> {
    let mut current = g;
    let mut out = Vec::new();
    for name in order {
        current = dualgraph::contract(&current, name)?.0;
        out.push(current.clone());
    }
    Ok(out)
}

pub fn run_battery() -> BatterySummary {
    run_battery_on(&Library)
}

pub fn run_battery_on(subject: &dyn Subject) -> BatterySummary {
    let mut b = Battery { checks: Vec::new() };

    let eight: BTreeSet<String> = [
        [2, 3, 3, 6],
        [2, 3, 6, 6],
        [2, 4, 4, 4],
        [3, 3, 3, 3],
        [3, 3, 4, 4],
        [3, 3, 5, 5],
        [2, 3, 4, 12],
        [2, 3, 5, 30],
    ]
    .iter()
    .map(|v| tuple(v).to_string())
    .collect();
    let found = arith::enumerate_gamma_minus(3, None).map(|v| {
        v.iter().map(|s| s.sorted().to_string()).collect::<BTreeSet<_>>()
    });
    b.check(
        "gamma-minus-3",
        "negative-amplitude cotype-0 tuples in four variables",
        format!("{eight:?}"),
        show(found.map(|f| format!("{f:?}"))),
    );

    for (v, w, k2, d2, dk, pts, dt2, kt2, order, steps) in [
        (
            [2u64, 3, 5, 30],
            "(15,10,6,1)",
            "2/15",
            "1/30",
            "1/15",
            "1x 1/5(1,1) on {0,1} mult 1; 1x 1/3(1,1) on {0,2} mult 1; 1x 1/2(1,1) on {1,2} mult 1",
            -1,
            -2,
            &["Delta", "E2", "E3"][..],
            &[
                ("E2:-1 E3:-2 E5:-4", "E2-E3:1 E2-E5:1 E3-E5:1", -1),
                ("E3:-1 E5:-3", "E3-E5:2", 0),
                ("E5:1", "", 1),
            ][..],
        ),
        (
            [2, 3, 4, 12],
            "(6,4,3,1)",
            "2/3",
            "1/6",
            "1/3",
            "1x 1/2(1,1) on {0,1} mult 1; 2x 1/3(1,1) on {0,2} mult 1",
            -1,
            0,
            &["Delta", "E2"][..],
            &[
                ("E2:-1 E3+:-2 E3-:-2", "E2-E3+:1 E2-E3-:1 E3+-E3-:1", 1),
                ("E3+:-1 E3-:-1", "E3+-E3-:2", 2),
            ][..],
        ),
    ] {
        let s = tuple(&v);
        let tag = v.iter().map(u64::to_string).collect::<String>();
        b.check(&format!("weights-{tag}"), &format!("weights of {s}"), w, show_weights(&subject.weights(&s)));
        b.check(&format!("amplitude-{tag}"), &format!("amplitude of {s}"), -2, subject.amplitude(&s));
        b.check(&format!("k-squared-{tag}"), &format!("K² of the surface {s}"), k2, show_rat(subject.canonical_square(&s)));
        let delta = subject.delta_intersections(&s);
        b.check(
            &format!("delta-{tag}"),
            &format!("Δ² and Δ·(-K) for {s}"),
            format!("{d2} {dk}"),
            show(delta.map(|(a, c)| format!("{} {}", fmt_rat(&a), fmt_rat(&c)))),
        );
        b.check(
            &format!("singular-points-{tag}"),
            &format!("singular points of the surface {s}"),
            pts,
            show_points(subject.singular_points(&s)),
        );
        let graph = subject.resolution_graph(&s);
        let resolution = match &graph {
            Ok(g) => g.curve("Delta").map_or("missing Delta".into(), |d| {
                format!("{} {}", d.self_int, g.ambient_k_squared())
            }),
            Err(e) => format!("error: {e}"),
        };
        b.check(
            &format!("resolution-{tag}"),
            &format!("Δ̃² and K̃² on the resolution of {s}"),
            format!("{dt2} {kt2}"),
            resolution,
        );
        let graphs = graph.and_then(|g| replay(g, order));
        for (n, (si, m, k)) in steps.iter().enumerate() {
            let actual = match &graphs {
                Ok(gs) => {
                    let g = &gs[n];
                    format!("[{}] [{}] K²={}", self_ints(g), mults(g), g.ambient_k_squared())
                }
                Err(e) => format!("error: {e}"),
            };
            b.check(
                &format!("contract-{tag}-{}", n + 1),
                &format!("after blowing down {}", order[..=n].join(", ")),
                format!("[{si}] [{m}] K²={k}"),
                actual,
            );
        }
        if let Ok(gs) = &graphs {
            let last = gs.last().expect("nonempty order");
            if v[3] == 30 {
                let e5 = last.curve("E5");
                b.check(
                    "final-curve-23530",
                    "final curve: self-intersection 1, arithmetic genus 1",
                    "1 1",
                    e5.map_or("missing".into(), |c| format!("{} {}", c.self_int, c.p_a())),
                );
            }
            b.check(
                &format!("del-pezzo-{tag}"),
                &format!("degree of the del Pezzo surface reached from {s}"),
                if v[3] == 30 { 1 } else { 2 },
                dualgraph::del_pezzo_degree(last),
            );
        }
    }

    let rigid8 = eight
        .iter()
        .filter(|s| classify::classify(&s.parse().expect("formatted tuple")).status == Status::Rigid)
        .count();
    b.check("fano-rigid", "all eight Fano tuples classify as rigid", 8, rigid8);

    let (mismatches, uncertified) = sweep(12);
    b.check(
        "criterion-sweep",
        "n = 3, entries <= 12: not rigid iff some exponent is 1 or two are 2",
        0,
        mismatches,
    );
    b.check(
        "witness-sweep",
        "every not-rigid verdict in the sweep has a certified witness",
        0,
        uncertified,
    );

    for (k, expected) in [(2, "0 -2"), (3, "-1/3 -3"), (5, "-3/5 -5")] {
        b.check(
            &format!("discrepancy-{k}"),
            &format!("discrepancy and self-intersection over 1/{k}(1,1)"),
            expected,
            show(geometry::discrepancy(k).map(|d| format!("{} {}", fmt_rat(&d.discrepancy), d.exceptional_self_int))),
        );
    }

    let lambda4_plus_1 = &GaussianRational::from_int(-1) + &GaussianRational::from_int(1);
    b.check(
        "pencil-cusp",
        "x^2 + y^3 + (λ⁴ + 1) with λ⁴ = -1 is singular",
        format!("{:?}", CurveSingularity::SingularAtOrigin),
        format!("{:?}", symb::diagonal_curve_singularity(2, 3, &lambda4_plus_1)),
    );
    b.check(
        "pencil-smooth",
        "x^2 + y^3 + 2 is smooth",
        format!("{:?}", CurveSingularity::Smooth),
        format!("{:?}", symb::diagonal_curve_singularity(2, 3, &GaussianRational::from_int(2))),
    );

    for (v, status) in [
        (&[1u64, 5, 7, 9][..], Status::NotRigid),
        (&[2, 2, 3, 4][..], Status::NotRigid),
        (&[2, 3, 5, 30][..], Status::Rigid),
    ] {
        let s = tuple(v);
        b.check(
            &format!("classify-{}", v.iter().map(u64::to_string).collect::<Vec<_>>().join("-")),
            &format!("verdict for {s}"),
            status,
            classify::classify(&s).status,
        );
    }

    let passed = b.checks.iter().filter(|c| c.passed).count();
    let failed = b.checks.len() - passed;
    BatterySummary {
        checks: b.checks,
        passed,
        failed,
        all_passed: failed == 0,
    }
}

/// All ordered 4-tuples with entries in `1..=max`: number of verdicts that
/// disagree with the criterion, and of not-rigid verdicts whose witness is
/// missing or fails certification.
pub fn sweep(max: u64) -> (usize, usize) {
    let mut mismatches = 0;
    let mut uncertified = 0;
    let mut v = [1u64; 4];
    loop {
        let s = tuple(&v);
        let verdict = classify::classify(&s);
        let ones = v.contains(&1);
        let twos = v.iter().filter(|&&a| a == 2).count();
        let expect_not_rigid = ones || twos >= 2;
        if (verdict.status == Status::NotRigid) != expect_not_rigid
            || (arith::gamma_class(&s) == GammaClass::NotInGamma) != expect_not_rigid
        {
            mismatches += 1;
        }
        if verdict.status == Status::NotRigid {
            let ok = verdict
                .witness
                .as_ref()
                .map(|w| w.certify().map(|n| n.is_certified()).unwrap_or(false))
                .unwrap_or(false);
            if !ok {
                uncertified += 1;
            }
        }
        let mut i = 0;
        while i < 4 && v[i] == max {
            v[i] = 1;
            i += 1;
        }
        if i == 4 {
            break;
        }
        v[i] += 1;
    }
    (mismatches, uncertified)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn battery_passes() {
        let summary = run_battery();
        assert!(summary.all_passed, "{}", summary.table());
        assert!(summary.checks.len() > 25);
    }

    struct CorruptWeights;

    impl Subject for CorruptWeights {
        fn weights(&self, s: &ExponentTuple) -> WeightVector {
            let mut w = arith::weights(s);
            w.weights[0] += BigUint::from(1u32);
            w
        }
        fn canonical_square(&self, s: &ExponentTuple) -> Result<BigRational> {
            let w = self.weights(s);
            let prod: BigUint = w.weights.iter().product();
            let alpha = arith::amplitude(s);
            Ok(BigRational::new((&alpha * &alpha * BigInt::from(arith::lcm_tuple(s))).into(), prod.into()))
        }
    }

    #[test]
    fn corrupted_weights_are_caught() {
        let summary = run_battery_on(&CorruptWeights);
        assert!(!summary.all_passed);
        let failed: Vec<_> = summary.checks.iter().filter(|c| !c.passed).map(|c| c.id.as_str()).collect();
        assert!(failed.contains(&"k-squared-23530"));
        assert!(failed.contains(&"k-squared-23412"));
        assert!(failed.contains(&"weights-23530"));
    }
}
