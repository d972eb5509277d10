//! Strategies and property bodies shared by the property suite and the
//! acceptance runner.

#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use pham_brieskorn::arith::{self, ExponentTuple};
use pham_brieskorn::dualgraph::{self, Curve, IntersectionGraph};
use pham_brieskorn::symb::{Derivation, GaussianRational, Polynomial, PresentedRing};

pub const CASES: u32 = 1000;

pub fn tuple(v: &[u64]) -> ExponentTuple {
    ExponentTuple::from_u64s(v).unwrap()
}

// ---------------------------------------------------------------- tuples

pub fn small_tuple() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=30, 3..=6)
}

/// A tuple together with an index and three values for that index forming
/// a divisibility chain `a | b | c`.
pub fn order_chain() -> impl Strategy<Value = (Vec<u64>, usize, u64, u64, u64)> {
    (prop::collection::vec(2u64..=12, 3..=5), 1u64..=12, 1u64..=4, 1u64..=4).prop_flat_map(
        |(rest, a, k, m)| {
            let len = rest.len();
            (Just(rest), 0..len, Just(a), Just(a * k), Just(a * k * m))
        },
    )
}

fn with_index(rest: &[u64], i: usize, v: u64) -> ExponentTuple {
    let mut t = rest.to_vec();
    t[i] = v;
    tuple(&t)
}

/// Reflexivity, antisymmetry and transitivity of `≤ⁱ`.
pub fn prop_order_laws(
    (rest, i, a, b, c): (Vec<u64>, usize, u64, u64, u64),
) -> Result<(), TestCaseError> {
    let (s, t, u) = (with_index(&rest, i, a), with_index(&rest, i, b), with_index(&rest, i, c));
    for x in [&s, &t, &u] {
        prop_assert!(arith::leq_order(x, x, i).unwrap());
    }
    let st = arith::leq_order(&s, &t, i).unwrap();
    let ts = arith::leq_order(&t, &s, i).unwrap();
    let tu = arith::leq_order(&t, &u, i).unwrap();
    let su = arith::leq_order(&s, &u, i).unwrap();
    if st && ts {
        prop_assert_eq!(&s, &t);
    }
    if st && tu {
        prop_assert!(su, "{} <= {} <= {} but not {} <= {}", s, t, u, s, u);
    }
    // other indices never relate tuples that differ at i
    let j = (i + 1) % rest.len();
    if a != b {
        prop_assert!(!arith::leq_order(&s, &t, j).unwrap());
    }
    Ok(())
}

/// Cotype and class are invariant under scaling and normalization.
pub fn prop_cotype_scaling((v, k): (Vec<u64>, u64)) -> Result<(), TestCaseError> {
    let s = tuple(&v);
    let scaled = tuple(&v.iter().map(|a| a * k).collect::<Vec<_>>());
    let n = arith::normalize(&s);
    prop_assert_eq!(arith::cotype(&s), arith::cotype(&n));
    prop_assert_eq!(arith::cotype(&s), arith::cotype(&scaled));
    prop_assert_eq!(arith::normalize(&scaled), n.clone());
    prop_assert_eq!(arith::gcd_tuple(&n), BigUint::from(1u32));
    prop_assert_eq!(arith::offending_indices(&s), arith::offending_indices(&scaled));
    Ok(())
}

// ---------------------------------------------------------------- graphs

/// Curve spec: (contractible, self_int, p_a).
fn curve_spec() -> impl Strategy<Value = (bool, i64, i64)> {
    (any::<bool>(), -5i64..=2, 0i64..=2)
}

/// Random graph whose first two curves are contractible and disjoint.
pub fn graph() -> impl Strategy<Value = IntersectionGraph> {
    (2usize..=6, -3i64..=3).prop_flat_map(|(n, ambient)| {
        (
            prop::collection::vec(curve_spec(), n),
            prop::collection::vec(0u64..=2, n * (n - 1) / 2),
            Just(ambient),
        )
            .prop_map(move |(specs, mults, ambient)| {
                let mut g = IntersectionGraph::new(ambient);
                for (idx, (contractible, self_int, p_a)) in specs.into_iter().enumerate() {
                    let (s, p) = if contractible || idx < 2 { (-1, 0) } else { (self_int, p_a) };
                    // p_a = (s + k)/2 + 1
                    g.add_curve(Curve::new(format!("C{idx}"), s, 2 * (p - 1) - s)).unwrap();
                }
                let mut m = mults.into_iter();
                for a in 0..n {
                    for b in a + 1..n {
                        let mult = m.next().unwrap();
                        if mult > 0 && !(a == 0 && b == 1) {
                            g.add_edge(&format!("C{a}"), &format!("C{b}"), mult).unwrap();
                        }
                    }
                }
                g
            })
    })
}

/// Every contraction keeps `C² + K·C` even and never lowers `p_a`.
pub fn prop_parity(g: IntersectionGraph) -> Result<(), TestCaseError> {
    let mut current = g;
    loop {
        let next_name = current.curves().find(|c| c.is_contractible()).map(|c| c.name.clone());
        let Some(name) = next_name else { break };
        let (next, _) = dualgraph::contract(&current, &name).unwrap();
        for d in next.curves() {
            prop_assert_eq!((d.self_int + d.k_degree).rem_euclid(2), 0);
            let before = current.curve(&d.name).unwrap();
            prop_assert!(d.p_a() >= before.p_a());
        }
        current = next;
    }
    Ok(())
}

/// Each blow-down raises `K²` by exactly one.
pub fn prop_k_squared_step(g: IntersectionGraph) -> Result<(), TestCaseError> {
    let (fin, trace) = dualgraph::contract_all(&g);
    let mut k = g.ambient_k_squared();
    for r in &trace {
        k += 1;
        prop_assert_eq!(r.ambient_k_squared, k);
    }
    prop_assert_eq!(fin.ambient_k_squared(), g.ambient_k_squared() + trace.len() as i64);
    prop_assert_eq!(fin.len() + trace.len(), g.len());
    Ok(())
}

/// Blowing down two disjoint (-1)-curves in either order gives the same graph.
pub fn prop_disjoint_commute(g: IntersectionGraph) -> Result<(), TestCaseError> {
    prop_assert_eq!(g.multiplicity("C0", "C1"), 0);
    let (ab, _) = dualgraph::contract_sequence(&g, &["C0", "C1"]).unwrap();
    let (ba, _) = dualgraph::contract_sequence(&g, &["C1", "C0"]).unwrap();
    prop_assert_eq!(ab, ba);
    Ok(())
}

// ---------------------------------------------------------------- polynomials

fn coefficient() -> impl Strategy<Value = GaussianRational> {
    (-3i64..=3, -3i64..=3, 1i64..=3).prop_map(|(re, im, d)| {
        GaussianRational::new(
            BigRational::new(BigInt::from(re), BigInt::from(d)),
            BigRational::new(BigInt::from(im), BigInt::from(1)),
        )
    })
}

pub fn polynomial(nvars: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=3, nvars), coefficient()), 0..=4).prop_map(
        move |terms| {
            let mut p = Polynomial::zero(nvars);
            for (e, c) in terms {
                p = &p + &Polynomial::monomial(nvars, e, c);
            }
            p
        },
    )
}

pub fn ring() -> impl Strategy<Value = PresentedRing> {
    (prop::collection::vec(1u64..=5, 3), 0usize..3)
        .prop_map(|(v, lead)| PresentedRing::pham_brieskorn(&tuple(&v), lead).unwrap())
}

/// `reduce(p·f + q) = reduce(q)`, and reduce is idempotent and leaves no
/// power of the leading variable at or above the relation's degree.
pub fn prop_reduce_sound(
    (r, p, q): (PresentedRing, Polynomial, Polynomial),
) -> Result<(), TestCaseError> {
    let combo = &(&p * &r.relation) + &q;
    let rq = r.reduce(&q).unwrap();
    prop_assert_eq!(r.reduce(&combo).unwrap(), rq.clone());
    prop_assert_eq!(r.reduce(&rq).unwrap(), rq.clone());
    let d = r.leading_degree().unwrap();
    prop_assert!(rq.terms().all(|(e, _)| e[r.leading] < d));
    // linearity
    let sum = r.reduce(&(&p + &q)).unwrap();
    prop_assert_eq!(sum, &r.reduce(&p).unwrap() + &rq);
    Ok(())
}

pub fn derivation(nvars: usize) -> impl Strategy<Value = Derivation> {
    prop::collection::vec(polynomial(nvars), nvars).prop_map(|images| Derivation { images })
}

/// `D(pq) = D(p) q + p D(q)`, exactly and modulo a relation.
pub fn prop_leibniz(
    (r, d, p, q): (PresentedRing, Derivation, Polynomial, Polynomial),
) -> Result<(), TestCaseError> {
    let lhs = d.apply(&(&p * &q));
    let rhs = &(&d.apply(&p) * &q) + &(&p * &d.apply(&q));
    prop_assert_eq!(r.reduce(&lhs).unwrap(), r.reduce(&rhs).unwrap());
    prop_assert_eq!(lhs, rhs);
    Ok(())
}
