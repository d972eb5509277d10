//! Geometry of the surface `X = Proj B_S` for a cotype-0 4-tuple.
//!
//! With weights `w = L/a`, `X ⊂ P(w_0, w_1, w_2, w_3)` is well formed and
//! quasismooth, so its singularities are the points of `X` on the singular
//! strata of the weighted projective space. For cotype 0 any three weights
//! are coprime, leaving only the coordinate edges `{i, k}` with
//! `gcd(w_i, w_k) > 1`.
//!
//! `Δ` is the curve `x_3 = 0`. When `w_3 = 1` it is the hyperplane section of
//! degree 1, and `K = αΔ`.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::{self, ExponentTuple, WeightVector};
use crate::dualgraph::{Curve, IntersectionGraph};
use crate::error::{Error, Result};
use crate::numfmt;

/// Largest `a_i * w_k` for which edge orbits are enumerated explicitly.
const ORBIT_LIMIT: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPoint {
    pub edge: [usize; 2],
    pub count: u64,
    pub order: u64,
    /// The point is a cyclic quotient `1/order (q1, q2)`.
    pub type_weights: [u64; 2],
    /// Multiplicity of `Δ` at the point; 0 when the point is not on `Δ`.
    pub mult_delta: u32,
}

impl SingularPoint {
    /// `1/k (q, q)` with `q` a unit mod `k` is `1/k (1, 1)`.
    pub fn is_type_one_one(&self) -> bool {
        let [q1, q2] = self.type_weights;
        q1 == q2 && q1.gcd(&self.order) == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscrepancyData {
    pub order: u64,
    #[serde(serialize_with = "numfmt::ser_rat")]
    pub discrepancy: BigRational,
    pub exceptional_self_int: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub tuple: ExponentTuple,
    pub weights: WeightVector,
    pub well_formed: bool,
    #[serde(serialize_with = "numfmt::ser_int")]
    pub amplitude: BigInt,
    pub singular_points: Vec<SingularPoint>,
    #[serde(rename = "k_squared", serialize_with = "numfmt::ser_rat")]
    pub k_squared: BigRational,
    /// Self-intersection of the degree-1 class.
    #[serde(serialize_with = "numfmt::ser_rat")]
    pub delta_squared: BigRational,
    /// `Δ·(-K)`, present when the amplitude is negative.
    #[serde(serialize_with = "numfmt::ser_opt_rat", skip_serializing_if = "Option::is_none")]
    pub delta_dot_anti_k: Option<BigRational>,
    pub discrepancies: Vec<DiscrepancyData>,
}

pub fn well_formed(s: &ExponentTuple) -> bool {
    arith::cotype(s) == 0
}

fn rat(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Weights as machine integers after checking length 4 and cotype 0.
fn surface_weights(s: &ExponentTuple) -> Result<Vec<u64>> {
    if s.len() != 4 {
        return Err(Error::WrongLength {
            expected: 4,
            actual: s.len(),
        });
    }
    let c = arith::cotype(s);
    if c != 0 {
        return Err(Error::WrongCotype { expected: 0, actual: c });
    }
    arith::weights(s)
        .small()
        .ok_or_else(|| Error::TooLarge(arith::lcm_tuple(s).to_string()))
}

/// Orbits of `{t : t^a = -1}` under `t -> ζ^{w_i} t`, `ζ` a primitive
/// `w_k`-th root of unity. Angles are kept as integers modulo a common
/// denominator.
fn edge_orbits(a: u64, w_i: u64, w_k: u64) -> Result<u64> {
    if a.saturating_mul(w_k) > ORBIT_LIMIT {
        return Err(Error::TooLarge(format!("orbit enumeration {a} x {w_k}")));
    }
    let denom = (2 * a).lcm(&w_k);
    let roots: Vec<u64> = (0..a).map(|j| (2 * j + 1) * (denom / (2 * a))).collect();
    let step = (w_i % w_k) * (denom / w_k) % denom;
    let mut seen = HashSet::new();
    let mut orbits = 0;
    for &r in &roots {
        if seen.contains(&r) {
            continue;
        }
        orbits += 1;
        let mut x = r;
        for _ in 0..w_k {
            seen.insert(x);
            x = (x + step) % denom;
        }
    }
    Ok(orbits)
}

pub fn singular_points(s: &ExponentTuple) -> Result<Vec<SingularPoint>> {
    let w = surface_weights(s)?;
    let mut points = Vec::new();
    for i in 0..4 {
        for k in i + 1..4 {
            let g = w[i].gcd(&w[k]);
            if g == 1 {
                continue;
            }
            let a_i = s.small(i).expect("weights fit, so entries fit");
            let count = edge_orbits(a_i, w[i], w[k])?;
            let rest: Vec<usize> = (0..4).filter(|&x| x != i && x != k).collect();
            points.push(SingularPoint {
                edge: [i, k],
                count,
                order: g,
                type_weights: [w[rest[0]] % g, w[rest[1]] % g],
                mult_delta: u32::from(k != 3),
            });
        }
    }
    Ok(points)
}

/// `K² = α² L / (w_0 w_1 w_2 w_3)`.
pub fn canonical_square(s: &ExponentTuple) -> Result<BigRational> {
    surface_weights(s)?;
    let alpha = arith::amplitude(s);
    Ok(rat(&alpha * &alpha) * hyperplane_square(s))
}

/// `L / (w_0 w_1 w_2 w_3)`, the square of the degree-1 class.
fn hyperplane_square(s: &ExponentTuple) -> BigRational {
    let w = arith::weights(s);
    let prod: num_bigint::BigUint = w.weights.iter().product();
    BigRational::new(arith::lcm_tuple(s).into(), prod.into())
}

/// `(Δ², Δ·(-K))` for negative amplitude.
pub fn delta_intersections(s: &ExponentTuple) -> Result<(BigRational, BigRational)> {
    surface_weights(s)?;
    let alpha = arith::amplitude(s);
    if !alpha.is_negative() {
        return Err(Error::NonNegativeAmplitude(alpha.to_string()));
    }
    let d2 = hyperplane_square(s);
    let dk = rat(alpha.abs()) * &d2;
    Ok((d2, dk))
}

/// Discrepancy `-1 + 2/k` of the exceptional `(-k)`-curve over `1/k (1, 1)`.
pub fn discrepancy(order: u64) -> Result<DiscrepancyData> {
    if order < 2 {
        return Err(Error::OrderTooSmall(order));
    }
    Ok(DiscrepancyData {
        order,
        discrepancy: BigRational::new(BigInt::from(2), BigInt::from(order)) - BigRational::one(),
        exceptional_self_int: -(order as i64),
    })
}

pub fn surface_report(s: &ExponentTuple) -> Result<SurfaceReport> {
    let points = singular_points(s)?;
    let alpha = arith::amplitude(s);
    let orders: std::collections::BTreeSet<u64> = points.iter().map(|p| p.order).collect();
    Ok(SurfaceReport {
        tuple: s.clone(),
        weights: arith::weights(s),
        well_formed: well_formed(s),
        k_squared: canonical_square(s)?,
        delta_squared: hyperplane_square(s),
        delta_dot_anti_k: delta_intersections(s).ok().map(|(_, dk)| dk),
        amplitude: alpha,
        singular_points: points,
        discrepancies: orders.into_iter().map(discrepancy).collect::<Result<_>>()?,
    })
}

fn integral(q: &BigRational, what: &str) -> Result<i64> {
    if !q.is_integer() {
        return Err(Error::UnsupportedConfiguration(format!("{what} = {} is not an integer", numfmt::fmt_rat(q))));
    }
    i64::try_from(q.to_integer()).map_err(|_| Error::TooLarge(q.to_string()))
}

/// Names exceptional curves `E{k}`, `E{k}+`/`E{k}-`, or `E{k}.1`, `E{k}.2`, ...
fn exceptional_names(points: &[SingularPoint]) -> Vec<(String, u64)> {
    let mut by_order: BTreeMap<u64, u64> = BTreeMap::new();
    for p in points {
        *by_order.entry(p.order).or_insert(0) += p.count;
    }
    let mut names = Vec::new();
    for (k, n) in by_order {
        match n {
            1 => names.push((format!("E{k}"), k)),
            2 => {
                names.push((format!("E{k}+"), k));
                names.push((format!("E{k}-"), k));
            }
            _ => names.extend((1..=n).map(|j| (format!("E{k}.{j}"), k))),
        }
    }
    names
}

/// Minimal resolution of `X` together with the strict transform of `Δ`,
/// for the star-shaped configuration: every singular point is `1/k (1, 1)`,
/// lies on `Δ`, and `Δ` passes through it with multiplicity 1. Each point is
/// replaced by one `(-k)`-curve meeting `Δ̃` once, and
/// `σ*Δ = Δ̃ + Σ E_p / k_p`, `K̃ = σ*K + Σ (-1 + 2/k_p) E_p`.
pub fn resolution_graph(s: &ExponentTuple) -> Result<IntersectionGraph> {
    let w = surface_weights(s)?;
    let (d2, _) = delta_intersections(s)?;
    if w[3] != 1 {
        return Err(Error::UnsupportedConfiguration(format!(
            "x3 has weight {}, so Δ is not the degree-1 section",
            w[3]
        )));
    }
    let points = singular_points(s)?;
    if let Some(p) = points.iter().find(|p| !p.is_type_one_one() || p.mult_delta != 1) {
        return Err(Error::UnsupportedConfiguration(format!(
            "point of order {} on edge {:?} has type {:?} and multiplicity {} on Δ",
            p.order, p.edge, p.type_weights, p.mult_delta
        )));
    }
    let alpha = rat(arith::amplitude(s));
    let k2 = &alpha * &alpha * &d2;

    let names = exceptional_names(&points);
    let mut delta_tilde_sq = d2.clone();
    let mut k_dot_delta = &alpha * &d2;
    let mut k_tilde_sq = k2;
    for (_, k) in &names {
        let b = discrepancy(*k)?.discrepancy;
        let kq = rat(*k);
        delta_tilde_sq -= kq.recip();
        k_dot_delta += &b;
        k_tilde_sq -= &kq * &b * &b;
    }
    let mut g = IntersectionGraph::new(integral(&k_tilde_sq, "K̃²")?);
    g.add_curve(Curve::new(
        "Delta",
        integral(&delta_tilde_sq, "Δ̃²")?,
        integral(&k_dot_delta, "K̃·Δ̃")?,
    ))?;
    for (name, k) in &names {
        let k = *k as i64;
        g.add_curve(Curve::new(name.clone(), -k, k - 2))?;
        g.add_edge("Delta", name, 1)?;
    }
    Ok(g)
}
