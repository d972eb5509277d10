//! Exponent tuples and their combinatorics.
//!
//! Everything here is exact: entries, lcms and weights are arbitrary
//! precision, and the amplitude is a signed big integer.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numfmt::BigNat;

/// The exponents `(a_0, ..., a_n)` of `X_0^{a_0} + ... + X_n^{a_n}`, with `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<BigNat>", into = "Vec<BigNat>")]
pub struct ExponentTuple(Vec<BigUint>);

impl ExponentTuple {
    pub fn new(entries: Vec<BigUint>) -> Result<Self> {
        if entries.len() < 3 {
            return Err(Error::TupleTooShort(entries.len()));
        }
        if let Some(i) = entries.iter().position(Zero::is_zero) {
            return Err(Error::NonPositiveEntry(i));
        }
        Ok(ExponentTuple(entries))
    }

    pub fn from_u64s(entries: &[u64]) -> Result<Self> {
        Self::new(entries.iter().map(|&a| BigUint::from(a)).collect())
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    /// Number of entries, `n + 1`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; tuples have at least three entries.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The dimension `n` of the hypersurface in `A^{n+1}`.
    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    pub fn get(&self, i: usize) -> Result<&BigUint> {
        self.0.get(i).ok_or(Error::IndexOutOfRange {
            index: i,
            len: self.0.len(),
        })
    }

    /// Entry `i` as a machine integer, if it fits.
    pub fn small(&self, i: usize) -> Option<u64> {
        self.0.get(i).and_then(ToPrimitive::to_u64)
    }

    /// Non-decreasing rearrangement; the canonical representative of the
    /// permutation class.
    pub fn sorted(&self) -> ExponentTuple {
        let mut v = self.0.clone();
        v.sort();
        ExponentTuple(v)
    }

    /// Copy with entry `i` replaced by `value`.
    pub fn with_entry(&self, i: usize, value: BigUint) -> Result<ExponentTuple> {
        self.get(i)?;
        let mut v = self.0.clone();
        v[i] = value;
        ExponentTuple::new(v)
    }

    fn count_equal(&self, value: u32) -> usize {
        let value = BigUint::from(value);
        self.0.iter().filter(|a| **a == value).count()
    }
}

impl TryFrom<Vec<BigNat>> for ExponentTuple {
    type Error = Error;

    fn try_from(v: Vec<BigNat>) -> Result<Self> {
        ExponentTuple::new(v.into_iter().map(|n| n.0).collect())
    }
}

impl From<ExponentTuple> for Vec<BigNat> {
    fn from(t: ExponentTuple) -> Self {
        t.0.into_iter().map(BigNat).collect()
    }
}

impl fmt::Display for ExponentTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Parses `2,3,5,30`, `(2,3,5,30)` or `2 3 5 30`.
impl FromStr for ExponentTuple {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        let entries = trimmed
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<BigUint>()
                    .map_err(|_| Error::Parse(format!("not a positive integer: {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        ExponentTuple::new(entries)
    }
}

/// Degrees `w_i = L / a_i` of the generators of `B_S` together with `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightVector {
    #[serde(serialize_with = "crate::numfmt::ser_nat_vec")]
    pub weights: Vec<BigUint>,
    #[serde(serialize_with = "crate::numfmt::ser_nat")]
    pub total_degree: BigUint,
}

impl WeightVector {
    pub fn gcd(&self) -> BigUint {
        self.weights.iter().fold(BigUint::zero(), |g, w| g.gcd(w))
    }

    pub fn sum(&self) -> BigUint {
        self.weights.iter().sum()
    }

    /// Weights as machine integers; `None` if any overflows `u64`.
    pub fn small(&self) -> Option<Vec<u64>> {
        self.weights.iter().map(ToPrimitive::to_u64).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GammaClass {
    NotInGamma,
    GammaOnly,
    GammaPlus,
    GammaMinus,
}

impl fmt::Display for GammaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GammaClass::NotInGamma => "not-in-gamma",
            GammaClass::GammaOnly => "gamma",
            GammaClass::GammaPlus => "gamma-plus",
            GammaClass::GammaMinus => "gamma-minus",
        })
    }
}

fn lcm_of<'a>(it: impl IntoIterator<Item = &'a BigUint>) -> BigUint {
    it.into_iter().fold(BigUint::one(), |l, a| l.lcm(a))
}

pub fn lcm_tuple(s: &ExponentTuple) -> BigUint {
    lcm_of(s.entries())
}

pub fn gcd_tuple(s: &ExponentTuple) -> BigUint {
    s.entries().iter().fold(BigUint::zero(), |g, a| g.gcd(a))
}

/// lcm of every entry except entry `i`.
pub fn lcm_without(s: &ExponentTuple, i: usize) -> Result<BigUint> {
    s.get(i)?;
    Ok(lcm_of(
        s.entries()
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, a)| a),
    ))
}

/// The tuple with entry `i` removed.
pub fn drop(s: &ExponentTuple, i: usize) -> Result<ExponentTuple> {
    s.get(i)?;
    if s.len() < 4 {
        return Err(Error::TupleTooShort(s.len() - 1));
    }
    let mut v = s.entries().to_vec();
    v.remove(i);
    ExponentTuple::new(v)
}

/// Indices `i` with `a_i` not dividing the lcm of the other entries.
pub fn offending_indices(s: &ExponentTuple) -> Vec<usize> {
    (0..s.len())
        .filter(|&i| {
            let rest = lcm_without(s, i).expect("index in range");
            !rest.is_multiple_of(&s.entries()[i])
        })
        .collect()
}

pub fn cotype(s: &ExponentTuple) -> usize {
    offending_indices(s).len()
}

/// `S / gcd(S)`.
pub fn normalize(s: &ExponentTuple) -> ExponentTuple {
    let g = gcd_tuple(s);
    ExponentTuple(s.entries().iter().map(|a| a / &g).collect())
}

pub fn weights(s: &ExponentTuple) -> WeightVector {
    let l = lcm_tuple(s);
    WeightVector {
        weights: s.entries().iter().map(|a| &l / a).collect(),
        total_degree: l,
    }
}

/// `alpha = L - sum_i L / a_i`.
pub fn amplitude(s: &ExponentTuple) -> BigInt {
    let w = weights(s);
    BigInt::from(w.total_degree.clone()) - BigInt::from(w.sum())
}

/// `gcd(a_i, lcm(S_i))`.
pub fn g_i(s: &ExponentTuple, i: usize) -> Result<BigUint> {
    let rest = lcm_without(s, i)?;
    Ok(s.entries()[i].gcd(&rest))
}

fn dropped_entries(s: &ExponentTuple, i: usize) -> Vec<&BigUint> {
    s.entries()
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, a)| a)
        .collect()
}

/// `lower <=^i upper`: both agree off position `i` and
/// `g_i(upper) | lower_i | upper_i`.
pub fn leq_order(lower: &ExponentTuple, upper: &ExponentTuple, i: usize) -> Result<bool> {
    if lower.len() != upper.len() {
        return Err(Error::LengthMismatch {
            left: lower.len(),
            right: upper.len(),
        });
    }
    lower.get(i)?;
    if dropped_entries(lower, i) != dropped_entries(upper, i) {
        return Ok(false);
    }
    let g = g_i(upper, i)?;
    let a = &lower.entries()[i];
    let b = &upper.entries()[i];
    Ok(a.is_multiple_of(&g) && b.is_multiple_of(a))
}

/// True when `min >= 2` and at most one entry equals 2.
pub fn in_gamma(s: &ExponentTuple) -> bool {
    s.count_equal(1) == 0 && s.count_equal(2) <= 1
}

pub fn gamma_class(s: &ExponentTuple) -> GammaClass {
    if !in_gamma(s) {
        return GammaClass::NotInGamma;
    }
    if cotype(s) != 0 {
        return GammaClass::GammaOnly;
    }
    if amplitude(s) >= BigInt::zero() {
        GammaClass::GammaPlus
    } else {
        GammaClass::GammaMinus
    }
}

/// Traversal order for the bounded search in [`enumerate_gamma_minus_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOrder {
    Ascending,
    Descending,
}

/// Complete list of `Gamma_3^-` up to permutation (`n = 3`), or a bounded
/// search for `n >= 4` with every entry at most `max_entry`.
pub fn enumerate_gamma_minus(n: usize, max_entry: Option<u64>) -> Result<Vec<ExponentTuple>> {
    match (n, max_entry) {
        (0..=2, _) => Err(Error::UnsupportedDimension(n)),
        (3, None) => Ok(enumerate_gamma_minus_with(SearchOrder::Ascending)),
        (3, Some(max)) => Ok(enumerate_bounded(3, max, GammaClass::GammaMinus)),
        (_, None) => Err(Error::MissingBound(n)),
        (_, Some(max)) => Ok(enumerate_bounded(n, max, GammaClass::GammaMinus)),
    }
}

fn ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Largest integer `a` with `a < bound`, for a positive rational `bound`.
fn below(bound: &BigRational) -> u64 {
    let floor = bound.floor().to_integer().to_u64().unwrap_or(u64::MAX);
    if bound.is_integer() {
        floor - 1
    } else {
        floor
    }
}

/// Exhaustive `Gamma_3^-` search over sorted tuples `a0 <= a1 <= a2 <= a3`.
///
/// `alpha < 0` is the same as `sum 1/a_i > 1`. With every entry at least 2:
///
/// * `4/a0 > 1` gives `a0 <= 3`;
/// * `3/a1 > 1 - 1/a0` bounds `a1` (below 6 when `a0 = 2`, below 4.5 when `a0 = 3`);
/// * `2/a2 > 1 - 1/a0 - 1/a1` bounds `a2`; the right side is at least
///   `1 - 1/2 - 1/3 = 1/6` because at most one entry is 2, so `a2 < 12`;
/// * `a3` may be unbounded by the reciprocal sum (e.g. `1/2 + 1/3 + 1/6 = 1`),
///   but cotype 0 forces `a3 | lcm(a0, a1, a2)`, hence `a3 <= lcm(a0, a1, a2)`,
///   and when `r = 1 - 1/a0 - 1/a1 - 1/a2 > 0` also `a3 < 1/r`.
///
/// The surviving candidates are filtered by [`gamma_class`].
pub fn enumerate_gamma_minus_with(order: SearchOrder) -> Vec<ExponentTuple> {
    let one = BigRational::one();
    let mut found = Vec::new();
    let mut push = |a0: u64, a1: u64, a2: u64, a3: u64| {
        let t = ExponentTuple::from_u64s(&[a0, a1, a2, a3]).expect("positive entries");
        if gamma_class(&t) == GammaClass::GammaMinus {
            found.push(t);
        }
    };
    let rev = |lo: u64, hi: u64| -> Box<dyn Iterator<Item = u64>> {
        match order {
            SearchOrder::Ascending => Box::new(lo..=hi),
            SearchOrder::Descending => Box::new((lo..=hi).rev()),
        }
    };
    for a0 in rev(2, 3) {
        let r0 = &one - ratio(1, a0);
        let a1_max = below(&(ratio(3, 1) / &r0));
        // a single 2 at most: a1 >= 3
        for a1 in rev(a0.max(3), a1_max) {
            let r1 = &r0 - ratio(1, a1);
            let a2_max = below(&(ratio(2, 1) / &r1));
            for a2 in rev(a1, a2_max) {
                let r2 = &r1 - ratio(1, a2);
                let lcm3 = a0.lcm(&a1).lcm(&a2);
                let a3_max = if r2 > BigRational::zero() {
                    below(&(r2.recip())).min(lcm3)
                } else {
                    lcm3
                };
                for a3 in rev(a2, a3_max) {
                    push(a0, a1, a2, a3);
                }
            }
        }
    }
    found.sort();
    found.dedup();
    found
}

/// Sorted tuples of length `n + 1` with entries in `[2, max_entry]` and the
/// requested class.
pub fn enumerate_bounded(n: usize, max_entry: u64, class: GammaClass) -> Vec<ExponentTuple> {
    let mut out = Vec::new();
    if max_entry < 2 {
        return out;
    }
    let mut current = vec![2u64; n + 1];
    loop {
        let t = ExponentTuple::from_u64s(&current).expect("positive entries");
        if gamma_class(&t) == class {
            out.push(t);
        }
        // next non-decreasing sequence
        let mut k = n as isize;
        while k >= 0 && current[k as usize] == max_entry {
            k -= 1;
        }
        if k < 0 {
            break;
        }
        let v = current[k as usize] + 1;
        for slot in current.iter_mut().skip(k as usize) {
            *slot = v;
        }
    }
    out
}
