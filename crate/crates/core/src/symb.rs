//! Exact polynomials over `Q(i)`, presented graded rings and derivations.
//!
//! A ring is presented as `k[x_0, ..., x_n] / <f>` where `f` is monic in one
//! designated variable and every other term of `f` has lower degree in it.
//! Normal forms are remainders of division by `f` in that variable, which is
//! all a principal ideal of this shape needs.
//!
//! Local nilpotency is certified on generators: a derivation of a finitely
//! generated algebra in characteristic zero is locally nilpotent as soon as
//! every generator is killed by some power of it, since the set of elements
//! killed by a power of `D` is a subalgebra (Leibniz rule).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, ExponentTuple};
use crate::error::{Error, Result};
use crate::numfmt;

/// `re + i*im` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn real(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = GaussianRational::from_int(1);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = numfmt::fmt_rat(&self.re);
        if self.im.is_zero() {
            return f.write_str(&re);
        }
        let im_abs = numfmt::fmt_rat(&self.im.abs());
        let im = if self.im.abs().is_one() {
            "i".to_string()
        } else {
            format!("{im_abs}*i")
        };
        match (self.re.is_zero(), self.im.is_negative()) {
            (true, false) => f.write_str(&im),
            (true, true) => write!(f, "-{im}"),
            (false, false) => write!(f, "({re} + {im})"),
            (false, true) => write!(f, "({re} - {im})"),
        }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

#[derive(Serialize, Deserialize)]
struct CoefficientRepr {
    re: String,
    im: String,
}

impl Serialize for GaussianRational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CoefficientRepr {
            re: numfmt::fmt_rat(&self.re),
            im: numfmt::fmt_rat(&self.im),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = CoefficientRepr::deserialize(d)?;
        let parse = |s: &str| {
            numfmt::parse_rat(s)
                .ok_or_else(|| serde::de::Error::custom(format!("not a rational: {s:?}")))
        };
        Ok(GaussianRational::new(parse(&r.re)?, parse(&r.im)?))
    }
}

pub type Exponents = Vec<u32>;

/// Sparse polynomial in a fixed number of variables; zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponents, GaussianRational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: GaussianRational) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussianRational::from_int(1))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::var_pow(nvars, i, 1)
    }

    pub fn var_pow(nvars: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Self::monomial(nvars, exps, GaussianRational::from_int(1))
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: GaussianRational) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Polynomial::zero(nvars);
        p.add_term(exps, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> GaussianRational {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, exps: Exponents, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        for (e, a) in &self.terms {
            out.add_term(e.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        for (e, a) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[i] -= 1;
            out.add_term(d, a * &GaussianRational::from_int(i64::from(e[i])));
        }
        out
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Common weighted degree of all terms; `None` for zero or mixed degrees.
    pub fn weighted_degree(&self, weights: &[i64]) -> Option<i64> {
        let mut degrees = self.terms.keys().map(|e| {
            e.iter()
                .zip(weights)
                .map(|(&k, &w)| i64::from(k) * w)
                .sum::<i64>()
        });
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self, weights: &[i64]) -> bool {
        self.is_zero() || self.weighted_degree(weights).is_some()
    }

    /// Substitutes `value` for variable `i`.
    pub fn substitute(&self, i: usize, value: &Polynomial) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        let mut powers: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (e, a) in &self.terms {
            let k = e[i];
            let mut rest = e.clone();
            rest[i] = 0;
            let base = Polynomial::monomial(self.nvars, rest, a.clone());
            let p = powers.entry(k).or_insert_with(|| value.pow(k));
            out = &out + &(&base * &*p);
        }
        out
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono: Vec<String> = e
                .iter()
                .zip(names)
                .filter(|(&k, _)| k > 0)
                .map(|(&k, n)| if k == 1 { n.clone() } else { format!("{n}^{k}") })
                .collect();
            let term = match (mono.is_empty(), c == &GaussianRational::from_int(1)) {
                (true, _) => c.to_string(),
                (false, true) => mono.join("*"),
                (false, false) if c == &GaussianRational::from_int(-1) => {
                    format!("-{}", mono.join("*"))
                }
                (false, false) => format!("{c}*{}", mono.join("*")),
            };
            parts.push(term);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, o: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self + &(-o)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&GaussianRational::from_int(-1))
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, o.nvars, "variable count mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: GaussianRational,
    exp: Exponents,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(e, c)| TermRepr {
            coeff: c.clone(),
            exp: e.clone(),
        }))
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(d)?;
        let nvars = terms.first().map_or(0, |t| t.exp.len());
        let mut p = Polynomial::zero(nvars);
        for t in terms {
            if t.exp.len() != nvars {
                return Err(serde::de::Error::custom("ragged exponent vectors"));
            }
            p.add_term(t.exp, t.coeff);
        }
        Ok(p)
    }
}

/// `k[vars] / <relation>`, graded by `weights`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedRing {
    pub variables: Vec<String>,
    pub weights: Vec<i64>,
    pub relation: Polynomial,
    /// Variable in which the relation is monic.
    pub leading: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn small_exponent(s: &ExponentTuple, i: usize) -> Result<u32> {
    s.small(i)
        .and_then(|a| u32::try_from(a).ok())
        .ok_or_else(|| Error::TooLarge(s.entries()[i].to_string()))
}

impl PresentedRing {
    /// `B_S = k[x_0..x_n] / <x_0^{a_0} + ... + x_n^{a_n}>` with the standard
    /// grading, monic in `x_leading`.
    pub fn pham_brieskorn(s: &ExponentTuple, leading: usize) -> Result<Self> {
        s.get(leading)?;
        let nvars = s.len();
        let mut relation = Polynomial::zero(nvars);
        for i in 0..nvars {
            relation = &relation + &Polynomial::var_pow(nvars, i, small_exponent(s, i)?);
        }
        let weights = arith::weights(s)
            .small()
            .and_then(|w| w.into_iter().map(|x| i64::try_from(x).ok()).collect())
            .ok_or_else(|| Error::TooLarge(arith::lcm_tuple(s).to_string()))?;
        let ring = PresentedRing {
            variables: (0..nvars).map(|i| format!("x{i}")).collect(),
            weights,
            relation,
            leading,
            note: None,
        };
        ring.validate()?;
        Ok(ring)
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    /// Degree `d` of the relation in the leading variable, after checking that
    /// `x_lead^d` has coefficient 1 and is the only term of that degree.
    pub fn leading_degree(&self) -> Result<u32> {
        let lead = self.leading;
        if lead >= self.nvars() {
            return Err(Error::MalformedRelation(format!(
                "leading variable {lead} out of range"
            )));
        }
        if self.relation.nvars() != self.nvars() || self.weights.len() != self.nvars() {
            return Err(Error::MalformedRelation(
                "relation, weights and variables disagree in length".into(),
            ));
        }
        let d = self
            .relation
            .degree_in(lead)
            .filter(|&d| d > 0)
            .ok_or_else(|| {
                Error::MalformedRelation(format!("relation does not involve {}", self.variables[lead]))
            })?;
        let top: Vec<_> = self.relation.terms().filter(|(e, _)| e[lead] == d).collect();
        let mut pure = vec![0; self.nvars()];
        pure[lead] = d;
        match top.as_slice() {
            [(e, c)] if **e == pure && **c == GaussianRational::from_int(1) => Ok(d),
            _ => Err(Error::MalformedRelation(format!(
                "relation is not monic in {}",
                self.variables[lead]
            ))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.leading_degree()?;
        if !self.relation.is_homogeneous(&self.weights) {
            return Err(Error::MalformedRelation("relation is not homogeneous".into()));
        }
        Ok(())
    }

    /// Remainder of `p` on division by the relation in the leading variable.
    pub fn reduce(&self, p: &Polynomial) -> Result<Polynomial> {
        let d = self.leading_degree()?;
        let lead = self.leading;
        let n = self.nvars();
        // x_lead^d = -(relation - x_lead^d)
        let tail = &self.relation - &Polynomial::var_pow(n, lead, d);
        let replacement = -&tail;
        let mut remainder = Polynomial::zero(n);
        let mut work = p.clone();
        while let Some((e, c)) = work
            .terms
            .iter()
            .rev()
            .find(|(e, _)| e[lead] >= d)
            .map(|(e, c)| (e.clone(), c.clone()))
        {
            work.terms.remove(&e);
            let mut rest = e.clone();
            rest[lead] -= d;
            let shifted = &Polynomial::monomial(n, rest, c) * &replacement;
            work = &work + &shifted;
        }
        for (e, c) in work.terms {
            remainder.add_term(e, c);
        }
        Ok(remainder)
    }

    pub fn display_relation(&self) -> String {
        self.relation.display_with(&self.variables)
    }
}

/// A derivation given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub images: Vec<Polynomial>,
}

impl Derivation {
    pub fn zero(nvars: usize) -> Self {
        Derivation {
            images: vec![Polynomial::zero(nvars); nvars],
        }
    }

    /// Euler-type derivation `x_i -> c_i x_i`.
    pub fn diagonal(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        Derivation {
            images: coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| Polynomial::var(n, i).scale(&GaussianRational::from_int(c)))
                .collect(),
        }
    }

    /// Leibniz extension: `D(p) = sum_i dp/dx_i * D(x_i)`.
    pub fn apply(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(p.nvars());
        for (i, image) in self.images.iter().enumerate() {
            if image.is_zero() {
                continue;
            }
            let dp = p.derivative(i);
            if !dp.is_zero() {
                out = &out + &(&dp * image);
            }
        }
        out
    }

    fn check_vars(&self, ring: &PresentedRing) -> Result<()> {
        if self.images.len() != ring.nvars() || self.images.iter().any(|p| p.nvars() != ring.nvars() && !p.is_zero()) {
            return Err(Error::VariableMismatch {
                images: self.images.len(),
                vars: ring.nvars(),
            });
        }
        Ok(())
    }

    pub fn display_with(&self, names: &[String]) -> Vec<String> {
        names
            .iter()
            .zip(&self.images)
            .map(|(n, p)| format!("D({n}) = {}", p.display_with(names)))
            .collect()
    }
}

/// `D` descends to the quotient iff `D(f)` lies in `<f>`.
pub fn is_well_defined(d: &Derivation, ring: &PresentedRing) -> Result<bool> {
    d.check_vars(ring)?;
    Ok(ring.reduce(&d.apply(&ring.relation))?.is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "degree", rename_all = "kebab-case")]
pub enum Homogeneity {
    /// The zero derivation, homogeneous of degree minus infinity.
    Zero,
    Degree(i64),
    NotHomogeneous,
}

/// Degree `h` with `deg D(x) = deg x + h` for every generator whose image is
/// nonzero, under the supplied grading.
pub fn homogeneous_degree(d: &Derivation, weights: &[i64]) -> Homogeneity {
    let mut h = None;
    for (image, &w) in d.images.iter().zip(weights) {
        if image.is_zero() {
            continue;
        }
        let Some(deg) = image.weighted_degree(weights) else {
            return Homogeneity::NotHomogeneous;
        };
        match h {
            None => h = Some(deg - w),
            Some(prev) if prev != deg - w => return Homogeneity::NotHomogeneous,
            Some(_) => {}
        }
    }
    h.map_or(Homogeneity::Zero, Homogeneity::Degree)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum Nilpotency {
    /// Every generator is killed within `max_steps` applications.
    Certified { max_steps: u32 },
    ExceededBound { bound: u32 },
}

impl Nilpotency {
    pub fn is_certified(&self) -> bool {
        matches!(self, Nilpotency::Certified { .. })
    }
}

/// Number of applications of `D` (reducing after each) that send `p` to 0,
/// or `None` if more than `bound` are needed.
pub fn nilpotency_index(
    d: &Derivation,
    ring: &PresentedRing,
    p: &Polynomial,
    bound: u32,
) -> Result<Option<u32>> {
    let mut current = p.clone();
    for step in 1..=bound {
        current = ring.reduce(&d.apply(&current))?;
        if current.is_zero() {
            return Ok(Some(step));
        }
    }
    Ok(None)
}

pub fn check_locally_nilpotent(
    d: &Derivation,
    ring: &PresentedRing,
    bound: u32,
) -> Result<Nilpotency> {
    if !is_well_defined(d, ring)? {
        return Err(Error::IllDefinedDerivation);
    }
    let n = ring.nvars();
    let mut max_steps = 0;
    for i in 0..n {
        match nilpotency_index(d, ring, &Polynomial::var(n, i), bound)? {
            Some(steps) => max_steps = max_steps.max(steps),
            None => return Ok(Nilpotency::ExceededBound { bound }),
        }
    }
    Ok(Nilpotency::Certified { max_steps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    UnitExponent,
    DoubleTwo,
}

/// A presented ring together with a nonzero derivation certifying that it
/// is not rigid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub id: String,
    pub kind: WitnessKind,
    pub tuple: ExponentTuple,
    pub ring: PresentedRing,
    pub derivation: Derivation,
    /// For the double-2 construction: the same derivation written in the
    /// original coordinates of `B_S`, with Gaussian coefficients.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub original: Option<(PresentedRing, Derivation)>,
}

impl Witness {
    /// `2 * max(a_i) + 2`.
    pub fn default_bound(&self) -> u32 {
        let max = self
            .tuple
            .entries()
            .iter()
            .max()
            .and_then(ToPrimitive::to_u32)
            .unwrap_or(u32::MAX / 2 - 1);
        2 * max + 2
    }

    /// Well-definedness and nilpotency of every presentation carried.
    pub fn certify(&self) -> Result<Nilpotency> {
        let bound = self.default_bound();
        let main = check_locally_nilpotent(&self.derivation, &self.ring, bound)?;
        if let Some((ring, d)) = &self.original {
            let other = check_locally_nilpotent(d, ring, bound)?;
            if !other.is_certified() {
                return Ok(other);
            }
        }
        Ok(main)
    }
}

/// Smallest-exponent index outside `excluded`, lowest index on ties.
fn smallest_other(s: &ExponentTuple, excluded: &[usize]) -> Option<usize> {
    (0..s.len())
        .filter(|j| !excluded.contains(j))
        .min_by(|&a, &b| s.entries()[a].cmp(&s.entries()[b]).then(a.cmp(&b)))
}

/// For `a_i = 1`: `D(x_j) = 1`, `D(x_i) = -a_j x_j^{a_j - 1}`, zero elsewhere,
/// where `j != i` carries the smallest other exponent.
pub fn witness_unit_exponent(s: &ExponentTuple) -> Result<Witness> {
    let one = num_bigint::BigUint::one();
    let i = s
        .entries()
        .iter()
        .position(|a| *a == one)
        .ok_or_else(|| Error::NoWitness(format!("{s} has no exponent equal to 1")))?;
    let j = smallest_other(s, &[i]).expect("at least three entries");
    let ring = PresentedRing::pham_brieskorn(s, i)?;
    let n = s.len();
    let aj = small_exponent(s, j)?;
    let mut d = Derivation::zero(n);
    d.images[j] = Polynomial::one(n);
    d.images[i] = Polynomial::var_pow(n, j, aj - 1).scale(&GaussianRational::from_int(-i64::from(aj)));
    Ok(Witness {
        id: format!("unit-exponent:i={i},j={j}"),
        kind: WitnessKind::UnitExponent,
        tuple: s.clone(),
        ring,
        derivation: d,
        original: None,
    })
}

/// For `a_i = a_j = 2`: rewrite `x_i^2 + x_j^2 = u v` with
/// `u = x_i + i x_j`, `v = x_i - i x_j`, and take `D(u) = 0`, `D(x_m) = u`,
/// `D(v) = -a_m x_m^{a_m - 1}` for the smallest other exponent `a_m`.
pub fn witness_double_two(s: &ExponentTuple) -> Result<Witness> {
    let two = num_bigint::BigUint::from(2u32);
    let twos: Vec<usize> = (0..s.len()).filter(|&k| s.entries()[k] == two).collect();
    let (i, j) = match twos.as_slice() {
        [i, j, ..] => (*i, *j),
        _ => {
            return Err(Error::NoWitness(format!(
                "{s} has fewer than two exponents equal to 2"
            )))
        }
    };
    let m = smallest_other(s, &[i, j]).expect("at least three entries");
    let n = s.len();
    let am = small_exponent(s, m)?;
    let base = PresentedRing::pham_brieskorn(s, m)?;

    // uv-presentation: variables keep their positions, x_i -> u, x_j -> v
    let mut variables = base.variables.clone();
    variables[i] = "u".into();
    variables[j] = "v".into();
    let mut uv = vec![0; n];
    uv[i] = 1;
    uv[j] = 1;
    let mut relation = Polynomial::monomial(n, uv, GaussianRational::from_int(1));
    for l in (0..n).filter(|&l| l != i && l != j) {
        relation = &relation + &Polynomial::var_pow(n, l, small_exponent(s, l)?);
    }
    let ring = PresentedRing {
        variables,
        weights: base.weights.clone(),
        relation,
        leading: m,
        note: Some(format!("u = x{i} + i*x{j}, v = x{i} - i*x{j}")),
    };
    ring.validate()?;
    let slope = Polynomial::var_pow(n, m, am - 1).scale(&GaussianRational::from_int(-i64::from(am)));
    let mut d = Derivation::zero(n);
    d.images[m] = Polynomial::var(n, i);
    d.images[j] = slope.clone();

    // Original coordinates: D(x_i) = (D(u) + D(v)) / 2, D(x_j) = (D(u) - D(v)) / (2i),
    // D(x_m) = x_i + i x_j.
    let half = GaussianRational::real(BigRational::new(BigInt::from(1), BigInt::from(2)));
    let minus_half_i = GaussianRational::new(BigRational::zero(), -half.re.clone());
    let mut original = Derivation::zero(n);
    original.images[i] = slope.scale(&half);
    original.images[j] = (-&slope).scale(&minus_half_i);
    original.images[m] = &Polynomial::var(n, i) + &Polynomial::var(n, j).scale(&GaussianRational::i());

    Ok(Witness {
        id: format!("double-two:i={i},j={j},m={m}"),
        kind: WitnessKind::DoubleTwo,
        tuple: s.clone(),
        ring,
        derivation: d,
        original: Some((base, original)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveSingularity {
    Smooth,
    SingularAtOrigin,
}

/// The affine curve `x^a + y^b + c = 0` (`a, b >= 2`). Its partials
/// `a x^{a-1}` and `b y^{b-1}` vanish together only at the origin, which lies
/// on the curve exactly when `c = 0`.
pub fn diagonal_curve_singularity(a: u32, b: u32, c: &GaussianRational) -> CurveSingularity {
    debug_assert!(a >= 2 && b >= 2);
    if c.is_zero() {
        CurveSingularity::SingularAtOrigin
    } else {
        CurveSingularity::Smooth
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[u64]) -> ExponentTuple {
        ExponentTuple::from_u64s(v).unwrap()
    }

    fn c(n: i64) -> GaussianRational {
        GaussianRational::from_int(n)
    }

    /// `uv + x2^3` in variables (u, v, x2) with weights (3, 3, 2).
    fn footnote_ring() -> (PresentedRing, Derivation) {
        let w = witness_double_two(&t(&[2, 2, 3])).unwrap();
        (w.ring, w.derivation)
    }

    #[test]
    fn gaussian_arithmetic() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, c(-1));
        let z = GaussianRational::new(
            BigRational::from_integer(BigInt::from(3)),
            BigRational::from_integer(BigInt::from(4)),
        );
        assert_eq!(&z * &z.inverse().unwrap(), c(1));
        assert_eq!(z.norm(), BigRational::from_integer(BigInt::from(25)));
        assert_eq!(GaussianRational::i().pow(4), c(1));
        assert_eq!(z.conj().to_string(), "(3 - 4*i)");
    }

    #[test]
    fn reduce_examples() {
        let s = t(&[2, 3, 5, 30]);
        let ring = PresentedRing::pham_brieskorn(&s, 0).unwrap();
        assert!(ring.reduce(&ring.relation).unwrap().is_zero());

        let x0sq = Polynomial::var_pow(4, 0, 2);
        let expected = -&(&(&Polynomial::var_pow(4, 1, 3) + &Polynomial::var_pow(4, 2, 5))
            + &Polynomial::var_pow(4, 3, 30));
        assert_eq!(ring.reduce(&x0sq).unwrap(), expected);

        let x1cubed = Polynomial::var_pow(4, 1, 3);
        assert_eq!(ring.reduce(&x1cubed).unwrap(), x1cubed);
    }

    #[test]
    fn reduce_rejects_non_monic_relation() {
        let mut ring = PresentedRing::pham_brieskorn(&t(&[2, 3, 5]), 0).unwrap();
        ring.relation = ring.relation.scale(&c(2));
        assert!(matches!(
            ring.reduce(&Polynomial::var(3, 0)),
            Err(Error::MalformedRelation(_))
        ));
    }

    #[test]
    fn well_definedness() {
        let (ring, d) = footnote_ring();
        assert!(is_well_defined(&d, &ring).unwrap());

        let ring = PresentedRing::pham_brieskorn(&t(&[2, 3, 5, 30]), 0).unwrap();
        let mut partial = Derivation::zero(4);
        partial.images[0] = Polynomial::one(4);
        assert!(!is_well_defined(&partial, &ring).unwrap());
        assert!(is_well_defined(&Derivation::zero(4), &ring).unwrap());

        let short = Derivation::zero(3);
        assert!(matches!(
            is_well_defined(&short, &ring),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn homogeneity() {
        let (ring, d) = footnote_ring();
        assert_eq!(ring.weights, vec![3, 3, 2]);
        // D(x2) = u: 3 - 2; D(v) = -3 x2^2: 4 - 3
        assert_eq!(homogeneous_degree(&d, &ring.weights), Homogeneity::Degree(1));
        assert_eq!(homogeneous_degree(&Derivation::zero(3), &ring.weights), Homogeneity::Zero);
        let euler = Derivation::diagonal(&[3, 3, 2]);
        assert_eq!(homogeneous_degree(&euler, &ring.weights), Homogeneity::Degree(0));
        // grading by u-degree alone is another valid choice for the caller
        assert_eq!(homogeneous_degree(&d, &[1, 0, 0]), Homogeneity::NotHomogeneous);
        let mut mixed = Derivation::zero(3);
        mixed.images[2] = &Polynomial::var(3, 0) + &Polynomial::one(3);
        assert_eq!(homogeneous_degree(&mixed, &ring.weights), Homogeneity::NotHomogeneous);
    }

    #[test]
    fn footnote_derivation_step_counts() {
        let (ring, d) = footnote_ring();
        let steps = |i| nilpotency_index(&d, &ring, &Polynomial::var(3, i), 10).unwrap();
        assert_eq!(steps(0), Some(1));
        assert_eq!(steps(2), Some(2));
        assert_eq!(steps(1), Some(4));
        assert_eq!(
            check_locally_nilpotent(&d, &ring, 10).unwrap(),
            Nilpotency::Certified { max_steps: 4 }
        );
        // D(v) = -3 x2^2 -> -6 x2 u -> -6 u^2
        let v1 = d.apply(&Polynomial::var(3, 1));
        let v2 = d.apply(&v1);
        let v3 = d.apply(&v2);
        assert_eq!(v1, Polynomial::var_pow(3, 2, 2).scale(&c(-3)));
        assert_eq!(v2, (&Polynomial::var(3, 2) * &Polynomial::var(3, 0)).scale(&c(-6)));
        assert_eq!(v3, Polynomial::var_pow(3, 0, 2).scale(&c(-6)));
    }

    #[test]
    fn euler_derivation_is_not_nilpotent() {
        let ring = PresentedRing::pham_brieskorn(&t(&[2, 3, 5]), 0).unwrap();
        // Euler derivation with the grading weights preserves the relation up to scale
        let euler = Derivation::diagonal(&ring.weights);
        assert!(is_well_defined(&euler, &ring).unwrap());
        for bound in [1, 5, 40] {
            assert_eq!(
                check_locally_nilpotent(&euler, &ring, bound).unwrap(),
                Nilpotency::ExceededBound { bound }
            );
        }
    }

    #[test]
    fn zero_derivation_certifies_in_one_step() {
        let ring = PresentedRing::pham_brieskorn(&t(&[2, 3, 5]), 0).unwrap();
        assert_eq!(
            check_locally_nilpotent(&Derivation::zero(3), &ring, 3).unwrap(),
            Nilpotency::Certified { max_steps: 1 }
        );
    }

    #[test]
    fn ill_defined_derivation_is_an_error() {
        let ring = PresentedRing::pham_brieskorn(&t(&[2, 3, 5]), 0).unwrap();
        let mut d = Derivation::zero(3);
        d.images[0] = Polynomial::one(3);
        assert!(matches!(
            check_locally_nilpotent(&d, &ring, 5),
            Err(Error::IllDefinedDerivation)
        ));
    }

    #[test]
    fn double_two_witnesses() {
        let w = witness_double_two(&t(&[2, 2, 3, 4])).unwrap();
        assert_eq!(w.ring.display_relation(), "u*v + x2^3 + x3^4");
        assert_eq!(w.derivation.images[2], Polynomial::var(4, 0));
        assert_eq!(w.derivation.images[1], Polynomial::var_pow(4, 2, 2).scale(&c(-3)));
        assert!(w.certify().unwrap().is_certified());

        let w = witness_double_two(&t(&[2, 2, 2])).unwrap();
        assert_eq!(w.id, "double-two:i=0,j=1,m=2");
        assert_eq!(w.certify().unwrap(), Nilpotency::Certified { max_steps: 3 });

        assert!(matches!(
            witness_double_two(&t(&[2, 3, 3, 4])),
            Err(Error::NoWitness(_))
        ));
    }

    #[test]
    fn double_two_local_slice() {
        for s in [t(&[2, 2, 3, 4]), t(&[5, 2, 7, 2])] {
            let w = witness_double_two(&s).unwrap();
            let (ring, d) = w.original.as_ref().unwrap();
            let m: usize = w.id.rsplit("m=").next().unwrap().parse().unwrap();
            let x = Polynomial::var(s.len(), m);
            let dx = ring.reduce(&d.apply(&x)).unwrap();
            assert!(!dx.is_zero());
            assert!(ring.reduce(&d.apply(&dx)).unwrap().is_zero());
            assert!(dx.terms().any(|(_, c)| !c.im.is_zero()));
        }
    }

    #[test]
    fn unit_exponent_witnesses() {
        let w = witness_unit_exponent(&t(&[1, 5, 7, 9])).unwrap();
        assert_eq!(w.id, "unit-exponent:i=0,j=1");
        assert_eq!(w.derivation.images[1], Polynomial::one(4));
        assert_eq!(w.derivation.images[0], Polynomial::var_pow(4, 1, 4).scale(&c(-5)));
        assert_eq!(w.certify().unwrap(), Nilpotency::Certified { max_steps: 6 });

        let w = witness_unit_exponent(&t(&[1, 1, 2])).unwrap();
        assert_eq!(w.derivation.images[0], Polynomial::one(3).scale(&c(-1)));
        assert_eq!(w.certify().unwrap(), Nilpotency::Certified { max_steps: 2 });

        assert!(witness_unit_exponent(&t(&[2, 3, 4, 12])).is_err());
    }

    #[test]
    fn diagonal_curves() {
        // lambda^4 = -1 makes the constant lambda^4 + 1 vanish
        let lambda4 = c(-1);
        let constant = &lambda4 + &c(1);
        assert_eq!(
            diagonal_curve_singularity(2, 3, &constant),
            CurveSingularity::SingularAtOrigin
        );
        assert_eq!(diagonal_curve_singularity(2, 3, &c(2)), CurveSingularity::Smooth);
        assert_eq!(
            diagonal_curve_singularity(4, 5, &c(0)),
            CurveSingularity::SingularAtOrigin
        );
        assert_eq!(
            diagonal_curve_singularity(2, 3, &GaussianRational::i()),
            CurveSingularity::Smooth
        );
    }

    #[test]
    fn diagonal_curve_partials_brute_force() {
        // singular points of x^2 + y^3 + c over a small grid of Gaussian integers
        for cval in [-2i64, -1, 0, 1, 3] {
            let cc = c(cval);
            let mut singular = false;
            for x in -3..=3i64 {
                for y in -3..=3i64 {
                    let f = x * x + y * y * y + cval;
                    if f == 0 && 2 * x == 0 && 3 * y * y == 0 {
                        singular = true;
                    }
                }
            }
            let expected = if singular {
                CurveSingularity::SingularAtOrigin
            } else {
                CurveSingularity::Smooth
            };
            assert_eq!(diagonal_curve_singularity(2, 3, &cc), expected);
        }
    }

    #[test]
    fn polynomial_json_round_trip() {
        let (ring, d) = footnote_ring();
        let text = serde_json::to_string(&(ring.clone(), d.clone())).unwrap();
        let back: (PresentedRing, Derivation) = serde_json::from_str(&text).unwrap();
        assert_eq!(back.0, ring);
        assert_eq!(back.1.images[1], d.images[1]);
    }

    #[test]
    fn substitution() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let p = &(&x * &x) + &y;
        let q = p.substitute(0, &(&y + &Polynomial::one(2)));
        // (y + 1)^2 + y = y^2 + 3y + 1
        let expected = &(&(&y * &y) + &y.scale(&c(3))) + &Polynomial::one(2);
        assert_eq!(q, expected);
    }
}
