//! Rigidity decision procedure.
//!
//! Tuples outside `Γ` are not rigid and come with an explicit locally
//! nilpotent derivation. Tuples inside `Γ` are reduced, dimension by
//! dimension, to cotype-0 leaves: nonnegative amplitude, the two-dimensional
//! base case, or one of the eight three-dimensional Fano tuples. Four or more
//! dimensions with negative amplitude are left open.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Signed;
use serde::Serialize;

use crate::arith::{self, ExponentTuple};
use crate::error::{Error, Result};
use crate::numfmt;
use crate::symb::{self, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Rigid,
    NotRigid,
    ConjecturallyRigid,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Rigid => 0,
            Status::NotRigid => 1,
            Status::ConjecturallyRigid => 2,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Rigid => "rigid",
            Status::NotRigid => "not rigid",
            Status::ConjecturallyRigid => "conjecturally rigid",
        })
    }
}

/// Source of the rigidity result for a three-dimensional Fano leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FanoCitation {
    /// Cylinder classification table for del Pezzo hypersurfaces.
    CpwTable,
    /// Cheltsov's lemma on anticanonical cylinders.
    CheltsovLemma,
    /// Resolution and blow-down down to a smooth del Pezzo surface.
    BlowDownArgument,
}

impl fmt::Display for FanoCitation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FanoCitation::CpwTable => "cylinder classification table",
            FanoCitation::CheltsovLemma => "Cheltsov's lemma",
            FanoCitation::BlowDownArgument => "resolution and blow-down argument",
        })
    }
}

/// Citation for a cotype-0, negative-amplitude 4-tuple, by its sorted form.
pub fn fano_citation(s: &ExponentTuple) -> Option<FanoCitation> {
    let sorted: Vec<u64> = (0..s.len()).map(|i| s.sorted().small(i)).collect::<Option<_>>()?;
    match sorted.as_slice() {
        [2, 3, 3, 6] | [2, 3, 6, 6] | [2, 4, 4, 4] | [3, 3, 3, 3] => Some(FanoCitation::CpwTable),
        [3, 3, 4, 4] | [3, 3, 5, 5] => Some(FanoCitation::CheltsovLemma),
        [2, 3, 4, 12] | [2, 3, 5, 30] => Some(FanoCitation::BlowDownArgument),
        _ => None,
    }
}

/// One node of a proof trace. Internal nodes carry the subproof for a
/// smaller tuple: lower dimension, or a componentwise divisor of the same
/// length whose cotype is 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum ProofStep {
    UnitExponent {
        tuple: ExponentTuple,
        index: usize,
    },
    DoubleTwo {
        tuple: ExponentTuple,
        i: usize,
        j: usize,
    },
    #[serde(rename = "base-surface-kz")]
    BaseSurfaceKz {
        tuple: ExponentTuple,
    },
    AmplitudeNonNegative {
        tuple: ExponentTuple,
        #[serde(serialize_with = "numfmt::ser_int")]
        amplitude: BigInt,
    },
    FanoThreefoldCase {
        tuple: ExponentTuple,
        citation: FanoCitation,
    },
    FanoOpenCase {
        tuple: ExponentTuple,
        #[serde(serialize_with = "numfmt::ser_int")]
        amplitude: BigInt,
    },
    CotypeAtLeastTwoDrop {
        tuple: ExponentTuple,
        offending: Vec<usize>,
        index: usize,
        child: Box<ProofStep>,
    },
    CotypeOneLcmSubstitution {
        tuple: ExponentTuple,
        index: usize,
        #[serde(serialize_with = "numfmt::ser_nat")]
        lcm: BigUint,
        substituted: ExponentTuple,
        child: Box<ProofStep>,
    },
    OrderPropagation {
        from: ExponentTuple,
        to: ExponentTuple,
        index: usize,
        child: Box<ProofStep>,
    },
}

impl ProofStep {
    /// Tuple the step is about.
    pub fn tuple(&self) -> &ExponentTuple {
        match self {
            ProofStep::UnitExponent { tuple, .. }
            | ProofStep::DoubleTwo { tuple, .. }
            | ProofStep::BaseSurfaceKz { tuple }
            | ProofStep::AmplitudeNonNegative { tuple, .. }
            | ProofStep::FanoThreefoldCase { tuple, .. }
            | ProofStep::FanoOpenCase { tuple, .. }
            | ProofStep::CotypeAtLeastTwoDrop { tuple, .. }
            | ProofStep::CotypeOneLcmSubstitution { tuple, .. } => tuple,
            ProofStep::OrderPropagation { to, .. } => to,
        }
    }

    pub fn child(&self) -> Option<&ProofStep> {
        match self {
            ProofStep::CotypeAtLeastTwoDrop { child, .. }
            | ProofStep::CotypeOneLcmSubstitution { child, .. }
            | ProofStep::OrderPropagation { child, .. } => Some(child),
            _ => None,
        }
    }

    pub fn leaf(&self) -> &ProofStep {
        let mut node = self;
        while let Some(c) = node.child() {
            node = c;
        }
        node
    }

    pub fn depth(&self) -> usize {
        1 + self.child().map_or(0, ProofStep::depth)
    }

    pub fn name(&self) -> &'static str {
        match self {
            ProofStep::UnitExponent { .. } => "UnitExponent",
            ProofStep::DoubleTwo { .. } => "DoubleTwo",
            ProofStep::BaseSurfaceKz { .. } => "BaseSurfaceKZ",
            ProofStep::AmplitudeNonNegative { .. } => "AmplitudeNonNegative",
            ProofStep::FanoThreefoldCase { .. } => "FanoThreefoldCase",
            ProofStep::FanoOpenCase { .. } => "FanoOpenCase",
            ProofStep::CotypeAtLeastTwoDrop { .. } => "CotypeAtLeastTwoDrop",
            ProofStep::CotypeOneLcmSubstitution { .. } => "CotypeOneLcmSubstitution",
            ProofStep::OrderPropagation { .. } => "OrderPropagation",
        }
    }

    fn describe(&self) -> String {
        match self {
            ProofStep::UnitExponent { tuple, index } => {
                format!("{tuple}: a{index} = 1, the ring is a polynomial ring")
            }
            ProofStep::DoubleTwo { tuple, i, j } => {
                format!("{tuple}: a{i} = a{j} = 2, uv-derivation gives a G_a-action")
            }
            ProofStep::BaseSurfaceKz { tuple } => {
                format!("{tuple}: surface in Γ, rigid (Kaliman-Zaidenberg)")
            }
            ProofStep::AmplitudeNonNegative { tuple, amplitude } => {
                format!("{tuple}: cotype 0, amplitude {amplitude} >= 0")
            }
            ProofStep::FanoThreefoldCase { tuple, citation } => {
                format!("{tuple}: cotype 0, negative amplitude, rigid by {citation}")
            }
            ProofStep::FanoOpenCase { tuple, amplitude } => {
                format!("{tuple}: cotype 0, amplitude {amplitude} < 0, open in this dimension")
            }
            ProofStep::CotypeAtLeastTwoDrop { tuple, offending, index, .. } => format!(
                "{tuple}: cotype {} (offending {offending:?}), drop index {index}",
                offending.len()
            ),
            ProofStep::CotypeOneLcmSubstitution { tuple, index, lcm, substituted, .. } => format!(
                "{tuple}: cotype 1 at index {index}, lcm of the rest {lcm}, rigid if {substituted} is"
            ),
            ProofStep::OrderPropagation { from, to, index, .. } => {
                format!("{to}: dominated by {from} at index {index}")
            }
        }
    }

    /// Indented one-line-per-step rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut node = Some(self);
        let mut depth = 0;
        while let Some(n) = node {
            out.push_str(&"  ".repeat(depth));
            out.push_str(n.name());
            out.push_str(": ");
            out.push_str(&n.describe());
            out.push('\n');
            node = n.child();
            depth += 1;
        }
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub tuple: ExponentTuple,
    pub status: Status,
    pub trace: ProofStep,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_id: Option<String>,
    /// Present for every non-rigid tuple whose exponents fit the polynomial
    /// representation (`u32`).
    #[serde(skip)]
    pub witness: Option<Witness>,
}

/// Total decision procedure; deterministic in its choices of indices.
pub fn classify(s: &ExponentTuple) -> Verdict {
    let one = BigUint::from(1u32);
    let two = BigUint::from(2u32);
    if let Some(index) = s.entries().iter().position(|a| *a == one) {
        let witness = symb::witness_unit_exponent(s).ok();
        return not_rigid(s, ProofStep::UnitExponent { tuple: s.clone(), index }, witness);
    }
    let twos: Vec<usize> = (0..s.len()).filter(|&k| s.entries()[k] == two).collect();
    if let [i, j, ..] = twos[..] {
        let witness = symb::witness_double_two(s).ok();
        return not_rigid(s, ProofStep::DoubleTwo { tuple: s.clone(), i, j }, witness);
    }
    let trace = prove_in_gamma(s);
    let status = if matches!(trace.leaf(), ProofStep::FanoOpenCase { .. }) {
        Status::ConjecturallyRigid
    } else {
        Status::Rigid
    };
    Verdict {
        tuple: s.clone(),
        status,
        trace,
        witness_id: None,
        witness: None,
    }
}

fn not_rigid(s: &ExponentTuple, trace: ProofStep, witness: Option<Witness>) -> Verdict {
    Verdict {
        tuple: s.clone(),
        status: Status::NotRigid,
        trace,
        witness_id: witness.as_ref().map(|w| w.id.clone()),
        witness,
    }
}

/// Reduction for a tuple already known to lie in `Γ`.
fn prove_in_gamma(s: &ExponentTuple) -> ProofStep {
    debug_assert!(arith::in_gamma(s));
    if s.len() == 3 {
        return ProofStep::BaseSurfaceKz { tuple: s.clone() };
    }
    let offending = arith::offending_indices(s);
    match offending.len() {
        0 => {
            let amplitude = arith::amplitude(s);
            if !amplitude.is_negative() {
                ProofStep::AmplitudeNonNegative { tuple: s.clone(), amplitude }
            } else if s.len() == 4 {
                let citation = fano_citation(s)
                    .expect("every cotype-0 negative-amplitude 4-tuple in Γ is one of eight");
                ProofStep::FanoThreefoldCase { tuple: s.clone(), citation }
            } else {
                ProofStep::FanoOpenCase { tuple: s.clone(), amplitude }
            }
        }
        1 => {
            let index = offending[0];
            let (substituted, from) =
                cotype_one_substitute(s, index).expect("index is the offending one");
            let lcm = arith::lcm_without(s, index).expect("index in range");
            assert!(arith::in_gamma(&from), "comparison tuple {from} must lie in Γ");
            let propagation = ProofStep::OrderPropagation {
                from: from.clone(),
                to: substituted.clone(),
                index,
                child: Box::new(prove_in_gamma(&from)),
            };
            ProofStep::CotypeOneLcmSubstitution {
                tuple: s.clone(),
                index,
                lcm,
                substituted,
                child: Box::new(propagation),
            }
        }
        _ => {
            let index = *offending.last().expect("nonempty");
            let child = arith::drop(s, index).expect("length at least 4");
            assert!(arith::in_gamma(&child), "dropped tuple {child} must lie in Γ");
            ProofStep::CotypeAtLeastTwoDrop {
                tuple: s.clone(),
                offending,
                index,
                child: Box::new(prove_in_gamma(&child)),
            }
        }
    }
}

/// Whether rigidity of `known` transfers to `target` through `≤ⁱ`.
pub fn propagate_rigidity(known: &ExponentTuple, target: &ExponentTuple, i: usize) -> Result<bool> {
    arith::leq_order(known, target, i)
}

/// For cotype 1 with offending index `i` and `L = lcm(S_i)`: the tuple with
/// `a_i` replaced by `a_i L`, and the cotype-0 tuple with `a_i` replaced by
/// `L`, which lies below it in `≤ⁱ`.
pub fn cotype_one_substitute(s: &ExponentTuple, i: usize) -> Result<(ExponentTuple, ExponentTuple)> {
    s.get(i)?;
    let offending = arith::offending_indices(s);
    if offending.len() != 1 {
        return Err(Error::WrongCotype {
            expected: 1,
            actual: offending.len(),
        });
    }
    if offending[0] != i {
        return Err(Error::WrongIndex(i));
    }
    let l = arith::lcm_without(s, i)?;
    let substituted = s.with_entry(i, &s.entries()[i] * &l)?;
    let comparison = s.with_entry(i, l)?;
    debug_assert_eq!(arith::cotype(&comparison), 0);
    debug_assert!(arith::leq_order(&comparison, &substituted, i).unwrap_or(false));
    Ok((substituted, comparison))
}
