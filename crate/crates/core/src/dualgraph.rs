//! Weighted intersection graphs of curves on a smooth surface, and
//! blow-downs of (-1)-curves.
//!
//! Tangency and several transverse intersection points are not
//! distinguished; an edge only records the intersection number.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub self_int: i64,
    /// `K·C`.
    pub k_degree: i64,
}

impl Curve {
    pub fn new(name: impl Into<String>, self_int: i64, k_degree: i64) -> Self {
        Curve {
            name: name.into(),
            self_int,
            k_degree,
        }
    }

    /// Arithmetic genus from adjunction, `(C² + K·C)/2 + 1`.
    pub fn p_a(&self) -> i64 {
        (self.self_int + self.k_degree).div_euclid(2) + 1
    }

    pub fn is_contractible(&self) -> bool {
        self.self_int == -1 && self.p_a() == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub a: String,
    pub b: String,
    pub mult: u64,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    curves: Vec<Curve>,
    edges: Vec<Edge>,
    ambient_k_squared: i64,
}

/// Curves keyed by name; edges keyed by the ordered name pair `(a, b)`,
/// `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "GraphFile", into = "GraphFile")]
pub struct IntersectionGraph {
    curves: BTreeMap<String, Curve>,
    edges: BTreeMap<(String, String), u64>,
    ambient_k_squared: i64,
}

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl TryFrom<GraphFile> for IntersectionGraph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Self> {
        let mut g = IntersectionGraph::new(file.ambient_k_squared);
        for c in file.curves {
            g.add_curve(c)?;
        }
        for e in file.edges {
            if g.edges.contains_key(&key(&e.a, &e.b)) {
                return Err(Error::InvalidGraph(format!("duplicate edge {} -- {}", e.a, e.b)));
            }
            g.add_edge(&e.a, &e.b, e.mult)?;
        }
        Ok(g)
    }
}

impl From<IntersectionGraph> for GraphFile {
    fn from(g: IntersectionGraph) -> Self {
        GraphFile {
            edges: g.edges(),
            curves: g.curves.into_values().collect(),
            ambient_k_squared: g.ambient_k_squared,
        }
    }
}

impl IntersectionGraph {
    pub fn new(ambient_k_squared: i64) -> Self {
        IntersectionGraph {
            ambient_k_squared,
            ..Default::default()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))
    }

    pub fn add_curve(&mut self, c: Curve) -> Result<()> {
        if (c.self_int + c.k_degree) % 2 != 0 {
            return Err(Error::InvalidGraph(format!(
                "{}: C² + K·C = {} is odd",
                c.name,
                c.self_int + c.k_degree
            )));
        }
        if c.p_a() < 0 {
            return Err(Error::InvalidGraph(format!("{}: negative arithmetic genus", c.name)));
        }
        if c.name.is_empty() {
            return Err(Error::InvalidGraph("empty curve name".into()));
        }
        if self.curves.contains_key(&c.name) {
            return Err(Error::InvalidGraph(format!("duplicate curve {}", c.name)));
        }
        self.curves.insert(c.name.clone(), c);
        Ok(())
    }

    /// Adds `mult` to the intersection number of `a` and `b`.
    pub fn add_edge(&mut self, a: &str, b: &str, mult: u64) -> Result<()> {
        for n in [a, b] {
            if !self.curves.contains_key(n) {
                return Err(Error::UnknownCurve(n.to_string()));
            }
        }
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop on {a}")));
        }
        if mult == 0 {
            return Err(Error::InvalidGraph(format!("zero multiplicity on {a} -- {b}")));
        }
        *self.edges.entry(key(a, b)).or_insert(0) += mult;
        Ok(())
    }

    pub fn curve(&self, name: &str) -> Option<&Curve> {
        self.curves.get(name)
    }

    pub fn curves(&self) -> impl Iterator<Item = &Curve> {
        self.curves.values()
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn ambient_k_squared(&self) -> i64 {
        self.ambient_k_squared
    }

    pub fn edges(&self) -> Vec<Edge> {
        self.edges
            .iter()
            .map(|((a, b), &mult)| Edge {
                a: a.clone(),
                b: b.clone(),
                mult,
            })
            .collect()
    }

    /// Intersection number of two distinct curves.
    pub fn multiplicity(&self, a: &str, b: &str) -> u64 {
        self.edges.get(&key(a, b)).copied().unwrap_or(0)
    }

    pub fn neighbors(&self, name: &str) -> BTreeMap<String, u64> {
        self.edges
            .iter()
            .filter_map(|((a, b), &m)| {
                if a == name {
                    Some((b.clone(), m))
                } else if b == name {
                    Some((a.clone(), m))
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph intersection {\n");
        let _ = writeln!(out, "  label=\"K^2 = {}\";", self.ambient_k_squared);
        for c in self.curves.values() {
            let _ = writeln!(
                out,
                "  \"{}\" [label=\"{} ({})\"];",
                c.name, c.name, c.self_int
            );
        }
        for ((a, b), m) in &self.edges {
            let _ = writeln!(out, "  \"{a}\" -- \"{b}\" [label=\"{m}\"];");
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveChange {
    pub name: String,
    pub self_int_delta: i64,
    pub k_degree_delta: i64,
    pub self_int: i64,
    pub k_degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionRecord {
    pub contracted: Curve,
    pub neighbors: BTreeMap<String, u64>,
    pub curve_changes: Vec<CurveChange>,
    /// Edges whose multiplicity changed, with the new totals.
    pub edge_changes: Vec<Edge>,
    pub ambient_k_squared: i64,
}

/// Blows down the (-1)-curve `name`.
pub fn contract(g: &IntersectionGraph, name: &str) -> Result<(IntersectionGraph, ContractionRecord)> {
    let v = g
        .curve(name)
        .ok_or_else(|| Error::UnknownCurve(name.to_string()))?
        .clone();
    if !v.is_contractible() {
        return Err(Error::NotContractible {
            name: name.to_string(),
            self_int: v.self_int,
            p_a: v.p_a(),
        });
    }
    let neighbors = g.neighbors(name);
    let mut out = g.clone();
    out.curves.remove(name);
    out.edges.retain(|(a, b), _| a != name && b != name);

    let mut curve_changes = Vec::new();
    for (n, &m) in &neighbors {
        let m = m as i64;
        let c = out.curves.get_mut(n).expect("neighbor exists");
        c.self_int += m * m;
        c.k_degree -= m;
        curve_changes.push(CurveChange {
            name: n.clone(),
            self_int_delta: m * m,
            k_degree_delta: -m,
            self_int: c.self_int,
            k_degree: c.k_degree,
        });
    }
    let mut edge_changes = Vec::new();
    let list: Vec<_> = neighbors.iter().collect();
    for (x, (a, ma)) in list.iter().enumerate() {
        for (b, mb) in &list[x + 1..] {
            let k = key(a, b);
            let total = out.edges.entry(k.clone()).or_insert(0);
            *total += *ma * *mb;
            edge_changes.push(Edge {
                a: k.0,
                b: k.1,
                mult: *total,
            });
        }
    }
    out.ambient_k_squared += 1;
    let record = ContractionRecord {
        contracted: v,
        neighbors,
        curve_changes,
        edge_changes,
        ambient_k_squared: out.ambient_k_squared,
    };
    Ok((out, record))
}

pub fn contract_sequence(
    g: &IntersectionGraph,
    names: &[&str],
) -> Result<(IntersectionGraph, Vec<ContractionRecord>)> {
    let mut current = g.clone();
    let mut trace = Vec::with_capacity(names.len());
    for name in names {
        let (next, record) = contract(&current, name)?;
        current = next;
        trace.push(record);
    }
    Ok((current, trace))
}

/// Contractible curves that meet no other (-1)-curve, in name order.
pub fn isolated_contractible(g: &IntersectionGraph) -> Vec<String> {
    g.curves()
        .filter(|c| c.is_contractible())
        .filter(|c| {
            g.neighbors(&c.name)
                .keys()
                .all(|n| g.curve(n).map_or(true, |o| o.self_int != -1))
        })
        .map(|c| c.name.clone())
        .collect()
}

/// Repeatedly blows down the first (by name) contractible curve that meets
/// no other (-1)-curve. Blow-downs of pairwise disjoint curves commute, so
/// the result does not depend on the naming. Stops when every remaining
/// (-1)-curve of genus 0 meets another (-1)-curve: contracting one member of
/// such a pair would be a choice, not a canonical step.
pub fn contract_all(g: &IntersectionGraph) -> (IntersectionGraph, Vec<ContractionRecord>) {
    let mut current = g.clone();
    let mut trace = Vec::new();
    while let Some(name) = isolated_contractible(&current).into_iter().next() {
        let (next, record) = contract(&current, &name).expect("candidate is contractible");
        current = next;
        trace.push(record);
    }
    (current, trace)
}

/// Degree of the del Pezzo surface reached, i.e. its `K²`.
pub fn del_pezzo_degree(g: &IntersectionGraph) -> i64 {
    g.ambient_k_squared()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveAnnotation {
    pub name: String,
    pub p_a_before: i64,
    pub p_a_after: i64,
    pub note: String,
}

/// Describes how surviving curves changed: a smooth rational curve whose
/// arithmetic genus went up to 1 acquired a single node or cusp.
pub fn annotate(before: &IntersectionGraph, after: &IntersectionGraph) -> Vec<CurveAnnotation> {
    after
        .curves()
        .filter_map(|c| {
            let old = before.curve(&c.name)?;
            let (p0, p1) = (old.p_a(), c.p_a());
            let note = match (p0, p1) {
                (a, b) if a == b => return None,
                (0, 1) => "rational with one cusp or node".to_string(),
                (0, k) => format!("rational, singularities of total delta-invariant {k}"),
                (a, b) => format!("arithmetic genus raised from {a} to {b}"),
            };
            Some(CurveAnnotation {
                name: c.name.clone(),
                p_a_before: p0,
                p_a_after: p1,
                note,
            })
        })
        .collect()
}
