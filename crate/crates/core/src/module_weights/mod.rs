//! Weight sets `P(λ)` of integrable highest-weight modules.
//!
//! `P(λ)` is infinite, so everything here works on truncations: a
//! [`WeightSupport`] of depth `D` holds the weights `μ` whose `λ - μ` has
//! `α₀`-coefficient at most `D`.

pub mod freudenthal;
pub mod gaps;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::affine_weights::{
    affine_dominant_conjugate, affine_leq, affine_reflection, coset_of, in_affine_root_lattice, is_dominant,
    simple_affine_roots, AffineRealRoot, AffineWeight,
};
use crate::error::{Error, Result};
use crate::rational::{format_q, fract, is_natural, q, to_i64, Q};
use crate::root_core::{FiniteWeight, RootSystem};

pub use freudenthal::{freudenthal_mult, FreudenthalTable};
pub use gaps::{find_gap_down, find_gap_up, GapLattice, GapWitness};

/// A finite set of weights of one level, each with a positive multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSupport", into = "RawSupport")]
pub struct WeightSupport {
    depth: u32,
    entries: BTreeMap<AffineWeight, u64>,
}

#[derive(Serialize, Deserialize)]
struct RawEntry {
    weight: AffineWeight,
    multiplicity: u64,
}

#[derive(Serialize, Deserialize)]
struct RawSupport {
    depth: u32,
    weights: Vec<RawEntry>,
}

impl From<WeightSupport> for RawSupport {
    fn from(s: WeightSupport) -> Self {
        RawSupport {
            depth: s.depth,
            weights: s
                .entries
                .into_iter()
                .rev()
                .map(|(weight, multiplicity)| RawEntry { weight, multiplicity })
                .collect(),
        }
    }
}

impl TryFrom<RawSupport> for WeightSupport {
    type Error = Error;

    fn try_from(raw: RawSupport) -> Result<Self> {
        let mut s = WeightSupport::new(raw.depth);
        for e in raw.weights {
            s.insert(e.weight, e.multiplicity)?;
        }
        Ok(s)
    }
}

impl WeightSupport {
    pub fn new(depth: u32) -> Self {
        WeightSupport {
            depth,
            entries: BTreeMap::new(),
        }
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn level(&self) -> Option<&Q> {
        self.entries.keys().next().map(|w| &w.level)
    }

    /// Adds `multiplicity` to the entry at `weight`.
    pub fn insert(&mut self, weight: AffineWeight, multiplicity: u64) -> Result<()> {
        if multiplicity == 0 {
            return Err(Error::Precondition(format!("zero multiplicity at {weight}")));
        }
        if let Some(level) = self.level() {
            if *level != weight.level {
                return Err(Error::Precondition(format!(
                    "level {} differs from the support level {}",
                    format_q(&weight.level),
                    format_q(level)
                )));
            }
        }
        *self.entries.entry(weight).or_insert(0) += multiplicity;
        Ok(())
    }

    pub fn contains(&self, w: &AffineWeight) -> bool {
        self.entries.contains_key(w)
    }

    /// Zero for weights outside the support.
    pub fn multiplicity(&self, w: &AffineWeight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weights(&self) -> impl Iterator<Item = &AffineWeight> {
        self.entries.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AffineWeight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    /// Weights of a direct sum: multiplicities add.
    pub fn merge(&self, other: &WeightSupport) -> Result<WeightSupport> {
        let mut out = self.clone();
        out.depth = out.depth.max(other.depth);
        for (w, m) in other.iter() {
            out.insert(w.clone(), m)?;
        }
        Ok(out)
    }
}

fn check_highest(rs: &RootSystem, lambda: &AffineWeight) -> Result<()> {
    if !is_dominant(rs, lambda)? || lambda.level < q(1) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    Ok(())
}

/// Whether `μ ∈ P(λ)`: same level, `λ - μ ∈ Q`, and the dominant conjugate
/// of `μ` lies below `λ`.
pub fn member(rs: &RootSystem, mu: &AffineWeight, lambda: &AffineWeight) -> Result<bool> {
    check_highest(rs, lambda)?;
    if mu.level != lambda.level || !in_affine_root_lattice(rs, &(lambda - mu)) {
        return Ok(false);
    }
    let plus = affine_dominant_conjugate(rs, mu)?;
    Ok(affine_leq(rs, &plus, lambda))
}

/// All weights of `V(λ)` down to `α₀`-depth `depth`, with multiplicities.
///
/// Every weight is reached from `λ` by subtracting simple roots one at a
/// time through weights, and the `α₀`-coefficient only grows along the way,
/// so a search pruned by membership and depth is complete.
pub fn enumerate_weights(rs: &RootSystem, lambda: &AffineWeight, depth: u32) -> Result<WeightSupport> {
    check_highest(rs, lambda)?;
    let simple = simple_affine_roots(rs);
    let mut seen = BTreeSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(cur) = queue.pop_front() {
        for (i, a) in simple.iter().enumerate() {
            let next = &cur - a;
            if i == 0 && &lambda.d - &next.d > q(depth as i64) {
                continue;
            }
            if !seen.contains(&next) && member(rs, &next, lambda)? {
                seen.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut table = FreudenthalTable::new(rs, lambda.clone());
    let mut out = WeightSupport::new(depth);
    for w in seen {
        let m = table.multiplicity(&w);
        out.insert(w, m)?;
    }
    Ok(out)
}

/// Every dominant integral `λ̄ + kΛ₀` of level `k` with `λ(d) = 0`, in
/// increasing label height.
pub fn dominant_of_level(rs: &RootSystem, level: u32) -> Result<Vec<AffineWeight>> {
    let comarks = rs.coroot(rs.highest_root())?.coeffs;
    let n = rs.rank();
    let mut out = Vec::new();
    let mut labels = vec![0i64; n];
    fn rec(i: usize, budget: &Q, comarks: &[Q], labels: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == labels.len() {
            out.push(labels.clone());
            return;
        }
        let mut k = 0;
        while &comarks[i] * q(k) <= *budget {
            labels[i] = k;
            rec(i + 1, &(budget - &comarks[i] * q(k)), comarks, labels, out);
            k += 1;
        }
        labels[i] = 0;
    }
    rec(0, &q(level as i64), &comarks, &mut labels, &mut out);
    out.sort_by_key(|l| (l.iter().sum::<i64>(), std::cmp::Reverse(l.clone())));
    Ok(out
        .into_iter()
        .map(|l| AffineWeight::compose(FiniteWeight::from_ints(&l), Q::zero(), q(level as i64)))
        .collect())
}

/// Whether the support is stable under the finite simple reflections, with
/// multiplicities preserved.
pub fn is_weyl_closed(rs: &RootSystem, support: &WeightSupport) -> bool {
    support
        .iter()
        .all(|(w, m)| (1..=rs.rank()).all(|i| support.multiplicity(&affine_reflection(rs, i, w)) == m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FloorWeight {
    /// `μ̄₀ + sδ + λ(K)Λ₀`, with `μ̄₀` the minimal dominant weight of the
    /// class of `λ̄` modulo the finite root lattice.
    #[serde(rename = "mu0")]
    pub weight: AffineWeight,
    #[serde(with = "crate::rational::serde_q")]
    pub s: Q,
    pub member: bool,
}

pub fn floor_weight(rs: &RootSystem, lambda: &AffineWeight, s: &Q) -> Result<FloorWeight> {
    check_highest(rs, lambda)?;
    if !is_natural(&(&lambda.d - s)) {
        return Err(Error::Precondition(format!(
            "λ(d) - s = {} is not a natural number",
            format_q(&(&lambda.d - s))
        )));
    }
    let bar = coset_of(rs, &lambda.finite)?.representative;
    let weight = AffineWeight::compose(bar, s.clone(), lambda.level.clone());
    let member = member(rs, &weight, lambda)?;
    Ok(FloorWeight {
        weight,
        s: s.clone(),
        member,
    })
}

/// Splits a support into its classes modulo the affine root lattice.
pub fn coset_split(rs: &RootSystem, support: &WeightSupport) -> Vec<WeightSupport> {
    // μ₁ - μ₂ ∈ Q iff the levels agree and the root coordinates and
    // δ-coefficients agree modulo ℤ
    let mut parts: BTreeMap<(Vec<Q>, Q, Q), WeightSupport> = BTreeMap::new();
    for (w, m) in support.iter() {
        let key = (
            rs.root_coords(&w.finite).iter().map(fract).collect(),
            fract(&w.d),
            w.level.clone(),
        );
        parts
            .entry(key)
            .or_insert_with(|| WeightSupport::new(support.depth()))
            .insert(w.clone(), m)
            .expect("levels agree within one part");
    }
    parts.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscapeAudit {
    pub holds: bool,
    pub counterexamples: Vec<AffineRealRoot>,
}

/// `w - λ` as a real affine root `α + nδ`, if it is one.
fn as_real_root(rs: &RootSystem, diff: &AffineWeight) -> Option<AffineRealRoot> {
    if diff.level != q(0) {
        return None;
    }
    let n = to_i64(&diff.d)?;
    let alpha = rs.as_root_lattice(&diff.finite)?;
    rs.is_root(&alpha).then(|| AffineRealRoot::new(alpha, n))
}

/// Lists the positive real roots `α > η` with `λ + α` in the support.
pub fn audit_root_escape(
    rs: &RootSystem,
    support: &WeightSupport,
    lambda: &AffineWeight,
    eta: &AffineWeight,
) -> Result<EscapeAudit> {
    if !support.contains(lambda) {
        return Err(Error::NotInSupport(lambda.to_string()));
    }
    let counterexamples: Vec<AffineRealRoot> = support
        .weights()
        .filter_map(|w| as_real_root(rs, &(w - lambda)))
        .filter(|r| r.is_positive())
        .filter(|r| {
            let a = r.as_weight(rs);
            a != *eta && affine_leq(rs, eta, &a)
        })
        .collect();
    Ok(EscapeAudit {
        holds: counterexamples.is_empty(),
        counterexamples,
    })
}
