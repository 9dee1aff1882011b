//! Refutation of integrable supports with non-zero level.
//!
//! Given a finite candidate support `S`, the engine picks a weight `λ` with
//! nothing directly below it along the negative factor, bounds the negative
//! real roots on which `λ` is non-positive, rules out the weights the
//! argument forbids, and finally walks down to a weight killed by every
//! `x_α(n)`, `n < 0`. Heisenberg theory then forces the whole ray `μ + mδ`,
//! `m > 0`, into the support, which a finite `S` cannot hold.
//!
//! Each deduction is a [`Step`] with explicit premises, so that a trace can
//! be re-verified without the engine.

use std::collections::BTreeSet;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::affine_weights::AffineWeight;
use crate::error::{Error, Result};
use crate::rational::{floor_i64, format_q, q, Q};
use crate::root_core::FiniteRoot;

use super::catalog::{ComponentRoot, SuperAlgebraSpec, SuperRootData};

/// A finite candidate for the weight set of an integrable module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportCandidate {
    pub spec: SuperAlgebraSpec,
    pub level: i64,
    pub depth: u32,
    pub weights: BTreeSet<AffineWeight>,
}

impl SupportCandidate {
    pub fn validate(&self, data: &SuperRootData) -> Result<()> {
        for w in &self.weights {
            if w.rank() != data.rank() {
                return Err(Error::RankMismatch {
                    expected: data.rank(),
                    got: w.rank(),
                });
            }
            if w.level != q(self.level) {
                return Err(Error::Precondition(format!(
                    "weight {w} does not have level {}",
                    self.level
                )));
            }
        }
        Ok(())
    }

    pub fn min_d(&self) -> Option<&Q> {
        self.weights.iter().map(|w| &w.d).min()
    }

    pub fn max_d(&self) -> Option<&Q> {
        self.weights.iter().map(|w| &w.d).max()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    /// Include the negative roots `α < 0` of depth 0 in `Δ(λ)`.
    pub include_depth_zero: bool,
    /// Which positive factor plays the first component when the first even
    /// component is not simple.
    pub first_factor: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fact {
    In(AffineWeight),
    NotIn(AffineWeight),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Rule {
    #[serde(rename = "gap1.7")]
    Gap,
    #[serde(rename = "lemma2.5")]
    StringStep,
    #[serde(rename = "subclaim1")]
    DeltaRay,
    #[serde(rename = "subclaim2")]
    BelowRay,
    #[serde(rename = "subclaim3")]
    AboveRay,
    #[serde(rename = "heisenberg")]
    Heisenberg,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    Facts(Vec<Fact>),
    Contradiction,
    ConsistentAtDepth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Step {
    pub index: usize,
    pub rule: Rule,
    pub premises: Vec<Fact>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<ComponentRoot>,
    pub conclusion: Conclusion,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Contradiction,
    ConsistentAtDepth,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionTrace {
    pub spec: SuperAlgebraSpec,
    pub level: i64,
    pub depth: u32,
    pub negative_factor: usize,
    pub first_factor: usize,
    /// The weight `λ` with nothing directly below it.
    pub focus: Option<AffineWeight>,
    /// Number of roots in `Δ(λ)`.
    pub delta_size: Option<usize>,
    pub r: Option<i64>,
    pub p: Option<i64>,
    /// The weight at the start of the Heisenberg ray.
    pub lowest: Option<AffineWeight>,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
}

/// If `λ(γ∨) > 0`, the weight `λ - γ` that every integrable support
/// containing `λ` must contain.
pub fn string_step(data: &SuperRootData, lambda: &AffineWeight, gamma: &ComponentRoot) -> Result<Option<AffineWeight>> {
    let value = data.coroot_value(lambda, gamma)?;
    Ok(value.is_positive().then(|| lambda - &data.root_weight(gamma)))
}

fn require_negative_factor(data: &SuperRootData) -> Result<usize> {
    if data.spec().simple_component_count() < 2 {
        return Err(Error::Hypothesis(format!(
            "{} has a single simple even component; only the highest-weight classification applies",
            data.spec()
        )));
    }
    data.negative_factor()
        .ok_or_else(|| Error::Hypothesis(format!("{} has no negative component", data.spec())))
}

/// `Δ(λ)`: negative real roots `γ` of the affinized negative factor with
/// `λ(γ∨) ≤ 0`, ordered by depth and then by root.
pub fn nonpositive_root_set(
    data: &SuperRootData,
    lambda: &AffineWeight,
    include_depth_zero: bool,
) -> Result<Vec<ComponentRoot>> {
    let factor = require_negative_factor(data)?;
    if !lambda.level.is_positive() {
        return Err(Error::NonPositiveLevel(format_q(&lambda.level)));
    }
    let rs = &data.factors()[factor].rs;
    let mut out = Vec::new();
    if include_depth_zero {
        for alpha in rs.roots().iter().filter(|a| !a.is_positive()) {
            let gamma = ComponentRoot {
                factor,
                alpha: alpha.clone(),
                n: 0,
            };
            if !data.coroot_value(lambda, &gamma)?.is_positive() {
                out.push(gamma);
            }
        }
    }
    // λ(γ∨) grows with the depth for γ = α - nδ, so each α contributes an
    // initial run of depths
    for alpha in rs.roots() {
        for n in 1.. {
            let gamma = ComponentRoot {
                factor,
                alpha: alpha.clone(),
                n: -n,
            };
            if data.coroot_value(lambda, &gamma)?.is_positive() {
                break;
            }
            out.push(gamma);
        }
    }
    out.sort_by(|a, b| b.n.cmp(&a.n).then_with(|| a.alpha.cmp(&b.alpha)));
    Ok(out)
}

/// Closed form for the number of depth-positive roots in `Δ(λ)`:
/// `Σ_α max(0, ⌊-λ(α∨)·|(α,α)| / (2k)⌋)` over the roots of the negative factor.
pub fn nonpositive_root_count(data: &SuperRootData, lambda: &AffineWeight) -> Result<u64> {
    let factor = require_negative_factor(data)?;
    if !lambda.level.is_positive() {
        return Err(Error::NonPositiveLevel(format_q(&lambda.level)));
    }
    let f = &data.factors()[factor];
    let mut total = 0u64;
    for alpha in f.rs.roots() {
        let value = f.rs.coroot(alpha)?.eval_labels(f.labels(lambda));
        let bound = -value * f.rs.root_norm(alpha).abs() / (q(2) * &lambda.level);
        total += floor_i64(&bound).max(0) as u64;
    }
    Ok(total)
}

/// `r`: the least positive integer with `α - sδ ∉ Δ(λ)` for all `s ≥ r`.
pub fn ray_threshold(delta: &[ComponentRoot]) -> i64 {
    delta.iter().map(|g| -g.n).max().map_or(1, |m| m.max(0) + 1)
}

struct Builder {
    steps: Vec<Step>,
}

impl Builder {
    fn push(&mut self, rule: Rule, premises: Vec<Fact>, root: Option<ComponentRoot>, conclusion: Conclusion) {
        let index = self.steps.len();
        self.steps.push(Step {
            index,
            rule,
            premises,
            root,
            conclusion,
        });
    }

    /// A string step from `from` along `gamma` that lands outside `S`,
    /// followed by the contradiction, credited to `rule`.
    fn refute(&mut self, data: &SuperRootData, rule: Rule, from: &AffineWeight, gamma: ComponentRoot) {
        let to = from - &data.root_weight(&gamma);
        self.push(
            Rule::StringStep,
            vec![Fact::In(from.clone())],
            Some(gamma),
            Conclusion::Facts(vec![Fact::In(to.clone())]),
        );
        self.push(
            rule,
            vec![Fact::In(to.clone()), Fact::NotIn(to)],
            None,
            Conclusion::Contradiction,
        );
    }
}

/// Replays the refutation on a finite candidate.
pub fn run_obstruction(candidate: &SupportCandidate, config: &EngineConfig) -> Result<ObstructionTrace> {
    let data = SuperRootData::new(&candidate.spec)?;
    let neg = require_negative_factor(&data)?;
    if candidate.level <= 0 {
        return Err(Error::NonPositiveLevel(candidate.level.to_string()));
    }
    if !data.positive_factors().contains(&config.first_factor) {
        return Err(Error::Precondition(format!(
            "factor {} is not a factor of the first component",
            config.first_factor
        )));
    }
    candidate.validate(&data)?;
    let s = &candidate.weights;
    let mut trace = ObstructionTrace {
        spec: candidate.spec.clone(),
        level: candidate.level,
        depth: candidate.depth,
        negative_factor: neg,
        first_factor: config.first_factor,
        focus: None,
        delta_size: None,
        r: None,
        p: None,
        lowest: None,
        steps: Vec::new(),
        outcome: Outcome::Contradiction,
    };
    let mut b = Builder { steps: Vec::new() };
    if s.is_empty() {
        b.push(Rule::Gap, Vec::new(), None, Conclusion::ConsistentAtDepth);
        trace.steps = b.steps;
        trace.outcome = Outcome::ConsistentAtDepth;
        return Ok(trace);
    }

    let rs2 = &data.factors()[neg].rs;
    let positive: Vec<AffineWeight> = rs2
        .positive_roots()
        .iter()
        .map(|a| {
            data.root_weight(&ComponentRoot {
                factor: neg,
                alpha: a.clone(),
                n: 0,
            })
        })
        .collect();

    // focus: lowest along the negative factor, then highest in δ
    let lambda = s
        .iter()
        .filter(|w| positive.iter().all(|a| !s.contains(&(*w - a))))
        .min_by(|x, y| {
            data.factor_height(neg, x)
                .cmp(&data.factor_height(neg, y))
                .then_with(|| y.d.cmp(&x.d))
                .then_with(|| y.cmp(x))
        })
        .expect("a finite set has a lowest weight along the factor")
        .clone();
    let mut premises = vec![Fact::In(lambda.clone())];
    premises.extend(positive.iter().map(|a| Fact::NotIn(&lambda - a)));
    b.push(
        Rule::Gap,
        premises,
        None,
        Conclusion::Facts(vec![Fact::In(lambda.clone())]),
    );
    trace.focus = Some(lambda.clone());

    // λ(α∨) ≤ 0 on positive roots, else λ - α is forced
    for alpha in rs2.positive_roots() {
        let gamma = ComponentRoot {
            factor: neg,
            alpha: alpha.clone(),
            n: 0,
        };
        if data.coroot_value(&lambda, &gamma)?.is_positive() {
            b.refute(&data, Rule::StringStep, &lambda, gamma);
            trace.steps = b.steps;
            return Ok(trace);
        }
    }

    let delta = nonpositive_root_set(&data, &lambda, config.include_depth_zero)?;
    let r = ray_threshold(&delta);
    trace.delta_size = Some(delta.len());
    trace.r = Some(r);
    let reach = floor_i64(&(&lambda.d - candidate.min_d().expect("non-empty")));
    let below = |k: i64| lambda.shift_delta(&q(-k));

    // nothing on the ray λ - sδ for s ≥ r
    let alpha1 = rs2.positive_roots()[0].clone();
    for sd in r..=reach {
        if s.contains(&below(sd)) {
            let gamma = ComponentRoot {
                factor: neg,
                alpha: alpha1,
                n: -sd,
            };
            b.refute(&data, Rule::DeltaRay, &below(sd), gamma);
            trace.steps = b.steps;
            return Ok(trace);
        }
    }
    let p = (0..=reach).rev().find(|&k| s.contains(&below(k))).expect("λ ∈ S");
    trace.p = Some(p);
    let mut premises = vec![Fact::In(below(p))];
    premises.extend((p + 1..=reach).map(|k| Fact::NotIn(below(k))));
    b.push(
        Rule::DeltaRay,
        premises,
        None,
        Conclusion::Facts((r..=reach).map(|k| Fact::NotIn(below(k))).collect()),
    );

    // nothing at λ - α - (m+p)δ for m > 0
    let mut excluded = Vec::new();
    for alpha in rs2.positive_roots() {
        let a = data.root_weight(&ComponentRoot {
            factor: neg,
            alpha: alpha.clone(),
            n: 0,
        });
        for m in 1..=(reach - p) {
            let w = (&lambda - &a).shift_delta(&q(-(m + p)));
            if s.contains(&w) {
                let gamma = ComponentRoot {
                    factor: neg,
                    alpha: alpha.negate(),
                    n: 0,
                };
                b.refute(&data, Rule::BelowRay, &w, gamma);
                trace.steps = b.steps;
                return Ok(trace);
            }
            excluded.push(Fact::NotIn(w));
        }
    }
    b.push(
        Rule::BelowRay,
        vec![Fact::In(below(p))],
        None,
        Conclusion::Facts(excluded),
    );

    // nothing at λ + α - (m+p+1)δ for m > r
    let mut excluded = Vec::new();
    for alpha in rs2.positive_roots() {
        let a = data.root_weight(&ComponentRoot {
            factor: neg,
            alpha: alpha.clone(),
            n: 0,
        });
        for m in (r + 1)..=(reach - p - 1) {
            let w = (&lambda + &a).shift_delta(&q(-(m + p + 1)));
            if s.contains(&w) {
                let gamma = ComponentRoot {
                    factor: neg,
                    alpha: alpha.clone(),
                    n: -m,
                };
                b.refute(&data, Rule::AboveRay, &w, gamma);
                trace.steps = b.steps;
                return Ok(trace);
            }
            excluded.push(Fact::NotIn(w));
        }
    }
    b.push(
        Rule::AboveRay,
        vec![Fact::In(below(p))],
        None,
        Conclusion::Facts(excluded),
    );

    // walk down along x_α(n), n < 0, inside S
    let mut mu = below(p);
    while let Some(next) = s
        .iter()
        .filter(|w| w.d < mu.d && data.as_factor_root(neg, &(*w - &mu)).is_some())
        .max_by(|x, y| x.d.cmp(&y.d).then_with(|| x.cmp(y)))
    {
        mu = next.clone();
    }
    trace.lowest = Some(mu.clone());
    let min_d = candidate.min_d().expect("non-empty").clone();
    let mut premises = vec![Fact::In(mu.clone())];
    premises.extend(lowering_moves(&data, neg, &mu, &min_d).into_iter().map(Fact::NotIn));
    let top = floor_i64(&(candidate.max_d().expect("non-empty") - &mu.d)) + 1;
    b.push(
        Rule::Heisenberg,
        premises,
        None,
        Conclusion::Facts((1..=top).map(|m| Fact::In(mu.shift_delta(&q(m)))).collect()),
    );
    let end = mu.shift_delta(&q(top));
    b.push(
        Rule::Heisenberg,
        vec![Fact::In(end.clone()), Fact::NotIn(end)],
        None,
        Conclusion::Contradiction,
    );
    trace.steps = b.steps;
    Ok(trace)
}

/// `μ + α + nδ` for `α` a root of the factor or zero and `n < 0`, down to
/// δ-coefficient `min_d`.
pub(crate) fn lowering_moves(data: &SuperRootData, factor: usize, mu: &AffineWeight, min_d: &Q) -> Vec<AffineWeight> {
    let rs = &data.factors()[factor].rs;
    let mut alphas: Vec<FiniteRoot> = vec![FiniteRoot(vec![0; rs.rank()])];
    alphas.extend(rs.roots().iter().cloned());
    let depth = floor_i64(&(&mu.d - min_d));
    let mut out = Vec::new();
    for n in 1..=depth {
        for alpha in &alphas {
            let w = mu
                + &data.root_weight(&ComponentRoot {
                    factor,
                    alpha: alpha.clone(),
                    n: -n,
                });
            out.push(w);
        }
    }
    out
}

impl ObstructionTrace {
    pub fn is_contradiction(&self) -> bool {
        self.outcome == Outcome::Contradiction
    }

    /// Rule credited with the contradiction, if any.
    pub fn contradiction_rule(&self) -> Option<Rule> {
        self.steps
            .iter()
            .find(|s| s.conclusion == Conclusion::Contradiction)
            .map(|s| s.rule)
    }
}
