//! Step-by-step verification of obstruction traces.
//!
//! The checker shares no code path with the engine beyond the root data of
//! the factors: coroot values, the threshold `r`, the lowering moves and the
//! premise bookkeeping are all recomputed here from the candidate support.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine_weights::AffineWeight;
use crate::error::Result;
use crate::rational::{floor_i64, q, to_i64, Q};
use crate::root_core::{FiniteRoot, FiniteWeight, FormSign, RootSystem};

use super::engine::{Conclusion, Fact, ObstructionTrace, Outcome, Rule, SupportCandidate};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckFailure {
    pub step: usize,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceCheck {
    pub valid: bool,
    pub failures: Vec<CheckFailure>,
}

struct NegativeFactor {
    rs: RootSystem,
    offset: usize,
    total_rank: usize,
}

impl NegativeFactor {
    fn from_spec(candidate: &SupportCandidate, index: usize) -> Option<Self> {
        let mut offset = 0;
        let mut k = 0;
        for c in &candidate.spec.even_components {
            for t in c.simple_type.simple_factors() {
                let rs = RootSystem::build(t, c.form_sign).ok()?;
                if k == index {
                    if c.form_sign != FormSign::Negative {
                        return None;
                    }
                    let total_rank = candidate
                        .spec
                        .even_components
                        .iter()
                        .flat_map(|c| c.simple_type.simple_factors())
                        .map(|t| t.rank)
                        .sum();
                    return Some(NegativeFactor { rs, offset, total_rank });
                }
                offset += t.rank;
                k += 1;
            }
        }
        None
    }

    fn embed(&self, alpha: &FiniteRoot, n: i64) -> AffineWeight {
        let local = self.rs.root_as_weight(alpha);
        let mut labels = vec![Q::zero(); self.total_rank];
        for (i, x) in local.0.into_iter().enumerate() {
            labels[self.offset + i] = x;
        }
        AffineWeight::compose(FiniteWeight(labels), q(n), Q::zero())
    }

    fn finite_value(&self, w: &AffineWeight, alpha: &FiniteRoot) -> Q {
        let coroot = self.rs.coroot(alpha).expect("root of the factor");
        coroot.eval_labels(&w.finite.0[self.offset..self.offset + self.rs.rank()])
    }

    /// `w((α + nδ)∨)`.
    fn value(&self, w: &AffineWeight, alpha: &FiniteRoot, n: i64) -> Q {
        self.finite_value(w, alpha) + q(2 * n) * &w.level / self.rs.root_norm(alpha)
    }

    /// Least `r ≥ 1` with `λ((α - sδ)∨) > 0` for every root `α` and `s ≥ r`.
    fn threshold(&self, lambda: &AffineWeight) -> i64 {
        let mut r = 1;
        for alpha in self.rs.roots() {
            let bound = -self.finite_value(lambda, alpha) * self.rs.root_norm(alpha).abs() / (q(2) * &lambda.level);
            r = r.max(floor_i64(&bound) + 1);
        }
        r
    }
}

struct State<'a> {
    support: &'a BTreeSet<AffineWeight>,
    derived_in: BTreeSet<AffineWeight>,
    derived_out: BTreeSet<AffineWeight>,
}

impl State<'_> {
    fn justified(&self, fact: &Fact) -> bool {
        match fact {
            Fact::In(w) => self.support.contains(w) || self.derived_in.contains(w),
            Fact::NotIn(w) => !self.support.contains(w) || self.derived_out.contains(w),
        }
    }
}

/// `w = λ - kδ` for a natural `k`.
fn delta_below(lambda: &AffineWeight, w: &AffineWeight) -> Option<i64> {
    if w.finite != lambda.finite || w.level != lambda.level {
        return None;
    }
    to_i64(&(&lambda.d - &w.d)).filter(|k| *k >= 0)
}

pub fn check_trace(candidate: &SupportCandidate, trace: &ObstructionTrace) -> Result<TraceCheck> {
    let mut failures = Vec::new();
    let mut fail = |step: usize, reason: String| failures.push(CheckFailure { step, reason });
    let support = &candidate.weights;
    let mut state = State {
        support,
        derived_in: BTreeSet::new(),
        derived_out: BTreeSet::new(),
    };
    let neg = match NegativeFactor::from_spec(candidate, trace.negative_factor) {
        Some(f) => f,
        None => {
            fail(0, format!("factor {} is not a negative factor", trace.negative_factor));
            return Ok(TraceCheck { valid: false, failures });
        }
    };
    let min_d = support.iter().map(|w| w.d.clone()).min();
    let mut focus: Option<AffineWeight> = None;
    let mut r: Option<i64> = None;
    let mut p: Option<i64> = None;
    let last = trace.steps.len().saturating_sub(1);

    if trace.steps.is_empty() {
        fail(0, "empty trace".into());
    }
    for (i, step) in trace.steps.iter().enumerate() {
        if step.index != i {
            fail(i, format!("index {} out of sequence", step.index));
        }
        for f in &step.premises {
            if !state.justified(f) {
                fail(i, format!("unjustified premise {f:?}"));
            }
        }
        match &step.conclusion {
            Conclusion::Contradiction => {
                let ok = matches!(step.premises.as_slice(),
                    [Fact::In(a), Fact::NotIn(b)] if a == b);
                if !ok {
                    fail(i, "a contradiction needs premises In(w), NotIn(w)".into());
                }
                if i != last || trace.outcome != Outcome::Contradiction {
                    fail(i, "contradiction must end the trace".into());
                }
            }
            Conclusion::ConsistentAtDepth => {
                if !support.is_empty() {
                    fail(i, "only the empty support is consistent".into());
                }
                if i != last || trace.outcome != Outcome::ConsistentAtDepth {
                    fail(i, "consistency must end the trace".into());
                }
            }
            Conclusion::Facts(facts) => match step.rule {
                Rule::Gap => {
                    let lambda = match step.premises.first() {
                        Some(Fact::In(l)) => l.clone(),
                        _ => {
                            fail(i, "selection needs In(λ) first".into());
                            continue;
                        }
                    };
                    let needed: BTreeSet<Fact> = neg
                        .rs
                        .positive_roots()
                        .iter()
                        .map(|a| Fact::NotIn(&lambda - &neg.embed(a, 0)))
                        .collect();
                    let given: BTreeSet<Fact> = step.premises[1..].iter().cloned().collect();
                    if given != needed {
                        fail(i, "selection premises differ from the positive roots".into());
                    }
                    if facts.as_slice() != [Fact::In(lambda.clone())] {
                        fail(i, "selection must conclude In(λ)".into());
                    }
                    if !lambda.level.is_positive() {
                        fail(i, "level must be positive".into());
                        continue;
                    }
                    r = Some(neg.threshold(&lambda));
                    if trace.r.is_some() && trace.r != r {
                        fail(i, format!("trace records r = {:?}, recomputed {:?}", trace.r, r));
                    }
                    focus = Some(lambda);
                }
                Rule::StringStep => {
                    let (w, root) = match (step.premises.as_slice(), &step.root) {
                        ([Fact::In(w)], Some(root)) => (w, root),
                        _ => {
                            fail(i, "string step needs one In premise and a root".into());
                            continue;
                        }
                    };
                    if root.factor != trace.negative_factor
                        || root.alpha.0.len() != neg.rs.rank()
                        || !neg.rs.is_root(&root.alpha)
                    {
                        fail(i, format!("{root} is not a root of the negative factor"));
                        continue;
                    }
                    if !neg.value(w, &root.alpha, root.n).is_positive() {
                        fail(i, format!("coroot value of {root} at {w} is not positive"));
                    }
                    let to = w - &neg.embed(&root.alpha, root.n);
                    if facts.as_slice() != [Fact::In(to.clone())] {
                        fail(i, "string step must conclude In(λ - γ)".into());
                    }
                    state.derived_in.insert(to);
                }
                Rule::DeltaRay => {
                    let (Some(lambda), Some(r), Some(min_d)) = (&focus, r, &min_d) else {
                        fail(i, "ray step before selection".into());
                        continue;
                    };
                    let reach = floor_i64(&(&lambda.d - min_d));
                    let start = match step.premises.first() {
                        Some(Fact::In(w)) => delta_below(lambda, w),
                        _ => None,
                    };
                    let Some(pp) = start else {
                        fail(i, "ray step needs In(λ - pδ) first".into());
                        continue;
                    };
                    for k in pp + 1..=reach {
                        let f = Fact::NotIn(lambda.shift_delta(&q(-k)));
                        if !step.premises.contains(&f) {
                            fail(i, format!("missing premise {f:?}"));
                        }
                    }
                    for f in facts {
                        match f {
                            Fact::NotIn(w) if delta_below(lambda, w).is_some_and(|k| k >= r) => {
                                state.derived_out.insert(w.clone());
                            }
                            _ => fail(i, format!("{f:?} is not below the threshold")),
                        }
                    }
                    p = Some(pp);
                }
                Rule::BelowRay | Rule::AboveRay => {
                    let (Some(lambda), Some(r), Some(pp)) = (&focus, r, p) else {
                        fail(i, "ray exclusion before p is fixed".into());
                        continue;
                    };
                    if step.premises.as_slice() != [Fact::In(lambda.shift_delta(&q(-pp)))] {
                        fail(i, "exclusion needs In(λ - pδ)".into());
                    }
                    for f in facts {
                        let Fact::NotIn(w) = f else {
                            fail(i, format!("{f:?} is not an exclusion"));
                            continue;
                        };
                        let ok = neg.rs.positive_roots().iter().any(|alpha| {
                            let a = neg.embed(alpha, 0);
                            if step.rule == Rule::BelowRay {
                                delta_below(&(lambda - &a), w).is_some_and(|k| k > pp)
                                    && !neg.finite_value(lambda, alpha).is_positive()
                            } else {
                                delta_below(&(lambda + &a), w).is_some_and(|k| k - pp - 1 > r)
                            }
                        });
                        if !ok {
                            fail(i, format!("{f:?} does not have the excluded shape"));
                        }
                        state.derived_out.insert(w.clone());
                    }
                }
                Rule::Heisenberg => {
                    let (Some(Fact::In(mu)), Some(min_d)) = (step.premises.first(), &min_d) else {
                        fail(i, "Heisenberg step needs In(μ) first".into());
                        continue;
                    };
                    let given: BTreeSet<&Fact> = step.premises[1..].iter().collect();
                    let depth = floor_i64(&(&mu.d - min_d));
                    let mut alphas = vec![FiniteRoot(vec![0; neg.rs.rank()])];
                    alphas.extend(neg.rs.roots().iter().cloned());
                    for n in 1..=depth {
                        for alpha in &alphas {
                            let f = Fact::NotIn(mu + &neg.embed(alpha, -n));
                            if !given.contains(&f) {
                                fail(i, format!("missing lowering premise {f:?}"));
                            }
                        }
                    }
                    for f in facts {
                        match f {
                            Fact::In(w) if delta_below(w, mu).is_some_and(|m| m >= 1) => {
                                state.derived_in.insert(w.clone());
                            }
                            _ => fail(i, format!("{f:?} is not on the ray above μ")),
                        }
                    }
                }
            },
        }
    }
    if let Some(step) = trace.steps.last() {
        let verdict = matches!(
            step.conclusion,
            Conclusion::Contradiction | Conclusion::ConsistentAtDepth
        );
        if !verdict {
            fail(step.index, "trace does not end in a verdict".into());
        }
    }
    Ok(TraceCheck {
        valid: failures.is_empty(),
        failures,
    })
}
