//! Affine Lie superalgebras whose even part has two simple components.

pub mod candidates;
pub mod catalog;
pub mod checker;
pub mod engine;

pub use candidates::{integrable_support_rules, random_closed_candidate, string_closure, Violation};
pub use catalog::{catalog, normalize_form, ComponentRoot, EvenComponent, Family, SuperAlgebraSpec, SuperRootData};
pub use checker::{check_trace, CheckFailure, TraceCheck};
pub use engine::{
    nonpositive_root_count, nonpositive_root_set, ray_threshold, run_obstruction, string_step, Conclusion,
    EngineConfig, Fact, ObstructionTrace, Outcome, Rule, Step, SupportCandidate,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weights::AffineWeight;
    use crate::error::Error;
    use crate::rational::q;
    use crate::root_core::FiniteRoot;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn data(s: &str) -> SuperRootData {
        normalize_form(&catalog(s).unwrap()).unwrap()
    }

    fn candidate(s: &str, level: i64, depth: u32, weights: &[AffineWeight]) -> SupportCandidate {
        SupportCandidate {
            spec: catalog(s).unwrap(),
            level,
            depth,
            weights: weights.iter().cloned().collect(),
        }
    }

    #[test]
    fn string_step_examples() {
        let d = data("B(1,1)");
        let w = d.weight(&[2, 0], 0, 1).unwrap();
        let alpha = |factor, n| ComponentRoot {
            factor,
            alpha: FiniteRoot(vec![1]),
            n,
        };
        assert_eq!(
            string_step(&d, &w, &alpha(0, 0)).unwrap(),
            Some(d.weight(&[0, 0], 0, 1).unwrap())
        );
        let flat = d.weight(&[0, 0], 0, 1).unwrap();
        assert_eq!(string_step(&d, &flat, &alpha(0, 0)).unwrap(), None);
        // negative factor: the value grows as the root goes deeper
        let v = d.weight(&[0, -3], 0, 1).unwrap();
        assert_eq!(string_step(&d, &v, &alpha(1, -3)).unwrap(), None);
        assert_eq!(
            string_step(&d, &v, &alpha(1, -4)).unwrap(),
            Some(d.weight(&[0, -5], 4, 1).unwrap())
        );
        assert!(string_step(
            &d,
            &v,
            &ComponentRoot {
                factor: 1,
                alpha: FiniteRoot(vec![3]),
                n: 0
            }
        )
        .is_err());
    }

    #[test]
    fn nonpositive_root_examples() {
        let d = data("B(1,1)");
        let w = d.weight(&[0, -3], 0, 1).unwrap();
        let set = nonpositive_root_set(&d, &w, false).unwrap();
        let depths: Vec<i64> = set.iter().map(|g| g.n).collect();
        assert_eq!(depths, vec![-1, -2, -3]);
        assert!(set.iter().all(|g| g.alpha == FiniteRoot(vec![1])));
        assert_eq!(ray_threshold(&set), 4);
        assert_eq!(nonpositive_root_count(&d, &w).unwrap(), 3);

        // λ(α∨) = 1: only -α - δ has a non-positive value among the deeper roots
        let pos = d.weight(&[0, 1], 0, 1).unwrap();
        let neg_root = |n| ComponentRoot {
            factor: 1,
            alpha: FiniteRoot(vec![-1]),
            n,
        };
        assert_eq!(nonpositive_root_set(&d, &pos, false).unwrap(), vec![neg_root(-1)]);
        assert_eq!(
            nonpositive_root_set(&d, &pos, true).unwrap(),
            vec![neg_root(0), neg_root(-1)]
        );
        assert_eq!(nonpositive_root_count(&d, &pos).unwrap(), 1);

        for k in [10, 100] {
            let w = d.weight(&[0, -k], 0, 1).unwrap();
            assert_eq!(nonpositive_root_set(&d, &w, false).unwrap().len(), k as usize);
        }
        let zero_level = d.weight(&[0, 0], 0, 0).unwrap();
        assert!(matches!(
            nonpositive_root_set(&d, &zero_level, false),
            Err(Error::NonPositiveLevel(_))
        ));
        let c2 = data("C(2)");
        assert!(matches!(
            nonpositive_root_set(&c2, &c2.weight(&[0, 0], 0, 1).unwrap(), false),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn empty_and_level_zero() {
        let trace = run_obstruction(&candidate("B(1,1)", 1, 2, &[]), &EngineConfig::default()).unwrap();
        assert_eq!(trace.outcome, Outcome::ConsistentAtDepth);
        let d = data("B(1,1)");
        let zero = d.weight(&[0, 0], 0, 0).unwrap();
        assert!(matches!(
            run_obstruction(&candidate("B(1,1)", 0, 2, &[zero]), &EngineConfig::default()),
            Err(Error::NonPositiveLevel(_))
        ));
        assert!(matches!(
            run_obstruction(&candidate("C(3)", 1, 2, &[]), &EngineConfig::default()),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn ray_violation_is_pinpointed() {
        let d = data("B(1,1)");
        let l = d.weight(&[0, 0], 0, 1).unwrap();
        let c = candidate("B(1,1)", 1, 2, &[l.clone(), l.shift_delta(&q(-1))]);
        let trace = run_obstruction(&c, &EngineConfig::default()).unwrap();
        assert_eq!(trace.focus, Some(l));
        assert_eq!(trace.r, Some(1));
        assert_eq!(trace.contradiction_rule(), Some(Rule::DeltaRay));
        assert!(check_trace(&c, &trace).unwrap().valid);
    }

    #[test]
    fn unclosed_focus_is_refuted_by_a_string_step() {
        let d = data("B(1,1)");
        let c = candidate("B(1,1)", 1, 0, &[d.weight(&[0, 2], 0, 1).unwrap()]);
        let trace = run_obstruction(&c, &EngineConfig::default()).unwrap();
        assert_eq!(trace.contradiction_rule(), Some(Rule::StringStep));
        assert!(check_trace(&c, &trace).unwrap().valid);
    }

    #[test]
    fn closed_candidates_end_in_heisenberg() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in ["B(1,1)", "D(2,1;1/2)", "A(1,1)"] {
            let c = random_closed_candidate(&catalog(s).unwrap(), 1, 2, &mut rng).unwrap();
            assert!(integrable_support_rules(&c).unwrap().is_empty(), "{s}");
            let trace = run_obstruction(&c, &EngineConfig::default()).unwrap();
            assert_eq!(trace.contradiction_rule(), Some(Rule::Heisenberg), "{s}");
            let check = check_trace(&c, &trace).unwrap();
            assert!(check.valid, "{s}: {:?}", check.failures);
        }
    }

    #[test]
    fn tampered_traces_are_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = random_closed_candidate(&catalog("B(1,1)").unwrap(), 1, 2, &mut rng).unwrap();
        let trace = run_obstruction(&c, &EngineConfig::default()).unwrap();

        let mut bad = trace.clone();
        bad.steps.pop();
        assert!(!check_trace(&c, &bad).unwrap().valid);

        let mut bad = trace.clone();
        let h = bad.steps.iter().position(|s| s.rule == Rule::Heisenberg).unwrap();
        if let Conclusion::Facts(facts) = &mut bad.steps[h].conclusion {
            facts.push(Fact::In(trace.lowest.clone().unwrap().shift_delta(&q(-1))));
        }
        assert!(!check_trace(&c, &bad).unwrap().valid);

        let mut bad = trace.clone();
        bad.r = Some(trace.r.unwrap() + 1);
        assert!(!check_trace(&c, &bad).unwrap().valid);

        // a support the trace was not built for
        let mut other = c.clone();
        let extra: BTreeSet<AffineWeight> = [trace.lowest.clone().unwrap().shift_delta(&q(-1))].into();
        other.weights.extend(extra);
        assert!(!check_trace(&other, &trace).unwrap().valid);
    }

    #[test]
    fn support_rule_examples() {
        let d = data("B(1,1)");
        assert!(integrable_support_rules(&candidate("B(1,1)", 1, 3, &[]))
            .unwrap()
            .is_empty());
        let w = d.weight(&[1, 0], 0, 1).unwrap();
        let violations = integrable_support_rules(&candidate("B(1,1)", 1, 0, std::slice::from_ref(&w))).unwrap();
        assert_eq!(
            violations,
            vec![Violation::MissingStringWeight {
                weight: w,
                root: ComponentRoot {
                    factor: 0,
                    alpha: FiniteRoot(vec![1]),
                    n: 0
                },
                missing: d.weight(&[-1, 0], 0, 1).unwrap(),
            }]
        );
        let a = d.weight(&[0, 0], 0, 1).unwrap();
        let b = a.shift_delta(&q(3));
        let v = integrable_support_rules(&candidate("B(1,1)", 1, 2, &[a, b])).unwrap();
        assert!(v.iter().any(|x| matches!(x, Violation::LadderTooLong { .. })));
    }

    #[test]
    fn trace_json_uses_rule_ids() {
        let d = data("B(1,1)");
        let c = candidate("B(1,1)", 1, 0, &[d.weight(&[0, 2], 0, 1).unwrap()]);
        let trace = run_obstruction(&c, &EngineConfig::default()).unwrap();
        let text = serde_json::to_string(&trace).unwrap();
        assert!(text.contains("\"gap1.7\"") && text.contains("\"lemma2.5\""));
        let back: ObstructionTrace = serde_json::from_str(&text).unwrap();
        assert_eq!(back, trace);
    }
}
