//! Integrability rules for finite supports and random closed candidates.
//!
//! A support of depth `D` is read inside the window of δ-coefficients
//! `[top - D, top]`, `top` being the largest δ-coefficient present. Two rules
//! apply there:
//!
//! * string closure: whenever `w((α+nδ)∨) = v > 0` for a real root of any
//!   factor with `|n| ≤ D`, the weights `w - j(α+nδ)`, `1 ≤ j ≤ v`, that
//!   fall in the window are present, and every such `v` is an integer;
//! * ladder termination: no two weights differ by `mδ` with `m > D`.

use std::collections::BTreeSet;

use num_traits::Signed;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::affine_weights::AffineWeight;
use crate::error::{Error, Result};
use crate::rational::{floor_i64, is_integer, q, Q};

use super::catalog::{ComponentRoot, SuperAlgebraSpec, SuperRootData};
use super::engine::SupportCandidate;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Violation {
    MissingStringWeight {
        weight: AffineWeight,
        root: ComponentRoot,
        missing: AffineWeight,
    },
    NonIntegralString {
        weight: AffineWeight,
        root: ComponentRoot,
    },
    LadderTooLong {
        weight: AffineWeight,
        top: AffineWeight,
    },
}

/// The weights each member of `S` forces into the window, with the root
/// responsible.
fn string_conclusions(
    data: &SuperRootData,
    w: &AffineWeight,
    depth: i64,
    mut visit: impl FnMut(ComponentRoot, Option<AffineWeight>),
) -> Result<()> {
    for (factor, f) in data.factors().iter().enumerate() {
        for alpha in f.rs.roots() {
            for n in -depth..=depth {
                let root = ComponentRoot {
                    factor,
                    alpha: alpha.clone(),
                    n,
                };
                let v = data.coroot_value(w, &root)?;
                if !v.is_positive() {
                    continue;
                }
                if !is_integer(&v) {
                    visit(root, None);
                    continue;
                }
                let step = data.root_weight(&root);
                let mut cur = w.clone();
                for _ in 0..floor_i64(&v) {
                    cur = &cur - &step;
                    visit(root.clone(), Some(cur.clone()));
                }
            }
        }
    }
    Ok(())
}

fn in_window(w: &AffineWeight, top: &Q, depth: i64) -> bool {
    w.d <= *top && w.d >= top - q(depth)
}

pub fn integrable_support_rules(candidate: &SupportCandidate) -> Result<Vec<Violation>> {
    let data = SuperRootData::new(&candidate.spec)?;
    candidate.validate(&data)?;
    let s = &candidate.weights;
    let Some(top) = candidate.max_d().cloned() else {
        return Ok(Vec::new());
    };
    let depth = candidate.depth as i64;
    let mut out = BTreeSet::new();
    for w in s {
        string_conclusions(&data, w, depth, |root, concl| match concl {
            None => {
                out.insert(Violation::NonIntegralString {
                    weight: w.clone(),
                    root,
                });
            }
            Some(u) => {
                if in_window(&u, &top, depth) && !s.contains(&u) {
                    out.insert(Violation::MissingStringWeight {
                        weight: w.clone(),
                        root,
                        missing: u,
                    });
                }
            }
        })?;
    }
    for w in s {
        for other in s {
            if other.finite == w.finite && &other.d - &w.d > q(depth) {
                out.insert(Violation::LadderTooLong {
                    weight: w.clone(),
                    top: other.clone(),
                });
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Adds every forced weight of the window `[-depth, 0]` until nothing new
/// appears. Gives up once the set exceeds `cap` weights.
pub fn string_closure(
    data: &SuperRootData,
    seeds: &[AffineWeight],
    depth: u32,
    cap: usize,
) -> Result<Option<BTreeSet<AffineWeight>>> {
    let d = depth as i64;
    let top = q(0);
    let mut set: BTreeSet<AffineWeight> = seeds.iter().cloned().collect();
    let mut todo: Vec<AffineWeight> = set.iter().cloned().collect();
    while let Some(w) = todo.pop() {
        let mut found = Vec::new();
        let mut integral = true;
        string_conclusions(data, &w, d, |_, concl| match concl {
            Some(u) if in_window(&u, &top, d) => found.push(u),
            Some(_) => {}
            None => integral = false,
        })?;
        if !integral {
            return Err(Error::NonIntegralWeight);
        }
        for u in found {
            if set.insert(u.clone()) {
                todo.push(u);
                if set.len() > cap {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(set))
}

/// A random non-empty support of the given level and depth that satisfies
/// [`integrable_support_rules`]: the string closure of one to three random
/// integral weights placed at δ-coefficient 0.
pub fn random_closed_candidate<R: Rng>(
    spec: &SuperAlgebraSpec,
    level: i64,
    depth: u32,
    rng: &mut R,
) -> Result<SupportCandidate> {
    if level <= 0 {
        return Err(Error::NonPositiveLevel(level.to_string()));
    }
    let data = SuperRootData::new(spec)?;
    loop {
        let count = rng.gen_range(1..=3);
        let seeds: Vec<AffineWeight> = (0..count)
            .map(|_| {
                let labels: Vec<i64> = (0..data.rank()).map(|_| rng.gen_range(-3..=3)).collect();
                data.weight(&labels, 0, level)
            })
            .collect::<Result<_>>()?;
        if let Some(weights) = string_closure(&data, &seeds, depth, 50_000)? {
            return Ok(SupportCandidate {
                spec: spec.clone(),
                level,
                depth,
                weights,
            });
        }
    }
}
