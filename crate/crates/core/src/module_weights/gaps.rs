//! Gap searches above and below a weight of a finite support.
//!
//! An upward gap at `λ` is some `η₀ >₀ 0` such that no weight of the support
//! has finite part `λ̄ + η₀ + η` with `0 ≠ η ≥₀ 0`, whatever its δ-coefficient.
//! The downward gap is the mirror image. Candidates are tried by height, and
//! within one height by descending coordinates, so `α₁` comes before `α₂`.
//!
//! The search window is bounded by how far the support reaches from `λ̄` in
//! the relevant direction: with reach `h`, candidates of height up to
//! `max(1, h - 1)` are tried, so that a reported gap always has the support's
//! weights on both sides of it. A support filling the whole cone up to its
//! reach has no gap in the window.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::affine_weights::AffineWeight;
use crate::error::{Error, Result};
use crate::rational::{floor_i64, frac, is_natural, q, Q};
use crate::root_core::{FiniteWeight, RootSystem};

use super::WeightSupport;

/// Which lattice the shifts `η₀` and `η` range over.
///
/// With `Root`, the order `≥₀` is the usual one (natural coefficients on the
/// simple roots). With `Weight`, shifts range over the weight lattice and
/// `≥₀` is read as non-negative rational coefficients; with natural
/// coefficients the two readings would coincide.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum GapLattice {
    #[default]
    Root,
    Weight,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapWitness {
    /// Simple-root coordinates of `η₀`.
    #[serde(with = "crate::rational::serde_q_vec")]
    pub root_coords: Vec<Q>,
    /// `η₀` as Dynkin labels.
    pub weight: FiniteWeight,
}

fn in_cone(coords: &[Q], lattice: GapLattice) -> bool {
    match lattice {
        GapLattice::Root => coords.iter().all(is_natural),
        GapLattice::Weight => coords.iter().all(|c| !c.is_negative()),
    }
}

fn scaled(coords: &[Q], c: i64) -> Vec<Q> {
    coords.iter().map(|x| x * q(c)).collect()
}

/// All coordinate vectors with entries in `step·ℕ` summing to `height·step`,
/// in descending lexicographic order.
fn compositions(parts: usize, total: i64) -> Vec<Vec<i64>> {
    fn rec(parts: usize, total: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if parts == 1 {
            prefix.push(total);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=total).rev() {
            prefix.push(k);
            rec(parts - 1, total - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(parts, total, &mut Vec::new(), &mut out);
    out
}

fn search(
    rs: &RootSystem,
    support: &WeightSupport,
    lambda: &AffineWeight,
    lattice: GapLattice,
    dir: Direction,
) -> Result<Option<GapWitness>> {
    if !support.contains(lambda) {
        return Err(Error::NotInSupport(lambda.to_string()));
    }
    let sign = match dir {
        Direction::Up => 1,
        Direction::Down => -1,
    };
    // oriented differences: sign · (w̄ - λ̄) in simple-root coordinates
    let diffs: Vec<Vec<Q>> = support
        .weights()
        .filter(|w| w.level == lambda.level)
        .map(|w| scaled(&rs.root_coords(&(&w.finite - &lambda.finite)), sign))
        .collect();
    let reach = diffs
        .iter()
        .filter(|d| in_cone(d, lattice))
        .map(|d| d.iter().fold(Q::zero(), |a, b| a + b))
        .max()
        .unwrap_or_else(Q::zero);
    let window = std::cmp::max(q(1), reach - q(1));

    let step: i64 = match lattice {
        GapLattice::Root => 1,
        GapLattice::Weight => rs.cartan_determinant(),
    };
    let max_units = floor_i64(&(window * q(step)));
    let n = rs.rank();
    for units in 1..=max_units {
        for comp in compositions(n, units) {
            let eta0: Vec<Q> = comp.iter().map(|&c| frac(c, step)).collect();
            let weight = FiniteWeight(
                (0..n)
                    .map(|j| (0..n).fold(Q::zero(), |acc, i| acc + &eta0[i] * q(rs.cartan()[i][j])))
                    .collect(),
            );
            if !weight.is_integral() {
                continue;
            }
            let blocked = diffs.iter().any(|d| {
                let rest: Vec<Q> = d.iter().zip(&eta0).map(|(a, b)| a - b).collect();
                !rest.iter().all(Zero::is_zero) && in_cone(&rest, lattice)
            });
            if !blocked {
                return Ok(Some(GapWitness {
                    root_coords: scaled(&eta0, sign),
                    weight: weight.scale(&q(sign)),
                }));
            }
        }
    }
    Ok(None)
}

pub fn find_gap_up(
    rs: &RootSystem,
    support: &WeightSupport,
    lambda: &AffineWeight,
    lattice: GapLattice,
) -> Result<Option<GapWitness>> {
    search(rs, support, lambda, lattice, Direction::Up)
}

pub fn find_gap_down(
    rs: &RootSystem,
    support: &WeightSupport,
    lambda: &AffineWeight,
    lattice: GapLattice,
) -> Result<Option<GapWitness>> {
    search(rs, support, lambda, lattice, Direction::Down)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module_weights::enumerate_weights;
    use crate::root_core::{FiniteRoot, FormSign, SimpleType};

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse::<SimpleType>().unwrap(), FormSign::Positive).unwrap()
    }

    fn single(w: &AffineWeight) -> WeightSupport {
        let mut s = WeightSupport::new(0);
        s.insert(w.clone(), 1).unwrap();
        s
    }

    #[test]
    fn lone_weight_has_simple_root_gaps() {
        let a2 = rs("A2");
        let l = AffineWeight::lambda0(2);
        let s = single(&l);
        let up = find_gap_up(&a2, &s, &l, GapLattice::Root).unwrap().unwrap();
        assert_eq!(up.root_coords, vec![q(1), q(0)]);
        let down = find_gap_down(&a2, &s, &l, GapLattice::Root).unwrap().unwrap();
        assert_eq!(down.root_coords, vec![q(-1), q(0)]);
    }

    #[test]
    fn basic_module_gaps() {
        let a1 = rs("A1");
        let l0 = AffineWeight::lambda0(1);
        let s = enumerate_weights(&a1, &l0, 3).unwrap();
        let up = find_gap_up(&a1, &s, &l0, GapLattice::Root).unwrap().unwrap();
        assert_eq!(up.root_coords, vec![q(1)]);

        let s2 = enumerate_weights(&a1, &l0, 2).unwrap();
        let bottom = l0.shift_delta(&q(-2));
        assert!(s2.contains(&bottom));
        assert!(find_gap_down(&a1, &s2, &bottom, GapLattice::Root).unwrap().is_some());
    }

    #[test]
    fn full_cone_has_no_gap() {
        let a2 = rs("A2");
        let l = AffineWeight::lambda0(2);
        for (dir, sign) in [(Direction::Up, 1), (Direction::Down, -1)] {
            let mut s = WeightSupport::new(0);
            for h in 0..=4 {
                for c in compositions(2, h) {
                    let eta = a2.root_as_weight(&FiniteRoot(c.iter().map(|x| x * sign).collect()));
                    s.insert(&l + &AffineWeight::from_finite(eta), 1).unwrap();
                }
            }
            assert_eq!(search(&a2, &s, &l, GapLattice::Root, dir).unwrap(), None);
        }
    }

    #[test]
    fn lattice_variants() {
        let a2 = rs("A2");
        let l = AffineWeight::lambda0(2);
        let mut s = single(&l);
        let two_alpha1 = AffineWeight::from_finite(FiniteWeight::from_ints(&[4, -2]));
        s.insert(&l + &two_alpha1, 1).unwrap();
        let root = find_gap_up(&a2, &s, &l, GapLattice::Root).unwrap().unwrap();
        assert_eq!(root.root_coords, vec![q(0), q(1)]);
        // ω₁ = (2α₁ + α₂)/3 is the first unblocked weight-lattice shift
        let weight = find_gap_up(&a2, &s, &l, GapLattice::Weight).unwrap().unwrap();
        assert_eq!(weight.root_coords, vec![frac(2, 3), frac(1, 3)]);
        assert_eq!(weight.weight, FiniteWeight::from_ints(&[1, 0]));
    }

    #[test]
    fn missing_lambda_is_an_error() {
        let a1 = rs("A1");
        let s = WeightSupport::new(0);
        assert!(find_gap_up(&a1, &s, &AffineWeight::lambda0(1), GapLattice::Root).is_err());
    }
}
