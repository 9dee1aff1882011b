//! Weight multiplicities of `V(λ)` from Freudenthal's recursion
//!
//! `(|λ+ρ|² - |μ+ρ|²) m(μ) = 2 Σ_{α>0} Σ_{j≥1} mult(α) (μ+jα | α) m(μ+jα)`
//!
//! summed over positive real roots `α + nδ` and imaginary roots `nδ`
//! (multiplicity = rank). Multiplicities are Weyl invariant, so every query
//! is moved to its affine dominant conjugate and only dominant weights are
//! memoized. Points outside `λ - Q⁺` have multiplicity zero. The recursion
//! never consults the membership test; when the left coefficient vanishes for
//! `μ ≠ λ`, `μ` cannot be a weight and the multiplicity is zero.

use std::collections::HashMap;
use std::rc::Rc;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::affine_weights::{affine_dominant_conjugate, affine_inner, affine_leq, AffineWeight};
use crate::rational::{q, to_i64, Q};
use crate::root_core::{FiniteWeight, RootSystem};

pub struct FreudenthalTable<'a> {
    rs: &'a RootSystem,
    highest: AffineWeight,
    rho: AffineWeight,
    top_norm: Q,
    roots: Rc<Vec<(AffineWeight, i64)>>,
    roots_depth: i64,
    memo: HashMap<AffineWeight, u64>,
}

impl<'a> FreudenthalTable<'a> {
    pub fn new(rs: &'a RootSystem, highest: AffineWeight) -> Self {
        let beta_cor = rs.coroot(rs.highest_root()).expect("highest root");
        let rho_bar = rs.rho();
        let dual_coxeter = q(1) + beta_cor.eval(&rho_bar);
        let rho = AffineWeight::compose(rho_bar, Q::zero(), dual_coxeter);
        let shifted = &highest + &rho;
        let top_norm = affine_inner(rs, &shifted, &shifted);
        FreudenthalTable {
            rs,
            highest,
            rho,
            top_norm,
            roots: Rc::new(Vec::new()),
            roots_depth: -1,
            memo: HashMap::new(),
        }
    }

    pub fn highest(&self) -> &AffineWeight {
        &self.highest
    }

    /// Positive roots `α + nδ` (real) and `nδ` (imaginary) with `n ≤ depth`,
    /// paired with their multiplicities.
    fn roots_up_to(&mut self, depth: i64) -> Rc<Vec<(AffineWeight, i64)>> {
        if depth > self.roots_depth {
            let rs = self.rs;
            let rank = rs.rank();
            let mut out = Vec::new();
            for a in rs.positive_roots() {
                out.push((AffineWeight::from_finite(rs.root_as_weight(a)), 1));
            }
            for n in 1..=depth {
                for a in rs.roots() {
                    out.push((AffineWeight::compose(rs.root_as_weight(a), q(n), Q::zero()), 1));
                }
                out.push((
                    AffineWeight::compose(FiniteWeight::zero(rank), q(n), Q::zero()),
                    rank as i64,
                ));
            }
            self.roots = Rc::new(out);
            self.roots_depth = depth;
        }
        Rc::clone(&self.roots)
    }

    pub fn multiplicity(&mut self, mu: &AffineWeight) -> u64 {
        if !affine_leq(self.rs, mu, &self.highest) {
            return 0;
        }
        let plus = affine_dominant_conjugate(self.rs, mu).expect("positive level");
        if let Some(&m) = self.memo.get(&plus) {
            return m;
        }
        let m = self.compute(&plus);
        self.memo.insert(plus, m);
        m
    }

    fn compute(&mut self, mu: &AffineWeight) -> u64 {
        if *mu == self.highest {
            return 1;
        }
        if !affine_leq(self.rs, mu, &self.highest) {
            return 0;
        }
        let shifted = mu + &self.rho;
        let coefficient = &self.top_norm - affine_inner(self.rs, &shifted, &shifted);
        if !coefficient.is_positive() {
            return 0;
        }
        let depth = to_i64(&(&self.highest.d - &mu.d)).expect("integral depth inside [μ, λ]");
        let roots = self.roots_up_to(depth);
        let mut sum = Q::zero();
        for (alpha, alpha_mult) in roots.iter() {
            let mut nu = mu + alpha;
            while affine_leq(self.rs, &nu, &self.highest) {
                let m = self.multiplicity(&nu);
                if m > 0 {
                    sum += affine_inner(self.rs, &nu, alpha) * q(*alpha_mult) * q(m as i64);
                }
                nu = &nu + alpha;
            }
        }
        let value = q(2) * sum / coefficient;
        assert!(
            value.is_integer() && !value.is_negative(),
            "recursion produced {value} at {mu}"
        );
        value.to_integer().to_u64().expect("multiplicity fits in u64")
    }
}

pub fn freudenthal_mult(rs: &RootSystem, lambda: &AffineWeight, mu: &AffineWeight) -> u64 {
    FreudenthalTable::new(rs, lambda.clone()).multiplicity(mu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_core::{FormSign, SimpleType};

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse::<SimpleType>().unwrap(), FormSign::Positive).unwrap()
    }

    fn partitions(n: usize, colors: usize) -> u64 {
        // number of `colors`-colored partitions of n
        let mut p = vec![0u64; n + 1];
        p[0] = 1;
        for _ in 0..colors {
            for part in 1..=n {
                for k in part..=n {
                    p[k] += p[k - part];
                }
            }
        }
        p[n]
    }

    #[test]
    fn basic_module_string_functions() {
        // On V(Λ0), m(Λ0 - kδ) is the number of rank-coloured partitions of k.
        for (t, rank) in [("A1", 1usize), ("A2", 2)] {
            let r = rs(t);
            let l0 = AffineWeight::lambda0(rank);
            let mut table = FreudenthalTable::new(&r, l0.clone());
            for k in 0..=3 {
                let mu = l0.shift_delta(&q(-k));
                assert_eq!(table.multiplicity(&mu), partitions(k as usize, rank), "{t} k={k}");
            }
        }
    }

    #[test]
    fn trivial_cases() {
        let r = rs("A1");
        let l0 = AffineWeight::lambda0(1);
        assert_eq!(freudenthal_mult(&r, &l0, &l0), 1);
        assert_eq!(freudenthal_mult(&r, &l0, &l0.shift_delta(&q(1))), 0);
        // Λ0 - α1 is not a weight of the basic module.
        let mu = &l0 - &AffineWeight::from_finite(FiniteWeight::from_ints(&[2]));
        assert_eq!(freudenthal_mult(&r, &l0, &mu), 0);
        // Λ0 + α1 - δ is.
        let mu = &(&l0 + &AffineWeight::from_finite(FiniteWeight::from_ints(&[2]))).shift_delta(&q(-1));
        assert_eq!(freudenthal_mult(&r, &l0, mu), 1);
    }
}
