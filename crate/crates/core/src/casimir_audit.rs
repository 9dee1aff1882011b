//! Casimir bookkeeping on affine weights.
//!
//! The invariant form on `ĥ*` is held as an explicit Gram matrix over the
//! basis `ω₁..ωₙ, δ, Λ₀`. Roots are paired with weights through this form
//! only; the identification of `ĥ` with `ĥ*` never appears as a map.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::affine_weights::{affine_leq, is_dominant, simple_affine_roots, simple_root_expansion, AffineWeight};
use crate::error::{Error, Result};
use crate::module_weights::WeightSupport;
use crate::rational::{format_q, q, to_i64, Matrix, Q};
use crate::root_core::{FormSign, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineGram {
    rank: usize,
    matrix: Matrix,
}

impl AffineGram {
    pub fn new(rs: &RootSystem) -> Self {
        let n = rs.rank();
        let wg = rs.weight_gram();
        let matrix = Matrix::from_fn(n + 2, |i, j| match (i, j) {
            (i, j) if i < n && j < n => wg.get(i, j).clone(),
            (i, j) if (i == n && j == n + 1) || (i == n + 1 && j == n) => q(1),
            _ => Q::zero(),
        });
        AffineGram { rank: n, matrix }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    fn coords(&self, w: &AffineWeight) -> Vec<Q> {
        debug_assert_eq!(w.rank(), self.rank);
        let mut v = w.finite.0.clone();
        v.push(w.d.clone());
        v.push(w.level.clone());
        v
    }

    pub fn pairing(&self, a: &AffineWeight, b: &AffineWeight) -> Q {
        self.matrix.bilinear(&self.coords(a), &self.coords(b))
    }

    pub fn norm(&self, a: &AffineWeight) -> Q {
        self.pairing(a, a)
    }
}

/// `ρ` with `ρ(αᵢ∨) = 1` for `i = 0..=n` and `ρ(d) = 0`. Its level is the
/// dual Coxeter number.
pub fn rho(rs: &RootSystem) -> Result<AffineWeight> {
    if rs.form_sign() != FormSign::Positive {
        return Err(Error::NegativeForm);
    }
    let rho_bar = rs.rho();
    let beta_cor = rs.coroot(rs.highest_root())?;
    let level = q(1) + beta_cor.eval(&rho_bar);
    Ok(AffineWeight::compose(rho_bar, Q::zero(), level))
}

/// An element `Σ cᵢ αᵢ` of the affine root lattice, coefficients over
/// `α₀, α₁, …, αₙ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RootCombination(pub Vec<i64>);

impl RootCombination {
    pub fn new(rs: &RootSystem, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != rs.rank() + 1 {
            return Err(Error::RankMismatch {
                expected: rs.rank() + 1,
                got: coeffs.len(),
            });
        }
        Ok(RootCombination(coeffs))
    }

    /// Inverse of [`RootCombination::to_weight`], for level-zero elements of
    /// the affine root lattice.
    pub fn from_weight(rs: &RootSystem, w: &AffineWeight) -> Option<Self> {
        let coeffs = simple_root_expansion(rs, w)?;
        coeffs
            .iter()
            .map(to_i64)
            .collect::<Option<Vec<_>>>()
            .map(RootCombination)
    }

    pub fn to_weight(&self, rs: &RootSystem) -> AffineWeight {
        simple_affine_roots(rs)
            .iter()
            .zip(&self.0)
            .fold(AffineWeight::zero(rs.rank()), |acc, (a, &c)| &acc + &a.scale(&q(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

/// `2⟨λ+ρ, β⟩ - (β,β)` for `β ∈ Q⁺ \ {0}`: the drop `|λ+ρ|² - |λ-β+ρ|²`.
pub fn casimir_gap(rs: &RootSystem, gram: &AffineGram, lambda: &AffineWeight, beta: &RootCombination) -> Result<Q> {
    if beta.is_zero() || !beta.is_nonnegative() {
        return Err(Error::Precondition(format!(
            "{:?} is not a non-zero element of the positive root cone",
            beta.0
        )));
    }
    casimir_shift(rs, gram, lambda, beta, &Q::zero())
}

/// `a + 2⟨λ+ρ, β⟩ - (β,β)`: the Casimir eigenvalue predicted on a vector of
/// weight `λ - β` below a vector of weight `λ` with eigenvalue `a`.
pub fn casimir_shift(
    rs: &RootSystem,
    gram: &AffineGram,
    lambda: &AffineWeight,
    beta: &RootCombination,
    a: &Q,
) -> Result<Q> {
    let shifted = lambda + &rho(rs)?;
    let b = beta.to_weight(rs);
    Ok(a + q(2) * gram.pairing(&shifted, &b) - gram.norm(&b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRow {
    pub lambda: AffineWeight,
    pub mu: AffineWeight,
    pub beta: RootCombination,
    #[serde(with = "crate::rational::serde_q")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairAudit {
    pub rows: Vec<PairRow>,
    /// Every value is non-zero.
    pub holds: bool,
}

/// For every pair `μ < λ` of dominant weights in the support, the value of
/// [`casimir_gap`] at `(λ, λ - μ)`.
pub fn primitive_pair_audit(rs: &RootSystem, support: &WeightSupport, highest: &AffineWeight) -> Result<PairAudit> {
    if !highest.level.is_positive() {
        return Err(Error::NonPositiveLevel(format_q(&highest.level)));
    }
    if let Some(level) = support.level() {
        if *level != highest.level {
            return Err(Error::Precondition(format!(
                "support level {} differs from the level of {highest}",
                format_q(level)
            )));
        }
    }
    let gram = AffineGram::new(rs);
    let mut dominant = Vec::new();
    for w in support.weights() {
        if is_dominant(rs, w)? {
            dominant.push(w.clone());
        }
    }
    // highest first, so that rows read top-down
    dominant.reverse();
    let rows: Vec<PairRow> = dominant
        .par_iter()
        .map(|lambda| -> Result<Vec<PairRow>> {
            let mut out = Vec::new();
            for mu in &dominant {
                if mu == lambda || !affine_leq(rs, mu, lambda) {
                    continue;
                }
                let beta = RootCombination::from_weight(rs, &(lambda - mu)).expect("λ - μ ∈ Q⁺");
                let value = casimir_gap(rs, &gram, lambda, &beta)?;
                out.push(PairRow {
                    lambda: lambda.clone(),
                    mu: mu.clone(),
                    beta,
                    value,
                });
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(PairAudit {
        holds: rows.iter().all(|r| !r.value.is_zero()),
        rows,
    })
}
