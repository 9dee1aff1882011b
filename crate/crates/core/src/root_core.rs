//! Finite simple root systems.
//!
//! Simple roots are numbered as in Bourbaki:
//!
//! | type | diagram                                       | long / short            |
//! |------|-----------------------------------------------|-------------------------|
//! | A_n  | 1 - 2 - ... - n                               | all equal               |
//! | B_n  | 1 - ... - (n-1) => n                          | α_n short               |
//! | C_n  | 1 - ... - (n-1) <= n                          | α_n long                |
//! | D_n  | 1 - ... - (n-2) branching to (n-1) and n      | all equal               |
//! | E_n  | 1 - 3 - 4 - 5 - ... - n, with 2 attached to 4 | all equal               |
//! | F_4  | 1 - 2 => 3 - 4                                | α_1, α_2 long           |
//! | G_2  | 1 <= 2                                        | α_1 short, α_2 long     |
//!
//! Weights are stored as Dynkin labels (coordinates in the fundamental weight
//! basis), roots as integer coordinates in the simple-root basis. The Cartan
//! matrix follows `cartan[i][j] = 2(α_i, α_j) / (α_j, α_j)`, so the labels of
//! `α_i` form row `i`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{format_q, frac, is_integer, is_natural, q, Matrix, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }
}

/// A Cartan type such as `A2` or `E8`.
///
/// `SimpleType::new` only admits genuinely simple types in their usual ranges.
/// Even parts of superalgebras also need `B1`, `C1` (both isomorphic to `A1`)
/// and the non-simple `D2 = A1 + A1`; those go through [`SimpleType::component`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimpleType {
    pub series: Series,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        let reason = match series {
            Series::A if rank < 1 => Some("A needs rank >= 1"),
            Series::B if rank < 2 => Some("B needs rank >= 2"),
            Series::C if rank < 2 => Some("C needs rank >= 2"),
            Series::D if rank < 3 => Some("D needs rank >= 3"),
            Series::E if !(6..=8).contains(&rank) => Some("E needs rank 6, 7 or 8"),
            Series::F if rank != 4 => Some("F only exists in rank 4"),
            Series::G if rank != 2 => Some("G only exists in rank 2"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(Error::InvalidType {
                series: series.letter(),
                rank,
                reason,
            }),
            None => Ok(SimpleType { series, rank }),
        }
    }

    /// Like [`SimpleType::new`] but also accepts `B1`, `C1` and `D2`.
    pub fn component(series: Series, rank: usize) -> Result<Self> {
        match (series, rank) {
            (Series::B, 1) | (Series::C, 1) | (Series::D, 2) => Ok(SimpleType { series, rank }),
            _ => SimpleType::new(series, rank),
        }
    }

    /// The simple factors carrying the actual root data: `B1`, `C1` become
    /// `A1`; `D2` becomes two copies of `A1`.
    pub fn simple_factors(self) -> Vec<SimpleType> {
        let a1 = SimpleType {
            series: Series::A,
            rank: 1,
        };
        match (self.series, self.rank) {
            (Series::B, 1) | (Series::C, 1) => vec![a1],
            (Series::D, 2) => vec![a1, a1],
            _ => vec![self],
        }
    }

    pub fn is_simple(self) -> bool {
        !(self.series == Series::D && self.rank == 2)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |position: usize, message: &str| Error::Parse {
            input: s.to_string(),
            position,
            message: message.to_string(),
        };
        let t = s.trim();
        let offset = s.len() - s.trim_start().len();
        let mut chars = t.chars();
        let first = chars.next().ok_or_else(|| err(offset, "empty type string"))?;
        let series = Series::from_letter(first).ok_or_else(|| err(offset, "expected one of A-G"))?;
        let digits = &t[first.len_utf8()..];
        if digits.is_empty() {
            return Err(err(offset + 1, "expected a rank after the series letter"));
        }
        if let Some(p) = digits.find(|c: char| !c.is_ascii_digit()) {
            return Err(err(offset + 1 + p, "rank must be a decimal integer"));
        }
        let rank: usize = digits.parse().map_err(|_| err(offset + 1, "rank out of range"))?;
        SimpleType::new(series, rank)
    }
}

/// Every simple type of rank at most `max_rank`, in a fixed order.
pub fn all_types_up_to_rank(max_rank: usize) -> Vec<SimpleType> {
    let mut out = Vec::new();
    for series in [
        Series::A,
        Series::B,
        Series::C,
        Series::D,
        Series::E,
        Series::F,
        Series::G,
    ] {
        for rank in 1..=max_rank {
            if let Ok(t) = SimpleType::new(series, rank) {
                out.push(t);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormSign {
    Positive,
    Negative,
}

impl FormSign {
    pub fn value(self) -> i64 {
        match self {
            FormSign::Positive => 1,
            FormSign::Negative => -1,
        }
    }
}

/// Dynkin labels of a weight of the finite algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteWeight(#[serde(with = "crate::rational::serde_q_vec")] pub Vec<Q>);

impl FiniteWeight {
    pub fn zero(rank: usize) -> Self {
        FiniteWeight(vec![Q::zero(); rank])
    }

    pub fn from_ints(labels: &[i64]) -> Self {
        FiniteWeight(labels.iter().map(|&x| q(x)).collect())
    }

    /// The `i`-th fundamental weight (0-based index).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = FiniteWeight::zero(rank);
        w.0[i] = Q::one();
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn labels(&self) -> &[Q] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(is_integer)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        FiniteWeight(self.0.iter().map(|x| x * c).collect())
    }

    /// Sum of the labels.
    pub fn label_height(&self) -> Q {
        self.0.iter().fold(Q::zero(), |a, b| a + b)
    }
}

impl Add for &FiniteWeight {
    type Output = FiniteWeight;
    fn add(self, rhs: &FiniteWeight) -> FiniteWeight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        FiniteWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &FiniteWeight {
    type Output = FiniteWeight;
    fn sub(self, rhs: &FiniteWeight) -> FiniteWeight {
        debug_assert_eq!(self.0.len(), rhs.0.len());
        FiniteWeight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &FiniteWeight {
    type Output = FiniteWeight;
    fn neg(self) -> FiniteWeight {
        FiniteWeight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for FiniteWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_q).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Integer coordinates in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteRoot(pub Vec<i64>);

impl FiniteRoot {
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        FiniteRoot(v)
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn negate(&self) -> Self {
        FiniteRoot(self.0.iter().map(|c| -c).collect())
    }

    pub fn coords_q(&self) -> Vec<Q> {
        self.0.iter().map(|&c| q(c)).collect()
    }
}

impl fmt::Display for FiniteRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match c {
                1 => format!("α{}", i + 1),
                -1 => format!("-α{}", i + 1),
                _ => format!("{}α{}", c, i + 1),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+").replace("+-", "-"))
        }
    }
}

/// A coroot `α∨` seen as the functional `μ ↦ 2(μ, α)/(α, α)` on Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coroot {
    pub coeffs: Vec<Q>,
}

impl Coroot {
    pub fn eval(&self, w: &FiniteWeight) -> Q {
        self.eval_labels(&w.0)
    }

    pub fn eval_labels(&self, labels: &[Q]) -> Q {
        self.coeffs
            .iter()
            .zip(labels)
            .fold(Q::zero(), |acc, (c, l)| acc + c * l)
    }
}

/// Cartan data of one simple type together with the normalized invariant form.
#[derive(Clone, Debug)]
pub struct RootSystem {
    simple_type: SimpleType,
    form_sign: FormSign,
    cartan: Vec<Vec<i64>>,
    gram: Matrix,
    roots: Vec<FiniteRoot>,
    positive: Vec<FiniteRoot>,
    highest: FiniteRoot,
    /// `(C^T)^{-1}`: Dynkin labels to simple-root coordinates.
    to_root_coords: Matrix,
    /// The form on weights in the fundamental basis.
    weight_gram: Matrix,
}

/// Gram matrix of the simple roots with long roots of square length 2.
fn positive_gram(t: SimpleType) -> Matrix {
    let n = t.rank;
    let mut entries: Vec<(usize, usize, Q)> = Vec::new();
    let mut norms = vec![q(2); n];
    let chain = |entries: &mut Vec<(usize, usize, Q)>, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            entries.push((i, i + 1, q(-1)));
        }
    };
    match t.series {
        Series::A => chain(&mut entries, n),
        Series::B => {
            chain(&mut entries, n);
            norms[n - 1] = q(1);
        }
        Series::C => {
            for i in 0..n - 1 {
                norms[i] = q(1);
            }
            for i in 0..n.saturating_sub(2) {
                entries.push((i, i + 1, frac(-1, 2)));
            }
            entries.push((n - 2, n - 1, q(-1)));
        }
        Series::D => {
            chain(&mut entries, n - 1);
            entries.push((n - 3, n - 1, q(-1)));
        }
        Series::E => {
            entries.push((0, 2, q(-1)));
            entries.push((1, 3, q(-1)));
            for i in 2..n - 1 {
                entries.push((i, i + 1, q(-1)));
            }
        }
        Series::F => {
            norms[2] = q(1);
            norms[3] = q(1);
            entries.push((0, 1, q(-1)));
            entries.push((1, 2, q(-1)));
            entries.push((2, 3, frac(-1, 2)));
        }
        Series::G => {
            norms[0] = frac(2, 3);
            entries.push((0, 1, q(-1)));
        }
    }
    let mut data = vec![vec![Q::zero(); n]; n];
    for (i, norm) in norms.into_iter().enumerate() {
        data[i][i] = norm;
    }
    for (i, j, v) in entries {
        data[i][j] = v.clone();
        data[j][i] = v;
    }
    Matrix::from_fn(n, |i, j| data[i][j].clone())
}

impl RootSystem {
    /// Builds the root system of a simple type. `B1` and `C1` are accepted and
    /// realized as `A1`; `D2` is rejected (not simple, use its factors).
    pub fn build(t: SimpleType, form_sign: FormSign) -> Result<Self> {
        if !t.is_simple() {
            return Err(Error::InvalidType {
                series: t.series.letter(),
                rank: t.rank,
                reason: "not simple; build its simple factors instead",
            });
        }
        let data_type = t.simple_factors()[0];
        let n = data_type.rank;
        let sign = q(form_sign.value());
        let pos = positive_gram(data_type);
        let gram = Matrix::from_fn(n, |i, j| pos.get(i, j) * &sign);

        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = q(2) * gram.get(i, j) / gram.get(j, j);
                        debug_assert!(v.is_integer());
                        crate::rational::to_i64(&v).expect("non-integral Cartan entry")
                    })
                    .collect()
            })
            .collect();

        let cartan_t = Matrix::from_fn(n, |i, j| q(cartan[j][i]));
        let to_root_coords = cartan_t.inverse().expect("Cartan matrix is invertible");
        let weight_gram = to_root_coords.transpose().mul(&gram).mul(&to_root_coords);

        let mut rs = RootSystem {
            simple_type: t,
            form_sign,
            cartan,
            gram,
            roots: Vec::new(),
            positive: Vec::new(),
            highest: FiniteRoot(vec![0; n]),
            to_root_coords,
            weight_gram,
        };
        rs.enumerate_roots();
        rs.highest = rs.find_highest_root();
        Ok(rs)
    }

    /// Closure of the simple roots under the simple reflections.
    fn enumerate_roots(&mut self) {
        let n = self.rank();
        let mut seen: BTreeSet<FiniteRoot> = BTreeSet::new();
        let mut queue: VecDeque<FiniteRoot> = (0..n).map(|i| FiniteRoot::simple(n, i)).collect();
        for r in &queue {
            seen.insert(r.clone());
        }
        while let Some(r) = queue.pop_front() {
            for i in 0..n {
                let s = self.reflect_root(i, &r);
                if seen.insert(s.clone()) {
                    queue.push_back(s);
                }
            }
        }
        let mut roots: Vec<FiniteRoot> = seen.into_iter().collect();
        roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
        self.positive = roots.iter().filter(|r| r.is_positive()).cloned().collect();
        self.roots = roots;
    }

    fn find_highest_root(&self) -> FiniteRoot {
        let top = self
            .positive
            .iter()
            .max_by_key(|r| r.height())
            .expect("non-empty root system")
            .clone();
        debug_assert!(self.roots.iter().all(|r| r.0.iter().zip(&top.0).all(|(a, b)| a <= b)));
        top
    }

    pub fn simple_type(&self) -> SimpleType {
        self.simple_type
    }

    pub fn form_sign(&self) -> FormSign {
        self.form_sign
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `(α_i, α_j)`.
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    /// The form on weights given by Dynkin labels.
    pub fn weight_gram(&self) -> &Matrix {
        &self.weight_gram
    }

    pub fn roots(&self) -> &[FiniteRoot] {
        &self.roots
    }

    /// Positive roots sorted by height.
    pub fn positive_roots(&self) -> &[FiniteRoot] {
        &self.positive
    }

    pub fn highest_root(&self) -> &FiniteRoot {
        &self.highest
    }

    pub fn is_root(&self, r: &FiniteRoot) -> bool {
        r.0.len() == self.rank()
            && self
                .roots
                .binary_search_by(|x| x.height().cmp(&r.height()).then_with(|| r.0.cmp(&x.0)))
                .is_ok()
    }

    pub fn cartan_determinant(&self) -> i64 {
        let c = Matrix::from_i64(&self.cartan);
        crate::rational::to_i64(&c.determinant()).expect("integral determinant")
    }

    pub fn simple_root_norm(&self, i: usize) -> &Q {
        self.gram.get(i, i)
    }

    /// `(α, α)` for a vector in simple-root coordinates.
    pub fn root_norm(&self, r: &FiniteRoot) -> Q {
        let c = r.coords_q();
        self.gram.bilinear(&c, &c)
    }

    pub fn root_as_weight(&self, r: &FiniteRoot) -> FiniteWeight {
        let n = self.rank();
        FiniteWeight(
            (0..n)
                .map(|j| q((0..n).map(|i| r.0[i] * self.cartan[i][j]).sum()))
                .collect(),
        )
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn root_coords(&self, w: &FiniteWeight) -> Vec<Q> {
        self.to_root_coords.mul_vec(&w.0)
    }

    /// `Some(root)` when the weight lies in the root lattice.
    pub fn as_root_lattice(&self, w: &FiniteWeight) -> Option<FiniteRoot> {
        let c = self.root_coords(w);
        c.iter()
            .map(crate::rational::to_i64)
            .collect::<Option<Vec<_>>>()
            .map(FiniteRoot)
    }

    pub fn inner(&self, a: &FiniteWeight, b: &FiniteWeight) -> Q {
        self.weight_gram.bilinear(&a.0, &b.0)
    }

    pub fn coroot(&self, alpha: &FiniteRoot) -> Result<Coroot> {
        if !self.is_root(alpha) {
            return Err(Error::NotARoot(alpha.to_string()));
        }
        let norm = self.root_norm(alpha);
        let coeffs = (0..self.rank())
            .map(|i| q(alpha.0[i]) * self.simple_root_norm(i) / &norm)
            .collect();
        Ok(Coroot { coeffs })
    }

    /// `⟨α, α_i∨⟩` for a vector in simple-root coordinates.
    fn pair_root_with_simple_coroot(&self, r: &FiniteRoot, i: usize) -> i64 {
        (0..self.rank()).map(|j| r.0[j] * self.cartan[j][i]).sum()
    }

    pub fn reflect_root(&self, i: usize, r: &FiniteRoot) -> FiniteRoot {
        let p = self.pair_root_with_simple_coroot(r, i);
        let mut out = r.clone();
        out.0[i] -= p;
        out
    }

    /// `s_i(λ) = λ - λ(α_i∨) α_i`.
    pub fn simple_reflection(&self, i: usize, w: &FiniteWeight) -> FiniteWeight {
        let c = &w.0[i];
        FiniteWeight(
            w.0.iter()
                .enumerate()
                .map(|(j, x)| x - c * q(self.cartan[i][j]))
                .collect(),
        )
    }

    pub fn is_dominant(&self, w: &FiniteWeight) -> bool {
        w.0.iter().all(|x| !x.is_negative())
    }

    pub fn is_dominant_integral(&self, w: &FiniteWeight) -> bool {
        w.0.iter().all(is_natural)
    }

    pub fn dominant_conjugate(&self, w: &FiniteWeight) -> FiniteWeight {
        let mut cur = w.clone();
        while let Some(i) = cur.0.iter().position(|x| x.is_negative()) {
            cur = self.simple_reflection(i, &cur);
        }
        cur
    }

    /// The orbit of `w` under the Weyl group, by closure under simple reflections.
    pub fn weyl_orbit(&self, w: &FiniteWeight) -> BTreeSet<FiniteWeight> {
        let mut seen = BTreeSet::new();
        seen.insert(w.clone());
        let mut queue = VecDeque::from([w.clone()]);
        while let Some(cur) = queue.pop_front() {
            for i in 0..self.rank() {
                if cur.0[i].is_zero() {
                    continue;
                }
                let next = self.simple_reflection(i, &cur);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }

    /// `ρ̄`, the sum of the fundamental weights.
    pub fn rho(&self) -> FiniteWeight {
        FiniteWeight(vec![Q::one(); self.rank()])
    }
}
