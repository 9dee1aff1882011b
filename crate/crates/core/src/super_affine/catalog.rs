//! Basic Lie superalgebras by even part, and the root data of their
//! affinizations.
//!
//! | name        | even part        |
//! |-------------|------------------|
//! | `A(m,n)`    | `A_m + A_n + ℂ`  |
//! | `B(m,n)`    | `B_m + C_n`      |
//! | `C(n)`      | `C_n + ℂ`        |
//! | `D(m,n)`    | `D_m + C_n`      |
//! | `D(2,1;a)`  | `D_2 + A_1`      |
//! | `F(4)`      | `B_3 + A_1`      |
//! | `G(3)`      | `G_2 + A_1`      |
//!
//! The invariant form is normalized so that the highest root of the first
//! component has square 2 and that of the second component square -2.
//! Components of rank 0 are dropped; a lone simple component is positive.
//! Weights of the affinization are stored as [`AffineWeight`]s whose finite
//! labels are the labels of all simple factors, concatenated in order.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::affine_weights::AffineWeight;
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, q, Q};
use crate::root_core::{FiniteRoot, FiniteWeight, FormSign, RootSystem, Series, SimpleType};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    A { m: usize, n: usize },
    B { m: usize, n: usize },
    C { n: usize },
    D { m: usize, n: usize },
    D21 { a: Q },
    F4,
    G3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenComponent {
    pub simple_type: SimpleType,
    pub form_sign: FormSign,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SuperAlgebraSpec {
    pub family: Family,
    pub even_components: Vec<EvenComponent>,
    pub has_center_summand: bool,
}

impl SuperAlgebraSpec {
    pub fn new(family: Family) -> Result<Self> {
        use Series::*;
        let invalid = |reason: &str| Error::UnknownSuperalgebra(format!("{}: {reason}", name_of(&family)));
        let (parts, center): (Vec<(Series, usize)>, bool) = match &family {
            Family::A { m, n } => {
                if *m == 0 && *n == 0 {
                    return Err(invalid("A(0,0) has no simple even component"));
                }
                (vec![(A, *m), (A, *n)], true)
            }
            Family::B { m, n } => {
                if *n == 0 {
                    return Err(invalid("n must be at least 1"));
                }
                (vec![(B, *m), (C, *n)], false)
            }
            Family::C { n } => {
                if *n == 0 {
                    return Err(invalid("n must be at least 1"));
                }
                (vec![(C, *n)], true)
            }
            Family::D { m, n } => {
                if *m < 2 || *n == 0 {
                    return Err(invalid("needs m >= 2 and n >= 1"));
                }
                (vec![(D, *m), (C, *n)], false)
            }
            Family::D21 { a } => {
                if a.is_zero() || *a == -Q::one() {
                    return Err(invalid("a must avoid 0 and -1"));
                }
                (vec![(D, 2), (A, 1)], false)
            }
            Family::F4 => (vec![(B, 3), (A, 1)], false),
            Family::G3 => (vec![(G, 2), (A, 1)], false),
        };
        let kept: Vec<SimpleType> = parts
            .into_iter()
            .filter(|&(_, rank)| rank > 0)
            .map(|(s, rank)| SimpleType::component(s, rank))
            .collect::<Result<_>>()?;
        let single = kept.len() == 1;
        let even_components = kept
            .into_iter()
            .enumerate()
            .map(|(i, simple_type)| EvenComponent {
                simple_type,
                form_sign: if i == 0 || single {
                    FormSign::Positive
                } else {
                    FormSign::Negative
                },
            })
            .collect();
        Ok(SuperAlgebraSpec {
            family,
            even_components,
            has_center_summand: center,
        })
    }

    pub fn name(&self) -> String {
        name_of(&self.family)
    }

    /// Number of simple components of the semisimple part of the even part.
    pub fn simple_component_count(&self) -> usize {
        self.even_components
            .iter()
            .map(|c| c.simple_type.simple_factors().len())
            .sum()
    }
}

fn name_of(f: &Family) -> String {
    match f {
        Family::A { m, n } => format!("A({m},{n})"),
        Family::B { m, n } => format!("B({m},{n})"),
        Family::C { n } => format!("C({n})"),
        Family::D { m, n } => format!("D({m},{n})"),
        Family::D21 { a } => format!("D(2,1;{})", format_q(a)),
        Family::F4 => "F(4)".to_string(),
        Family::G3 => "G(3)".to_string(),
    }
}

impl fmt::Display for SuperAlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl From<SuperAlgebraSpec> for String {
    fn from(s: SuperAlgebraSpec) -> String {
        s.name()
    }
}

impl TryFrom<String> for SuperAlgebraSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl FromStr for SuperAlgebraSpec {
    type Err = Error;

    /// Accepts `A(m,n)`, `B(m,n)`, `C(n)`, `D(m,n)`, `D(2,1;a)` (or
    /// `D(2,1:a)`), `F(4)` and `G(3)`, ignoring whitespace.
    fn from_str(input: &str) -> Result<Self> {
        let err = |position: usize, message: &str| Error::Parse {
            input: input.to_string(),
            position,
            message: message.to_string(),
        };
        // compact form with a map back to input positions
        let (chars, pos): (String, Vec<usize>) = input
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (c, i))
            .unzip();
        let at = |i: usize| pos.get(i).copied().unwrap_or(input.len());
        let mut it = chars.chars();
        let letter = it.next().ok_or_else(|| err(0, "empty superalgebra name"))?;
        if !"ABCDFG".contains(letter) {
            return Err(err(at(0), "expected one of A, B, C, D, F, G"));
        }
        let body = &chars[letter.len_utf8()..];
        if !body.starts_with('(') {
            return Err(err(at(1), "expected '('"));
        }
        if !body.ends_with(')') || body.len() < 2 {
            return Err(err(at(chars.len()), "expected ')' at the end"));
        }
        let inner = &body[1..body.len() - 1];
        let inner_start = 2;
        let (head, param) = match inner.find([';', ':']) {
            Some(k) => (&inner[..k], Some((&inner[k + 1..], inner_start + k + 1))),
            None => (inner, None),
        };
        let mut numbers = Vec::new();
        let mut offset = inner_start;
        for part in head.split(',') {
            let n: usize = part
                .parse()
                .map_err(|_| err(at(offset), "expected a non-negative integer"))?;
            numbers.push(n);
            offset += part.len() + 1;
        }
        let family = match (letter, numbers.as_slice(), param) {
            ('A', &[m, n], None) => Family::A { m, n },
            ('B', &[m, n], None) => Family::B { m, n },
            ('C', &[n], None) => Family::C { n },
            ('D', &[2, 1], Some((a, p))) => {
                let a = parse_q(a).map_err(|_| err(at(p), "expected a rational parameter"))?;
                Family::D21 { a }
            }
            ('D', &[m, n], None) => Family::D { m, n },
            ('F', &[4], None) => Family::F4,
            ('G', &[3], None) => Family::G3,
            _ => return Err(Error::UnknownSuperalgebra(input.to_string())),
        };
        SuperAlgebraSpec::new(family)
    }
}

pub fn catalog(name: &str) -> Result<SuperAlgebraSpec> {
    name.parse()
}

/// One simple factor of the even part with its normalized form.
#[derive(Clone, Debug)]
pub struct Factor {
    /// Index into [`SuperAlgebraSpec::even_components`].
    pub component: usize,
    pub rs: RootSystem,
    /// Position of this factor's labels inside a weight.
    pub offset: usize,
}

impl Factor {
    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn form_sign(&self) -> FormSign {
        self.rs.form_sign()
    }

    pub fn labels<'w>(&self, w: &'w AffineWeight) -> &'w [Q] {
        &w.finite.0[self.offset..self.offset + self.rank()]
    }
}

/// A real root `α + nδ` of the affinization of one simple factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ComponentRoot {
    pub factor: usize,
    pub alpha: FiniteRoot,
    pub n: i64,
}

impl fmt::Display for ComponentRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.alpha)?;
        match self.n {
            0 => {}
            1 => write!(f, "+δ")?,
            -1 => write!(f, "-δ")?,
            n if n > 0 => write!(f, "+{n}δ")?,
            n => write!(f, "{n}δ")?,
        }
        write!(f, " [factor {}]", self.factor)
    }
}

/// Root data of the affinized even part with the normalized form.
#[derive(Clone, Debug)]
pub struct SuperRootData {
    spec: SuperAlgebraSpec,
    factors: Vec<Factor>,
    rank: usize,
}

pub fn normalize_form(spec: &SuperAlgebraSpec) -> Result<SuperRootData> {
    SuperRootData::new(spec)
}

impl SuperRootData {
    pub fn new(spec: &SuperAlgebraSpec) -> Result<Self> {
        let mut factors = Vec::new();
        let mut offset = 0;
        for (component, c) in spec.even_components.iter().enumerate() {
            for t in c.simple_type.simple_factors() {
                let rs = RootSystem::build(t, c.form_sign)?;
                let rank = rs.rank();
                factors.push(Factor { component, rs, offset });
                offset += rank;
            }
        }
        Ok(SuperRootData {
            spec: spec.clone(),
            factors,
            rank: offset,
        })
    }

    pub fn spec(&self) -> &SuperAlgebraSpec {
        &self.spec
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Total number of labels in a weight.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The factor carrying the negative form, if any.
    pub fn negative_factor(&self) -> Option<usize> {
        self.factors.iter().position(|f| f.form_sign() == FormSign::Negative)
    }

    /// Indices of the factors carrying the positive form.
    pub fn positive_factors(&self) -> Vec<usize> {
        (0..self.factors.len())
            .filter(|&i| self.factors[i].form_sign() == FormSign::Positive)
            .collect()
    }

    /// Square length of the highest root of each factor.
    pub fn highest_root_norms(&self) -> Vec<Q> {
        self.factors
            .iter()
            .map(|f| f.rs.root_norm(f.rs.highest_root()))
            .collect()
    }

    pub fn weight(&self, labels: &[i64], d: i64, level: i64) -> Result<AffineWeight> {
        if labels.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                got: labels.len(),
            });
        }
        Ok(AffineWeight::compose(FiniteWeight::from_ints(labels), q(d), q(level)))
    }

    /// `α + nδ` as a full-length weight.
    pub fn root_weight(&self, root: &ComponentRoot) -> AffineWeight {
        let f = &self.factors[root.factor];
        let local = f.rs.root_as_weight(&root.alpha);
        let mut labels = vec![Q::zero(); self.rank];
        labels[f.offset..f.offset + f.rank()].clone_from_slice(&local.0);
        AffineWeight::compose(FiniteWeight(labels), q(root.n), Q::zero())
    }

    fn check_root(&self, root: &ComponentRoot) -> Result<&Factor> {
        let f = self
            .factors
            .get(root.factor)
            .ok_or_else(|| Error::NotARoot(root.to_string()))?;
        if root.alpha.0.len() != f.rank() || !f.rs.is_root(&root.alpha) {
            return Err(Error::NotARoot(root.to_string()));
        }
        Ok(f)
    }

    /// `λ(γ∨)` with `γ∨ = α∨ + 2n/(α,α) K`, using the factor's signed form.
    pub fn coroot_value(&self, w: &AffineWeight, root: &ComponentRoot) -> Result<Q> {
        let f = self.check_root(root)?;
        let finite = f.rs.coroot(&root.alpha)?.eval_labels(f.labels(w));
        Ok(finite + q(2 * root.n) * &w.level / f.rs.root_norm(&root.alpha))
    }

    /// Height of the part of `w` in the given factor, in simple-root
    /// coordinates of that factor.
    pub fn factor_height(&self, factor: usize, w: &AffineWeight) -> Q {
        let f = &self.factors[factor];
        f.rs.root_coords(&FiniteWeight(f.labels(w).to_vec()))
            .into_iter()
            .fold(Q::zero(), |a, b| a + b)
    }

    /// Whether `diff` is `α + nδ` with `α` a root of the factor or zero.
    pub fn as_factor_root(&self, factor: usize, diff: &AffineWeight) -> Option<ComponentRoot> {
        if !diff.level.is_zero() {
            return None;
        }
        let n = crate::rational::to_i64(&diff.d)?;
        let f = &self.factors[factor];
        let outside = diff
            .finite
            .0
            .iter()
            .enumerate()
            .any(|(i, x)| !(f.offset..f.offset + f.rank()).contains(&i) && !x.is_zero());
        if outside {
            return None;
        }
        let alpha = f.rs.as_root_lattice(&FiniteWeight(f.labels(diff).to_vec()))?;
        (alpha.is_zero() || f.rs.is_root(&alpha)).then_some(ComponentRoot { factor, alpha, n })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn even(s: &str) -> Vec<(String, i64)> {
        catalog(s)
            .unwrap()
            .even_components
            .iter()
            .map(|c| (c.simple_type.to_string(), c.form_sign.value()))
            .collect()
    }

    #[test]
    fn catalog_rows() {
        assert_eq!(even("B(1,2)"), vec![("B1".into(), 1), ("C2".into(), -1)]);
        let c3 = catalog("C(3)").unwrap();
        assert_eq!(even("C(3)"), vec![("C3".into(), 1)]);
        assert!(c3.has_center_summand);
        assert_eq!(even("D(2,1;1/2)"), vec![("D2".into(), 1), ("A1".into(), -1)]);
        assert_eq!(even("F(4)"), vec![("B3".into(), 1), ("A1".into(), -1)]);
        assert_eq!(even("G(3)"), vec![("G2".into(), 1), ("A1".into(), -1)]);
        assert_eq!(even("A(0,1)"), vec![("A1".into(), 1)]);
        assert_eq!(even("A(2,1)"), vec![("A2".into(), 1), ("A1".into(), -1)]);
        assert_eq!(even("B(0,2)"), vec![("C2".into(), 1)]);
        assert_eq!(even("D(3,1)"), vec![("D3".into(), 1), ("C1".into(), -1)]);
    }

    #[test]
    fn names_round_trip() {
        for s in ["A(1,2)", "B(1,1)", "C(2)", "D(2,3)", "D(2,1;-1/3)", "F(4)", "G(3)"] {
            assert_eq!(catalog(s).unwrap().name(), s);
        }
        assert_eq!(catalog(" D ( 2, 1 : 1/2 ) ").unwrap().name(), "D(2,1;1/2)");
        let spec = catalog("D(2,1;2)").unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, "\"D(2,1;2)\"");
        assert_eq!(serde_json::from_str::<SuperAlgebraSpec>(&json).unwrap(), spec);
    }

    #[test]
    fn rejected_names() {
        for s in ["D(2,1;0)", "D(2,1;-1)", "A(0,0)", "D(1,1)", "F(3)", "E(8)", ""] {
            assert!(catalog(s).is_err(), "{s}");
        }
        match catalog("B(x,1)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        match catalog("D(2,1;q)") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 6),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn normalized_forms() {
        let b11 = normalize_form(&catalog("B(1,1)").unwrap()).unwrap();
        assert_eq!(b11.highest_root_norms(), vec![q(2), q(-2)]);
        assert_eq!(b11.rank(), 2);
        let a01 = normalize_form(&catalog("A(0,1)").unwrap()).unwrap();
        assert_eq!(a01.highest_root_norms(), vec![q(2)]);
        let d21 = normalize_form(&catalog("D(2,1;1/2)").unwrap()).unwrap();
        assert_eq!(d21.highest_root_norms(), vec![q(2), q(2), q(-2)]);
        assert_eq!(d21.negative_factor(), Some(2));
        for s in ["B(2,3)", "D(4,2)", "F(4)", "G(3)", "A(3,2)", "C(4)"] {
            let data = normalize_form(&catalog(s).unwrap()).unwrap();
            let norms = data.highest_root_norms();
            assert_eq!(norms[0], q(2), "{s}");
            if let Some(i) = data.negative_factor() {
                assert_eq!(norms[i], q(-2), "{s}");
            }
        }
        // short roots of the negative C2 factor have square -1
        let b12 = normalize_form(&catalog("B(1,2)").unwrap()).unwrap();
        assert_eq!(*b12.factors()[1].rs.simple_root_norm(0), frac(-1, 2) * q(2));
    }

    #[test]
    fn coroot_values_on_the_negative_factor() {
        let data = normalize_form(&catalog("B(1,1)").unwrap()).unwrap();
        let w = data.weight(&[0, -3], 0, 1).unwrap();
        let root = |n| ComponentRoot {
            factor: 1,
            alpha: FiniteRoot(vec![1]),
            n,
        };
        assert_eq!(data.coroot_value(&w, &root(0)).unwrap(), q(-3));
        assert_eq!(data.coroot_value(&w, &root(-3)).unwrap(), q(0));
        assert_eq!(data.coroot_value(&w, &root(-5)).unwrap(), q(2));
        assert!(data
            .coroot_value(
                &w,
                &ComponentRoot {
                    factor: 1,
                    alpha: FiniteRoot(vec![2]),
                    n: 0
                }
            )
            .is_err());
    }
}
