//! Exact rational scalars, their text form, and the small amount of dense
//! linear algebra the root data needs.
//!
//! Everything is arbitrary precision. Rationals are written as `p/q`
//! (or `p` when the denominator is one) on the wire.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The scalar type used throughout the crate.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

pub fn is_natural(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

/// Converts an integral rational to `i64`; `None` if not integral or out of range.
pub fn to_i64(x: &Q) -> Option<i64> {
    if x.is_integer() {
        x.to_integer().to_i64()
    } else {
        None
    }
}

/// Largest integer `n` with `n <= x`.
pub fn floor_i64(x: &Q) -> i64 {
    x.floor().to_integer().to_i64().expect("floor out of i64 range")
}

/// Fractional part in `[0, 1)`.
pub fn fract(x: &Q) -> Q {
    x - x.floor()
}

pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `p`, `-p`, `p/q`. Whitespace around the tokens is ignored.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = |position: usize, message: &str| Error::Parse {
        input: s.to_string(),
        position,
        message: message.to_string(),
    };
    if t.is_empty() {
        return Err(bad(0, "empty rational"));
    }
    let offset = s.find(t).unwrap_or(0);
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let numer: BigInt = num.parse().map_err(|_| bad(offset, "expected an integer numerator"))?;
    let denom: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| bad(offset + num.len() + 1, "expected an integer denominator"))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(bad(offset + num.len() + 1, "zero denominator"));
    }
    Ok(Q::new(numer, denom))
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Serde adapter for a single rational rendered as a `"p/q"` string.
/// Integer JSON numbers are accepted on input.
pub mod serde_q {
    use super::*;
    use serde::de::{self, Deserializer, Visitor};
    use serde::Serializer;
    use std::fmt;

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    struct QVisitor;

    impl<'de> Visitor<'de> for QVisitor {
        type Value = Q;
        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("a rational as \"p/q\" or an integer")
        }
        fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Q, E> {
            parse_q(v).map_err(E::custom)
        }
        fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Q, E> {
            Ok(q(v))
        }
        fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Q, E> {
            Ok(Q::from_integer(BigInt::from(v)))
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        d.deserialize_any(QVisitor)
    }
}

/// Serde adapter for `Vec<Q>`.
pub mod serde_q_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::serde_q")] Q);

    pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Wrap> = xs.iter().cloned().map(Wrap).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let v: Vec<Wrap> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|w| w.0).collect())
    }
}

/// Dense square matrix over `Q`, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![Q::zero(); n * n],
        }
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Q) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Matrix::from_fn(rows.len(), |i, j| q(rows[i][j]))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.n + j]
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        Matrix::from_fn(n, |i, j| {
            (0..n).fold(Q::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        })
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        (0..self.n)
            .map(|i| {
                v.iter()
                    .enumerate()
                    .fold(Q::zero(), |acc, (k, x)| acc + self.get(i, k) * x)
            })
            .collect()
    }

    /// `u^T M v`.
    pub fn bilinear(&self, u: &[Q], v: &[Q]) -> Q {
        let mv = self.mul_vec(v);
        u.iter().zip(mv.iter()).fold(Q::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by fraction-exact Gaussian elimination.
    pub fn determinant(&self) -> Q {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = Q::one();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return Q::zero();
            };
            if pivot != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot * n + k);
                }
                det = -det;
            }
            let p = a[col * n + col].clone();
            det *= &p;
            for r in col + 1..n {
                let factor = &a[r * n + col] / &p;
                if factor.is_zero() {
                    continue;
                }
                for k in col..n {
                    let sub = &factor * &a[col * n + k];
                    a[r * n + k] -= sub;
                }
            }
        }
        det
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut inv = Matrix::from_fn(n, |i, j| if i == j { Q::one() } else { Q::zero() }).data;
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
            if pivot != col {
                for k in 0..n {
                    a.swap(col * n + k, pivot * n + k);
                    inv.swap(col * n + k, pivot * n + k);
                }
            }
            let p = a[col * n + col].clone();
            for k in 0..n {
                a[col * n + k] /= &p;
                inv[col * n + k] /= &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let factor = a[r * n + col].clone();
                for k in 0..n {
                    let s1 = &factor * &a[col * n + k];
                    a[r * n + k] -= s1;
                    let s2 = &factor * &inv[col * n + k];
                    inv[r * n + k] -= s2;
                }
            }
        }
        Some(Matrix { n, data: inv })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3").unwrap(), q(3));
        assert_eq!(parse_q(" -2/4 ").unwrap(), frac(-1, 2));
        assert_eq!(format_q(&frac(6, 4)), "3/2");
        assert_eq!(format_q(&q(-7)), "-7");
        assert!(parse_q("1/0").is_err());
        match parse_q("1/x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inverse_and_det() {
        let a2 = Matrix::from_i64(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(a2.determinant(), q(3));
        let inv = a2.inverse().unwrap();
        assert_eq!(inv.get(0, 0), &frac(2, 3));
        assert_eq!(inv.get(0, 1), &frac(1, 3));
        let id = a2.mul(&inv);
        assert_eq!(id, Matrix::from_fn(2, |i, j| if i == j { q(1) } else { q(0) }));
        assert!(Matrix::from_i64(&[vec![1, 2], vec![2, 4]]).inverse().is_none());
    }

    #[test]
    fn serde_roundtrip() {
        #[derive(serde::Serialize, serde::Deserialize, PartialEq, Debug)]
        struct W {
            #[serde(with = "serde_q_vec")]
            xs: Vec<Q>,
        }
        let w = W {
            xs: vec![frac(1, 2), q(-3)],
        };
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"xs":["1/2","-3"]}"#);
        let back: W = serde_json::from_str(r#"{"xs":["1/2", -3]}"#).unwrap();
        assert_eq!(back, w);
    }
}
