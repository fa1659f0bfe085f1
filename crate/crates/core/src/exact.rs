//! Exact rational linear algebra on small symmetric matrices.
//!
//! Everything here runs over `BigRational` so that signatures and
//! definiteness verdicts never depend on floating point rounding.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Positive, negative and null index of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

pub fn to_big(q: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

pub fn big_from_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn int_matrix_to_big(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|&v| big_from_int(v)).collect())
        .collect()
}

pub fn rational_matrix_to_big(m: &[Vec<Rational64>]) -> Vec<Vec<BigRational>> {
    m.iter()
        .map(|row| row.iter().map(|&v| to_big(v)).collect())
        .collect()
}

pub fn is_symmetric<T: PartialEq>(m: &[Vec<T>]) -> bool {
    let n = m.len();
    m.iter().all(|row| row.len() == n)
        && (0..n).all(|i| (0..i).all(|j| m[i][j] == m[j][i]))
}

/// Inertia by congruence diagonalization `A -> S^T A S`.
///
/// The input must be square and symmetric.
pub fn inertia(m: &[Vec<BigRational>]) -> Inertia {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    for k in 0..n {
        if a[k][k].is_zero() {
            if let Some(i) = (k + 1..n).find(|&i| !a[i][i].is_zero()) {
                swap_sym(&mut a, i, k);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // all active diagonal entries vanish: e_i + e_j has nonzero square 2 a_ij
                add_sym(&mut a, i, j);
                swap_sym(&mut a, i, k);
            } else {
                out.zero += n - k;
                return out;
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &pivot;
            for c in k..n {
                let t = &f * &a[k][c];
                a[r][c] -= t;
            }
            for c in k..n {
                let t = &f * &a[c][k];
                a[c][r] -= t;
            }
        }
    }
    out
}

fn swap_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// Row i += row j, then column i += column j.
fn add_sym(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    let n = a.len();
    for c in 0..n {
        let t = a[j][c].clone();
        a[i][c] += t;
    }
    for row in a.iter_mut().take(n) {
        let t = row[j].clone();
        row[i] += t;
    }
}

pub fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &pivot;
            for c in k..n {
                let t = &f * &a[k][c];
                a[r][c] -= t;
            }
        }
    }
    det
}

/// `x^T A y` over the rationals.
pub fn bilinear(a: &[Vec<BigRational>], x: &[i64], y: &[i64]) -> BigRational {
    let mut acc = BigRational::zero();
    for (i, row) in a.iter().enumerate() {
        if x[i] == 0 {
            continue;
        }
        let mut inner = BigRational::zero();
        for (j, v) in row.iter().enumerate() {
            if y[j] != 0 {
                inner += v * BigInt::from(y[j]);
            }
        }
        acc += inner * BigInt::from(x[i]);
    }
    acc
}

pub fn big_to_f64(q: &BigRational) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter emitting a rational as `{"num": p, "den": q}`.
///
/// Deserialization also accepts a bare integer or a `"p/q"` string.
pub mod rational_json {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Parts {
        num: i64,
        den: i64,
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum AnyRational {
        Int(i64),
        Text(String),
        Parts(Parts),
    }

    pub fn serialize<S: Serializer>(q: &Rational64, s: S) -> Result<S::Ok, S::Error> {
        Parts {
            num: *q.numer(),
            den: *q.denom(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational64, D::Error> {
        use serde::de::Error as _;
        let parts = match AnyRational::deserialize(d)? {
            AnyRational::Int(v) => return Ok(Rational64::from_integer(v)),
            AnyRational::Parts(p) => p,
            AnyRational::Text(t) => {
                let (num, den) = match t.split_once('/') {
                    Some((a, b)) => (a.trim().parse(), b.trim().parse()),
                    None => (t.trim().parse(), Ok(1)),
                };
                match (num, den) {
                    (Ok(num), Ok(den)) => Parts { num, den },
                    _ => return Err(D::Error::custom(format!("not a rational: {t:?}"))),
                }
            }
        };
        if parts.den == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Rational64::new(parts.num, parts.den))
    }

    pub mod matrix {
        use super::*;

        #[derive(Serialize, Deserialize)]
        #[serde(transparent)]
        struct Cell(#[serde(with = "super")] Rational64);

        pub fn serialize<S: Serializer>(m: &[Vec<Rational64>], s: S) -> Result<S::Ok, S::Error> {
            let cells: Vec<Vec<Cell>> = m
                .iter()
                .map(|row| row.iter().map(|&q| Cell(q)).collect())
                .collect();
            cells.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Vec<Vec<Rational64>>, D::Error> {
            let cells: Vec<Vec<Cell>> = Vec::deserialize(d)?;
            Ok(cells
                .into_iter()
                .map(|row| row.into_iter().map(|c| c.0).collect())
                .collect())
        }
    }
}
