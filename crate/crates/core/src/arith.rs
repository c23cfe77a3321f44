//! Integer helpers: gcd with an explicit infinity, multi-value Bezout
//! coefficients, and JSON encodings for exact rationals.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A highest common factor that may be infinite (gcd of a set of zeros).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Hcf {
    Finite(u64),
    Infinite,
}

impl Hcf {
    /// gcd of the nonzero values; `Infinite` when there are none.
    pub fn of<I: IntoIterator<Item = u64>>(values: I) -> Hcf {
        values
            .into_iter()
            .filter(|&v| v != 0)
            .fold(Hcf::Infinite, |acc, v| match acc {
                Hcf::Infinite => Hcf::Finite(v),
                Hcf::Finite(g) => Hcf::Finite(g.gcd(&v)),
            })
    }

    pub fn is_one(self) -> bool {
        self == Hcf::Finite(1)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Hcf::Finite(g) => Some(g),
            Hcf::Infinite => None,
        }
    }

    /// Whether `g` divides `v`; an infinite modulus only divides zero.
    pub fn divides(self, v: i64) -> bool {
        match self {
            Hcf::Finite(g) => v.rem_euclid(g as i64) == 0,
            Hcf::Infinite => v == 0,
        }
    }
}

impl PartialOrd for Hcf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hcf {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Hcf::Finite(a), Hcf::Finite(b)) => a.cmp(b),
            (Hcf::Finite(_), Hcf::Infinite) => Ordering::Less,
            (Hcf::Infinite, Hcf::Finite(_)) => Ordering::Greater,
            (Hcf::Infinite, Hcf::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Hcf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hcf::Finite(g) => write!(f, "{g}"),
            Hcf::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Hcf {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Hcf::Finite(g) => s.serialize_u64(*g),
            Hcf::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Hcf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(g) => Ok(Hcf::Finite(g)),
            Raw::Str(s) if s == "inf" => Ok(Hcf::Infinite),
            Raw::Str(s) => Err(serde::de::Error::custom(format!("bad hcf '{s}'"))),
        }
    }
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b) >= 0`.
pub fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i64, 0i64);
    let (mut old_t, mut t) = (0i64, 1i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Bezout coefficients for several values: returns `(g, b)` with
/// `sum b[i] * values[i] = g`, and `b[i] = 0` wherever `values[i] = 0`.
///
/// Coefficients come from a left fold of extended Euclid and are then shrunk
/// with one pass over pairwise kernel vectors.
pub fn bezout(values: &[i64]) -> (i64, Vec<i64>) {
    let mut coeffs = vec![0i64; values.len()];
    let mut g = 0i64;
    for (i, &v) in values.iter().enumerate() {
        if v == 0 {
            continue;
        }
        if g == 0 {
            g = v.abs();
            coeffs[i] = v.signum();
            continue;
        }
        let (ng, s, t) = extended_gcd(g, v);
        for c in coeffs.iter_mut().take(i) {
            *c *= s;
        }
        coeffs[i] = t;
        g = ng;
    }
    shrink_coefficients(values, &mut coeffs);
    debug_assert_eq!(dot(values, &coeffs), g);
    (g, coeffs)
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// For each pair `(i, j)` the vector `(v_j/g) e_i - (v_i/g) e_j` is in the
/// kernel; move along it to minimise `max(|b_i|, |b_j|)`.
fn shrink_coefficients(values: &[i64], coeffs: &mut [i64]) {
    let n = values.len();
    for i in 0..n {
        for j in i + 1..n {
            if values[i] == 0 || values[j] == 0 {
                continue;
            }
            let g = values[i].gcd(&values[j]);
            let (si, sj) = (values[j] / g, values[i] / g);
            let cost = |t: i64| (coeffs[i] + t * si).abs().max((coeffs[j] - t * sj).abs());
            // The optimum lies between the two zero crossings.
            let t0 = -coeffs[i] as f64 / si as f64;
            let t1 = coeffs[j] as f64 / sj as f64;
            let (lo, hi) = (t0.min(t1).floor() as i64 - 1, t0.max(t1).ceil() as i64 + 1);
            let best = (lo..=hi).min_by_key(|&t| (cost(t), t.abs())).unwrap_or(0);
            if cost(best) < cost(0) {
                coeffs[i] += best * si;
                coeffs[j] -= best * sj;
            }
        }
    }
}

/// Smallest integer `>= r`.
pub fn ceil_ratio(r: &Ratio<i64>) -> i64 {
    r.ceil().to_integer()
}

/// Serde adapter writing `Ratio<i64>` as `{"num": .., "den": ..}`.
pub mod ratio_json {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Frac {
        num: i64,
        den: i64,
    }

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        Frac {
            num: *r.numer(),
            den: *r.denom(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        let f = Frac::deserialize(d)?;
        if f.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(f.num, f.den))
    }
}
