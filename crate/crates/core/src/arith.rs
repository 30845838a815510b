//! Exact rationals, residue helpers and Hirzebruch–Jung chains.
//!
//! All arithmetic is checked 64-bit. Overflow is not a recoverable condition
//! at the scales this crate targets, so it panics with a diagnostic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

pub fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0, |g, &x| gcd(g, x))
}

/// Least non-negative residue of `x` modulo `r > 0`.
pub fn residue(x: i64, r: i64) -> i64 {
    debug_assert!(r > 0);
    x.rem_euclid(r)
}

/// Inverse of `x` modulo `r`, if it exists.
pub fn inverse_mod(x: i64, r: i64) -> Option<i64> {
    if r == 1 {
        return Some(0);
    }
    let (mut old_r, mut cur_r) = (residue(x, r), r);
    let (mut old_s, mut cur_s) = (1i64, 0i64);
    while cur_r != 0 {
        let q = old_r / cur_r;
        (old_r, cur_r) = (cur_r, old_r - q * cur_r);
        (old_s, cur_s) = (cur_s, old_s - q * cur_s);
    }
    (old_r == 1).then(|| residue(old_s, r))
}

/// Units of Z/r, in increasing order.
pub fn units(r: i64) -> impl Iterator<Item = i64> {
    (1..r)
        .filter(move |&t| gcd(t, r) == 1)
        .chain((r == 1).then_some(0))
}

fn overflow(op: &str) -> ! {
    panic!("integer overflow in rational {op}; inputs exceed checked 64-bit range")
}

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Rational {
    num: i64,
    den: i64,
}

impl Rational {
    pub const ZERO: Rational = Rational { num: 0, den: 1 };
    pub const ONE: Rational = Rational { num: 1, den: 1 };

    pub fn new(num: i64, den: i64) -> Rational {
        assert!(den != 0, "rational with zero denominator");
        let g = gcd(num, den);
        let s = den.signum();
        Rational {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn from_int(n: i64) -> Rational {
        Rational { num: n, den: 1 }
    }

    pub fn numer(self) -> i64 {
        self.num
    }

    pub fn denom(self) -> i64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    pub fn is_integer(self) -> bool {
        self.den == 1
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.num)
    }

    pub fn recip(self) -> Rational {
        Rational::new(self.den, self.num)
    }

    /// Fractional part `x - floor(x)`, in `[0, 1)`.
    pub fn fract(self) -> Rational {
        Rational::new(self.num.rem_euclid(self.den), self.den)
    }

    pub fn pow(self, e: i64) -> Rational {
        let base = if e < 0 { self.recip() } else { self };
        (0..e.unsigned_abs()).fold(Rational::ONE, |acc, _| acc * base)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::ZERO
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        let g = gcd(self.den, rhs.den);
        let l = (self.den / g)
            .checked_mul(rhs.den)
            .unwrap_or_else(|| overflow("add"));
        let a = self
            .num
            .checked_mul(l / self.den)
            .unwrap_or_else(|| overflow("add"));
        let b = rhs
            .num
            .checked_mul(l / rhs.den)
            .unwrap_or_else(|| overflow("add"));
        Rational::new(a.checked_add(b).unwrap_or_else(|| overflow("add")), l)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: self.num.checked_neg().unwrap_or_else(|| overflow("neg")),
            den: self.den,
        }
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        self + (-rhs)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        // cross-cancel first to keep intermediates small
        let g1 = gcd(self.num, rhs.den).max(1);
        let g2 = gcd(rhs.num, self.den).max(1);
        let num = (self.num / g1)
            .checked_mul(rhs.num / g2)
            .unwrap_or_else(|| overflow("mul"));
        let den = (self.den / g2)
            .checked_mul(rhs.den / g1)
            .unwrap_or_else(|| overflow("mul"));
        Rational::new(num, den)
    }
}

impl Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "rational division by zero");
        self * rhs.recip()
    }
}

impl Add<i64> for Rational {
    type Output = Rational;
    fn add(self, rhs: i64) -> Rational {
        self + Rational::from(rhs)
    }
}

impl Sub<i64> for Rational {
    type Output = Rational;
    fn sub(self, rhs: i64) -> Rational {
        self - Rational::from(rhs)
    }
}

impl Mul<i64> for Rational {
    type Output = Rational;
    fn mul(self, rhs: i64) -> Rational {
        self * Rational::from(rhs)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::ZERO, |a, b| a + b)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        let l = (self.num as i128) * (other.den as i128);
        let r = (other.num as i128) * (self.den as i128);
        l.cmp(&r)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            Some((n, d)) => {
                let n: i64 = n.trim().parse().map_err(|_| bad())?;
                let d: i64 = d.trim().parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Rational::new(n, d))
            }
            None => s.parse().map(Rational::from_int).map_err(|_| bad()),
        }
    }
}

impl From<Rational> for String {
    fn from(r: Rational) -> String {
        r.to_string()
    }
}

impl TryFrom<String> for Rational {
    type Error = Error;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Solve `m · x = rhs` exactly by Gaussian elimination. `None` if `m` is
/// singular.
pub fn solve_linear(m: &[Vec<Rational>], rhs: &[Rational]) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &b)| {
            let mut row = row.clone();
            row.push(b);
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in &mut a[col][col..] {
            *x = *x / p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col];
                for (x, &v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x = *x - f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n]).collect())
}

/// Resolution chain of the surface cyclic quotient singularity `1/r(1, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HjChain {
    pub order: i64,
    pub q: i64,
    /// Continued-fraction entries `b_i >= 2`.
    pub entries: Vec<i64>,
    /// Discrepancies of the exceptional curves over the singular point.
    pub discrepancies: Vec<Rational>,
}

impl HjChain {
    pub fn curve_self_intersections(&self) -> Vec<i64> {
        self.entries.iter().map(|b| -b).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_du_val(&self) -> bool {
        self.entries.iter().all(|&b| b == 2)
    }

    /// Intersection matrix of the exceptional curves.
    pub fn intersection_matrix(&self) -> Vec<Vec<Rational>> {
        let k = self.entries.len();
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| match i.abs_diff(j) {
                        0 => Rational::from(-self.entries[i]),
                        1 => Rational::ONE,
                        _ => Rational::ZERO,
                    })
                    .collect()
            })
            .collect()
    }

    /// `b_1 - 1/(b_2 - 1/(...))`.
    pub fn reconstruct(&self) -> Rational {
        let mut it = self.entries.iter().rev();
        let Some(&last) = it.next() else {
            return Rational::ZERO;
        };
        it.fold(Rational::from(last), |acc, &b| {
            Rational::from(b) - acc.recip()
        })
    }

    /// `(Σ d_i C_i)^2`, the change in `K^2` when passing to the resolution.
    pub fn k2_correction(&self) -> Rational {
        let m = self.intersection_matrix();
        let d = &self.discrepancies;
        (0..d.len())
            .flat_map(|i| (0..d.len()).map(move |j| (i, j)))
            .map(|(i, j)| d[i] * d[j] * m[i][j])
            .sum()
    }

    /// Coefficients `c` of the exceptional curves in the pullback of a curve
    /// meeting the first curve of the chain transversally once.
    pub fn pullback_coefficients(&self) -> Vec<Rational> {
        if self.is_empty() {
            return Vec::new();
        }
        let mut rhs = vec![Rational::ZERO; self.len()];
        rhs[0] = -Rational::ONE;
        solve_linear(&self.intersection_matrix(), &rhs)
            .expect("negative definite chain matrix is invertible")
    }
}

/// Hirzebruch–Jung expansion of `r/q` together with the discrepancies of
/// the resolution curves.
pub fn hj_expand(r: i64, q: i64) -> Result<HjChain, Error> {
    if r < 2 {
        return Ok(HjChain {
            order: r.max(1),
            q: 0,
            entries: Vec::new(),
            discrepancies: Vec::new(),
        });
    }
    if !(1..r).contains(&q) {
        return Err(Error::InvalidInput(format!(
            "hj_expand needs 1 <= q < r, got r = {r}, q = {q}"
        )));
    }
    if gcd(q, r) != 1 {
        return Err(Error::InvalidInput(format!(
            "hj_expand needs gcd(q, r) = 1, got r = {r}, q = {q}"
        )));
    }
    let mut entries = Vec::new();
    let (mut num, mut den) = (r, q);
    while den != 0 {
        // ceiling division gives the negative-regular expansion
        let b = (num + den - 1) / den;
        entries.push(b);
        (num, den) = (den, b * den - num);
    }
    let mut chain = HjChain {
        order: r,
        q,
        entries,
        discrepancies: Vec::new(),
    };
    let rhs: Vec<Rational> = chain
        .entries
        .iter()
        .map(|&b| Rational::from(b - 2))
        .collect();
    chain.discrepancies = solve_linear(&chain.intersection_matrix(), &rhs)
        .expect("negative definite chain matrix is invertible");
    Ok(chain)
}
