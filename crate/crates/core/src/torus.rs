//! Zero sets of small sparse polynomial systems on an algebraic torus
//! `(C*)^n`, enough to locate singular points and fixed points on the
//! strata of a chart.
//!
//! A system is solved by treating the distinct monomials as unknowns of a
//! linear system. When the solution space is a single line, every monomial
//! ratio is pinned and the system becomes binomial, which is decided
//! exactly by an integer row reduction.

use std::collections::BTreeMap;

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Sparse Laurent polynomial: exponent vector -> coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    pub terms: BTreeMap<Vec<i64>, i64>,
}

impl Poly {
    pub fn add_term(&mut self, exps: Vec<i64>, coeff: i64) {
        let c = self.terms.entry(exps).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Zero set of a system on `(C*)^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroSet {
    Empty,
    /// Non-empty, of the given dimension.
    Dim(usize),
}

impl ZeroSet {
    pub fn is_empty(self) -> bool {
        self == ZeroSet::Empty
    }

    pub fn positive_dimensional(self) -> bool {
        matches!(self, ZeroSet::Dim(d) if d > 0)
    }
}

pub fn solve(system: &[Poly], n: usize) -> Result<ZeroSet> {
    let polys: Vec<&Poly> = system.iter().filter(|p| !p.is_empty()).collect();
    if polys.iter().any(|p| p.len() == 1) {
        return Ok(ZeroSet::Empty);
    }
    if polys.is_empty() {
        return Ok(ZeroSet::Dim(n));
    }
    if polys.len() == 1 {
        // a non-monomial Laurent polynomial always vanishes somewhere on the
        // torus, along a hypersurface
        return Ok(ZeroSet::Dim(n - 1));
    }
    let mut monomials: Vec<Vec<i64>> = polys.iter().flat_map(|p| p.terms.keys().cloned()).collect();
    monomials.sort();
    monomials.dedup();
    let matrix: Vec<Vec<Rational>> = polys
        .iter()
        .map(|p| {
            monomials
                .iter()
                .map(|m| Rational::from(p.terms.get(m).copied().unwrap_or(0)))
                .collect()
        })
        .collect();
    let kernel = rational_kernel(&matrix, monomials.len());
    match kernel.len() {
        0 => Ok(ZeroSet::Empty),
        1 => {
            let v = &kernel[0];
            if v.iter().any(|x| x.is_zero()) {
                return Ok(ZeroSet::Empty);
            }
            let base = &monomials[0];
            let rows: Vec<Vec<i64>> = monomials[1..]
                .iter()
                .map(|m| m.iter().zip(base).map(|(a, b)| a - b).collect())
                .collect();
            let consts: Vec<Rational> = v[1..].iter().map(|&x| x / v[0]).collect();
            Ok(solve_binomial(&rows, &consts, n))
        }
        k => Err(Error::UnsupportedShape(format!(
            "polynomial system with {} equations in {} monomials leaves a {k}-dimensional \
             space of monomial values; only binomial reductions are supported",
            polys.len(),
            monomials.len()
        ))),
    }
}

/// Basis of `{v : matrix · v = 0}`.
fn rational_kernel(matrix: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let lead = a[row][col];
        for x in a[row].iter_mut() {
            *x = *x / lead;
        }
        let pivot_row = a[row].clone();
        for (r, other) in a.iter_mut().enumerate() {
            if r != row && !other[col].is_zero() {
                let f = other[col];
                for (x, &v) in other.iter_mut().zip(&pivot_row) {
                    *x = *x - f * v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::ZERO; cols];
            v[free] = Rational::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][free];
            }
            v
        })
        .collect()
}

/// Decide `x^{rows_k} = consts_k` for all `k` on `(C*)^n`.
pub fn solve_binomial(rows: &[Vec<i64>], consts: &[Rational], n: usize) -> ZeroSet {
    let (rank, kernel) = integer_left_kernel(rows, n);
    for m in kernel {
        let prod = m
            .iter()
            .zip(consts)
            .filter(|(e, _)| **e != 0)
            .fold(Rational::ONE, |acc, (&e, &c)| acc * c.pow(e));
        if prod != Rational::ONE {
            return ZeroSet::Empty;
        }
    }
    ZeroSet::Dim(n - rank)
}

/// Rank of `rows` and a basis of the integer lattice `{m : m · rows = 0}`.
fn integer_left_kernel(rows: &[Vec<i64>], n: usize) -> (usize, Vec<Vec<i64>>) {
    let k = rows.len();
    let mut h: Vec<Vec<i64>> = rows.to_vec();
    let mut u: Vec<Vec<i64>> = (0..k)
        .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut top = 0;
    for col in 0..n {
        if top == k {
            break;
        }
        // Euclid on column `col` among rows top..k
        loop {
            let nz: Vec<usize> = (top..k).filter(|&r| h[r][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&r) = nz.first() {
                    h.swap(top, r);
                    u.swap(top, r);
                    top += 1;
                }
                break;
            }
            let piv = *nz
                .iter()
                .min_by_key(|&&r| h[r][col].abs())
                .expect("non-empty");
            for &r in &nz {
                if r != piv {
                    let q = h[r][col] / h[piv][col];
                    let (hp, up) = (h[piv].clone(), u[piv].clone());
                    for (x, v) in h[r].iter_mut().zip(hp) {
                        *x -= q * v;
                    }
                    for (x, v) in u[r].iter_mut().zip(up) {
                        *x -= q * v;
                    }
                }
            }
        }
    }
    (top, u[top..].to_vec())
}
