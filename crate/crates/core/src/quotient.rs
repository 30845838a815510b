//! Cyclic quotient and hyperquotient singularities `1/r(w_1, ..., w_k)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, hj_expand, inverse_mod, residue, units, HjChain};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclicQuotient {
    order: i64,
    weights: Vec<i64>,
    equation_weight: Option<i64>,
}

impl CyclicQuotient {
    /// Weights may be negative; they are reduced mod `order`.
    pub fn new(order: i64, weights: &[i64]) -> Result<CyclicQuotient> {
        if order < 1 {
            return Err(Error::InvalidInput(format!(
                "group order must be positive, got {order}"
            )));
        }
        if !(2..=4).contains(&weights.len()) {
            return Err(Error::InvalidInput(format!(
                "expected 2, 3 or 4 weights, got {}",
                weights.len()
            )));
        }
        Ok(CyclicQuotient {
            order,
            weights: weights.iter().map(|&w| residue(w, order)).collect(),
            equation_weight: None,
        })
    }

    /// A hypersurface germ whose equation has the given monomial exponents,
    /// divided by the group. Every term must have the same weight mod `order`.
    pub fn hyperquotient(
        order: i64,
        weights: &[i64],
        terms: &[Vec<i64>],
    ) -> Result<CyclicQuotient> {
        let mut q = CyclicQuotient::new(order, weights)?;
        let term_weight =
            |t: &Vec<i64>| residue(t.iter().zip(&q.weights).map(|(e, w)| e * w).sum(), order);
        let Some(first) = terms.first() else {
            return Err(Error::InvalidInput(
                "hyperquotient needs a non-empty equation".into(),
            ));
        };
        if terms.iter().any(|t| t.len() != weights.len()) {
            return Err(Error::InvalidInput(
                "term arity does not match the number of weights".into(),
            ));
        }
        let e = term_weight(first);
        if let Some(t) = terms.iter().find(|t| term_weight(t) != e) {
            return Err(Error::InvalidInput(format!(
                "equation is not semi-invariant: term {t:?} has weight {} but {e} expected",
                term_weight(t)
            )));
        }
        q.equation_weight = Some(e);
        Ok(q)
    }

    /// Hyperquotient with an explicitly given equation weight.
    pub fn with_equation_weight(order: i64, weights: &[i64], e: i64) -> Result<CyclicQuotient> {
        let mut q = CyclicQuotient::new(order, weights)?;
        q.equation_weight = Some(residue(e, order));
        Ok(q)
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn equation_weight(&self) -> Option<i64> {
        self.equation_weight
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Multiply all weights (and the equation weight) by `t`.
    pub fn scaled(&self, t: i64) -> CyclicQuotient {
        CyclicQuotient {
            order: self.order,
            weights: self
                .weights
                .iter()
                .map(|&w| residue(w * t, self.order))
                .collect(),
            equation_weight: self.equation_weight.map(|e| residue(e * t, self.order)),
        }
    }

    /// Lexicographically least representative over unit multiples and
    /// permutations.
    pub fn canonical(&self) -> CyclicQuotient {
        units(self.order)
            .map(|t| {
                let mut q = self.scaled(t);
                q.weights.sort_unstable();
                q
            })
            .min_by(|x, y| (&x.weights, x.equation_weight).cmp(&(&y.weights, y.equation_weight)))
            .expect("at least one unit")
    }
}

impl fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}(", self.order)?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        if let Some(e) = self.equation_weight {
            write!(f, ";{e}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for CyclicQuotient {
    type Err = Error;

    /// `1/r(w1,w2,...)`, optionally `1/r(w1,...,w4;e)` for a hyperquotient.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad =
            |pos: usize, msg: &str| Error::parse(pos, format!("{msg} in quotient literal {s:?}"));
        let rest = compact
            .strip_prefix("1/")
            .ok_or_else(|| bad(0, "expected leading '1/'"))?;
        let open = rest.find('(').ok_or_else(|| bad(2, "expected '('"))?;
        let order: i64 = rest[..open]
            .parse()
            .map_err(|_| bad(2, "bad group order"))?;
        let body = rest[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| bad(compact.len(), "expected closing ')'"))?;
        let (ws, e) = match body.split_once(';') {
            Some((ws, e)) => (ws, Some(e)),
            None => (body, None),
        };
        let weights = ws
            .split(',')
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad(open + 3, "bad weight list"))?;
        match e {
            None => CyclicQuotient::new(order, &weights),
            Some(e) => {
                let e: i64 = e
                    .parse()
                    .map_err(|_| bad(open + 3, "bad equation weight"))?;
                CyclicQuotient::with_equation_weight(order, &weights, e)
            }
        }
    }
}

pub fn is_isolated_action(q: &CyclicQuotient) -> bool {
    q.weights.iter().all(|&w| gcd(w, q.order) == 1)
}

/// Terminality of `1/r(w1, w2, w3)` via the normal form `1/r(1, -1, b)`.
pub fn is_terminal_quotient(q: &CyclicQuotient) -> bool {
    let r = q.order;
    if r == 1 {
        return true;
    }
    let w = &q.weights;
    assert_eq!(
        w.len(),
        3,
        "terminality of a 3-fold quotient needs three weights"
    );
    for i in 0..3 {
        let Some(t) = inverse_mod(w[i], r) else {
            continue;
        };
        for j in (0..3).filter(|&j| j != i) {
            let k = 3 - i - j;
            if residue(t * w[j], r) == r - 1 && gcd(t * w[k], r) == 1 {
                return true;
            }
        }
    }
    false
}

/// Reid–Tai: `Σ frac(k w_i / r) > 1` for every `k = 1..r-1`, on an isolated
/// action. Used as an independent check of [`is_terminal_quotient`].
pub fn reid_tai_terminal(q: &CyclicQuotient) -> bool {
    let r = q.order;
    is_isolated_action(q)
        && (1..r).all(|k| q.weights.iter().map(|&w| residue(k * w, r)).sum::<i64>() > r)
}

/// Reid–Tai-type test for `(F = 0) / Z_r` with `F` semi-invariant of weight
/// `e`: `Σ frac(k w_i / r) - frac(k e / r) > 1` for every `k`.
pub fn is_terminal_hyperquotient(q: &CyclicQuotient) -> bool {
    let r = q.order;
    let e = q
        .equation_weight
        .expect("hyperquotient test needs an equation weight");
    (1..r)
        .all(|k| q.weights.iter().map(|&w| residue(k * w, r)).sum::<i64>() - residue(k * e, r) > r)
}

/// Valuation form of the hyperquotient inequality. For each `k` the weight
/// `α_k = (k·w_i mod r)` must satisfy `Σ α_k,i − α_k(F) > r`, where `α_k(F)`
/// is the least `α_k`-weight of a monomial of `F`.
pub fn hyperquotient_valuation_terminal(q: &CyclicQuotient, terms: &[Vec<i64>]) -> bool {
    let r = q.order;
    (1..r).all(|k| {
        let alpha: Vec<i64> = q.weights.iter().map(|&w| residue(k * w, r)).collect();
        let order_f = terms
            .iter()
            .map(|t| t.iter().zip(&alpha).map(|(e, a)| e * a).sum::<i64>())
            .min()
            .unwrap_or(0);
        alpha.iter().sum::<i64>() - order_f > r
    })
}

/// Type of an isolated surface quotient point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfacePointType {
    Smooth,
    /// `A_k`, resolved by `k` (-2)-curves.
    DuValA(i64),
    /// Non-Du-Val cyclic quotient with its resolution chain.
    Cyclic(HjChain),
}

impl SurfacePointType {
    /// Resolution chain; A-type points give all-2 chains.
    pub fn chain(&self) -> HjChain {
        match self {
            SurfacePointType::Smooth => hj_expand(1, 0).expect("empty chain"),
            SurfacePointType::DuValA(k) => hj_expand(k + 1, *k).expect("A_k chain"),
            SurfacePointType::Cyclic(c) => c.clone(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            SurfacePointType::Smooth => "smooth".into(),
            SurfacePointType::DuValA(k) => format!("A_{k}"),
            SurfacePointType::Cyclic(c) => format!("1/{}(1,{})", c.order, c.q),
        }
    }
}

impl fmt::Display for SurfacePointType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub fn duval_of_surface_quotient(q: &CyclicQuotient) -> Result<SurfacePointType> {
    if q.weights.len() != 2 || q.equation_weight.is_some() {
        return Err(Error::InvalidInput(format!(
            "{q} is not a surface quotient"
        )));
    }
    if !is_isolated_action(q) {
        return Err(Error::InvalidInput(format!(
            "{q} is not an isolated action"
        )));
    }
    let r = q.order;
    if r == 1 {
        return Ok(SurfacePointType::Smooth);
    }
    let inv = inverse_mod(q.weights[0], r).expect("isolated");
    let qq = residue(q.weights[1] * inv, r);
    if qq == r - 1 {
        Ok(SurfacePointType::DuValA(r - 1))
    } else {
        Ok(SurfacePointType::Cyclic(hj_expand(r, qq)?))
    }
}
