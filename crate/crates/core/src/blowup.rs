//! Weighted blow-ups: the four affine charts restricted to the germ, the
//! lowest-weight part cutting out the exceptional divisor, and the
//! discrepancy.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, gcd_all, Rational};
use crate::error::{Error, Result};
use crate::germ::{weighted_mult, GermModel};
use crate::quotient::CyclicQuotient;

pub const VARIABLES: [char; 4] = ['x', 'y', 'z', 'u'];

/// Weights `(a, b, c, d)` of `(x, y, z, u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "[i64; 4]", try_from = "[i64; 4]")]
pub struct WeightVector([i64; 4]);

impl WeightVector {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<WeightVector> {
        WeightVector::try_from([a, b, c, d])
    }

    pub fn as_array(&self) -> [i64; 4] {
        self.0
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn product(&self) -> i64 {
        self.0.iter().product()
    }

    /// `(b, a, c, d)`.
    pub fn swap_xy(&self) -> WeightVector {
        let [a, b, c, d] = self.0;
        WeightVector([b, a, c, d])
    }

    /// `(a, b, d, c)`.
    pub fn swap_zu(&self) -> WeightVector {
        let [a, b, c, d] = self.0;
        WeightVector([a, b, d, c])
    }
}

impl TryFrom<[i64; 4]> for WeightVector {
    type Error = Error;
    fn try_from(w: [i64; 4]) -> Result<Self> {
        if w.iter().any(|&x| x < 1) {
            return Err(Error::InvalidInput(format!(
                "weights must be positive, got {w:?}"
            )));
        }
        if gcd_all(&w) != 1 {
            return Err(Error::InvalidInput(format!(
                "weights {w:?} are not coprime"
            )));
        }
        Ok(WeightVector(w))
    }
}

impl From<WeightVector> for [i64; 4] {
    fn from(w: WeightVector) -> [i64; 4] {
        w.0
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "({a},{b},{c},{d})")
    }
}

impl FromStr for WeightVector {
    type Err = Error;

    /// `a,b,c,d`, optionally parenthesized.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::parse(
                0,
                format!("expected four comma-separated weights, got {s:?}"),
            ));
        }
        let mut w = [0i64; 4];
        for (slot, p) in w.iter_mut().zip(&parts) {
            *slot = p
                .parse()
                .map_err(|_| Error::parse(0, format!("bad weight {p:?} in {s:?}")))?;
        }
        WeightVector::try_from(w)
    }
}

pub type Exponents = [i64; 4];

/// `x^e0 y^e1 z^e2 u^e3`.
pub fn render_monomial(e: &Exponents) -> String {
    let mut out = String::new();
    for (v, &k) in VARIABLES.iter().zip(e) {
        match k {
            0 => {}
            1 => out.push(*v),
            _ => out.push_str(&format!("{v}^{k}")),
        }
    }
    if out.is_empty() {
        out.push('1');
    }
    out
}

/// Terms of `xy + f` as exponent vectors: `xy` first, then `f` with higher
/// powers of `z` first.
pub fn germ_terms(g: &GermModel) -> Vec<Exponents> {
    let mut f: Vec<Exponents> = g.terms().iter().map(|m| [0, 0, m.p, m.q]).collect();
    f.sort_by(|s, t| t[2].cmp(&s[2]));
    std::iter::once([1, 1, 0, 0]).chain(f).collect()
}

pub fn weight_of(w: &WeightVector, e: &Exponents) -> i64 {
    e.iter().zip(w.0).map(|(k, wi)| k * wi).sum()
}

/// One affine chart `U_i` of the weighted blow-up restricted to the germ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    /// 1-based, the coordinate that is not divided out.
    pub index: usize,
    pub terms: Vec<Exponents>,
    /// Group weights before reduction: `-w_j` off the chart index, `1` on it.
    pub group_weights: [i64; 4],
    pub order: i64,
}

impl Chart {
    /// 0-based position of the chart variable.
    pub fn chart_var(&self) -> usize {
        self.index - 1
    }

    pub fn group(&self) -> CyclicQuotient {
        CyclicQuotient::new(self.order, &self.group_weights).expect("order >= 1")
    }

    /// Weight of the (semi-invariant) equation mod the group order.
    pub fn equation_weight(&self) -> i64 {
        let w = self.group_weights;
        let weight = |t: &Exponents| t.iter().zip(w).map(|(k, wi)| k * wi).sum::<i64>();
        crate::arith::residue(weight(&self.terms[0]), self.order)
    }

    pub fn is_semi_invariant(&self) -> bool {
        let e = self.equation_weight();
        self.terms.iter().all(|t| {
            let s: i64 = t.iter().zip(self.group_weights).map(|(k, wi)| k * wi).sum();
            crate::arith::residue(s, self.order) == e
        })
    }

    pub fn has_term(&self, e: &Exponents) -> bool {
        self.terms.contains(e)
    }

    /// Variable `v` such that the equation contains the bare term `v` and no
    /// other term involves `v`.
    pub fn bare_variable(&self) -> Option<usize> {
        (0..4).find(|&v| {
            let mut unit = [0; 4];
            unit[v] = 1;
            self.has_term(&unit) && self.terms.iter().filter(|t| t[v] > 0).count() == 1
        })
    }

    pub fn has_constant(&self) -> bool {
        self.has_term(&[0; 4])
    }

    pub fn equation(&self) -> String {
        self.terms
            .iter()
            .map(render_monomial)
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn render(&self) -> String {
        let gw = self
            .group_weights
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "U{} = {{ {} }} / Z_{}({})",
            self.index,
            self.equation(),
            self.order,
            gw
        )
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The four charts: substitute `x_j -> x̄_j x̄_i^{w_j}`, `x_i -> x̄_i^{w_i}`
/// and divide by `x̄_i^{w(f)}`.
pub fn make_charts(g: &GermModel, w: &WeightVector) -> Vec<Chart> {
    let wm = weighted_mult(g, w);
    let terms = germ_terms(g);
    (0..4)
        .map(|i| {
            let chart_terms = terms
                .iter()
                .map(|e| {
                    let mut t = *e;
                    t[i] = weight_of(w, e) - wm;
                    t
                })
                .collect();
            let mut group_weights = w.0.map(|x| -x);
            group_weights[i] = 1;
            Chart {
                index: i + 1,
                terms: chart_terms,
                group_weights,
                order: w.0[i],
            }
        })
        .collect()
}

/// Exponents of a chart term in the original coordinates, up to the common
/// factor `x_i^{-w(f)/w_i}`.
pub fn pull_back_term(chart: &Chart, w: &WeightVector, term: &Exponents) -> [Rational; 4] {
    let i = chart.chart_var();
    let mut out = term.map(Rational::from);
    let off: i64 = (0..4).filter(|&k| k != i).map(|k| w.0[k] * term[k]).sum();
    out[i] = Rational::new(term[i] - off, w.0[i]);
    out
}

pub fn discrepancy(g: &GermModel, w: &WeightVector) -> i64 {
    w.sum() - 1 - weighted_mult(g, w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalDivisor {
    pub ambient: WeightVector,
    pub degree: i64,
    pub lowest_part: Vec<Exponents>,
    pub irreducible: bool,
    pub reduced: bool,
}

impl ExceptionalDivisor {
    pub fn is_ok(&self) -> bool {
        self.irreducible && self.reduced
    }

    pub fn contains_xy(&self) -> bool {
        self.lowest_part.contains(&[1, 1, 0, 0])
    }

    pub fn render(&self) -> String {
        let [a, b, c, d] = self.ambient.as_array();
        format!(
            "{{ {} = 0 }} in P({a},{b},{c},{d})",
            self.lowest_part
                .iter()
                .map(render_monomial)
                .collect::<Vec<_>>()
                .join(" + ")
        )
    }
}

pub fn exceptional_part(g: &GermModel, w: &WeightVector) -> ExceptionalDivisor {
    let wm = weighted_mult(g, w);
    let lowest: Vec<Exponents> = germ_terms(g)
        .into_iter()
        .filter(|e| weight_of(w, e) == wm)
        .collect();
    let (irreducible, reduced) = if lowest.contains(&[1, 1, 0, 0]) {
        // xy alone is two hyperplanes; xy + g is irreducible and reduced
        (lowest.len() > 1, true)
    } else {
        let zu: Vec<(i64, i64)> = lowest.iter().map(|e| (e[2], e[3])).collect();
        binary_form_shape(&zu, w.get(2), w.get(3))
    };
    ExceptionalDivisor {
        ambient: *w,
        degree: wm,
        lowest_part: lowest,
        irreducible,
        reduced,
    }
}

/// `(irreducible, reduced)` for a weighted-homogeneous sum of monomials
/// `z^p u^q` with unit coefficients.
fn binary_form_shape(terms: &[(i64, i64)], c: i64, d: i64) -> (bool, bool) {
    let alpha = terms.iter().map(|t| t.0).min().expect("non-empty");
    let beta = terms.iter().map(|t| t.1).min().expect("non-empty");
    if terms.len() == 1 {
        let (p, q) = terms[0];
        let irreducible = p == 0 || q == 0;
        return (irreducible, p <= 1 && q <= 1);
    }
    // h = g / (z^alpha u^beta) = H(z^{d'}, u^{c'}) with H homogeneous of degree n
    let g = gcd(c, d);
    let (cp, dp) = (c / g, d / g);
    let h: Vec<(i64, i64)> = terms.iter().map(|&(p, q)| (p - alpha, q - beta)).collect();
    let n = h.iter().map(|&(p, _)| p / dp).max().expect("non-empty");
    let coeffs: Vec<i64> = (0..=n)
        .map(|k| {
            h.iter()
                .filter(|&&(p, q)| p == k * dp && q == (n - k) * cp)
                .count() as i64
        })
        .collect();
    let h_irreducible = n == 1;
    let h_reduced = is_squarefree(&coeffs);
    let monomial_factor = alpha > 0 || beta > 0;
    (
        h_irreducible && !monomial_factor,
        h_reduced && alpha <= 1 && beta <= 1,
    )
}

/// Square-freeness of `Σ coeffs[k] t^k` over Q (with `t = 0` a root only if
/// `coeffs[0] = 0`).
fn is_squarefree(coeffs: &[i64]) -> bool {
    let p: Vec<Rational> = coeffs.iter().map(|&c| Rational::from(c)).collect();
    let dp: Vec<Rational> = p
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c * k as i64)
        .collect();
    poly_gcd_degree(p, dp) == 0
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_gcd_degree(a: Vec<Rational>, b: Vec<Rational>) -> usize {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        while a.len() >= b.len() && !a.is_empty() {
            let shift = a.len() - b.len();
            let f = *a.last().expect("non-empty") / *b.last().expect("non-empty");
            for (k, &c) in b.iter().enumerate() {
                a[k + shift] = a[k + shift] - f * c;
            }
            a = trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Chart of the weighted blow-up of the ambient quotient `C^n / Z_m(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientChart {
    pub index: usize,
    pub order: i64,
    pub weights: Vec<i64>,
    /// `x_k = y_k^{e_k} y_i^{f_k}`: pairs `(own exponent, chart exponent)`.
    pub relations: Vec<(i64, Rational)>,
}

impl AmbientChart {
    pub fn render(&self) -> String {
        let n = self.weights.len();
        let ws = self
            .weights
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let rel = self
            .relations
            .iter()
            .enumerate()
            .map(|(k, (own, chart))| {
                let i = self.index;
                if k + 1 == i {
                    format!("x{} = y{}^({})", k + 1, i, chart)
                } else {
                    debug_assert_eq!(*own, 1);
                    format!("x{} = y{} y{}^({})", k + 1, k + 1, i, chart)
                }
            })
            .collect::<Vec<_>>()
            .join(", ");
        format!("U{} = C^{n} / Z_{}({ws})  [{rel}]", self.index, self.order)
    }
}

/// Weighted blow-up of `C^n / Z_m(a_1, ..., a_n)` with weights `a_i`; the
/// exceptional divisor is `P(a_1, ..., a_n)`.
pub fn quotient_blowup(m: i64, a: &[i64]) -> Result<Vec<AmbientChart>> {
    if m < 1 || a.is_empty() || a.iter().any(|&x| x < 1) {
        return Err(Error::InvalidInput(
            "quotient blow-up needs m >= 1 and positive weights".into(),
        ));
    }
    if gcd_all(a) != 1 {
        return Err(Error::InvalidInput(format!(
            "weights {a:?} are not coprime"
        )));
    }
    Ok((0..a.len())
        .map(|i| {
            let weights = a
                .iter()
                .enumerate()
                .map(|(k, &x)| if k == i { m } else { -x })
                .collect();
            let relations = a
                .iter()
                .enumerate()
                .map(|(k, &x)| {
                    if k == i {
                        (0, Rational::new(a[i], m))
                    } else {
                        (1, Rational::new(x, m))
                    }
                })
                .collect();
            AmbientChart {
                index: i + 1,
                order: a[i],
                weights,
                relations,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::parse_germ;

    fn w(a: i64, b: i64, c: i64, d: i64) -> WeightVector {
        WeightVector::new(a, b, c, d).unwrap()
    }

    #[test]
    fn weight_vector_validation() {
        assert!(WeightVector::new(2, 2, 2, 2).is_err());
        assert!(WeightVector::new(0, 1, 1, 1).is_err());
        assert_eq!("1,3,1,1".parse::<WeightVector>().unwrap(), w(1, 3, 1, 1));
        assert_eq!(
            "(2, 1, 1, 1)".parse::<WeightVector>().unwrap(),
            w(2, 1, 1, 1)
        );
        assert!("1,2,3".parse::<WeightVector>().is_err());
    }

    #[test]
    fn fermat_chart_two() {
        for n in 3..8 {
            let charts = make_charts(&GermModel::fermat(n), &w(1, n - 1, 1, 1));
            let c2 = &charts[1];
            assert_eq!(c2.terms, vec![[1, 0, 0, 0], [0, 0, n, 0], [0, 0, 0, n]]);
            assert_eq!(c2.order, n - 1);
            assert_eq!(c2.group_weights, [-1, 1, -1, -1]);
        }
        let charts = make_charts(&GermModel::fermat(4), &w(1, 3, 1, 1));
        assert_eq!(
            charts[1].render(),
            "U2 = { x + z^4 + u^4 } / Z_3(-1,1,-1,-1)"
        );
    }

    #[test]
    fn e6_chart_four() {
        let g = parse_germ("xy + z^3 + u^4").unwrap();
        let c4 = &make_charts(&g, &w(1, 2, 1, 1))[3];
        assert_eq!(c4.equation(), "xy + z^3 + u");
        assert_eq!(c4.order, 1);
    }

    #[test]
    fn general_fermat_chart_four() {
        // a + b = nc < nd
        let n = 3;
        let (a, b, c, d) = (1, 5, 2, 3);
        let c4 = &make_charts(&GermModel::fermat(n), &w(a, b, c, d))[3];
        assert_eq!(
            c4.terms,
            vec![[1, 1, 0, 0], [0, 0, n, 0], [0, 0, 0, n * (d - c)]]
        );
        assert_eq!(c4.group_weights, [-a, -b, -c, 1]);
        assert_eq!(c4.order, d);
    }

    #[test]
    fn charts_semi_invariant() {
        let g = parse_germ("xy + z^3 + u^4").unwrap();
        for v in [w(1, 2, 1, 1), w(3, 5, 2, 7), w(4, 4, 3, 1)] {
            for ch in make_charts(&g, &v) {
                assert!(ch.is_semi_invariant(), "{ch}");
            }
        }
    }

    #[test]
    fn discrepancies() {
        for n in 3..9 {
            for k in 1..n {
                assert_eq!(discrepancy(&GermModel::fermat(n), &w(k, n - k, 1, 1)), 1);
            }
        }
        assert_eq!(
            discrepancy(&parse_germ("xy + z^3 + u^4").unwrap(), &w(1, 2, 1, 1)),
            1
        );
        assert_eq!(discrepancy(&GermModel::fermat(3), &w(1, 5, 2, 2)), 3);
    }

    #[test]
    fn exceptional_shapes() {
        let e = exceptional_part(&parse_germ("xy + z^3 + u^4").unwrap(), &w(1, 2, 1, 1));
        assert_eq!(e.lowest_part, vec![[1, 1, 0, 0], [0, 0, 3, 0]]);
        assert!(e.irreducible && e.reduced);
        let e = exceptional_part(&GermModel::fermat(4), &w(1, 1, 1, 1));
        assert_eq!(e.lowest_part, vec![[1, 1, 0, 0]]);
        assert!(!e.irreducible);
        let e = exceptional_part(&GermModel::fermat(5), &w(1, 4, 1, 1));
        assert_eq!(e.lowest_part.len(), 3);
        assert!(e.is_ok());
        // pure power z^3: non-reduced
        let e = exceptional_part(&parse_germ("xy + z^3 + u^4").unwrap(), &w(5, 5, 1, 3));
        assert_eq!(e.lowest_part, vec![[0, 0, 3, 0]]);
        assert!(!e.reduced);
        // z^4 + u^4 without xy: four lines
        let e = exceptional_part(&GermModel::fermat(4), &w(3, 3, 1, 1));
        assert!(!e.irreducible && e.reduced);
        // z^3 + u^4 without xy: irreducible cusp-like curve
        let e = exceptional_part(&parse_germ("xy + z^3 + u^4").unwrap(), &w(7, 7, 4, 3));
        assert!(e.is_ok() && !e.contains_xy());
        // zu alone
        let e = exceptional_part(&parse_germ("xy + zu + z^5").unwrap(), &w(3, 3, 1, 1));
        assert!(!e.irreducible && e.reduced);
    }

    #[test]
    fn squarefree_test() {
        assert!(is_squarefree(&[1, 0, 1]));
        assert!(!is_squarefree(&[1, 2, 1]));
        assert!(is_squarefree(&[1, 1]));
    }

    #[test]
    fn gluing_consistency() {
        let g = parse_germ("xy + z^3 + u^4").unwrap();
        let v = w(3, 5, 2, 7);
        let original: Vec<[Rational; 4]> = germ_terms(&g)
            .iter()
            .map(|e| e.map(Rational::from))
            .collect();
        for ch in make_charts(&g, &v) {
            let i = ch.chart_var();
            let shift = Rational::new(weighted_mult(&g, &v), v.get(i));
            for (t, orig) in ch.terms.iter().zip(&original) {
                let mut back = pull_back_term(&ch, &v, t);
                back[i] = back[i] + shift;
                assert_eq!(&back, orig);
            }
        }
    }

    #[test]
    fn ambient_quotient_blowup() {
        let charts = quotient_blowup(1, &[1, 2, 3]).unwrap();
        assert_eq!(charts[1].order, 2);
        assert_eq!(charts[1].weights, vec![-1, 1, -3]);
        let charts = quotient_blowup(2, &[1, 1, 1]).unwrap();
        assert_eq!(charts[0].weights, vec![2, -1, -1]);
        assert_eq!(charts[0].relations[0], (0, Rational::new(1, 2)));
        assert!(quotient_blowup(1, &[2, 4]).is_err());
    }
}
