//! Singular points of the blow-up along the exceptional divisor, and the
//! terminality verdict.
//!
//! Each chart is scanned stratum by stratum: a stratum is the set of points
//! of `E ∩ U_i` whose nonzero coordinates are exactly a given subset. On a
//! stratum the stabilizer of the group is constant and the chart equation
//! together with its partial derivatives restricts to a sparse system on a
//! torus. A point of `E` is attributed to the chart of its smallest nonzero
//! coordinate, so every point is classified exactly once.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, residue};
use crate::blowup::{
    discrepancy, exceptional_part, germ_terms, make_charts, Chart, WeightVector, VARIABLES,
};
use crate::error::{Error, Result};
use crate::germ::GermModel;
use crate::quotient::{
    hyperquotient_valuation_terminal, is_isolated_action, is_terminal_hyperquotient,
    is_terminal_quotient, CyclicQuotient,
};
use crate::torus::{solve, Poly, ZeroSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointKind {
    SmoothEverywhere,
    HypersurfaceCa {
        equation: String,
    },
    CyclicQuotientPoint {
        quotient: CyclicQuotient,
        terminal: bool,
    },
    HyperquotientPoint {
        quotient: CyclicQuotient,
        terminal: bool,
        /// Verdict of the equation-weight inequality alone.
        inequality: bool,
    },
    PositiveDimensionalLocus {
        description: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub chart_index: usize,
    /// Nonzero chart coordinates of the point(s), empty for the origin.
    pub location: Vec<char>,
    #[serde(flatten)]
    pub kind: PointKind,
}

impl SingularPoint {
    pub fn is_terminal(&self) -> bool {
        match &self.kind {
            PointKind::SmoothEverywhere | PointKind::HypersurfaceCa { .. } => true,
            PointKind::CyclicQuotientPoint { terminal, .. }
            | PointKind::HyperquotientPoint { terminal, .. } => *terminal,
            PointKind::PositiveDimensionalLocus { .. } => false,
        }
    }

    pub fn quotient(&self) -> Option<&CyclicQuotient> {
        match &self.kind {
            PointKind::CyclicQuotientPoint { quotient, .. }
            | PointKind::HyperquotientPoint { quotient, .. } => Some(quotient),
            _ => None,
        }
    }
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.location.is_empty() {
            "origin".to_string()
        } else {
            format!("{} != 0", self.location.iter().collect::<String>())
        };
        match &self.kind {
            PointKind::SmoothEverywhere => write!(f, "U{}: smooth", self.chart_index),
            PointKind::HypersurfaceCa { equation } => {
                write!(
                    f,
                    "U{} {at}: cA point {{ {equation} = 0 }}",
                    self.chart_index
                )
            }
            PointKind::CyclicQuotientPoint { quotient, terminal } => write!(
                f,
                "U{} {at}: quotient {quotient} ({})",
                self.chart_index,
                if *terminal {
                    "terminal"
                } else {
                    "not terminal"
                }
            ),
            PointKind::HyperquotientPoint {
                quotient,
                terminal,
                inequality,
            } => {
                write!(
                    f,
                    "U{} {at}: hyperquotient {quotient} ({})",
                    self.chart_index,
                    if *terminal {
                        "terminal"
                    } else {
                        "not terminal"
                    }
                )?;
                if terminal != inequality {
                    write!(f, " [equation-weight inequality alone gives {inequality}]")?;
                }
                Ok(())
            }
            PointKind::PositiveDimensionalLocus { description } => {
                write!(f, "U{}: {description}", self.chart_index)
            }
        }
    }
}

/// Why a weight vector does not give a terminal extraction.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    NonPositiveDiscrepancy,
    ReducibleExceptional,
    NonReducedExceptional,
    PositiveDimensionalLocus { chart: usize },
    NonTerminalPoint { chart: usize },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::NonPositiveDiscrepancy => {
                f.write_str("not an extraction with positive discrepancy")
            }
            Rejection::ReducibleExceptional => f.write_str("reducible exceptional divisor"),
            Rejection::NonReducedExceptional => f.write_str("non-reduced exceptional divisor"),
            Rejection::PositiveDimensionalLocus { chart } => {
                write!(f, "positive-dimensional singular locus in chart {chart}")
            }
            Rejection::NonTerminalPoint { chart } => {
                write!(f, "non-terminal point in chart {chart}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalFlags {
    pub irreducible: bool,
    pub reduced: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowupVerdict {
    pub weights: WeightVector,
    pub discrepancy: i64,
    pub exceptional: ExceptionalFlags,
    pub terminal: bool,
    pub singular_points: Vec<SingularPoint>,
    pub rejection_reason: Option<String>,
    #[serde(skip)]
    pub rejection: Option<Rejection>,
}

impl BlowupVerdict {
    pub fn exceptional_ok(&self) -> bool {
        self.exceptional.irreducible && self.exceptional.reduced
    }

    pub fn accepted(&self) -> bool {
        self.terminal && self.exceptional_ok() && self.discrepancy >= 1
    }
}

/// Restriction of a chart equation to one stratum.
pub(crate) struct Stratum {
    /// Indices of the nonzero coordinates.
    pub support: Vec<usize>,
    /// The equation itself.
    pub equation: Poly,
    /// `x_j ∂F/∂x_j` for `j` in the support, `∂F/∂x_j` otherwise.
    pub partials: Vec<Poly>,
}

impl Stratum {
    /// `terms` live in `n` variables; the point has nonzero coordinates
    /// exactly on `support`, all other coordinates zero.
    pub fn new(terms: &[Vec<i64>], n: usize, support: Vec<usize>) -> Stratum {
        let restrict = |t: &[i64]| -> Vec<i64> { support.iter().map(|&k| t[k]).collect() };
        let inside = |t: &[i64], skip: Option<usize>| {
            (0..n).all(|k| support.contains(&k) || Some(k) == skip || t[k] == 0)
        };
        let mut equation = Poly::default();
        for t in terms.iter().filter(|t| inside(t, None)) {
            equation.add_term(restrict(t), 1);
        }
        let partials = (0..n)
            .map(|j| {
                let mut p = Poly::default();
                if support.contains(&j) {
                    for t in terms.iter().filter(|t| inside(t, None) && t[j] > 0) {
                        p.add_term(restrict(t), t[j]);
                    }
                } else {
                    for t in terms.iter().filter(|t| t[j] == 1 && inside(t, Some(j))) {
                        let mut e = t.to_vec();
                        e[j] = 0;
                        p.add_term(restrict(&e), 1);
                    }
                }
                p
            })
            .collect();
        Stratum {
            support,
            equation,
            partials,
        }
    }

    pub fn points(&self) -> Result<ZeroSet> {
        solve(std::slice::from_ref(&self.equation), self.support.len())
    }

    pub fn singular_points(&self) -> Result<ZeroSet> {
        let mut system = vec![self.equation.clone()];
        system.extend(self.partials.iter().cloned());
        solve(&system, self.support.len())
    }

    /// A coordinate whose partial derivative is nonzero at every point of
    /// the stratum, preferring coordinates in the support.
    pub fn normal_direction(&self) -> Result<Option<usize>> {
        let mut order: Vec<usize> = self.support.clone();
        order.extend((0..self.partials.len()).filter(|j| !self.support.contains(j)));
        for j in order {
            let sys = [self.equation.clone(), self.partials[j].clone()];
            if solve(&sys, self.support.len())?.is_empty() {
                return Ok(Some(j));
            }
        }
        Ok(None)
    }
}

/// Subsets of `free` (as sorted index lists).
pub(crate) fn subsets(free: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0u32..1 << free.len()).map(move |mask| {
        free.iter()
            .enumerate()
            .filter(|(b, _)| mask & (1 << b) != 0)
            .map(|(_, &v)| v)
            .collect()
    })
}

pub(crate) fn stabilizer(order: i64, weights: &[i64], support: &[usize]) -> i64 {
    support.iter().fold(order, |g, &k| gcd(g, weights[k]))
}

pub(crate) fn names(idx: &[usize], vars: &[char]) -> Vec<char> {
    idx.iter().map(|&k| vars[k]).collect()
}

/// Singular points of the blow-up lying on the exceptional divisor and
/// attributed to this chart.
pub fn chart_singularities(ch: &Chart) -> Result<Vec<SingularPoint>> {
    let cv = ch.chart_var();
    let terms: Vec<Vec<i64>> = ch.terms.iter().map(|t| t.to_vec()).collect();
    let weights: Vec<i64> = ch
        .group_weights
        .iter()
        .map(|&w| residue(w, ch.order))
        .collect();
    let e = ch.equation_weight();
    let free: Vec<usize> = (cv + 1..4).collect();
    let mut out = Vec::new();
    let mut deferred = None;
    let point = |location: &[usize], kind| SingularPoint {
        chart_index: ch.index,
        location: names(location, &VARIABLES),
        kind,
    };
    let mut strata: Vec<Vec<usize>> = subsets(&free).collect();
    strata.sort_by_key(|s| std::cmp::Reverse(s.len()));
    for support in strata {
        let st = Stratum::new(&terms, 4, support.clone());
        let pts = st.points()?;
        if pts.is_empty() {
            continue;
        }
        let sing = st.singular_points()?;
        let s = stabilizer(ch.order, &weights, &support);
        let where_ = if support.is_empty() {
            "the origin".to_string()
        } else {
            format!(
                "{} != 0",
                names(&support, &VARIABLES).iter().collect::<String>()
            )
        };
        if let ZeroSet::Dim(d) = sing {
            if d > 0 {
                out.push(point(
                    &support,
                    PointKind::PositiveDimensionalLocus {
                        description: format!(
                            "{d}-dimensional singular locus of the chart hypersurface where {where_}"
                        ),
                    },
                ));
                continue;
            }
        }
        if s > 1 && pts.positive_dimensional() {
            let ZeroSet::Dim(d) = pts else { unreachable!() };
            out.push(point(
                &support,
                PointKind::PositiveDimensionalLocus {
                    description: format!(
                        "{d}-dimensional locus with stabilizer of order {s} where {where_}"
                    ),
                },
            ));
            continue;
        }
        if pts.positive_dimensional() {
            // smooth, trivial stabilizer
            continue;
        }
        if !sing.is_empty() {
            if !support.is_empty() {
                deferred.get_or_insert(Error::UnsupportedShape(format!(
                    "{}: singular point of the hypersurface away from the chart origin ({where_})",
                    ch.render()
                )));
                continue;
            }
            if !ch.has_term(&[1, 1, 0, 0]) {
                deferred.get_or_insert(Error::UnsupportedShape(format!(
                    "{}: singular origin without an xy term",
                    ch.render()
                )));
                continue;
            }
            let q = CyclicQuotient::hyperquotient(ch.order, &ch.group_weights, &terms)?;
            let kind = if q.is_trivial() {
                PointKind::HypersurfaceCa {
                    equation: ch.equation(),
                }
            } else {
                let inequality = is_terminal_hyperquotient(&q);
                PointKind::HyperquotientPoint {
                    terminal: inequality && hyperquotient_valuation_terminal(&q, &terms),
                    inequality,
                    quotient: q,
                }
            };
            out.push(point(&support, kind));
            continue;
        }
        if s == 1 {
            continue;
        }
        let Some(j) = st.normal_direction()? else {
            return Err(Error::UnsupportedShape(format!(
                "{}: no coordinate transverse to the hypersurface where {where_}",
                ch.render()
            )));
        };
        debug_assert_eq!(residue(weights[j] - e, s), 0);
        let residual: Vec<i64> = (0..4)
            .filter(|&k| k != j)
            .map(|k| residue(weights[k], s))
            .collect();
        let q = CyclicQuotient::new(s, &residual)?;
        let terminal = is_isolated_action(&q) && is_terminal_quotient(&q);
        out.push(point(
            &support,
            PointKind::CyclicQuotientPoint {
                quotient: q,
                terminal,
            },
        ));
    }
    // a non-isolated singular locus already settles the chart
    let settled = out
        .iter()
        .any(|p| matches!(p.kind, PointKind::PositiveDimensionalLocus { .. }));
    if let Some(err) = deferred.filter(|_| !settled) {
        return Err(err);
    }
    if out.is_empty() {
        out.push(point(&[], PointKind::SmoothEverywhere));
    }
    out.sort_by_key(|p| p.location.len());
    Ok(out)
}

/// The point of the germ itself, before any blow-up. It is singular with an
/// `xy` term and trivial group, so it is a cA point.
pub fn germ_point(g: &GermModel) -> Result<SingularPoint> {
    let terms: Vec<Vec<i64>> = germ_terms(g).iter().map(|t| t.to_vec()).collect();
    let st = Stratum::new(&terms, 4, Vec::new());
    let kind = if st.singular_points()?.is_empty() {
        PointKind::SmoothEverywhere
    } else {
        PointKind::HypersurfaceCa {
            equation: g.to_string(),
        }
    };
    Ok(SingularPoint {
        chart_index: 0,
        location: Vec::new(),
        kind,
    })
}

pub fn blowup_verdict(g: &GermModel, w: &WeightVector) -> Result<BlowupVerdict> {
    let disc = discrepancy(g, w);
    let ex = exceptional_part(g, w);
    let mut verdict = BlowupVerdict {
        weights: *w,
        discrepancy: disc,
        exceptional: ExceptionalFlags {
            irreducible: ex.irreducible,
            reduced: ex.reduced,
        },
        terminal: false,
        singular_points: Vec::new(),
        rejection_reason: None,
        rejection: None,
    };
    let reject = |mut v: BlowupVerdict, r: Rejection| {
        v.rejection_reason = Some(r.to_string());
        v.rejection = Some(r);
        v
    };
    if !ex.irreducible {
        return Ok(reject(verdict, Rejection::ReducibleExceptional));
    }
    if !ex.reduced {
        return Ok(reject(verdict, Rejection::NonReducedExceptional));
    }
    if disc < 1 {
        return Ok(reject(verdict, Rejection::NonPositiveDiscrepancy));
    }
    // a singular curve seen from one chart can look like an unsupported
    // point from another; a positive-dimensional locus anywhere settles it
    let mut deferred = None;
    for ch in make_charts(g, w) {
        match chart_singularities(&ch) {
            Ok(pts) => verdict.singular_points.extend(
                pts.into_iter()
                    .filter(|p| p.kind != PointKind::SmoothEverywhere),
            ),
            Err(e @ Error::UnsupportedShape(_)) => {
                deferred.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    let settled = verdict
        .singular_points
        .iter()
        .any(|p| matches!(p.kind, PointKind::PositiveDimensionalLocus { .. }));
    if let Some(err) = deferred.filter(|_| !settled) {
        return Err(err);
    }
    let first_bad = verdict
        .singular_points
        .iter()
        .find(|p| !p.is_terminal())
        .map(|p| match p.kind {
            PointKind::PositiveDimensionalLocus { .. } => Rejection::PositiveDimensionalLocus {
                chart: p.chart_index,
            },
            _ => Rejection::NonTerminalPoint {
                chart: p.chart_index,
            },
        });
    match first_bad {
        Some(r) => Ok(reject(verdict, r)),
        None => {
            verdict.terminal = true;
            Ok(verdict)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::germ::parse_germ;

    fn w(a: i64, b: i64, c: i64, d: i64) -> WeightVector {
        WeightVector::new(a, b, c, d).unwrap()
    }

    #[test]
    fn fermat_chart_two_quotient_point() {
        for n in 3..9 {
            let charts = make_charts(&GermModel::fermat(n), &w(1, n - 1, 1, 1));
            let pts = chart_singularities(&charts[1]).unwrap();
            assert_eq!(pts.len(), 1);
            let q = pts[0].quotient().unwrap();
            let expected = CyclicQuotient::new(n - 1, &[1, -1, -1]).unwrap();
            assert_eq!(q.canonical(), expected.canonical());
            assert!(pts[0].is_terminal());
            let u3 = chart_singularities(&charts[2]).unwrap();
            assert_eq!(
                u3,
                vec![SingularPoint {
                    chart_index: 3,
                    location: vec![],
                    kind: PointKind::SmoothEverywhere
                }]
            );
        }
    }

    #[test]
    fn fermat_family_is_terminal() {
        for n in 3..9 {
            for k in 1..n {
                let v = blowup_verdict(&GermModel::fermat(n), &w(k, n - k, 1, 1)).unwrap();
                assert!(v.terminal, "n = {n}, k = {k}: {v:?}");
                assert_eq!(v.discrepancy, 1);
            }
        }
    }

    #[test]
    fn non_terminal_example() {
        let v = blowup_verdict(&GermModel::fermat(3), &w(1, 5, 2, 2)).unwrap();
        assert!(!v.terminal);
        assert_eq!(v.discrepancy, 3);
        assert_eq!(v.rejection, Some(Rejection::NonTerminalPoint { chart: 2 }));
        let bad = v.singular_points.iter().find(|p| !p.is_terminal()).unwrap();
        assert_eq!(
            bad.quotient().unwrap().canonical(),
            CyclicQuotient::new(5, &[1, -2, -2]).unwrap().canonical()
        );
    }

    #[test]
    fn e6_germ_point() {
        let g = parse_germ("xy + z^3 + u^4").unwrap();
        let v = blowup_verdict(&g, &w(1, 2, 1, 1)).unwrap();
        assert!(v.terminal);
        assert_eq!(v.singular_points.len(), 1);
        assert_eq!(
            v.singular_points[0].quotient().unwrap().canonical(),
            CyclicQuotient::new(2, &[-1, 1, 1]).unwrap().canonical()
        );
    }

    #[test]
    fn fixed_locus_scan_with_constant_chart() {
        // chart 3 of (1,5,2,2) on xy + z^3 + u^3: Z_2, equation with constant
        let charts = make_charts(&GermModel::fermat(3), &w(1, 5, 2, 2));
        let c3 = &charts[2];
        assert!(c3.has_constant());
        let pts = chart_singularities(c3).unwrap();
        // x̄ȳ + 1 + ū^3 with Z_2(1,1,1,0): the curve {x̄ȳ = -1 - ū^3} is not
        // fixed, the u-axis misses the equation; the fixed set on E is the
        // set {x̄ = ȳ = 0, ū^3 = -1} whose transverse action is 1/2(1,1,1)
        assert!(pts.iter().all(|p| p.is_terminal()), "{pts:?}");
        assert!(pts.iter().any(|p| p.location == vec!['u']), "{pts:?}");
    }

    #[test]
    fn reducible_rejected_first() {
        let v = blowup_verdict(&GermModel::fermat(4), &w(1, 1, 1, 1)).unwrap();
        assert_eq!(v.rejection, Some(Rejection::ReducibleExceptional));
        assert!(!v.terminal);
    }

    #[test]
    fn ordinary_blowup_of_a_node() {
        let v = blowup_verdict(&parse_germ("xy + z^2 + u^2").unwrap(), &w(1, 1, 1, 1)).unwrap();
        assert!(v.terminal);
        assert!(v.singular_points.is_empty());
    }

    #[test]
    fn xy_symmetry_of_verdicts() {
        let g = parse_germ("xy + z^3 + u^4").unwrap();
        for (a, b, c, d) in [(1, 2, 1, 1), (1, 5, 2, 2), (2, 7, 3, 2), (4, 8, 4, 3)] {
            let Ok(v) = WeightVector::new(a, b, c, d) else {
                continue;
            };
            let x = blowup_verdict(&g, &v).unwrap();
            let y = blowup_verdict(&g, &v.swap_xy()).unwrap();
            assert_eq!(x.terminal, y.terminal);
            assert_eq!(x.discrepancy, y.discrepancy);
        }
    }
}
