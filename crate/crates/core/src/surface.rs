//! Numerical invariants of the exceptional surface `E`: `K_E^2`, singular
//! points, the minimal resolution, and the curves cut out by `x = 0`.

use serde::{Deserialize, Serialize};

use crate::arith::{residue, Rational};
use crate::blowup::{exceptional_part, make_charts, Chart, WeightVector, VARIABLES};
use crate::error::{Error, Result};
use crate::germ::{weighted_mult, GermModel};
use crate::quotient::{
    duval_of_surface_quotient, is_isolated_action, CyclicQuotient, SurfacePointType,
};
use crate::terminality::{names, stabilizer, subsets, Stratum};
use crate::torus::ZeroSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfacePoint {
    pub chart_index: usize,
    pub location: Vec<char>,
    pub kind: SurfacePointType,
}

impl SurfacePoint {
    pub fn label(&self) -> String {
        self.kind.label()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSection {
    pub component_count: i64,
    /// Multiplicity of each component in `(x = 0)|_E`.
    pub multiplicity: i64,
    pub total: Rational,
    pub pairwise_intersection: Rational,
    pub self_intersection: Rational,
    pub resolved_self_intersection: Rational,
    /// Singular points of `E` each component passes through.
    pub passes_through: Vec<String>,
}

impl CurveSection {
    /// `N l^2 + N(N-1) (l_i · l_j) = (x = 0)^2 / m^2`.
    pub fn identity_holds(&self) -> bool {
        let n = self.component_count;
        let m2 = Rational::from(self.multiplicity * self.multiplicity);
        self.self_intersection * n + self.pairwise_intersection * (n * (n - 1)) == self.total / m2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub k2: Rational,
    pub singular_points: Vec<SurfacePoint>,
    pub k2_resolution: Rational,
    pub euler_resolution: i64,
    pub b2_resolution: i64,
    pub picard: i64,
    pub curve_data: Option<CurveSection>,
}

fn require_good_exceptional(g: &GermModel, w: &WeightVector) -> Result<()> {
    let ex = exceptional_part(g, w);
    if !ex.is_ok() {
        return Err(Error::InvalidInput(format!(
            "exceptional divisor {} is not irreducible and reduced",
            ex.render()
        )));
    }
    Ok(())
}

/// `K_E^2` of a degree-`w(f)` surface in `P(a,b,c,d)` by adjunction.
pub fn surface_k2(g: &GermModel, w: &WeightVector) -> Result<Rational> {
    require_good_exceptional(g, w)?;
    let wm = weighted_mult(g, w);
    let k = wm - w.sum();
    Ok(Rational::new(k * k * wm, w.product()))
}

fn chart_surface_points(ch: &Chart) -> Result<Vec<SurfacePoint>> {
    let cv = ch.chart_var();
    let keep: Vec<usize> = (0..4).filter(|&k| k != cv).collect();
    let vars: Vec<char> = keep.iter().map(|&k| VARIABLES[k]).collect();
    let terms: Vec<Vec<i64>> = ch
        .terms
        .iter()
        .filter(|t| t[cv] == 0)
        .map(|t| keep.iter().map(|&k| t[k]).collect())
        .collect();
    let weights: Vec<i64> = keep
        .iter()
        .map(|&k| residue(ch.group_weights[k], ch.order))
        .collect();
    let free: Vec<usize> = (0..3).filter(|&k| keep[k] > cv).collect();
    let unsupported =
        |what: String| Error::UnsupportedShape(format!("{} restricted to E: {what}", ch.render()));
    let mut out = Vec::new();
    for support in subsets(&free) {
        let st = Stratum::new(&terms, 3, support.clone());
        let pts = st.points()?;
        if pts.is_empty() {
            continue;
        }
        let sing = st.singular_points()?;
        let s = stabilizer(ch.order, &weights, &support);
        if sing.positive_dimensional() {
            return Err(unsupported("non-normal exceptional surface".into()));
        }
        if s > 1 && pts.positive_dimensional() {
            return Err(unsupported(format!(
                "curve of points with stabilizer of order {s}"
            )));
        }
        if pts.positive_dimensional() {
            continue;
        }
        let location = names(&support, &vars);
        if sing != ZeroSet::Empty {
            if !support.is_empty() || ch.order > 1 {
                return Err(unsupported(
                    "singular point outside the Du Val catalogue".into(),
                ));
            }
            let kind = du_val_hypersurface(&terms)
                .ok_or_else(|| unsupported("singular point outside the Du Val catalogue".into()))?;
            out.push(SurfacePoint {
                chart_index: ch.index,
                location,
                kind,
            });
            continue;
        }
        if s == 1 {
            continue;
        }
        let j = st
            .normal_direction()?
            .ok_or_else(|| unsupported("no transverse coordinate".into()))?;
        let residual: Vec<i64> = (0..3)
            .filter(|&k| k != j)
            .map(|k| residue(weights[k], s))
            .collect();
        let q = CyclicQuotient::new(s, &residual)?;
        if !is_isolated_action(&q) {
            return Err(unsupported(format!("non-isolated surface action {q}")));
        }
        out.push(SurfacePoint {
            chart_index: ch.index,
            location,
            kind: duval_of_surface_quotient(&q)?,
        });
    }
    Ok(out)
}

/// `v_1 v_2 + v_3^k` gives `A_{k-1}`.
fn du_val_hypersurface(terms: &[Vec<i64>]) -> Option<SurfacePointType> {
    if terms.len() != 2 {
        return None;
    }
    let is_mixed =
        |t: &Vec<i64>| t.iter().filter(|&&e| e == 1).count() == 2 && t.iter().sum::<i64>() == 2;
    let (mixed, power) = if is_mixed(&terms[0]) {
        (&terms[0], &terms[1])
    } else if is_mixed(&terms[1]) {
        (&terms[1], &terms[0])
    } else {
        return None;
    };
    let third = (0..3).find(|&k| mixed[k] == 0)?;
    let k = power[third];
    let pure = (0..3).all(|v| v == third || power[v] == 0);
    (pure && k >= 2).then_some(SurfacePointType::DuValA(k - 1))
}

/// Singular points of `E`, one entry per point (origins of charts and
/// fixed points found by the stratum scan).
pub fn surface_singularities(g: &GermModel, w: &WeightVector) -> Result<Vec<SurfacePoint>> {
    require_good_exceptional(g, w)?;
    let mut out = Vec::new();
    for ch in make_charts(g, w) {
        out.extend(chart_surface_points(&ch)?);
    }
    Ok(out)
}

pub fn resolve_invariants(
    k2: Rational,
    points: Vec<SurfacePoint>,
    curve_data: Option<CurveSection>,
) -> Result<SurfaceReport> {
    let chains: Vec<_> = points.iter().map(|p| p.kind.chain()).collect();
    let k2_resolution = k2 + chains.iter().map(|c| c.k2_correction()).sum::<Rational>();
    let Some(k2r) = k2_resolution.to_integer() else {
        return Err(Error::Inconsistent(format!(
            "K^2 of the resolution is {k2_resolution}, not an integer"
        )));
    };
    let euler = 12 - k2r;
    let b2 = euler - 2;
    let curves: i64 = chains.iter().map(|c| c.len() as i64).sum();
    Ok(SurfaceReport {
        k2,
        singular_points: points,
        k2_resolution,
        euler_resolution: euler,
        b2_resolution: b2,
        picard: b2 - curves,
        curve_data,
    })
}

/// Components of `(x = 0)|_E` when `E = {xy + h(z,u) = 0}`.
pub fn x_section_curves(g: &GermModel, w: &WeightVector) -> Result<CurveSection> {
    require_good_exceptional(g, w)?;
    let ex = exceptional_part(g, w);
    let unsupported = || {
        Error::UnsupportedShape(format!(
            "x = 0 section of {} is outside the supported families",
            ex.render()
        ))
    };
    if !ex.contains_xy() {
        return Err(unsupported());
    }
    let h: Vec<(i64, i64)> = ex
        .lowest_part
        .iter()
        .filter(|e| e[0] == 0 && e[1] == 0)
        .map(|e| (e[2], e[3]))
        .collect();
    let [a, b, _, _] = w.as_array();
    let wm = ex.degree;
    let total = Rational::new(a * a * wm, w.product());
    // (count, multiplicity, local branch exponents at the y-point)
    let (count, mult, branch) = match h[..] {
        [(p, 0)] => (1, p, None),
        [(0, q)] => (1, q, None),
        [(0, q), (p, 0)] | [(p, 0), (0, q)] => {
            let n = crate::arith::gcd(p, q);
            (n, 1, Some((p / n, q / n)))
        }
        _ => return Err(unsupported()),
    };
    let surface_points = surface_singularities(g, w)?;
    let at = |chart: usize| {
        surface_points
            .iter()
            .find(|p| p.chart_index == chart && p.location.is_empty())
    };
    let correction = |p: &SurfacePoint| -> Result<Rational> {
        let chain = p.kind.chain();
        if chain.is_empty() {
            return Ok(Rational::ZERO);
        }
        let mut rev = chain.entries.clone();
        rev.reverse();
        if rev != chain.entries {
            return Err(unsupported());
        }
        Ok(chain.pullback_coefficients()[0])
    };
    let mut passes = Vec::new();
    let mut corr = Rational::ZERO;
    // every component contains the y-point (0:1:0:0)
    let y_order = b;
    if let Some(p) = at(2) {
        corr = corr + correction(p)?;
        passes.push(p.label());
    }
    let no_pure_u = h.iter().all(|&(p, _)| p > 0);
    let no_pure_z = h.iter().all(|&(_, q)| q > 0);
    for (chart, hit) in [(3, no_pure_z), (4, no_pure_u)] {
        if let (true, Some(p)) = (hit, at(chart)) {
            corr = corr + correction(p)?;
            passes.push(p.label());
        }
    }
    if let (Some((p1, q1)), Some(_)) = (branch, at(2)) {
        // a non-axis branch through a quotient point is only handled for lines
        if (p1, q1) != (1, 1) {
            return Err(unsupported());
        }
    }
    let pairwise = match branch {
        Some((p1, q1)) if count > 1 => Rational::new(p1 * q1, y_order),
        _ => Rational::ZERO,
    };
    let m2 = Rational::from(mult * mult);
    let self_int = (total / m2 - pairwise * (count * (count - 1))) / Rational::from(count);
    Ok(CurveSection {
        component_count: count,
        multiplicity: mult,
        total,
        pairwise_intersection: pairwise,
        self_intersection: self_int,
        resolved_self_intersection: self_int - corr,
        passes_through: passes,
    })
}

/// `K^2`, singular points, resolution data and (when available) the
/// `x = 0` curve section.
pub fn surface_report(g: &GermModel, w: &WeightVector) -> Result<SurfaceReport> {
    let k2 = surface_k2(g, w)?;
    let points = surface_singularities(g, w)?;
    let curves = match x_section_curves(g, w) {
        Ok(c) => Some(c),
        Err(Error::UnsupportedShape(_)) => None,
        Err(e) => return Err(e),
    };
    resolve_invariants(k2, points, curves)
}
