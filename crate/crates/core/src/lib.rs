//! Exact analysis of weighted blow-ups of compound-A threefold germs
//! `xy + f(z, u) = 0`.
//!
//! The pipeline is: parse a [`GermModel`], pick a [`WeightVector`], build the
//! four affine [`Chart`]s, scan them for singular points along the
//! exceptional divisor and decide terminality ([`blowup_verdict`]), compute
//! exceptional-surface invariants ([`surface_report`]), or enumerate all
//! weights up to a bound ([`classify_extractions`]).
//!
//! Runnable walkthroughs live in `examples/`.

pub mod arith;
pub mod blowup;
pub mod classify;
pub mod cli;
pub mod error;
pub mod germ;
pub mod quotient;
pub mod surface;
pub mod terminality;
mod torus;

pub use arith::{hj_expand, HjChain, Rational};
pub use blowup::{
    discrepancy, exceptional_part, make_charts, quotient_blowup, Chart, ExceptionalDivisor,
    WeightVector,
};
pub use classify::{
    classify_extractions, count_discrepancy_one, enumerate_weights, ClassificationReport,
};
pub use error::{Error, Result};
pub use germ::{deg_min, parse_germ, weighted_mult, GermModel};
pub use quotient::{
    duval_of_surface_quotient, is_isolated_action, is_terminal_hyperquotient, is_terminal_quotient,
    reid_tai_terminal, CyclicQuotient, SurfacePointType,
};
pub use surface::{
    resolve_invariants, surface_k2, surface_report, surface_singularities, x_section_curves,
    CurveSection, SurfaceReport,
};
pub use terminality::{blowup_verdict, chart_singularities, BlowupVerdict, SingularPoint};
