//! Sine-Gordon phase extraction, unwrapping, residuals, and the
//! transformation to the standard laboratory form.
//!
//! The rescaled equation in light-cone coordinates is
//! dL dR phi = 4 sin phi; after eta_D = 2 xi_D and X = eta_L + eta_R,
//! T = eta_R - eta_L it becomes phi_TT - phi_XX + sin phi = 0. A Lorentz
//! boost with velocity V acts on light-cone coordinates as the rescaling
//! xi_L -> alpha xi_L, xi_R -> xi_R / alpha with
//! alpha = sqrt((1 + V) / (1 - V)).

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::projector::ProjectorField;

/// Unwrapped sine-Gordon phase on a rectangular grid.
#[derive(Debug, Clone)]
pub struct PhaseField {
    pub grid: GridSpec,
    /// Row-major phi values, index `grid.idx(i, j)`.
    pub phi: Vec<f64>,
}

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Extract the phase field over a grid: pointwise principal values,
/// then a row-then-column 2-D unwrap, anchored so the first grid node
/// lies in [0, 2 pi).
pub fn sg_phase(field: &ProjectorField, grid: GridSpec) -> Result<PhaseField> {
    sg_phase_with_gauge_tolerance(field, grid, 1e-6)
}

/// Phase extraction with an explicit gauge tolerance on | |trace| - 1 |;
/// pass infinity to extract from fields outside the Chebyshev gauge
/// (negative controls).
pub fn sg_phase_with_gauge_tolerance(
    field: &ProjectorField,
    grid: GridSpec,
    gauge_tol: f64,
) -> Result<PhaseField> {
    if field.n() != 2 {
        return Err(Error::DimensionMismatch(field.n(), 2));
    }
    let points: Vec<(usize, usize, f64, f64)> = grid.points().collect();
    let raw: Result<Vec<f64>> = points
        .par_iter()
        .map(|&(_, _, l, r)| {
            let bundle = field.derivatives(l, r)?;
            crate::cp1::principal_phase_tol(&bundle, l, r, gauge_tol)
        })
        .collect();
    let mut phi = raw?;

    // Unwrap along the first xi_R row (varying i), then down each column
    // (varying j), choosing the 2 pi branch that keeps increments in
    // (-pi, pi].
    let reconcile = |prev: f64, raw: f64| -> f64 {
        let mut v = raw;
        while v - prev > std::f64::consts::PI {
            v -= TWO_PI;
        }
        while v - prev <= -std::f64::consts::PI {
            v += TWO_PI;
        }
        v
    };
    for i in 1..grid.n_l {
        let prev = phi[grid.idx(i - 1, 0)];
        phi[grid.idx(i, 0)] = reconcile(prev, phi[grid.idx(i, 0)]);
    }
    for i in 0..grid.n_l {
        for j in 1..grid.n_r {
            let prev = phi[grid.idx(i, j - 1)];
            phi[grid.idx(i, j)] = reconcile(prev, phi[grid.idx(i, j)]);
        }
    }

    // Anchor the global branch: phi at the grid origin in [0, 2 pi).
    let shift = TWO_PI * (phi[0] / TWO_PI).floor();
    if shift != 0.0 {
        for v in &mut phi {
            *v -= shift;
        }
    }
    Ok(PhaseField { grid, phi })
}

impl PhaseField {
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.phi[self.grid.idx(i, j)]
    }

    /// Bilinear interpolation at an arbitrary in-grid point.
    pub fn interpolate(&self, l: f64, r: f64) -> Result<f64> {
        let g = &self.grid;
        let eps_l = 1e-12 * (g.l_max - g.l_min).abs();
        let eps_r = 1e-12 * (g.r_max - g.r_min).abs();
        if l < g.l_min - eps_l || l > g.l_max + eps_l || r < g.r_min - eps_r || r > g.r_max + eps_r
        {
            return Err(Error::OutOfDomain(l, r));
        }
        let fi = ((l - g.l_min) / g.step_l()).clamp(0.0, (g.n_l - 1) as f64);
        let fj = ((r - g.r_min) / g.step_r()).clamp(0.0, (g.n_r - 1) as f64);
        let i0 = (fi.floor() as usize).min(g.n_l - 2);
        let j0 = (fj.floor() as usize).min(g.n_r - 2);
        let tl = fi - i0 as f64;
        let tr = fj - j0 as f64;
        let v00 = self.value(i0, j0);
        let v10 = self.value(i0 + 1, j0);
        let v01 = self.value(i0, j0 + 1);
        let v11 = self.value(i0 + 1, j0 + 1);
        Ok(v00 * (1.0 - tl) * (1.0 - tr)
            + v10 * tl * (1.0 - tr)
            + v01 * (1.0 - tl) * tr
            + v11 * tl * tr)
    }
}

/// Residual of the rescaled equation: dL dR phi - 4 sin phi on interior
/// grid nodes (margin 2, order-4 cross stencil).
#[derive(Debug, Clone)]
pub struct ResidualGrid {
    pub n_l: usize,
    pub n_r: usize,
    /// margin excluded on each side
    pub margin: usize,
    /// residuals for interior nodes, row-major over the interior
    pub values: Vec<f64>,
}

impl ResidualGrid {
    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

pub fn sg_residual(phase: &PhaseField) -> Result<ResidualGrid> {
    let g = &phase.grid;
    let margin = 2usize;
    if g.n_l < 2 * margin + 1 || g.n_r < 2 * margin + 1 {
        return Err(Error::InvalidParameter(
            "grid too small for the order-4 interior residual stencil".into(),
        ));
    }
    let (hl, hr) = (g.step_l(), g.step_r());
    // Order-4 first-derivative weights at offsets -2..2.
    let w = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
    let mut values = Vec::with_capacity((g.n_l - 2 * margin) * (g.n_r - 2 * margin));
    for i in margin..g.n_l - margin {
        for j in margin..g.n_r - margin {
            let mut mixed = 0.0;
            for (a, wa) in w.iter().enumerate() {
                if *wa == 0.0 {
                    continue;
                }
                for (b, wb) in w.iter().enumerate() {
                    if *wb == 0.0 {
                        continue;
                    }
                    mixed += wa * wb * phase.value(i + a - 2, j + b - 2);
                }
            }
            mixed /= hl * hr;
            values.push(mixed - 4.0 * phase.value(i, j).sin());
        }
    }
    Ok(ResidualGrid {
        n_l: g.n_l,
        n_r: g.n_r,
        margin,
        values,
    })
}

/// Lorentz boost as an exact relabelling of the light-cone grid:
/// xi_L -> alpha xi_L, xi_R -> xi_R / alpha. No interpolation.
pub fn boost(phase: &PhaseField, v: f64) -> Result<PhaseField> {
    let alpha = boost_alpha(v)?;
    let g = phase.grid;
    Ok(PhaseField {
        grid: GridSpec {
            l_min: g.l_min * alpha,
            l_max: g.l_max * alpha,
            r_min: g.r_min / alpha,
            r_max: g.r_max / alpha,
            n_l: g.n_l,
            n_r: g.n_r,
        },
        phi: phase.phi.clone(),
    })
}

pub fn boost_alpha(v: f64) -> Result<f64> {
    if !(v.abs() < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "boost velocity |V| must be < 1, got {v}"
        )));
    }
    Ok(((1.0 + v) / (1.0 - v)).sqrt())
}

/// Phase resampled onto a rectangular grid in the boosted laboratory
/// coordinates (X, T).
#[derive(Debug, Clone)]
pub struct StandardPhase {
    pub x_min: f64,
    pub x_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub n_x: usize,
    pub n_t: usize,
    /// Row-major over (x index, t index).
    pub phi: Vec<f64>,
}

impl StandardPhase {
    pub fn x(&self, i: usize) -> f64 {
        self.x_min + (self.x_max - self.x_min) * i as f64 / (self.n_x - 1) as f64
    }

    pub fn t(&self, j: usize) -> f64 {
        self.t_min + (self.t_max - self.t_min) * j as f64 / (self.n_t - 1) as f64
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.phi[i * self.n_t + j]
    }
}

/// Pull a laboratory point (X, T) back to light-cone coordinates.
fn lab_to_lightcone(x: f64, t: f64) -> (f64, f64) {
    ((x - t) / 4.0, (x + t) / 4.0)
}

/// Resample onto the largest centred rectangle in (X, T) that fits inside
/// the boosted source grid, by bilinear interpolation.
///
/// `target` overrides the automatic rectangle: (x_min, x_max, t_min, t_max,
/// n_x, n_t).
pub fn to_standard_form(
    phase: &PhaseField,
    v: f64,
    target: Option<(f64, f64, f64, f64, usize, usize)>,
) -> Result<StandardPhase> {
    let boosted = boost(phase, v)?;
    let g = boosted.grid;
    let (x_min, x_max, t_min, t_max, n_x, n_t) = match target {
        Some(t) => t,
        None => {
            let half_l = 0.5 * (g.l_max - g.l_min);
            let half_r = 0.5 * (g.r_max - g.r_min);
            let cx = 2.0 * (g.l_min + g.l_max) / 2.0 + 2.0 * (g.r_min + g.r_max) / 2.0;
            let ct = 2.0 * (g.r_min + g.r_max) / 2.0 - 2.0 * (g.l_min + g.l_max) / 2.0;
            let span = 2.0 * half_l.min(half_r);
            (
                cx - span,
                cx + span,
                ct - span,
                ct + span,
                g.n_l,
                g.n_r,
            )
        }
    };
    if n_x < 2 || n_t < 2 {
        return Err(Error::InvalidParameter(
            "standard-form grid needs at least 2 nodes per axis".into(),
        ));
    }
    let mut phi = Vec::with_capacity(n_x * n_t);
    for i in 0..n_x {
        let x = x_min + (x_max - x_min) * i as f64 / (n_x - 1) as f64;
        for j in 0..n_t {
            let t = t_min + (t_max - t_min) * j as f64 / (n_t - 1) as f64;
            let (l, r) = lab_to_lightcone(x, t);
            phi.push(boosted.interpolate(l, r)?);
        }
    }
    Ok(StandardPhase {
        x_min,
        x_max,
        t_min,
        t_max,
        n_x,
        n_t,
        phi,
    })
}

/// A single constant-T slice phi(X) in the boosted frame.
pub fn standard_slice(
    phase: &PhaseField,
    v: f64,
    t: f64,
    n_x: usize,
) -> Result<Vec<(f64, f64)>> {
    let boosted = boost(phase, v)?;
    let g = boosted.grid;
    // X validity range at fixed T from both light-cone pullbacks.
    let x_lo = (4.0 * g.l_min + t).max(4.0 * g.r_min - t);
    let x_hi = (4.0 * g.l_max + t).min(4.0 * g.r_max - t);
    if x_lo >= x_hi {
        return Err(Error::OutOfDomain(x_lo, t));
    }
    let mut out = Vec::with_capacity(n_x);
    for i in 0..n_x {
        let x = x_lo + (x_hi - x_lo) * i as f64 / (n_x - 1) as f64;
        let (l, r) = lab_to_lightcone(x, t);
        out.push((x, boosted.interpolate(l, r)?));
    }
    Ok(out)
}

/// Residual of the laboratory-frame equation phi_TT - phi_XX + sin phi on
/// the interior of a standard-form grid (order-4 second-derivative
/// stencils, margin 2).
pub fn standard_residual(sp: &StandardPhase) -> Result<f64> {
    if sp.n_x < 5 || sp.n_t < 5 {
        return Err(Error::InvalidParameter(
            "standard-form grid too small for the interior residual".into(),
        ));
    }
    let hx = (sp.x_max - sp.x_min) / (sp.n_x - 1) as f64;
    let ht = (sp.t_max - sp.t_min) / (sp.n_t - 1) as f64;
    let w2 = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];
    let mut max = 0.0_f64;
    for i in 2..sp.n_x - 2 {
        for j in 2..sp.n_t - 2 {
            let mut d_xx = 0.0;
            let mut d_tt = 0.0;
            for (k, w) in w2.iter().enumerate() {
                d_xx += w * sp.value(i + k - 2, j);
                d_tt += w * sp.value(i, j + k - 2);
            }
            d_xx /= hx * hx;
            d_tt /= ht * ht;
            let res = d_tt - d_xx + sp.value(i, j).sin();
            max = max.max(res.abs());
        }
    }
    Ok(max)
}
