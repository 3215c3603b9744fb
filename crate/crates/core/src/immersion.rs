//! Integration of the closed su(N)-valued 1-form X_L dxi_L + X_R dxi_R
//! into the immersion X, and surface-mesh assembly.
//!
//! The canonical integration path is L-then-R from the basepoint; each
//! edge is integrated with composite Simpson quadrature, four panels per
//! segment, segments no longer than the grid step.

use rayon::prelude::*;

use crate::algebra::{coords, standard_basis, AlgebraElement, BasisSet};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::matrix::CMatrix;
use crate::projector::{tangent_matrix_l, tangent_matrix_r, ProjectorField};

/// A rectangular surface mesh: immersion coordinates plus per-vertex
/// geometric scalars.
#[derive(Debug, Clone)]
pub struct SurfaceMesh {
    pub grid: GridSpec,
    pub n: usize,
    pub basis: BasisSet,
    /// Per-vertex immersion coordinates, length N^2 - 1, row-major.
    pub x: Vec<Vec<f64>>,
    /// Per-vertex Gaussian curvature; NaN where the curvature formula is
    /// degenerate (4 - p_LR^2 below threshold).
    pub k: Vec<f64>,
    /// Unwrapped sine-Gordon phase, present for CP^1 fields in the
    /// Chebyshev gauge.
    pub phi: Option<Vec<f64>>,
    pub basepoint: (usize, usize),
}

/// Simpson quadrature with four panels over [a, b] of a matrix-valued map.
fn simpson4(
    mut f: impl FnMut(f64) -> Result<CMatrix>,
    a: f64,
    b: f64,
    n: usize,
) -> Result<CMatrix> {
    let h = (b - a) / 4.0;
    let weights = [1.0, 4.0, 2.0, 4.0, 1.0];
    let mut acc = CMatrix::zeros(n);
    for (k, w) in weights.iter().enumerate() {
        acc = acc + f(a + h * k as f64)?.scale(*w);
    }
    Ok(acc.scale(h / 3.0))
}

/// Integrate the tangent 1-form along an axis-parallel segment, splitting
/// it into subsegments of length at most `max_step`.
fn integrate_leg(
    field: &ProjectorField,
    fixed: f64,
    from: f64,
    to: f64,
    along_l: bool,
    max_step: f64,
) -> Result<CMatrix> {
    let n = field.n();
    if from == to {
        return Ok(CMatrix::zeros(n));
    }
    let length = (to - from).abs();
    let segments = (length / max_step).ceil().max(1.0) as usize;
    let step = (to - from) / segments as f64;
    let mut acc = CMatrix::zeros(n);
    for s in 0..segments {
        let a = from + step * s as f64;
        let b = a + step;
        let piece = if along_l {
            simpson4(
                |l| Ok(tangent_matrix_l(&field.derivatives(l, fixed)?)),
                a,
                b,
                n,
            )?
        } else {
            // X_R = -M_R
            simpson4(
                |r| Ok(-tangent_matrix_r(&field.derivatives(fixed, r)?)),
                a,
                b,
                n,
            )?
        };
        acc = acc + piece;
    }
    Ok(acc)
}

/// X at `to`, integrating L-then-R from `from` with the given base value.
pub fn integrate_to(
    field: &ProjectorField,
    from: (f64, f64),
    to: (f64, f64),
    base_value: &AlgebraElement,
    max_step: f64,
) -> Result<AlgebraElement> {
    let leg1 = integrate_leg(field, from.1, from.0, to.0, true, max_step)?;
    let leg2 = integrate_leg(field, to.0, from.1, to.1, false, max_step)?;
    Ok(AlgebraElement::new_unchecked(
        &(base_value.matrix() + &leg1) + &leg2,
    ))
}

/// Integrate the immersion over a whole grid from a basepoint node.
///
/// The first leg runs along the basepoint row; columns are then integrated
/// independently (and in parallel). Returns the per-vertex su(N) matrices
/// in row-major grid order.
pub fn integrate_surface(
    field: &ProjectorField,
    grid: &GridSpec,
    basepoint: (usize, usize),
    base_value: &AlgebraElement,
) -> Result<Vec<AlgebraElement>> {
    let (bi, bj) = basepoint;
    if bi >= grid.n_l || bj >= grid.n_r {
        return Err(Error::InvalidParameter(format!(
            "basepoint ({bi}, {bj}) outside the {} x {} grid",
            grid.n_l, grid.n_r
        )));
    }
    let max_step = grid.step_l().min(grid.step_r());
    let r_base = grid.xi_r(bj);

    // First leg: cumulative along the basepoint row.
    let mut row = vec![CMatrix::zeros(field.n()); grid.n_l];
    for i in (bi + 1)..grid.n_l {
        let piece = integrate_leg(
            field,
            r_base,
            grid.xi_l(i - 1),
            grid.xi_l(i),
            true,
            max_step,
        )?;
        row[i] = &row[i - 1] + &piece;
    }
    for i in (0..bi).rev() {
        let piece = integrate_leg(
            field,
            r_base,
            grid.xi_l(i + 1),
            grid.xi_l(i),
            true,
            max_step,
        )?;
        row[i] = &row[i + 1] + &piece;
    }

    // Columns are independent; integrate each away from the basepoint row.
    let columns: Result<Vec<Vec<CMatrix>>> = (0..grid.n_l)
        .into_par_iter()
        .map(|i| {
            let l = grid.xi_l(i);
            let mut col = vec![CMatrix::zeros(field.n()); grid.n_r];
            col[bj] = row[i].clone();
            for j in (bj + 1)..grid.n_r {
                let piece =
                    integrate_leg(field, l, grid.xi_r(j - 1), grid.xi_r(j), false, max_step)?;
                col[j] = &col[j - 1] + &piece;
            }
            for j in (0..bj).rev() {
                let piece =
                    integrate_leg(field, l, grid.xi_r(j + 1), grid.xi_r(j), false, max_step)?;
                col[j] = &col[j + 1] + &piece;
            }
            Ok(col)
        })
        .collect();
    let columns = columns?;

    let mut out = Vec::with_capacity(grid.len());
    for column in columns {
        debug_assert_eq!(column.len(), grid.n_r);
        for m in column {
            out.push(AlgebraElement::new_unchecked(base_value.matrix() + &m));
        }
    }
    Ok(out)
}

/// Assemble the full mesh: immersion coordinates, per-vertex curvature,
/// and (for CP^1 fields in the Chebyshev gauge) the unwrapped phase.
pub fn build_surface_mesh(
    field: &ProjectorField,
    grid: &GridSpec,
    basepoint: (usize, usize),
    base_value: &AlgebraElement,
) -> Result<SurfaceMesh> {
    let n = field.n();
    let basis = standard_basis(n)?;
    let points = integrate_surface(field, grid, basepoint, base_value)?;
    let x: Result<Vec<Vec<f64>>> = points.iter().map(|p| coords(p, &basis)).collect();
    let x = x?;

    let pts: Vec<(f64, f64)> = grid.points().map(|(_, _, l, r)| (l, r)).collect();
    let k: Vec<f64> = pts
        .par_iter()
        .map(|&(l, r)| crate::geometry::gaussian_curvature(field, l, r).unwrap_or(f64::NAN))
        .collect();

    let phi = if n == 2 {
        crate::sine_gordon::sg_phase(field, *grid).ok().map(|p| p.phi)
    } else {
        None
    };

    Ok(SurfaceMesh {
        grid: *grid,
        n,
        basis,
        x,
        k,
        phi,
        basepoint,
    })
}

/// || dL X_R - dR X_L || by order-4 central differences of the tangent
/// fields; vanishes on solutions (the 1-form is closed).
pub fn closedness_residual(field: &ProjectorField, l: f64, r: f64) -> Result<f64> {
    let h = 1e-3;
    let x_r = |l: f64, r: f64| -> Result<CMatrix> {
        Ok(-tangent_matrix_r(&field.derivatives(l, r)?))
    };
    let x_l =
        |l: f64, r: f64| -> Result<CMatrix> { Ok(tangent_matrix_l(&field.derivatives(l, r)?)) };
    let dl_xr = (&(&x_r(l - 2.0 * h, r)? - &x_r(l + 2.0 * h, r)?)
        + &(&x_r(l + h, r)? - &x_r(l - h, r)?).scale(8.0))
        .scale(1.0 / (12.0 * h));
    let dr_xl = (&(&x_l(l, r - 2.0 * h)? - &x_l(l, r + 2.0 * h)?)
        + &(&x_l(l, r + h)? - &x_l(l, r - h)?).scale(8.0))
        .scale(1.0 / (12.0 * h));
    Ok((&dl_xr - &dr_xl).norm())
}

/// Max-norm difference between the L-then-R and R-then-L integration
/// paths from `basepoint` to `point`.
pub fn path_independence(
    field: &ProjectorField,
    point: (f64, f64),
    basepoint: (f64, f64),
    max_step: f64,
) -> Result<f64> {
    let zero = AlgebraElement::zero(field.n());
    let l_then_r = integrate_to(field, basepoint, point, &zero, max_step)?;
    let leg1 = integrate_leg(field, basepoint.0, basepoint.1, point.1, false, max_step)?;
    let leg2 = integrate_leg(field, point.1, basepoint.0, point.0, true, max_step)?;
    let r_then_l = &leg1 + &leg2;
    Ok(l_then_r.matrix().max_diff(&r_then_l))
}
