//! Induced metric, curvatures, Christoffel symbols, normal parts, and the
//! moving frame with its Gauss-Weingarten coefficient tables.
//!
//! All scalar formulas are written in the Chebyshev gauge J_L = J_R = 1,
//! in terms of the p-traces p_{B|D} = tr(dB P . dD P). The recurring
//! denominator is 4 - p_{L|R}^2 = 4 sin^2(phi) in the CP^1 case.

use num_complex::Complex64;

use crate::algebra::{self, inner, AlgebraElement, BasisLabel};
use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::matrix::CMatrix;
use crate::projector::{
    p_trace_of, tangent_matrix_l, tangent_matrix_r, DerivativeBundle, ProjectorField,
};

/// Threshold below which 4 - p_{L|R}^2 counts as degenerate.
pub const METRIC_DENOM_TOL: f64 = 1e-8;

/// Tolerance for the Chebyshev gauge check.
pub const CHEBYSHEV_TOL: f64 = 1e-8;

/// Induced metric at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricSample {
    pub j_l: f64,
    pub j_r: f64,
    pub g_lr: f64,
    pub det_g: f64,
}

impl MetricSample {
    /// First fundamental form coefficients (E, F, G) with
    /// I = E dxiL^2 + 2 F dxiL dxiR + G dxiR^2.
    pub fn first_form(&self) -> (f64, f64, f64) {
        (self.j_l, self.g_lr, self.j_r)
    }
}

/// J_L = p_{L|L}/2, J_R = p_{R|R}/2, G_LR = -p_{L|R}/2. Errors where the
/// tangents degenerate (J_L J_R = 0, the excluded singular set).
pub fn metric(field: &ProjectorField, l: f64, r: f64) -> Result<MetricSample> {
    let bundle = field.derivatives(l, r)?;
    metric_of(&bundle, l, r)
}

pub fn metric_of(bundle: &DerivativeBundle, l: f64, r: f64) -> Result<MetricSample> {
    use crate::projector::Deriv::{L, R};
    let j_l = 0.5 * p_trace_of(bundle, L, L);
    let j_r = 0.5 * p_trace_of(bundle, R, R);
    let g_lr = -0.5 * p_trace_of(bundle, L, R);
    if j_l * j_r < 1e-12 {
        return Err(Error::SingularPoint(l, r));
    }
    Ok(MetricSample {
        j_l,
        j_r,
        g_lr,
        det_g: j_l * j_r - g_lr * g_lr,
    })
}

/// Outcome of the Chebyshev gauge check over a grid.
#[derive(Debug, Clone)]
pub struct ChebyshevReport {
    pub passed: bool,
    pub j_l: f64,
    pub j_r: f64,
    pub max_dev_from_one: f64,
    /// Constant factors (sqrt(J_L), sqrt(J_R)) for the reparametrization
    /// (xi_L, xi_R) -> (sqrt(J_L) xi_L, sqrt(J_R) xi_R), reported when the
    /// coefficients are constant but not 1. Not applied.
    pub rescale: Option<(f64, f64)>,
    pub samples: usize,
}

/// Verify J_L = J_R = 1 across the grid. Constant-but-off coefficients
/// yield the rescale factors; non-constant coefficients are an error
/// (general quadrature gauge fixing is out of scope).
pub fn assert_chebyshev(field: &ProjectorField, grid: &GridSpec) -> Result<ChebyshevReport> {
    let mut jls = Vec::with_capacity(grid.len());
    let mut jrs = Vec::with_capacity(grid.len());
    for (_, _, l, r) in grid.points() {
        let m = metric(field, l, r)?;
        jls.push(m.j_l);
        jrs.push(m.j_r);
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (jl, jr) = (mean(&jls), mean(&jrs));
    let spread = |v: &[f64], m: f64| v.iter().map(|x| (x - m).abs()).fold(0.0, f64::max);
    let (dev_l, dev_r) = (spread(&jls, jl), spread(&jrs, jr));
    let max_dev_from_one = jls
        .iter()
        .chain(jrs.iter())
        .map(|x| (x - 1.0).abs())
        .fold(0.0, f64::max);
    if max_dev_from_one <= CHEBYSHEV_TOL {
        return Ok(ChebyshevReport {
            passed: true,
            j_l: jl,
            j_r: jr,
            max_dev_from_one,
            rescale: None,
            samples: grid.len(),
        });
    }
    let const_tol = 100.0 * CHEBYSHEV_TOL * jl.abs().max(jr.abs()).max(1.0);
    if dev_l > const_tol || dev_r > const_tol {
        return Err(Error::NonConstantMetric(format!(
            "J_L spread {dev_l:.3e}, J_R spread {dev_r:.3e} over {} samples",
            grid.len()
        )));
    }
    Ok(ChebyshevReport {
        passed: false,
        j_l: jl,
        j_r: jr,
        max_dev_from_one,
        rescale: Some((jl.sqrt(), jr.sqrt())),
        samples: grid.len(),
    })
}

fn denom(bundle: &DerivativeBundle, l: f64, r: f64) -> Result<(f64, f64)> {
    use crate::projector::Deriv::{L, R};
    let p_lr = p_trace_of(bundle, L, R);
    let d = 4.0 - p_lr * p_lr;
    if d.abs() < METRIC_DENOM_TOL {
        return Err(Error::DegenerateMetric(
            l,
            r,
            format!("4 - p_LR^2 = {d:.3e} below threshold"),
        ));
    }
    Ok((p_lr, d))
}

/// Gaussian curvature in the Chebyshev gauge:
/// K = 2 [ (p_LR|LR - p_LL|RR)/(4 - p_L|R^2)
///        - p_LL|R p_L|RR p_L|R / (4 - p_L|R^2)^2 ].
pub fn gaussian_curvature(field: &ProjectorField, l: f64, r: f64) -> Result<f64> {
    let bundle = field.derivatives(l, r)?;
    gaussian_curvature_of(&bundle, l, r)
}

pub fn gaussian_curvature_of(bundle: &DerivativeBundle, l: f64, r: f64) -> Result<f64> {
    use crate::projector::Deriv::{L, LL, LR, R, RR};
    let (p_lr, d) = denom(bundle, l, r)?;
    let p_lrlr = p_trace_of(bundle, LR, LR);
    let p_llrr = p_trace_of(bundle, LL, RR);
    let p_llr = p_trace_of(bundle, LL, R);
    let p_lrr = p_trace_of(bundle, L, RR);
    Ok(2.0 * ((p_lrlr - p_llrr) / d - p_llr * p_lrr * p_lr / (d * d)))
}

/// Christoffel coefficients as they enter the Gauss-Weingarten equations:
/// dL X_L = a_ll X_L + a_lr X_R + ..., dR X_R = a_rl X_L + a_rr X_R + ...
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Christoffels {
    pub a_ll: f64,
    pub a_lr: f64,
    pub a_rl: f64,
    pub a_rr: f64,
}

pub fn christoffel(field: &ProjectorField, l: f64, r: f64) -> Result<Christoffels> {
    let bundle = field.derivatives(l, r)?;
    christoffel_of(&bundle, l, r)
}

pub fn christoffel_of(bundle: &DerivativeBundle, l: f64, r: f64) -> Result<Christoffels> {
    use crate::projector::Deriv::{L, LL, R, RR};
    let (p_lr, d) = denom(bundle, l, r)?;
    let p_llr = p_trace_of(bundle, LL, R);
    let p_rrl = p_trace_of(bundle, RR, L);
    Ok(Christoffels {
        a_ll: -p_lr * p_llr / d,
        a_lr: -2.0 * p_llr / d,
        a_rl: -2.0 * p_rrl / d,
        a_rr: -p_lr * p_rrl / d,
    })
}

/// The normal parts of the second derivatives of the immersion.
#[derive(Debug, Clone)]
pub struct NormalParts {
    pub ll: AlgebraElement,
    pub lr: AlgebraElement,
    pub rr: AlgebraElement,
}

pub fn normal_parts(field: &ProjectorField, l: f64, r: f64) -> Result<NormalParts> {
    let bundle = field.derivatives(l, r)?;
    normal_parts_of(&bundle, l, r)
}

pub fn normal_parts_of(bundle: &DerivativeBundle, l: f64, r: f64) -> Result<NormalParts> {
    use crate::projector::Deriv::{L, LL, R, RR};
    let (p_lr, d) = denom(bundle, l, r)?;
    let p_llr = p_trace_of(bundle, LL, R);
    let p_rrl = p_trace_of(bundle, RR, L);
    let m_l = tangent_matrix_l(bundle);
    let m_r = tangent_matrix_r(bundle);
    let ll = &(&bundle.p_ll.commutator(&bundle.p) + &m_l.scale(p_lr * p_llr / d))
        - &m_r.scale(2.0 * p_llr / d);
    let rr = &(&(-bundle.p_rr.commutator(&bundle.p)) + &m_l.scale(2.0 * p_rrl / d))
        - &m_r.scale(p_lr * p_rrl / d);
    let lr = bundle.p_l.commutator(&bundle.p_r);
    Ok(NormalParts {
        ll: AlgebraElement::new_unchecked(ll),
        lr: AlgebraElement::new_unchecked(lr),
        rr: AlgebraElement::new_unchecked(rr),
    })
}

/// Second fundamental form (its three normal-valued coefficients) and the
/// mean curvature vector H = (1/2) tr_g II.
pub fn second_form_and_mean_curvature(
    field: &ProjectorField,
    l: f64,
    r: f64,
) -> Result<(NormalParts, AlgebraElement)> {
    let bundle = field.derivatives(l, r)?;
    let parts = normal_parts_of(&bundle, l, r)?;
    let m = metric_of(&bundle, l, r)?;
    if m.det_g.abs() < METRIC_DENOM_TOL {
        return Err(Error::DegenerateMetric(
            l,
            r,
            format!("det G = {:.3e} below threshold", m.det_g),
        ));
    }
    let h = parts
        .ll
        .scale(m.j_r)
        .add(&parts.lr.scale(-2.0 * m.g_lr))
        .add(&parts.rr.scale(m.j_l))
        .scale(0.5 / m.det_g);
    Ok((parts, h))
}

/// Label of a moving-frame normal, inherited from the basis matrix that
/// seeded it (indices 1-based as in the basis convention).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormalLabel {
    A(usize, usize),
    B(usize, usize),
    C(usize),
}

/// Orthonormal moving frame at a point: the two tangents and N^2 - 3
/// normals, with the diagonalizing group element.
#[derive(Debug, Clone)]
pub struct MovingFrame {
    pub x_l: AlgebraElement,
    pub x_r: AlgebraElement,
    pub normals: Vec<AlgebraElement>,
    pub labels: Vec<NormalLabel>,
    /// Unitary with P = Phi diag(0,..,0,1,..,1) Phi^dagger, kernel block first.
    pub phi: CMatrix,
}

impl MovingFrame {
    /// Gram matrix of (X_L, X_R, n_3, ..), tangents first.
    pub fn gram(&self) -> Vec<Vec<f64>> {
        let mut vecs: Vec<&AlgebraElement> = vec![&self.x_l, &self.x_r];
        vecs.extend(self.normals.iter());
        vecs.iter()
            .map(|a| {
                vecs.iter()
                    .map(|b| inner(a, b).expect("same dimension"))
                    .collect()
            })
            .collect()
    }
}

/// Deterministic orthonormal basis of the column space of `m`:
/// modified Gram-Schmidt over columns in index order (two passes),
/// dropping columns whose residual norm falls below `tol`, then
/// phase-fixed so each vector's largest-modulus component is real
/// positive.
fn column_space_basis(m: &CMatrix, tol: f64) -> Vec<Vec<Complex64>> {
    let n = m.dim();
    let mut basis: Vec<Vec<Complex64>> = Vec::new();
    for j in 0..n {
        let mut col = m.column(j);
        for _ in 0..2 {
            for b in &basis {
                let proj: Complex64 =
                    b.iter().zip(col.iter()).map(|(bi, ci)| bi.conj() * ci).sum();
                for (ci, bi) in col.iter_mut().zip(b.iter()) {
                    *ci -= proj * bi;
                }
            }
        }
        let norm = col.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm < tol {
            continue;
        }
        for ci in &mut col {
            *ci /= norm;
        }
        let mut best = 0;
        for (i, ci) in col.iter().enumerate() {
            if ci.norm() > col[best].norm() {
                best = i;
            }
        }
        let rot = (col[best] / col[best].norm()).conj();
        for ci in &mut col {
            *ci *= rot;
        }
        basis.push(col);
    }
    basis
}

/// Unitary Phi with P = Phi diag(0,...,0,1,...,1) Phi^dagger (kernel block
/// first), built by Gram-Schmidt on the columns of (1 - P) and of P.
/// Exact for idempotent Hermitian P; the projector defect must be below
/// 1e-8 or the construction refuses.
pub fn diagonalize_projector(p: &CMatrix) -> Result<(CMatrix, usize)> {
    let n = p.dim();
    let defect = p.idempotency_defect().max(p.hermiticity_defect());
    if defect > 1e-8 {
        return Err(Error::NotAProjector(format!(
            "defect {defect:.3e} exceeds the 1e-8 eigenvalue clamp tolerance"
        )));
    }
    let trace = p.trace().re;
    let rank = trace.round() as usize;
    if rank == 0 || rank >= n || (trace - rank as f64).abs() > 1e-8 {
        return Err(Error::RankInconsistent(format!(
            "trace {trace} incompatible with a proper projector in dimension {n}"
        )));
    }
    let complement = &CMatrix::identity(n) - p;
    let mut cols = column_space_basis(&complement, 1e-6);
    let image = column_space_basis(p, 1e-6);
    if cols.len() != n - rank || image.len() != rank {
        return Err(Error::RankInconsistent(format!(
            "kernel dimension {} and image dimension {} do not match rank {rank}",
            cols.len(),
            image.len()
        )));
    }
    cols.extend(image);
    let mut phi = CMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        phi.set_column(j, col);
    }
    Ok((phi, rank))
}

/// Construct the moving frame: transform to the diagonalizing gauge,
/// Gram-Schmidt the off-block basis candidates against the tangent span,
/// keep the block-diagonal basis matrices as exact normals, conjugate
/// back by Phi.
pub fn moving_frame(field: &ProjectorField, l: f64, r: f64) -> Result<MovingFrame> {
    let bundle = field.derivatives(l, r)?;
    let n = field.n();
    let (phi, rank) = diagonalize_projector(&bundle.p)?;
    let phi_dag = phi.dagger();

    let x_l = tangent_matrix_l(&bundle);
    let x_r = -tangent_matrix_r(&bundle);
    let t_l = AlgebraElement::new_unchecked(&(&phi_dag * &x_l) * &phi);
    let t_r = AlgebraElement::new_unchecked(&(&phi_dag * &x_r) * &phi);

    // Orthonormalized tangent span seeds the Gram-Schmidt sweep.
    let mut span: Vec<AlgebraElement> = Vec::new();
    for t in [&t_l, &t_r] {
        let mut v = t.clone();
        for s in &span {
            let c = inner(&v, s)?;
            v = v.sub(&s.scale(c));
        }
        let norm = inner(&v, &v)?.max(0.0).sqrt();
        if norm < 1e-10 {
            return Err(Error::SingularPoint(l, r));
        }
        span.push(v.scale(1.0 / norm));
    }

    let kernel_block = n - rank;
    let is_off_block = |a: usize, b: usize| (a < kernel_block) != (b < kernel_block);

    let mut normals = Vec::new();
    let mut labels = Vec::new();
    let basis = algebra::standard_basis(n)?;
    for idx in 0..basis.len() {
        let label = basis.label(idx);
        let candidate = basis.element(idx);
        let (off_block, normal_label) = match label {
            BasisLabel::A(j, k) => (is_off_block(j - 1, k - 1), NormalLabel::A(j, k)),
            BasisLabel::B(j, k) => (is_off_block(j - 1, k - 1), NormalLabel::B(j, k)),
            BasisLabel::C(p) => (false, NormalLabel::C(p)),
        };
        if off_block {
            let mut v = candidate.clone();
            for s in span.iter() {
                let c = inner(&v, s)?;
                v = v.sub(&s.scale(c));
            }
            let norm = inner(&v, &v)?.max(0.0).sqrt();
            if norm < 1e-10 {
                continue;
            }
            let v = v.scale(1.0 / norm);
            span.push(v.clone());
            normals.push(v);
            labels.push(normal_label);
        } else {
            // Block-diagonal basis matrices are exact normals already.
            normals.push(candidate.clone());
            labels.push(normal_label);
        }
    }

    if normals.len() != n * n - 3 {
        return Err(Error::RankInconsistent(format!(
            "frame has {} normals, expected {}",
            normals.len(),
            n * n - 3
        )));
    }

    let back = |a: &AlgebraElement| a.conjugate_by(&phi);
    Ok(MovingFrame {
        x_l: AlgebraElement::new_unchecked(x_l),
        x_r: AlgebraElement::new_unchecked(x_r),
        normals: normals.iter().map(back).collect(),
        labels,
        phi,
    })
}

/// The Gauss-Weingarten coefficient table at a point, with the residual of
/// reconstructing the frame derivatives from it.
#[derive(Debug, Clone)]
pub struct GwTable {
    pub christoffel: Christoffels,
    pub h: Vec<f64>,
    pub q_l: Vec<f64>,
    pub q_r: Vec<f64>,
    pub alpha_l: Vec<f64>,
    pub beta_l: Vec<f64>,
    pub alpha_r: Vec<f64>,
    pub beta_r: Vec<f64>,
    pub s_l: Vec<Vec<f64>>,
    pub s_r: Vec<Vec<f64>>,
    /// Max Frobenius residual over the reconstruction identities.
    pub reconstruction_residual: f64,
    /// ((dL X_L, dL X_R), (dR X_R, dL X_R)), both zero on solutions.
    pub tangency_constraint: (f64, f64),
}

/// Step for finite differences of the frame field.
const FRAME_FD_STEP: f64 = 1e-3;

pub fn gw_coefficients(field: &ProjectorField, l: f64, r: f64) -> Result<GwTable> {
    let bundle = field.derivatives(l, r)?;
    let frame = moving_frame(field, l, r)?;
    let (p_lr, d) = denom(&bundle, l, r)?;
    let chris = christoffel_of(&bundle, l, r)?;

    // Exact derivatives of the tangent fields from the bundle:
    // dL X_L = [dLL P, P], dR X_R = -[dRR P, P], dL X_R = [dL P, dR P].
    let dl_xl = AlgebraElement::new_unchecked(bundle.p_ll.commutator(&bundle.p));
    let dr_xr = AlgebraElement::new_unchecked(-bundle.p_rr.commutator(&bundle.p));
    let dl_xr = AlgebraElement::new_unchecked(bundle.p_l.commutator(&bundle.p_r));

    let nn = frame.normals.len();
    let mut h = Vec::with_capacity(nn);
    let mut q_l = Vec::with_capacity(nn);
    let mut q_r = Vec::with_capacity(nn);
    for nvec in &frame.normals {
        h.push(inner(&dl_xr, nvec)?);
        q_l.push(inner(&dl_xl, nvec)?);
        q_r.push(inner(&dr_xr, nvec)?);
    }

    let mut alpha_l = Vec::with_capacity(nn);
    let mut beta_l = Vec::with_capacity(nn);
    let mut alpha_r = Vec::with_capacity(nn);
    let mut beta_r = Vec::with_capacity(nn);
    for j in 0..nn {
        alpha_l.push(-2.0 * (p_lr * h[j] + 2.0 * q_l[j]) / d);
        beta_l.push(-2.0 * (p_lr * q_l[j] + 2.0 * h[j]) / d);
        alpha_r.push(-2.0 * (p_lr * q_r[j] + 2.0 * h[j]) / d);
        beta_r.push(-2.0 * (p_lr * h[j] + 2.0 * q_r[j]) / d);
    }

    // Frame normals at stencil points for s^D_jk and the dD n_j
    // reconstruction; frame ordering must be label-stable across the
    // stencil.
    let hh = FRAME_FD_STEP;
    let normals_at = |l: f64, r: f64| -> Result<Vec<AlgebraElement>> {
        let f = moving_frame(field, l, r)?;
        if f.labels != frame.labels {
            return Err(Error::RankInconsistent(
                "frame labels changed across the finite-difference stencil".into(),
            ));
        }
        Ok(f.normals)
    };
    let n_lp = normals_at(l + hh, r)?;
    let n_lm = normals_at(l - hh, r)?;
    let n_rp = normals_at(l, r + hh)?;
    let n_rm = normals_at(l, r - hh)?;
    let dl_n: Vec<AlgebraElement> = (0..nn)
        .map(|j| n_lp[j].sub(&n_lm[j]).scale(0.5 / hh))
        .collect();
    let dr_n: Vec<AlgebraElement> = (0..nn)
        .map(|j| n_rp[j].sub(&n_rm[j]).scale(0.5 / hh))
        .collect();

    let mut s_l = vec![vec![0.0; nn]; nn];
    let mut s_r = vec![vec![0.0; nn]; nn];
    for j in 0..nn {
        for k in 0..nn {
            s_l[j][k] = inner(&dl_n[j], &frame.normals[k])?;
            s_r[j][k] = inner(&dr_n[j], &frame.normals[k])?;
        }
    }
    // The connection coefficients are skew; symmetrize away the
    // finite-difference noise.
    for j in 0..nn {
        for k in 0..j {
            let av_l = 0.5 * (s_l[j][k] - s_l[k][j]);
            s_l[j][k] = av_l;
            s_l[k][j] = -av_l;
            let av_r = 0.5 * (s_r[j][k] - s_r[k][j]);
            s_r[j][k] = av_r;
            s_r[k][j] = -av_r;
        }
        s_l[j][j] = 0.0;
        s_r[j][j] = 0.0;
    }

    // Reconstruction residuals of the Gauss-Weingarten equations.
    let combine = |cx_l: f64, cx_r: f64, cn: &[f64]| -> AlgebraElement {
        let mut acc = frame.x_l.scale(cx_l).add(&frame.x_r.scale(cx_r));
        for (c, nvec) in cn.iter().zip(frame.normals.iter()) {
            acc = acc.add(&nvec.scale(*c));
        }
        acc
    };
    let zeros = vec![0.0; nn];
    let mut residual = 0.0_f64;
    let mut track = |lhs: &AlgebraElement, rhs: &AlgebraElement| {
        residual = residual.max(lhs.sub(rhs).matrix().norm());
    };
    track(&dl_xl, &combine(chris.a_ll, chris.a_lr, &q_l));
    track(&dl_xr, &combine(0.0, 0.0, &h));
    track(&dr_xr, &combine(chris.a_rl, chris.a_rr, &q_r));
    for j in 0..nn {
        let mut rhs_l = combine(alpha_l[j], beta_l[j], &zeros);
        let mut rhs_r = combine(alpha_r[j], beta_r[j], &zeros);
        for k in 0..nn {
            rhs_l = rhs_l.add(&frame.normals[k].scale(s_l[j][k]));
            rhs_r = rhs_r.add(&frame.normals[k].scale(s_r[j][k]));
        }
        track(&dl_n[j], &rhs_l);
        track(&dr_n[j], &rhs_r);
    }

    let tangency = (inner(&dl_xl, &dl_xr)?, inner(&dr_xr, &dl_xr)?);

    Ok(GwTable {
        christoffel: chris,
        h,
        q_l,
        q_r,
        alpha_l,
        beta_l,
        alpha_r,
        beta_r,
        s_l,
        s_r,
        reconstruction_residual: residual,
        tangency_constraint: tangency,
    })
}
