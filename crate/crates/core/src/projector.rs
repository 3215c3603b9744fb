//! Projector-valued fields P(xi_L, xi_R) and their derivative machinery.
//!
//! A field carries its own sampler, an optional closed-form derivative
//! bundle, and a rectangular domain with an excluded singular set. The
//! finite-difference engine is the universal fallback; families that know
//! their derivatives analytically register a bundle closure instead.

use std::sync::Arc;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;

/// Tolerance on projector invariants for analytic families.
pub const PROJECTOR_TOL: f64 = 1e-10;

/// Default finite-difference step.
pub const DEFAULT_FD_STEP: f64 = 1e-4;

/// Documented budget on second-derivative error per stencil order.
pub const FD_TOL_ORDER2: f64 = 1e-6;
pub const FD_TOL_ORDER4: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FdOrder {
    Two,
    Four,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DerivativeMode {
    /// Use the family-supplied closed-form derivative bundle.
    Analytic,
    /// Central finite differences of the configured order and step.
    FiniteDifference { step: f64, order: FdOrder },
}

impl DerivativeMode {
    pub fn fd_default() -> Self {
        DerivativeMode::FiniteDifference {
            step: DEFAULT_FD_STEP,
            order: FdOrder::Four,
        }
    }

    /// Residual tolerance appropriate for this mode, used by verification
    /// drivers.
    pub fn el_tolerance(&self) -> f64 {
        match self {
            DerivativeMode::Analytic => 1e-10,
            DerivativeMode::FiniteDifference {
                order: FdOrder::Four,
                ..
            } => 1e-5,
            DerivativeMode::FiniteDifference {
                order: FdOrder::Two,
                ..
            } => 1e-3,
        }
    }
}

/// Rectangular domain with an excluded singular set.
#[derive(Clone)]
pub struct Domain {
    pub l_min: f64,
    pub l_max: f64,
    pub r_min: f64,
    pub r_max: f64,
    excluded: Option<Arc<dyn Fn(f64, f64) -> bool + Send + Sync>>,
}

impl Domain {
    pub fn rectangle(l_min: f64, l_max: f64, r_min: f64, r_max: f64) -> Self {
        Self {
            l_min,
            l_max,
            r_min,
            r_max,
            excluded: None,
        }
    }

    /// The whole plane.
    pub fn unbounded() -> Self {
        Self::rectangle(
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
        )
    }

    pub fn with_excluded(
        mut self,
        pred: impl Fn(f64, f64) -> bool + Send + Sync + 'static,
    ) -> Self {
        self.excluded = Some(Arc::new(pred));
        self
    }

    pub fn contains(&self, l: f64, r: f64) -> bool {
        l >= self.l_min && l <= self.l_max && r >= self.r_min && r <= self.r_max
    }

    pub fn is_excluded(&self, l: f64, r: f64) -> bool {
        self.excluded.as_ref().map_or(false, |p| p(l, r))
    }

    pub fn check(&self, l: f64, r: f64) -> Result<()> {
        if !self.contains(l, r) {
            return Err(Error::OutOfDomain(l, r));
        }
        if self.is_excluded(l, r) {
            return Err(Error::SingularPoint(l, r));
        }
        Ok(())
    }
}

impl std::fmt::Debug for Domain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Domain")
            .field("l", &(self.l_min, self.l_max))
            .field("r", &(self.r_min, self.r_max))
            .field("has_excluded", &self.excluded.is_some())
            .finish()
    }
}

/// P and its first and second derivatives at a point.
#[derive(Debug, Clone)]
pub struct DerivativeBundle {
    pub p: CMatrix,
    pub p_l: CMatrix,
    pub p_r: CMatrix,
    pub p_ll: CMatrix,
    pub p_lr: CMatrix,
    pub p_rr: CMatrix,
}

/// Multi-index for derivative selection in p-traces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Deriv {
    L,
    R,
    LL,
    LR,
    RR,
}

impl DerivativeBundle {
    pub fn get(&self, d: Deriv) -> &CMatrix {
        match d {
            Deriv::L => &self.p_l,
            Deriv::R => &self.p_r,
            Deriv::LL => &self.p_ll,
            Deriv::LR => &self.p_lr,
            Deriv::RR => &self.p_rr,
        }
    }
}

type Sampler = Arc<dyn Fn(f64, f64) -> CMatrix + Send + Sync>;
type BundleFn = Arc<dyn Fn(f64, f64) -> DerivativeBundle + Send + Sync>;

/// A solution field of the sigma model: Hermitian idempotent P(xi_L, xi_R).
#[derive(Clone)]
pub struct ProjectorField {
    n: usize,
    sample: Sampler,
    analytic: Option<BundleFn>,
    mode: DerivativeMode,
    domain: Domain,
}

impl std::fmt::Debug for ProjectorField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ProjectorField")
            .field("n", &self.n)
            .field("mode", &self.mode)
            .field("domain", &self.domain)
            .finish()
    }
}

impl ProjectorField {
    pub fn new(
        n: usize,
        sample: impl Fn(f64, f64) -> CMatrix + Send + Sync + 'static,
        domain: Domain,
    ) -> Self {
        Self {
            n,
            sample: Arc::new(sample),
            analytic: None,
            mode: DerivativeMode::fd_default(),
            domain,
        }
    }

    pub fn with_analytic(
        mut self,
        bundle: impl Fn(f64, f64) -> DerivativeBundle + Send + Sync + 'static,
    ) -> Self {
        self.analytic = Some(Arc::new(bundle));
        self.mode = DerivativeMode::Analytic;
        self
    }

    pub fn with_mode(mut self, mode: DerivativeMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> DerivativeMode {
        self.mode
    }

    pub fn has_analytic(&self) -> bool {
        self.analytic.is_some()
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn with_domain(mut self, domain: Domain) -> Self {
        self.domain = domain;
        self
    }

    /// P at a point, after the domain check.
    pub fn evaluate(&self, l: f64, r: f64) -> Result<CMatrix> {
        self.domain.check(l, r)?;
        Ok((self.sample)(l, r))
    }

    /// P and all derivatives through second order.
    pub fn derivatives(&self, l: f64, r: f64) -> Result<DerivativeBundle> {
        self.domain.check(l, r)?;
        match self.mode {
            DerivativeMode::Analytic => {
                let f = self.analytic.as_ref().ok_or_else(|| {
                    Error::Unsupported(
                        "analytic mode requested but the family provides no closed-form \
                         derivatives"
                            .into(),
                    )
                })?;
                Ok(f(l, r))
            }
            DerivativeMode::FiniteDifference { step, order } => {
                self.fd_bundle(l, r, step, order)
            }
        }
    }

    fn check_stencil(&self, l: f64, r: f64, reach: f64) -> Result<()> {
        for (dl, dr) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0), (1.0, 1.0), (-1.0, -1.0), (1.0, -1.0), (-1.0, 1.0)] {
            let pl = l + dl * reach;
            let pr = r + dr * reach;
            if !self.domain.contains(pl, pr) {
                return Err(Error::StencilOutOfDomain(l, r));
            }
            if self.domain.is_excluded(pl, pr) {
                return Err(Error::SingularPoint(pl, pr));
            }
        }
        Ok(())
    }

    fn fd_bundle(&self, l: f64, r: f64, h: f64, order: FdOrder) -> Result<DerivativeBundle> {
        let reach = match order {
            FdOrder::Two => h,
            FdOrder::Four => 2.0 * h,
        };
        self.check_stencil(l, r, reach)?;
        let f = |dl: f64, dr: f64| (self.sample)(l + dl, r + dr);
        let p = f(0.0, 0.0);
        match order {
            FdOrder::Two => {
                let (lp, lm) = (f(h, 0.0), f(-h, 0.0));
                let (rp, rm) = (f(0.0, h), f(0.0, -h));
                let p_l = (&lp - &lm).scale(0.5 / h);
                let p_r = (&rp - &rm).scale(0.5 / h);
                let p_ll = (&(&lp + &lm) - &p.scale(2.0)).scale(1.0 / (h * h));
                let p_rr = (&(&rp + &rm) - &p.scale(2.0)).scale(1.0 / (h * h));
                let p_lr = (&(&f(h, h) - &f(h, -h)) - &(&f(-h, h) - &f(-h, -h)))
                    .scale(0.25 / (h * h));
                Ok(DerivativeBundle {
                    p,
                    p_l,
                    p_r,
                    p_ll,
                    p_lr,
                    p_rr,
                })
            }
            FdOrder::Four => {
                let (l1, l2, lm1, lm2) = (f(h, 0.0), f(2.0 * h, 0.0), f(-h, 0.0), f(-2.0 * h, 0.0));
                let (r1, r2, rm1, rm2) = (f(0.0, h), f(0.0, 2.0 * h), f(0.0, -h), f(0.0, -2.0 * h));
                let p_l = (&(&lm2 - &l2) + &(&l1 - &lm1).scale(8.0)).scale(1.0 / (12.0 * h));
                let p_r = (&(&rm2 - &r2) + &(&r1 - &rm1).scale(8.0)).scale(1.0 / (12.0 * h));
                let p_ll = (&(&(&(-&l2) - &lm2) + &(&l1 + &lm1).scale(16.0)) - &p.scale(30.0))
                    .scale(1.0 / (12.0 * h * h));
                let p_rr = (&(&(&(-&r2) - &rm2) + &(&r1 + &rm1).scale(16.0)) - &p.scale(30.0))
                    .scale(1.0 / (12.0 * h * h));
                // Tensor product of the order-4 first-derivative stencil in
                // each direction: offsets +-1h, +-2h with weights
                // (-1, 8, -8, 1) / 12h.
                let offs = [(-2.0, 1.0), (-1.0, -8.0), (1.0, 8.0), (2.0, -1.0)];
                let mut p_lr = CMatrix::zeros(self.n);
                for (ol, wl) in offs {
                    for (or, wr) in offs {
                        p_lr = p_lr + f(ol * h, or * h).scale(wl * wr);
                    }
                }
                let p_lr = p_lr.scale(1.0 / (144.0 * h * h));
                Ok(DerivativeBundle {
                    p,
                    p_l,
                    p_r,
                    p_ll,
                    p_lr,
                    p_rr,
                })
            }
        }
    }
}

/// Reparametrize a field by constant factors: the new field samples
/// P(xi_L / s_l, xi_R / s_r), which rescales J_L by 1/s_l^2 and J_R by
/// 1/s_r^2. Used to apply the Chebyshev factors reported by the gauge
/// check.
pub fn rescale_coordinates(field: &ProjectorField, s_l: f64, s_r: f64) -> Result<ProjectorField> {
    if s_l <= 0.0 || s_r <= 0.0 {
        return Err(Error::InvalidParameter(
            "rescale factors must be positive".into(),
        ));
    }
    let inner = field.clone();
    let sample = move |l: f64, r: f64| (inner.sample)(l / s_l, r / s_r);
    let old = field.domain();
    let domain = Domain {
        l_min: old.l_min * s_l,
        l_max: old.l_max * s_l,
        r_min: old.r_min * s_r,
        r_max: old.r_max * s_r,
        excluded: old
            .excluded
            .clone()
            .map(|pred| -> Arc<dyn Fn(f64, f64) -> bool + Send + Sync> {
                Arc::new(move |l: f64, r: f64| pred(l / s_l, r / s_r))
            }),
    };
    let rescaled = ProjectorField::new(field.n(), sample, domain);
    Ok(if let Some(bundle) = field.analytic.clone() {
        rescaled.with_analytic(move |l, r| {
            let b = bundle(l / s_l, r / s_r);
            DerivativeBundle {
                p: b.p,
                p_l: b.p_l.scale(1.0 / s_l),
                p_r: b.p_r.scale(1.0 / s_r),
                p_ll: b.p_ll.scale(1.0 / (s_l * s_l)),
                p_lr: b.p_lr.scale(1.0 / (s_l * s_r)),
                p_rr: b.p_rr.scale(1.0 / (s_r * s_r)),
            }
        })
    } else {
        rescaled.with_mode(field.mode())
    })
}

/// M_L = [dL P, P] at a point.
pub fn tangent_matrix_l(bundle: &DerivativeBundle) -> CMatrix {
    bundle.p_l.commutator(&bundle.p)
}

/// M_R = [dR P, P] at a point.
pub fn tangent_matrix_r(bundle: &DerivativeBundle) -> CMatrix {
    bundle.p_r.commutator(&bundle.p)
}

/// Tangent pair (X_L, X_R) = ([dL P, P], -[dR P, P]).
pub fn tangents(field: &ProjectorField, l: f64, r: f64) -> Result<(AlgebraElement, AlgebraElement)> {
    let b = field.derivatives(l, r)?;
    let x_l = AlgebraElement::new_unchecked(tangent_matrix_l(&b));
    let x_r = AlgebraElement::new_unchecked(-tangent_matrix_r(&b));
    Ok((x_l, x_r))
}

/// Frobenius norm of the Euler-Lagrange expression [dL dR P, P].
pub fn el_residual(field: &ProjectorField, l: f64, r: f64) -> Result<f64> {
    let b = field.derivatives(l, r)?;
    Ok(b.p_lr.commutator(&b.p).norm())
}

/// p_{B|D} = tr(dB P . dD P); real for Hermitian derivative factors.
pub fn p_trace(field: &ProjectorField, l: f64, r: f64, b: Deriv, d: Deriv) -> Result<f64> {
    let bundle = field.derivatives(l, r)?;
    Ok(p_trace_of(&bundle, b, d))
}

/// p-trace directly from a bundle.
pub fn p_trace_of(bundle: &DerivativeBundle, b: Deriv, d: Deriv) -> f64 {
    let t = (bundle.get(b) * bundle.get(d)).trace();
    // Exact for Hermitian factors; finite-difference second derivatives
    // carry ~1e-8 cancellation noise in their Hermiticity, so only gross
    // conjugation errors are flagged here.
    debug_assert!(
        t.im.abs() <= 1e-4 * (1.0 + t.re.abs()),
        "p-trace should be real, got {t}"
    );
    t.re
}

/// || dL [dR P, P] + dR [dL P, P] ||, the conservation form of the field
/// equation; outer derivatives by nested central differences of the
/// tangent-matrix maps.
pub fn conservation_check(field: &ProjectorField, l: f64, r: f64) -> Result<f64> {
    let h = match field.mode {
        DerivativeMode::FiniteDifference { step, .. } => step.max(1e-5),
        DerivativeMode::Analytic => 1e-5,
    };
    let m_r = |l: f64, r: f64| -> Result<CMatrix> {
        Ok(tangent_matrix_r(&field.derivatives(l, r)?))
    };
    let m_l = |l: f64, r: f64| -> Result<CMatrix> {
        Ok(tangent_matrix_l(&field.derivatives(l, r)?))
    };
    let dl_mr = (&m_r(l + h, r)? - &m_r(l - h, r)?).scale(0.5 / h);
    let dr_ml = (&m_l(l, r + h)? - &m_l(l, r - h)?).scale(0.5 / h);
    Ok((dl_mr + dr_ml).norm())
}

/// Projector invariant defects (||P^2 - P||, ||P - P^dagger||) at a point.
pub fn projector_defects(field: &ProjectorField, l: f64, r: f64) -> Result<(f64, f64)> {
    let p = field.evaluate(l, r)?;
    Ok((p.idempotency_defect(), p.hermiticity_defect()))
}

/// Central-difference first derivatives of an arbitrary matrix-valued map.
/// Used for residual checks that need derivatives of derived quantities
/// (Lax matrices, tangent fields, frame vectors).
pub fn fd_first<F>(f: F, l: f64, r: f64, h: f64, order: FdOrder) -> Result<(CMatrix, CMatrix)>
where
    F: Fn(f64, f64) -> Result<CMatrix>,
{
    match order {
        FdOrder::Two => {
            let d_l = (&f(l + h, r)? - &f(l - h, r)?).scale(0.5 / h);
            let d_r = (&f(l, r + h)? - &f(l, r - h)?).scale(0.5 / h);
            Ok((d_l, d_r))
        }
        FdOrder::Four => {
            let d_l = (&(&f(l - 2.0 * h, r)? - &f(l + 2.0 * h, r)?)
                + &(&f(l + h, r)? - &f(l - h, r)?).scale(8.0))
                .scale(1.0 / (12.0 * h));
            let d_r = (&(&f(l, r - 2.0 * h)? - &f(l, r + 2.0 * h)?)
                + &(&f(l, r + h)? - &f(l, r - h)?).scale(8.0))
                .scale(1.0 / (12.0 * h));
            Ok((d_l, d_r))
        }
    }
}
