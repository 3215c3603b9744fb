//! CP^1 specialization: rank-1 projectors parametrized by a complex
//! function w, with closed-form derivative transport from w to P.
//!
//! Orientation convention: the sine-Gordon phase is defined through
//! e^{i phi} = -tr(dR P . P . dL P) = -dL w / dR w, which makes the
//! extracted tanh-family phase the kink 4 arctan(tanh(xi_L - xi_R)) with
//! positive sign. The unit normal is i(1 - 2P), and the mean curvature
//! scalar below is -2 cot(phi) under this orientation.

use std::sync::Arc;

use num_complex::Complex64;

use crate::algebra::{inner, AlgebraElement};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::projector::{DerivativeBundle, DerivativeMode, Domain, FdOrder, ProjectorField};

/// A complex-valued field w(xi_L, xi_R) with optional analytic derivatives.
#[derive(Clone)]
pub struct WField {
    w: Arc<dyn Fn(f64, f64) -> Complex64 + Send + Sync>,
    /// (dL w, dR w)
    first: Option<Arc<dyn Fn(f64, f64) -> (Complex64, Complex64) + Send + Sync>>,
    /// (dLL w, dLR w, dRR w)
    second: Option<Arc<dyn Fn(f64, f64) -> (Complex64, Complex64, Complex64) + Send + Sync>>,
    domain: Domain,
}

impl std::fmt::Debug for WField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WField")
            .field("analytic_first", &self.first.is_some())
            .field("analytic_second", &self.second.is_some())
            .finish()
    }
}

impl WField {
    pub fn new(w: impl Fn(f64, f64) -> Complex64 + Send + Sync + 'static, domain: Domain) -> Self {
        Self {
            w: Arc::new(w),
            first: None,
            second: None,
            domain,
        }
    }

    pub fn with_first(
        mut self,
        f: impl Fn(f64, f64) -> (Complex64, Complex64) + Send + Sync + 'static,
    ) -> Self {
        self.first = Some(Arc::new(f));
        self
    }

    pub fn with_second(
        mut self,
        f: impl Fn(f64, f64) -> (Complex64, Complex64, Complex64) + Send + Sync + 'static,
    ) -> Self {
        self.second = Some(Arc::new(f));
        self
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn value(&self, l: f64, r: f64) -> Result<Complex64> {
        self.domain.check(l, r)?;
        Ok((self.w)(l, r))
    }

    /// (dL w, dR w): analytic when registered, otherwise order-4 central
    /// differences with the default step.
    pub fn first_derivatives(&self, l: f64, r: f64) -> Result<(Complex64, Complex64)> {
        self.domain.check(l, r)?;
        if let Some(f) = &self.first {
            return Ok(f(l, r));
        }
        let h = crate::projector::DEFAULT_FD_STEP;
        let w = &self.w;
        let d = |a: Complex64, b: Complex64, c: Complex64, e: Complex64| {
            (a - b + (c - e) * 8.0) / (12.0 * h)
        };
        let w_l = d(w(l - 2.0 * h, r), w(l + 2.0 * h, r), w(l + h, r), w(l - h, r));
        let w_r = d(w(l, r - 2.0 * h), w(l, r + 2.0 * h), w(l, r + h), w(l, r - h));
        Ok((w_l, w_r))
    }

    pub fn has_analytic(&self) -> bool {
        self.first.is_some() && self.second.is_some()
    }

    /// Build the projector field induced by this w. Analytic derivative
    /// transport is installed when both derivative closures are present;
    /// otherwise the field falls back to finite differences on P.
    pub fn to_projector_field(&self) -> ProjectorField {
        let w = self.w.clone();
        let field = ProjectorField::new(
            2,
            move |l, r| projector_from_w(w(l, r)),
            self.domain.clone(),
        );
        if let (Some(first), Some(second)) = (self.first.clone(), self.second.clone()) {
            let w = self.w.clone();
            field.with_analytic(move |l, r| {
                bundle_from_w(w(l, r), first(l, r), second(l, r))
            })
        } else {
            field.with_mode(DerivativeMode::FiniteDifference {
                step: crate::projector::DEFAULT_FD_STEP,
                order: FdOrder::Four,
            })
        }
    }
}

/// The rank-1 projector associated with w; the antipodal chart w -> 1/w is
/// used for |w| > 1 so the formula never overflows near poles.
pub fn projector_from_w(w: Complex64) -> CMatrix {
    let mut m = CMatrix::zeros(2);
    if w.norm_sqr() <= 1.0 {
        let d = 1.0 + w.norm_sqr();
        m[(0, 0)] = Complex64::from(w.norm_sqr() / d);
        m[(0, 1)] = -w.conj() / d;
        m[(1, 0)] = -w / d;
        m[(1, 1)] = Complex64::from(1.0 / d);
    } else {
        let v = w.inv();
        let d = 1.0 + v.norm_sqr();
        m[(0, 0)] = Complex64::from(1.0 / d);
        m[(0, 1)] = -v / d;
        m[(1, 0)] = -v.conj() / d;
        m[(1, 1)] = Complex64::from(v.norm_sqr() / d);
    }
    m
}

/// Recover w from a rank-1 CP^1 projector (inverse of `projector_from_w`).
pub fn w_from_projector(p: &CMatrix) -> Result<Complex64> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch(p.dim(), 2));
    }
    let p22 = p[(1, 1)];
    if p22.norm() >= 0.5 {
        Ok(-p[(1, 0)] / p22)
    } else {
        // Near the pole use the antipodal chart: w' = -P12 / P11 = 1/w.
        let wp = -p[(0, 1)] / p[(0, 0)];
        Ok(wp.inv())
    }
}

/// Closed-form derivative transport: P = M / D with D = 1 + w conj(w) and
/// M the 2x2 numerator, differentiated through second order.
pub fn bundle_from_w(
    w: Complex64,
    (w_l, w_r): (Complex64, Complex64),
    (w_ll, w_lr, w_rr): (Complex64, Complex64, Complex64),
) -> DerivativeBundle {
    let wb = w.conj();
    let d = 1.0 + w.norm_sqr();

    let numerator = |w: Complex64, wb: Complex64| {
        let mut m = CMatrix::zeros(2);
        m[(0, 0)] = w * wb;
        m[(0, 1)] = -wb;
        m[(1, 0)] = -w;
        m[(1, 1)] = Complex64::from(1.0);
        m
    };
    let d_numerator = |wa: Complex64| {
        let mut m = CMatrix::zeros(2);
        m[(0, 0)] = wa * wb + w * wa.conj();
        m[(0, 1)] = -wa.conj();
        m[(1, 0)] = -wa;
        m
    };
    let dd_numerator = |wa: Complex64, wb_a: Complex64, wab: Complex64| {
        // wa = first derivative in one direction, wb_a in the other,
        // wab = mixed/second; all conjugates follow from realness of xi.
        let mut m = CMatrix::zeros(2);
        m[(0, 0)] = wab * wb + wa * wb_a.conj() + wb_a * wa.conj() + w * wab.conj();
        m[(0, 1)] = -wab.conj();
        m[(1, 0)] = -wab;
        m
    };

    let m = numerator(w, wb);
    let da = |wa: Complex64| 2.0 * (wa * wb).re;
    let dab = |wa: Complex64, wb_d: Complex64, wab: Complex64| {
        2.0 * (wab * wb).re + 2.0 * (wa * wb_d.conj()).re
    };

    let d_l = da(w_l);
    let d_r = da(w_r);
    let d_ll = dab(w_l, w_l, w_ll);
    let d_lr = dab(w_l, w_r, w_lr);
    let d_rr = dab(w_r, w_r, w_rr);

    let p = m.scale(1.0 / d);
    let first = |ma: &CMatrix, da: f64| (ma - &m.scale(da / d)).scale(1.0 / d);
    let p_l = first(&d_numerator(w_l), d_l);
    let p_r = first(&d_numerator(w_r), d_r);

    let second = |mab: &CMatrix, ma: &CMatrix, mb: &CMatrix, da: f64, db: f64, dab_v: f64| {
        let term1 = mab.scale(1.0 / d);
        let term2 = (&(&ma.scale(db) + &mb.scale(da)) + &m.scale(dab_v)).scale(1.0 / (d * d));
        let term3 = m.scale(2.0 * da * db / (d * d * d));
        &(&term1 - &term2) + &term3
    };
    let m_l = d_numerator(w_l);
    let m_r = d_numerator(w_r);
    let p_ll = second(&dd_numerator(w_l, w_l, w_ll), &m_l, &m_l, d_l, d_l, d_ll);
    let p_lr = second(&dd_numerator(w_l, w_r, w_lr), &m_l, &m_r, d_l, d_r, d_lr);
    let p_rr = second(&dd_numerator(w_r, w_r, w_rr), &m_r, &m_r, d_r, d_r, d_rr);

    DerivativeBundle {
        p,
        p_l,
        p_r,
        p_ll,
        p_lr,
        p_rr,
    }
}

/// (J_L, J_R) from the w-parametrization:
/// J_D = |dD w|^2 / (1 + |w|^2)^2. Chart-invariant.
pub fn jl_jr(wfield: &WField, l: f64, r: f64) -> Result<(f64, f64)> {
    let w = wfield.value(l, r)?;
    let (w_l, w_r) = wfield.first_derivatives(l, r)?;
    let d = 1.0 + w.norm_sqr();
    Ok((w_l.norm_sqr() / (d * d), w_r.norm_sqr() / (d * d)))
}

/// Unit normal to a CP^1 surface, i(1 - 2P). Orientation chosen so the
/// scalar second fundamental form is 4 sin(phi) d xi_L d xi_R for the
/// kink-positive phase.
pub fn unit_normal(p: &CMatrix) -> Result<AlgebraElement> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch(p.dim(), 2));
    }
    let n = (&CMatrix::identity(2) - &p.scale(2.0)).scale_c(Complex64::new(0.0, 1.0));
    Ok(AlgebraElement::new_unchecked(n))
}

/// tr(dR P . P . dL P) = -e^{i phi} in the Chebyshev gauge, with the
/// orientation convention of this module.
pub fn phase_trace(bundle: &DerivativeBundle) -> Complex64 {
    (&(&bundle.p_r * &bundle.p) * &bundle.p_l).trace()
}

/// Pointwise principal phase phi in (-pi, pi], with the gauge check
/// | |trace| - 1 | <= 1e-6.
pub fn principal_phase(bundle: &DerivativeBundle, l: f64, r: f64) -> Result<f64> {
    principal_phase_tol(bundle, l, r, 1e-6)
}

/// Principal phase with an explicit gauge tolerance; an infinite tolerance
/// extracts the argument unconditionally (used for negative controls).
pub fn principal_phase_tol(
    bundle: &DerivativeBundle,
    l: f64,
    r: f64,
    gauge_tol: f64,
) -> Result<f64> {
    let z = phase_trace(bundle);
    let modulus = z.norm();
    if (modulus - 1.0).abs() > gauge_tol {
        return Err(Error::GaugeViolation(
            l,
            r,
            format!("|tr(dR P P dL P)| = {modulus:.12}, expected 1 (Chebyshev gauge)"),
        ));
    }
    Ok((-z).arg())
}

/// First fundamental form coefficients (1, cos phi, 1) and the scalar
/// second-form coefficient 4 sin phi, both from the phase trace.
pub fn cp1_fundamental_forms(
    field: &ProjectorField,
    l: f64,
    r: f64,
) -> Result<((f64, f64, f64), f64)> {
    if field.n() != 2 {
        return Err(Error::DimensionMismatch(field.n(), 2));
    }
    let bundle = field.derivatives(l, r)?;
    let phi = principal_phase(&bundle, l, r)?;
    Ok(((1.0, phi.cos(), 1.0), 4.0 * phi.sin()))
}

/// Scalar mean curvature 2i (1 + z^2) / (1 - z^2) with z the phase trace;
/// equals -2 cot(phi). Errors where sin(phi) is below threshold, where the
/// mean curvature diverges.
pub fn mean_curvature_scalar(field: &ProjectorField, l: f64, r: f64) -> Result<f64> {
    if field.n() != 2 {
        return Err(Error::DimensionMismatch(field.n(), 2));
    }
    let bundle = field.derivatives(l, r)?;
    let z = phase_trace(&bundle);
    let z2 = z * z;
    let denom = Complex64::from(1.0) - z2;
    // |1 - z^2| = 2 |sin phi| on the unit circle.
    if denom.norm() < 2e-6 {
        return Err(Error::DegenerateMetric(
            l,
            r,
            "sin(phi) below threshold, mean curvature diverges".into(),
        ));
    }
    let h = Complex64::new(0.0, 2.0) * (Complex64::from(1.0) + z2) / denom;
    if h.im.abs() > 1e-10 * (1.0 + h.re.abs()) {
        return Err(Error::GaugeViolation(
            l,
            r,
            format!("mean curvature has imaginary part {:.3e}", h.im),
        ));
    }
    Ok(h.re)
}

/// Scalar second fundamental form via the normal route,
/// ( 2 [dL P, dR P], n ); cross-validates the 4 sin phi formula.
pub fn second_form_normal_route(field: &ProjectorField, l: f64, r: f64) -> Result<f64> {
    let bundle = field.derivatives(l, r)?;
    let comm = bundle.p_l.commutator(&bundle.p_r).scale(2.0);
    let n = unit_normal(&bundle.p)?;
    inner(&AlgebraElement::new_unchecked(comm), &n)
}
