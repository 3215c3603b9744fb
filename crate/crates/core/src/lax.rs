//! The two Lax pairs of the CP^1 model and their zero-curvature residuals.
//!
//! The spectral-entry pair carries lambda inside two matrix entries; the
//! overall-factor pair is (2/(1+lambda)) M_L, (2/(1-lambda)) M_R. Both are
//! flat exactly on solutions, for every admissible lambda.

use num_complex::Complex64;

use crate::cp1::WField;
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::projector::{tangent_matrix_l, tangent_matrix_r, ProjectorField};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaxKind {
    /// lambda multiplies individual entries (sl(2, C)-valued).
    Spectral,
    /// lambda appears in overall factors of M_L, M_R.
    OverallFactor,
}

/// A Lax pair evaluated at a point.
#[derive(Debug, Clone)]
pub struct LaxPairSample {
    pub u: CMatrix,
    pub v: CMatrix,
    pub lambda: Complex64,
    pub kind: LaxKind,
}

/// The spectral-entry pair built from w and its first derivatives.
pub fn lax_spectral(wfield: &WField, l: f64, r: f64, lambda: Complex64) -> Result<LaxPairSample> {
    if lambda.norm() == 0.0 {
        return Err(Error::InvalidParameter(
            "spectral Lax pair requires lambda != 0".into(),
        ));
    }
    let w = wfield.value(l, r)?;
    let (w_l, w_r) = wfield.first_derivatives(l, r)?;
    let d = 1.0 + w.norm_sqr();
    let diag_l = 0.5 * (w * w_l.conj() - w.conj() * w_l);
    let diag_r = 0.5 * (w * w_r.conj() - w.conj() * w_r);
    let u = CMatrix::from_rows(&[
        &[diag_l / d, -lambda * w_l.conj() / d],
        &[w_l / d, -diag_l / d],
    ]);
    let v = CMatrix::from_rows(&[
        &[diag_r / d, -w_r.conj() / d],
        &[w_r / (lambda * d), -diag_r / d],
    ]);
    Ok(LaxPairSample {
        u,
        v,
        lambda,
        kind: LaxKind::Spectral,
    })
}

/// The overall-factor pair (2/(1+lambda)) M_L, (2/(1-lambda)) M_R.
pub fn lax_overall(
    field: &ProjectorField,
    l: f64,
    r: f64,
    lambda: Complex64,
) -> Result<LaxPairSample> {
    let one = Complex64::from(1.0);
    if (lambda - one).norm() < 1e-12 || (lambda + one).norm() < 1e-12 {
        return Err(Error::InvalidParameter(
            "overall-factor Lax pair requires lambda != +-1".into(),
        ));
    }
    let bundle = field.derivatives(l, r)?;
    let u = tangent_matrix_l(&bundle).scale_c((one + lambda).inv() * 2.0);
    let v = tangent_matrix_r(&bundle).scale_c((one - lambda).inv() * 2.0);
    Ok(LaxPairSample {
        u,
        v,
        lambda,
        kind: LaxKind::OverallFactor,
    })
}

const LAX_FD_STEP: f64 = 1e-3;

fn zero_curvature_of(
    pair: impl Fn(f64, f64) -> Result<LaxPairSample>,
    l: f64,
    r: f64,
) -> Result<f64> {
    let h = LAX_FD_STEP;
    let u = |l: f64, r: f64| Ok(pair(l, r)?.u);
    let v = |l: f64, r: f64| Ok(pair(l, r)?.v);
    // order-4 central differences of the pair fields
    let dr_u = (&(&u(l, r - 2.0 * h)? - &u(l, r + 2.0 * h)?)
        + &(&u(l, r + h)? - &u(l, r - h)?).scale(8.0))
        .scale(1.0 / (12.0 * h));
    let dl_v = (&(&v(l - 2.0 * h, r)? - &v(l + 2.0 * h, r)?)
        + &(&v(l + h, r)? - &v(l - h, r)?).scale(8.0))
        .scale(1.0 / (12.0 * h));
    let sample = pair(l, r)?;
    let z = &(&dr_u - &dl_v) + &sample.u.commutator(&sample.v);
    Ok(z.norm())
}

/// || dR U - dL V + [U, V] || for the spectral-entry pair.
pub fn zero_curvature_spectral(
    wfield: &WField,
    l: f64,
    r: f64,
    lambda: Complex64,
) -> Result<f64> {
    zero_curvature_of(|l, r| lax_spectral(wfield, l, r, lambda), l, r)
}

/// || dR U - dL V + [U, V] || for the overall-factor pair.
pub fn zero_curvature_overall(
    field: &ProjectorField,
    l: f64,
    r: f64,
    lambda: Complex64,
) -> Result<f64> {
    zero_curvature_of(|l, r| lax_overall(field, l, r, lambda), l, r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{control_field, tanh_family, TanhParams};
    use crate::projector::Domain;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn spectral_at_lambda_one_is_traceless_frame_connection() {
        let fam = tanh_family(&TanhParams::default()).unwrap();
        let wf = fam.wfield.as_ref().unwrap();
        let s = lax_spectral(wf, 0.4, -0.2, Complex64::from(1.0)).unwrap();
        assert!(s.u.trace().norm() < 1e-14);
        assert!(s.v.trace().norm() < 1e-14);
        // At lambda = 1 the pair is anti-Hermitian (su(2)-valued).
        assert!((&s.u + &s.u.dagger()).norm() < 1e-12);
        assert!((&s.v + &s.v.dagger()).norm() < 1e-12);
    }

    #[test]
    fn spectral_rejects_zero_lambda() {
        let fam = tanh_family(&TanhParams::default()).unwrap();
        let wf = fam.wfield.as_ref().unwrap();
        assert!(lax_spectral(wf, 0.0, 0.0, Complex64::from(0.0)).is_err());
    }

    #[test]
    fn constant_w_gives_zero_pair() {
        let wf = WField::new(|_, _| c(0.3, -0.4), Domain::unbounded());
        let s = lax_spectral(&wf, 0.1, 0.2, c(2.0, 0.0)).unwrap();
        assert!(s.u.norm() < 1e-12);
        assert!(s.v.norm() < 1e-12);
    }

    #[test]
    fn overall_factor_limits() {
        let fam = tanh_family(&TanhParams::default()).unwrap();
        let (l, r) = (0.3, -0.5);
        let bundle = fam.field.derivatives(l, r).unwrap();
        let m_l = tangent_matrix_l(&bundle);
        // lambda = 0 reduces to (2 M_L, 2 M_R)
        let s = lax_overall(&fam.field, l, r, Complex64::from(0.0)).unwrap();
        assert!(s.u.max_diff(&m_l.scale(2.0)) < 1e-12);
        // very large lambda kills both matrices
        let s = lax_overall(&fam.field, l, r, Complex64::from(1e8)).unwrap();
        assert!(s.u.norm() < 1e-7 && s.v.norm() < 1e-7);
        assert!(lax_overall(&fam.field, l, r, Complex64::from(1.0)).is_err());
    }

    #[test]
    fn zero_curvature_on_solution() {
        let fam = tanh_family(&TanhParams::default()).unwrap();
        let wf = fam.wfield.as_ref().unwrap();
        for &lam in &[c(2.0, 0.0), c(0.5, 0.0), c(1.0, 1.0), c(0.0, -3.0)] {
            let res = zero_curvature_spectral(wf, 0.35, -0.15, lam).unwrap();
            assert!(res < 1e-6, "spectral residual {res:e} at lambda {lam}");
        }
        for &lam in &[c(0.0, 0.0), c(2.0, 0.0), c(1.0, 1.0)] {
            let res = zero_curvature_overall(&fam.field, 0.35, -0.15, lam).unwrap();
            assert!(res < 1e-6, "overall residual {res:e} at lambda {lam}");
        }
    }

    #[test]
    fn control_field_fails_zero_curvature_with_scaling() {
        let fam = control_field();
        let wf = fam.wfield.as_ref().unwrap();
        let (l, r) = (0.5, 0.3);
        let res_a = zero_curvature_spectral(wf, l, r, c(2.0, 0.0)).unwrap();
        let res_b = zero_curvature_spectral(wf, l, r, c(-2.0, 0.0)).unwrap();
        assert!(res_a > 1e-3 && res_b > 1e-3);
        // |(lambda-1)/lambda| ratio between equal-modulus lambdas: (1/2) / (3/2).
        let measured = res_a / res_b;
        let predicted = 0.5 / 1.5;
        assert!(
            (measured / predicted - 1.0).abs() < 0.1,
            "scaling ratio {measured} vs {predicted}"
        );
    }
}
