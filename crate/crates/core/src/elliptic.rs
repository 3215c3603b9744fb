//! Jacobi elliptic functions sn, cn, dn.
//!
//! Convention: the second argument is the parameter m (= k^2), so the
//! identities read sn^2 + cn^2 = 1 and dn^2 + m sn^2 = 1. Real arguments
//! are evaluated by the arithmetic-geometric mean with the descending
//! amplitude recurrence; complex arguments go through the standard
//! addition decomposition in terms of real functions of the real and
//! imaginary parts (with complementary parameter 1 - m).

use num_complex::Complex64;

use crate::error::{Error, Result};

/// sn, cn, dn at a real argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
}

fn check_parameter(m: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&m) || !m.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "Jacobi parameter m = {m} outside [0, 1]"
        )));
    }
    Ok(())
}

/// Complete elliptic integral of the first kind K(m), parameter convention.
pub fn complete_k(m: f64) -> Result<f64> {
    check_parameter(m)?;
    if m == 1.0 {
        return Ok(f64::INFINITY);
    }
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..64 {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    Ok(std::f64::consts::FRAC_PI_2 / a)
}

/// Jacobi sn, cn, dn for real argument `u` and parameter `m` in [0, 1].
pub fn jacobi_real(u: f64, m: f64) -> Result<JacobiTriple> {
    check_parameter(m)?;
    if m == 0.0 {
        return Ok(JacobiTriple {
            sn: u.sin(),
            cn: u.cos(),
            dn: 1.0,
        });
    }
    if m == 1.0 {
        let sech = 1.0 / u.cosh();
        return Ok(JacobiTriple {
            sn: u.tanh(),
            cn: sech,
            dn: sech,
        });
    }

    // Reduce by the real period 4K to keep 2^n * a_n * u small in the
    // backward recurrence.
    let k = complete_k(m)?;
    let period = 4.0 * k;
    let u = u - (u / period).round() * period;

    let mut a = vec![1.0_f64];
    let mut c = vec![m.sqrt()];
    let mut b = (1.0 - m).sqrt();
    while c.last().unwrap().abs() > f64::EPSILON * a.last().unwrap() {
        let an = a.last().unwrap();
        let next_a = 0.5 * (an + b);
        let next_c = 0.5 * (an - b);
        b = (an * b).sqrt();
        a.push(next_a);
        c.push(next_c);
        if a.len() > 64 {
            break;
        }
    }
    let levels = a.len() - 1;
    let mut phi = f64::powi(2.0, levels as i32) * a[levels] * u;
    for i in (1..=levels).rev() {
        let s = (c[i] * phi.sin() / a[i]).clamp(-1.0, 1.0);
        phi = 0.5 * (phi + s.asin());
    }
    let sn = phi.sin();
    let cn = phi.cos();
    let dn = (1.0 - m * sn * sn).max(0.0).sqrt();
    Ok(JacobiTriple { sn, cn, dn })
}

/// Jacobi sn, cn, dn for complex argument, via the addition decomposition.
pub fn jacobi_complex(u: Complex64, m: f64) -> Result<(Complex64, Complex64, Complex64)> {
    check_parameter(m)?;
    if u.im == 0.0 {
        let t = jacobi_real(u.re, m)?;
        return Ok((t.sn.into(), t.cn.into(), t.dn.into()));
    }
    let x = jacobi_real(u.re, m)?;
    let y = jacobi_real(u.im, 1.0 - m)?;
    let denom = y.cn * y.cn + m * x.sn * x.sn * y.sn * y.sn;
    let i = Complex64::new(0.0, 1.0);
    let sn = (Complex64::from(x.sn * y.dn) + i * (x.cn * x.dn * y.sn * y.cn)) / denom;
    let cn = (Complex64::from(x.cn * y.cn) - i * (x.sn * x.dn * y.sn * y.dn)) / denom;
    let dn = (Complex64::from(x.dn * y.cn * y.dn) - i * (m * x.sn * x.cn * y.sn)) / denom;
    Ok((sn, cn, dn))
}
