use num_complex::Complex64;
use sigma_surfaces::families::{expwell_family, piette_family, ExpWellParams, PietteParams};
use sigma_surfaces::geometry::gaussian_curvature;
use sigma_surfaces::projector::{p_trace_of, Deriv, DerivativeMode, FdOrder, ProjectorField};

fn bands(field: &ProjectorField, l0: f64, l1: f64, r0: f64, r1: f64) {
    let mut bands: Vec<(f64, f64, usize)> = vec![(1e-4, 0.0, 0), (1e-3, 0.0, 0), (1e-2, 0.0, 0), (1e-1, 0.0, 0), (1.0, 0.0, 0), (10.0, 0.0, 0)];
    for i in 0..51 {
        let l = l0 + (l1 - l0) * i as f64 / 50.0;
        for j in 0..51 {
            let r = r0 + (r1 - r0) * j as f64 / 50.0;
            let b = match field.derivatives(l, r) { Ok(b) => b, Err(_) => continue };
            let p_lr = p_trace_of(&b, Deriv::L, Deriv::R);
            let d = 4.0 - p_lr * p_lr;
            if d < 1e-4 { continue; }
            let k = match gaussian_curvature(field, l, r) { Ok(k) => k, Err(_) => continue };
            let err = (k + 4.0).abs();
            for band in bands.iter_mut() {
                if d < band.0 { band.1 = band.1.max(err); band.2 += 1; break; }
            }
        }
    }
    for (ceil, max_err, count) in &bands {
        println!("  denom < {ceil:7.0e}: n={count:5}  max|K+4|={max_err:.3e}");
    }
}

fn main() {
    let mode = DerivativeMode::FiniteDifference { step: 1e-3, order: FdOrder::Four };
    let piette = piette_family(&PietteParams { lambda: Complex64::new(1.1, 1.1) }).unwrap().field.with_mode(mode);
    println!("piette h=1e-3:");
    bands(&piette, -3.0, 3.0, -3.0, 3.0);
    let exp = expwell_family(&ExpWellParams { p: -1.5, chi0: 0.0, d: 0.0 }).unwrap().field.with_mode(mode);
    println!("expwell h=1e-3:");
    bands(&exp, -2.0, 2.0, -0.14, 0.14);
}
