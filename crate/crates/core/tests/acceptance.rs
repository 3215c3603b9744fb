//! Acceptance suite: one test per verification criterion, each printing a
//! pass/fail line with the measured value and its pinned tolerance.
//!
//! Criterion 13 (byte-identical CLI outputs) lives in the CLI crate's own
//! acceptance suite; everything numerical is here.

use num_complex::Complex64;

use sigma_surfaces::algebra::{coords, inner, standard_basis, AlgebraElement};
use sigma_surfaces::cp1::{phase_trace, unit_normal};
use sigma_surfaces::elliptic::jacobi_real;
use sigma_surfaces::families::{
    control_field, control_field_complex, dress, elliptic_family, embed_block, expwell_family,
    piette_family,
    tanh_family, DressedParams, EllipticParams, ExpWellParams, PietteParams, SolutionFamily,
    TanhParams,
};
use sigma_surfaces::geometry::{
    assert_chebyshev, gaussian_curvature, gw_coefficients, moving_frame,
    second_form_and_mean_curvature,
};
use sigma_surfaces::grid::GridSpec;
use sigma_surfaces::immersion::{integrate_to, path_independence};
use sigma_surfaces::lax::{zero_curvature_overall, zero_curvature_spectral};
use sigma_surfaces::projector::{el_residual, p_trace_of, Deriv, ProjectorField};
use sigma_surfaces::sine_gordon::{sg_phase, sg_phase_with_gauge_tolerance, sg_residual};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Print the criterion line and assert the bound.
fn check(criterion: &str, label: &str, value: f64, tol: f64) {
    let status = if value <= tol { "PASS" } else { "FAIL" };
    println!("criterion {criterion} [{label}] {status} (max {value:.3e}, tol {tol:.1e})");
    assert!(
        value <= tol,
        "criterion {criterion} [{label}]: {value:.6e} exceeds {tol:.1e}"
    );
}

/// Print and assert a lower bound (negative controls).
fn check_exceeds(criterion: &str, label: &str, value: f64, floor: f64) {
    let status = if value > floor { "PASS" } else { "FAIL" };
    println!(
        "criterion {criterion} [{label}] {status} (value {value:.3e}, must exceed {floor:.1e})"
    );
    assert!(
        value > floor,
        "criterion {criterion} [{label}]: {value:.6e} does not exceed {floor:.1e}"
    );
}

fn tanh_fam() -> SolutionFamily {
    tanh_family(&TanhParams::default()).unwrap()
}

fn expwell_fam() -> SolutionFamily {
    expwell_family(&ExpWellParams {
        p: -1.5,
        chi0: 0.0,
        d: 0.0,
    })
    .unwrap()
}

fn elliptic_fam() -> SolutionFamily {
    elliptic_family(&EllipticParams {
        k: -0.05,
        xi0: 0.0,
        d: 0.0,
    })
    .unwrap()
}

fn piette_gallery() -> Vec<(String, SolutionFamily)> {
    [
        c64(1.1, 1.1),
        c64(1.0, 2.0),
        c64(std::f64::consts::PI, 0.5),
        c64(-2.0, 2.0),
    ]
    .iter()
    .map(|&lambda| {
        (
            format!("piette {lambda}"),
            piette_family(&PietteParams { lambda }).unwrap(),
        )
    })
    .collect()
}

fn dressed_fam() -> SolutionFamily {
    dress(&DressedParams {
        lambda: c64(1.0, 1.0).unscale(2.0_f64.sqrt()),
        alpha: Complex64::from(-(2.0_f64.sqrt())),
        beta: c64(1.0, 1.0),
    })
    .unwrap()
}

/// The standard evaluation grids per family: tanh and elliptic carry
/// analytic derivatives, the others run on order-4 finite differences.
fn family_suite() -> Vec<(String, SolutionFamily, GridSpec, f64)> {
    let mut suite = vec![
        (
            "tanh".to_string(),
            tanh_fam(),
            GridSpec::new(-2.0, 2.0, -2.0, 2.0, 101, 101).unwrap(),
            1e-10,
        ),
        (
            "expwell".to_string(),
            expwell_fam(),
            GridSpec::new(-40.0, 40.0, -40.0, 40.0, 101, 101).unwrap(),
            1e-5,
        ),
        (
            "elliptic".to_string(),
            elliptic_fam(),
            GridSpec::new(-10.0, 10.0, -10.0, 10.0, 101, 101).unwrap(),
            1e-10,
        ),
    ];
    for (name, fam) in piette_gallery() {
        suite.push((
            name,
            fam,
            GridSpec::new(-3.0, 3.0, -3.0, 3.0, 101, 101).unwrap(),
            1e-5,
        ));
    }
    suite.push((
        "dressed".to_string(),
        dressed_fam(),
        GridSpec::new(-3.0, 3.0, -3.0, 3.0, 101, 101).unwrap(),
        1e-5,
    ));
    suite
}

#[test]
fn criterion_01_euler_lagrange_residual() {
    for (name, fam, grid, tol) in family_suite() {
        let mut max = 0.0_f64;
        for (_, _, l, r) in grid.points() {
            max = max.max(el_residual(&fam.field, l, r).unwrap());
        }
        check("01", &format!("EL residual, {name}"), max, tol);
    }
}

#[test]
fn criterion_02_projector_invariants() {
    for (name, fam, grid, _) in family_suite() {
        let mut max = 0.0_f64;
        for (_, _, l, r) in grid.points() {
            let p = fam.field.evaluate(l, r).unwrap();
            max = max.max(p.idempotency_defect()).max(p.hermiticity_defect());
        }
        check("02", &format!("projector invariants, {name}"), max, 1e-10);
    }
}

#[test]
fn criterion_03_chebyshev_gauge() {
    let cases = [
        ("tanh", tanh_fam(), GridSpec::new(-2.0, 2.0, -2.0, 2.0, 15, 15).unwrap()),
        (
            "expwell",
            expwell_fam(),
            GridSpec::new(-20.0, 20.0, -20.0, 20.0, 15, 15).unwrap(),
        ),
        (
            "piette 1.1+1.1i",
            piette_family(&PietteParams {
                lambda: c64(1.1, 1.1),
            })
            .unwrap(),
            GridSpec::new(-3.0, 3.0, -3.0, 3.0, 15, 15).unwrap(),
        ),
        (
            "elliptic (after measured rescale)",
            elliptic_fam(),
            GridSpec::new(-8.0, 8.0, -8.0, 8.0, 15, 15).unwrap(),
        ),
    ];
    for (name, fam, grid) in cases {
        let report = assert_chebyshev(&fam.field, &grid).unwrap();
        check(
            "03",
            &format!("Chebyshev gauge, {name}"),
            report.max_dev_from_one,
            1e-8,
        );
        assert!(report.passed);
    }
    // The elliptic constructor must have measured and applied a rescale.
    assert!(
        !elliptic_fam().notes.is_empty(),
        "elliptic family should record its applied rescale"
    );
}

/// Max |K + 4| over grid samples regular for the curvature formula.
/// Samples with 4 - p_LR^2 below `margin` are excluded: the formula is
/// 0/0 there and derivative noise is amplified by the inverse
/// denominator, so the margin is set per derivative mode (1e-4 analytic,
/// 1e-1 finite differences). Coverage of the grid is reported alongside.
fn curvature_sweep(field: &ProjectorField, grid: &GridSpec, margin: f64) -> (f64, f64) {
    let mut max = 0.0_f64;
    let mut used = 0usize;
    for (_, _, l, r) in grid.points() {
        let bundle = match field.derivatives(l, r) {
            Ok(b) => b,
            Err(_) => continue,
        };
        let p_lr = p_trace_of(&bundle, Deriv::L, Deriv::R);
        if 4.0 - p_lr * p_lr < margin {
            continue;
        }
        let k = gaussian_curvature(field, l, r).unwrap();
        max = max.max((k + 4.0).abs());
        used += 1;
    }
    (max, used as f64 / grid.len() as f64)
}

#[test]
fn criterion_04_constant_curvature() {
    let cases: Vec<(String, ProjectorField, GridSpec, f64, f64)> = vec![
        (
            "tanh".into(),
            tanh_fam().field,
            GridSpec::new(-2.0, 2.0, -2.0, 2.0, 101, 101).unwrap(),
            1e-6,
            1e-4,
        ),
        (
            // The exponential-well kink core sits in a narrow strip around
            // xi_R = 0 (b ~ 0.005); outside it sin(phi) ~ 0 and the
            // curvature formula is degenerate, so the sweep covers the
            // core.
            "expwell".into(),
            expwell_fam().field,
            GridSpec::new(-2.0, 2.0, -0.14, 0.14, 51, 51).unwrap(),
            1e-3,
            1e-1,
        ),
        (
            "elliptic".into(),
            elliptic_fam().field,
            GridSpec::new(-10.0, 10.0, -10.0, 10.0, 101, 101).unwrap(),
            1e-6,
            1e-4,
        ),
        (
            "piette 1.1+1.1i".into(),
            piette_family(&PietteParams {
                lambda: c64(1.1, 1.1),
            })
            .unwrap()
            .field,
            GridSpec::new(-3.0, 3.0, -3.0, 3.0, 51, 51).unwrap(),
            1e-3,
            1e-1,
        ),
        (
            "tanh embedded in su(3)".into(),
            embed_block(&tanh_fam().field, 3).unwrap(),
            GridSpec::new(-2.0, 2.0, -2.0, 2.0, 51, 51).unwrap(),
            1e-6,
            1e-4,
        ),
    ];
    for (name, field, grid, tol, margin) in cases {
        let (max, coverage) = curvature_sweep(&field, &grid, margin);
        assert!(
            coverage > 0.5,
            "curvature sweep for {name} covered only {coverage:.2} of the grid"
        );
        check("04", &format!("K = -4, {name}"), max, tol);
    }
}

#[test]
fn criterion_05_sine_gordon_residual() {
    // tanh, analytic derivatives, grid step 0.01
    let fam = tanh_fam();
    let grid = GridSpec::new(-2.0, 2.0, -2.0, 2.0, 401, 401).unwrap();
    let phase = sg_phase(&fam.field, grid).unwrap();
    let res = sg_residual(&phase).unwrap();
    check("05", "sine-Gordon residual, tanh", res.max_abs(), 1e-5);

    // Piette, finite differences; step 0.005 keeps the order-4 cross
    // stencil truncation below the tolerance for this faster phase.
    let fam = piette_family(&PietteParams {
        lambda: c64(1.1, 1.1),
    })
    .unwrap();
    let grid = GridSpec::new(-3.0, 3.0, -3.0, 3.0, 1201, 1201).unwrap();
    let phase = sg_phase(&fam.field, grid).unwrap();
    let res = sg_residual(&phase).unwrap();
    check("05", "sine-Gordon residual, piette", res.max_abs(), 1e-4);

    // The control field is not a solution: its extracted phase must fail
    // the equation somewhere (gauge check bypassed, it is not Chebyshev;
    // the complex-valued control is used because the real one has a phase
    // locked to {0, pi}).
    let fam = control_field_complex();
    let grid = GridSpec::new(0.1, 1.1, 0.2, 1.2, 101, 101).unwrap();
    let phase = sg_phase_with_gauge_tolerance(&fam.field, grid, f64::INFINITY).unwrap();
    let res = sg_residual(&phase).unwrap();
    check_exceeds("05", "control field residual", res.max_abs(), 1e-2);
}

#[test]
fn criterion_06_closed_form_kink() {
    let fam = tanh_fam();
    let grid = GridSpec::new(-2.0, 2.0, -2.0, 2.0, 101, 101).unwrap();
    let phase = sg_phase(&fam.field, grid).unwrap();
    // -4 arctan(eps1 tanh((etaL + eps2 etaR)/2)) with eps = (-1, -1) and
    // eta_D = 2 xi_D reduces to 4 arctan(tanh(xi_L - xi_R)).
    let kink = |l: f64, r: f64| {
        let (e1, e2) = (-1.0_f64, -1.0_f64);
        let eta_l = 2.0 * l;
        let eta_r = 2.0 * r;
        -4.0 * (e1 * ((eta_l + e2 * eta_r) / 2.0).tanh()).atan()
    };
    let two_pi = 2.0 * std::f64::consts::PI;
    let shift =
        ((phase.value(0, 0) - kink(grid.xi_l(0), grid.xi_r(0))) / two_pi).round() * two_pi;
    let mut max = 0.0_f64;
    for (i, j, l, r) in grid.points() {
        max = max.max((phase.value(i, j) - kink(l, r) - shift).abs());
    }
    check("06", "closed-form kink match", max, 1e-8);
}

/// Reference pseudosphere in parametric form over (alpha, beta).
fn pseudosphere_reference(alpha: f64, beta: f64) -> [f64; 3] {
    let c2a = (2.0 * alpha).cosh();
    [
        -beta.cos() / (2.0 * c2a) + 1.0 / (2.0 * 2.0_f64.cosh()),
        -beta.sin() / (2.0 * c2a),
        ((2.0 * alpha).tanh() - 2.0_f64.tanh()) / 2.0 + 1.0 - alpha,
    ]
}

/// Orthogonal Procrustes alignment (rotation or reflection plus
/// translation) of `ours` onto `reference`; returns the aligned RMS.
fn procrustes_rms(ours: &[[f64; 3]], reference: &[[f64; 3]]) -> f64 {
    let n = ours.len() as f64;
    let centroid = |pts: &[[f64; 3]]| {
        let mut c = [0.0; 3];
        for p in pts {
            for k in 0..3 {
                c[k] += p[k] / n;
            }
        }
        c
    };
    let ca = centroid(ours);
    let cb = centroid(reference);
    let mut cross = nalgebra::Matrix3::<f64>::zeros();
    for (p, q) in ours.iter().zip(reference.iter()) {
        for i in 0..3 {
            for j in 0..3 {
                cross[(j, i)] += (p[i] - ca[i]) * (q[j] - cb[j]);
            }
        }
    }
    let svd = cross.svd(true, true);
    let rot = svd.u.unwrap() * svd.v_t.unwrap();
    let mut sum_sq = 0.0;
    for (p, q) in ours.iter().zip(reference.iter()) {
        let v = nalgebra::Vector3::new(p[0] - ca[0], p[1] - ca[1], p[2] - ca[2]);
        let w = rot * v;
        for k in 0..3 {
            let d = w[k] + cb[k] - q[k];
            sum_sq += d * d;
        }
    }
    (sum_sq / n).sqrt()
}

#[test]
fn criterion_07_pseudosphere_regression() {
    let started = std::time::Instant::now();
    let fam = tanh_fam();
    let basis = standard_basis(2).unwrap();
    let zero = AlgebraElement::zero(2);
    let basepoint = (0.5, -0.5);
    let n_grid = 41;
    let mut ours = Vec::with_capacity(n_grid * n_grid);
    let mut reference = Vec::with_capacity(n_grid * n_grid);
    for ia in 0..n_grid {
        let alpha = -1.5 + 3.0 * ia as f64 / (n_grid - 1) as f64;
        for ib in 0..n_grid {
            let beta = -std::f64::consts::PI
                + 2.0 * std::f64::consts::PI * ib as f64 / (n_grid - 1) as f64;
            // alpha = xi_L - xi_R, beta = 2 (xi_L + xi_R)
            let l = alpha / 2.0 + beta / 4.0;
            let r = -alpha / 2.0 + beta / 4.0;
            let x = integrate_to(&fam.field, basepoint, (l, r), &zero, 0.02).unwrap();
            let v = coords(&x, &basis).unwrap();
            ours.push([v[0], v[1], v[2]]);
            reference.push(pseudosphere_reference(alpha, beta));
        }
    }
    let rms = procrustes_rms(&ours, &reference);
    let elapsed = started.elapsed().as_secs_f64();
    check("07", "pseudosphere regression RMS", rms, 1e-3);
    check("07", "pseudosphere regression runtime (s)", elapsed, 10.0);
}

#[test]
fn criterion_08_path_independence() {
    let fam = tanh_fam();
    let mut max = 0.0_f64;
    for &(l, r) in &[(1.0, 1.0), (1.5, -0.8), (-1.2, 0.9)] {
        max = max.max(path_independence(&fam.field, (l, r), (0.0, 0.0), 0.02).unwrap());
    }
    check("08", "path independence, tanh", max, 1e-6);

    let fam = piette_family(&PietteParams {
        lambda: c64(1.1, 1.1),
    })
    .unwrap();
    let mut max = 0.0_f64;
    for &(l, r) in &[(1.0, 0.7), (-0.8, 1.1), (0.9, -1.3)] {
        max = max.max(path_independence(&fam.field, (l, r), (0.1, 0.1), 0.02).unwrap());
    }
    check("08", "path independence, piette", max, 1e-6);
}

#[test]
fn criterion_09_zero_curvature() {
    let fam = tanh_fam();
    let wf = fam.wfield.as_ref().unwrap();
    let points = [(0.35, -0.15), (0.8, 0.6), (-0.4, 0.9)];

    let mut max = 0.0_f64;
    for &lam in &[c64(2.0, 0.0), c64(0.5, 0.0), c64(1.0, 1.0), c64(0.0, -3.0)] {
        for &(l, r) in &points {
            max = max.max(zero_curvature_spectral(wf, l, r, lam).unwrap());
        }
    }
    check("09", "zero curvature, spectral kind", max, 1e-6);

    let mut max = 0.0_f64;
    for &lam in &[c64(0.0, 0.0), c64(2.0, 0.0), c64(1.0, 1.0)] {
        for &(l, r) in &points {
            max = max.max(zero_curvature_overall(&fam.field, l, r, lam).unwrap());
        }
    }
    check("09", "zero curvature, overall-factor kind", max, 1e-6);

    // Negative control plus the |(lambda-1)/lambda| scaling, measured
    // between equal-modulus spectral parameters so the entry envelope
    // cancels in the ratio.
    let control = control_field();
    let cw = control.wfield.as_ref().unwrap();
    let (l, r) = (0.5, 0.3);
    let res_p = zero_curvature_spectral(cw, l, r, c64(2.0, 0.0)).unwrap();
    let res_m = zero_curvature_spectral(cw, l, r, c64(-2.0, 0.0)).unwrap();
    check_exceeds("09", "control fails spectral", res_p.min(res_m), 1e-3);
    let overall = zero_curvature_overall(&control.field, l, r, c64(2.0, 0.0)).unwrap();
    check_exceeds("09", "control fails overall-factor", overall, 1e-3);
    let measured = res_p / res_m;
    let predicted = (c64(2.0, 0.0) - 1.0).norm() / 2.0 / ((c64(-2.0, 0.0) - 1.0).norm() / 2.0);
    let ratio_dev = (measured / predicted - 1.0).abs();
    check("09", "(lambda-1)/lambda scaling ratio", ratio_dev, 0.1);
}

#[test]
fn criterion_10_moving_frame() {
    // Gram pattern on tanh and Piette points.
    let mut gram_dev = 0.0_f64;
    let piette = piette_family(&PietteParams {
        lambda: c64(1.1, 1.1),
    })
    .unwrap();
    for (field, pts) in [
        (&tanh_fam().field, [(0.35, -0.15), (0.7, 0.2)]),
        (&piette.field, [(0.21, -0.33), (0.55, 0.4)]),
    ] {
        for &(l, r) in &pts {
            let frame = moving_frame(field, l, r).unwrap();
            let bundle = field.derivatives(l, r).unwrap();
            let p_lr = p_trace_of(&bundle, Deriv::L, Deriv::R);
            let gram = frame.gram();
            for (i, row) in gram.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let expected = if i == j {
                        1.0
                    } else if i + j == 1 {
                        -0.5 * p_lr
                    } else {
                        0.0
                    };
                    gram_dev = gram_dev.max((v - expected).abs());
                }
            }
        }
    }
    check("10", "frame Gram pattern", gram_dev, 1e-10);

    // Gauss-Weingarten reconstruction.
    let mut recon = 0.0_f64;
    for &(l, r) in &[(0.35, -0.15), (0.6, 0.25)] {
        let table = gw_coefficients(&tanh_fam().field, l, r).unwrap();
        recon = recon.max(table.reconstruction_residual);
    }
    check("10", "Gauss-Weingarten reconstruction", recon, 1e-5);

    // Mixed-derivative compatibility of the frame: the reconstructed
    // derivative fields F_L = dL(frame normal), F_R = dR(frame normal)
    // from the coefficient tables must have equal cross derivatives.
    let field = tanh_fam().field;
    let (l0, r0) = (0.4, -0.2);
    let rhs = |l: f64, r: f64, dir_l: bool| -> AlgebraElement {
        let frame = moving_frame(&field, l, r).unwrap();
        let table = gw_coefficients(&field, l, r).unwrap();
        let (alpha, beta, s) = if dir_l {
            (&table.alpha_l, &table.beta_l, &table.s_l)
        } else {
            (&table.alpha_r, &table.beta_r, &table.s_r)
        };
        let mut acc = frame.x_l.scale(alpha[0]).add(&frame.x_r.scale(beta[0]));
        for k in 0..frame.normals.len() {
            acc = acc.add(&frame.normals[k].scale(s[0][k]));
        }
        acc
    };
    let h = 1e-3;
    let dr_fl = rhs(l0, r0 + h, true)
        .sub(&rhs(l0, r0 - h, true))
        .scale(0.5 / h);
    let dl_fr = rhs(l0 + h, r0, false)
        .sub(&rhs(l0 - h, r0, false))
        .scale(0.5 / h);
    let compat = dr_fl.sub(&dl_fr).matrix().norm();
    check("10", "frame mixed-derivative compatibility", compat, 1e-4);
}

#[test]
fn criterion_11_mean_curvature_consistency() {
    // Reality of the scalar H: 1e-10 with exact derivatives (tanh);
    // the finite-difference family carries ~1e-11 derivative noise
    // amplified near small sin(phi), floored at 1e-8.
    let fams = vec![
        ("tanh", tanh_fam(), 1e-10),
        (
            "piette 1.1+1.1i",
            piette_family(&PietteParams {
                lambda: c64(1.1, 1.1),
            })
            .unwrap(),
            1e-8,
        ),
    ];
    let mut cot_dev = 0.0_f64;
    let mut vec_dev = 0.0_f64;
    for (name, fam, imag_tol) in &fams {
        let mut imag_max = 0.0_f64;
        let grid = GridSpec::new(-1.4, 1.4, -1.35, 1.45, 15, 15).unwrap();
        for (_, _, l, r) in grid.points() {
            let bundle = fam.field.derivatives(l, r).unwrap();
            let z = phase_trace(&bundle);
            let z2 = z * z;
            let denom = Complex64::from(1.0) - z2;
            // stay away from sin(phi) = 0 where H diverges
            if denom.norm() < 0.1 {
                continue;
            }
            let h_complex = Complex64::new(0.0, 2.0) * (Complex64::from(1.0) + z2) / denom;
            imag_max = imag_max.max(h_complex.im.abs());
            let phi = (-z).arg();
            cot_dev = cot_dev.max((h_complex.re + 2.0 / phi.tan()).abs());
            let (_, h_vec) = second_form_and_mean_curvature(&fam.field, l, r).unwrap();
            let n = unit_normal(&bundle.p).unwrap();
            vec_dev = vec_dev.max((h_complex.re - inner(&h_vec, &n).unwrap()).abs());
        }
        check("11", &format!("scalar H is real, {name}"), imag_max, *imag_tol);
    }
    check("11", "H = -2 cot(phi)", cot_dev, 1e-6);
    check("11", "H = (H-vector, n)", vec_dev, 1e-6);
}

#[test]
fn criterion_12_jacobi_functions() {
    // Identity sweep.
    let mut id_dev = 0.0_f64;
    for &m in &[0.0, 0.25, 0.5, 0.9, 1.0] {
        let mut u = -10.0;
        while u <= 10.0 {
            let t = jacobi_real(u, m).unwrap();
            id_dev = id_dev.max((t.sn * t.sn + t.cn * t.cn - 1.0).abs());
            id_dev = id_dev.max((t.dn * t.dn + m * t.sn * t.sn - 1.0).abs());
            u += 0.37;
        }
    }
    check("12", "sn/cn/dn identities", id_dev, 1e-12);

    // Independent series oracle: Taylor coefficients from the defining
    // ODE system sn' = cn dn, cn' = -sn dn, dn' = -m sn cn.
    let series = |m: f64| {
        let terms = 48;
        let mut s = vec![0.0; terms];
        let mut c = vec![0.0; terms];
        let mut d = vec![0.0; terms];
        c[0] = 1.0;
        d[0] = 1.0;
        for k in 0..terms - 1 {
            let conv =
                |p: &[f64], q: &[f64]| -> f64 { (0..=k).map(|j| p[j] * q[k - j]).sum() };
            s[k + 1] = conv(&c, &d) / (k + 1) as f64;
            c[k + 1] = -conv(&s, &d) / (k + 1) as f64;
            d[k + 1] = -m * conv(&s, &c) / (k + 1) as f64;
        }
        (s, c, d)
    };
    let horner = |coeffs: &[f64], u: f64| coeffs.iter().rev().fold(0.0, |acc, a| acc * u + a);
    let mut oracle_dev = 0.0_f64;
    for &m in &[0.0, 0.25, 0.5, 0.9, 1.0] {
        let (s, c, d) = series(m);
        let mut u = -0.8;
        while u <= 0.8 {
            let t = jacobi_real(u, m).unwrap();
            oracle_dev = oracle_dev.max((t.sn - horner(&s, u)).abs());
            oracle_dev = oracle_dev.max((t.cn - horner(&c, u)).abs());
            oracle_dev = oracle_dev.max((t.dn - horner(&d, u)).abs());
            u += 0.1;
        }
    }
    check("12", "series-oracle agreement", oracle_dev, 1e-12);
}
