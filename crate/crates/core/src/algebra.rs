//! su(N) viewed as the Euclidean space R^(N^2 - 1).
//!
//! Elements are anti-Hermitian traceless complex matrices. The scalar
//! product is (A, B) = -1/2 tr(A B), which is positive definite on su(N)
//! and makes the standard basis below orthonormal.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

const ALGEBRA_TOL: f64 = 1e-12;

/// An element of su(N): anti-Hermitian and traceless, validated at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    entries: CMatrix,
}

impl AlgebraElement {
    /// Wrap a matrix, validating anti-Hermiticity and tracelessness to 1e-12.
    ///
    /// Violations are reported, never repaired; see [`project_to_algebra`]
    /// for the explicit symmetrization helper.
    pub fn new(entries: CMatrix) -> Result<Self> {
        let ah = (&entries + &entries.dagger()).max_abs();
        if ah > ALGEBRA_TOL {
            return Err(Error::NotAlgebraElement(format!(
                "anti-Hermiticity defect {ah:.3e}"
            )));
        }
        let tr = entries.trace().norm();
        if tr > ALGEBRA_TOL {
            return Err(Error::NotAlgebraElement(format!("trace norm {tr:.3e}")));
        }
        Ok(Self { entries })
    }

    /// Wrap without validation. For internal use where the algebraic form
    /// guarantees membership (e.g. commutators of Hermitian matrices).
    pub(crate) fn new_unchecked(entries: CMatrix) -> Self {
        Self { entries }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            entries: CMatrix::zeros(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.dim()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            entries: self.entries.scale(s),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            entries: &self.entries + &other.entries,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            entries: &self.entries - &other.entries,
        }
    }

    /// Conjugation u . self . u^dagger (the adjoint action for unitary u).
    pub fn conjugate_by(&self, u: &CMatrix) -> Self {
        Self {
            entries: &(u * &self.entries) * &u.dagger(),
        }
    }

    pub fn norm(&self) -> f64 {
        inner(self, self).expect("same element").max(0.0).sqrt()
    }
}

/// Project an arbitrary matrix onto su(N): anti-Hermitian part minus trace.
///
/// Explicit repair for callers that want it; `AlgebraElement::new` never
/// does this silently.
pub fn project_to_algebra(m: &CMatrix) -> AlgebraElement {
    let n = m.dim();
    let mut a = (m - &m.dagger()).scale(0.5);
    let tr = a.trace() / (n as f64);
    for i in 0..n {
        a[(i, i)] -= tr;
    }
    AlgebraElement::new_unchecked(a)
}

/// Scalar product (A, B) = -1/2 tr(A B).
///
/// Symmetric, and positive definite on anti-Hermitian traceless matrices.
pub fn inner(a: &AlgebraElement, b: &AlgebraElement) -> Result<f64> {
    a.matrix().check_same_dim(b.matrix())?;
    let t = (a.matrix() * b.matrix()).trace();
    Ok(-0.5 * t.re)
}

/// Ordered orthonormal basis of su(N).
///
/// Order is fixed: A_jk (j < k, lexicographic), then B_jk, then C_p for
/// p = 1..N-1, so exported coordinates are reproducible across runs.
#[derive(Debug, Clone)]
pub struct BasisSet {
    n: usize,
    elements: Vec<AlgebraElement>,
    labels: Vec<BasisLabel>,
}

/// Which basis matrix an index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisLabel {
    /// i (E_jk + E_kj)
    A(usize, usize),
    /// E_jk - E_kj
    B(usize, usize),
    /// i sqrt(2/(p(p+1))) (diag of p ones then -p)
    C(usize),
}

impl BasisSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &AlgebraElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[AlgebraElement] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> BasisLabel {
        self.labels[i]
    }
}

/// The A_jk basis matrix: (A_jk)_ab = i (delta_ja delta_kb + delta_jb delta_ka).
pub fn basis_a(n: usize, j: usize, k: usize) -> AlgebraElement {
    let mut m = CMatrix::zeros(n);
    m[(j, k)] = Complex64::new(0.0, 1.0);
    m[(k, j)] = Complex64::new(0.0, 1.0);
    AlgebraElement::new_unchecked(m)
}

/// The B_jk basis matrix: (B_jk)_ab = delta_ja delta_kb - delta_jb delta_ka.
pub fn basis_b(n: usize, j: usize, k: usize) -> AlgebraElement {
    let mut m = CMatrix::zeros(n);
    m[(j, k)] = Complex64::new(1.0, 0.0);
    m[(k, j)] = Complex64::new(-1.0, 0.0);
    AlgebraElement::new_unchecked(m)
}

/// The C_p basis matrix, p = 1..=n-1 (1-based as in the A/B index convention).
pub fn basis_c(n: usize, p: usize) -> AlgebraElement {
    let mut m = CMatrix::zeros(n);
    let scale = (2.0 / (p as f64 * (p + 1) as f64)).sqrt();
    for d in 0..p {
        m[(d, d)] = Complex64::new(0.0, scale);
    }
    m[(p, p)] = Complex64::new(0.0, -scale * p as f64);
    AlgebraElement::new_unchecked(m)
}

/// The standard orthonormal basis of su(N), N^2 - 1 elements.
pub fn standard_basis(n: usize) -> Result<BasisSet> {
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    let mut elements = Vec::with_capacity(n * n - 1);
    let mut labels = Vec::with_capacity(n * n - 1);
    for j in 0..n {
        for k in (j + 1)..n {
            elements.push(basis_a(n, j, k));
            labels.push(BasisLabel::A(j + 1, k + 1));
        }
    }
    for j in 0..n {
        for k in (j + 1)..n {
            elements.push(basis_b(n, j, k));
            labels.push(BasisLabel::B(j + 1, k + 1));
        }
    }
    for p in 1..n {
        elements.push(basis_c(n, p));
        labels.push(BasisLabel::C(p));
    }
    Ok(BasisSet {
        n,
        elements,
        labels,
    })
}

/// Coordinates of `a` in the given orthonormal basis: v_i = (a, basis_i).
pub fn coords(a: &AlgebraElement, basis: &BasisSet) -> Result<Vec<f64>> {
    if a.dim() != basis.n {
        return Err(Error::DimensionMismatch(a.dim(), basis.n));
    }
    basis.elements.iter().map(|e| inner(a, e)).collect()
}

/// Reassemble an element from coordinates: sum v_i basis_i.
pub fn from_coords(v: &[f64], basis: &BasisSet) -> Result<AlgebraElement> {
    if v.len() != basis.len() {
        return Err(Error::CoordinateLength {
            got: v.len(),
            expected: basis.len(),
        });
    }
    let mut m = CMatrix::zeros(basis.n);
    for (vi, e) in v.iter().zip(basis.elements.iter()) {
        m = m + e.matrix().scale(*vi);
    }
    Ok(AlgebraElement::new_unchecked(m))
}
