//! Complex matrix helpers for the quantum instance.
//!
//! Hermitian eigendecomposition is the only factorization used; every
//! input to it is symmetrized first. Eigenpairs are sorted by descending
//! eigenvalue so rank decisions and isometry columns are deterministic.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

pub fn czero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

pub fn cone() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

pub fn cr(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Matrix unit `|i⟩⟨j|` in dimension `n`.
pub fn matrix_unit(n: usize, i: usize, j: usize) -> CMat {
    let mut m = CMat::zeros(n, n);
    m[(i, j)] = cone();
    m
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|v| v.norm()).fold(0.0, f64::max)
}

pub fn is_hermitian(m: &CMat, tol: f64) -> bool {
    max_abs(&(m - m.adjoint())) <= tol
}

/// `(m + m†)/2`.
pub fn symmetrize(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// Hermitian eigendecomposition of the symmetrized input, eigenpairs
/// sorted by descending eigenvalue.
pub fn herm_eig(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    if n == 0 {
        return (Vec::new(), CMat::zeros(0, 0));
    }
    let eig = symmetrize(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[b]
            .partial_cmp(&eig.eigenvalues[a])
            .expect("finite eigenvalues")
    });
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMat::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        vectors.set_column(col, &eig.eigenvectors.column(i));
    }
    (values, vectors)
}

pub fn min_eigenvalue(m: &CMat) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    let (vals, _) = herm_eig(m);
    *vals.last().unwrap()
}

pub fn is_psd(m: &CMat, eps: f64) -> bool {
    min_eigenvalue(m) >= -eps
}

/// Columns of `vecs` selected by `keep`, re-orthonormalized by a
/// Gram–Schmidt pass.
fn selected_isometry(vals: &[f64], vecs: &CMat, keep: impl Fn(f64) -> bool) -> CMat {
    let n = vecs.nrows();
    let cols: Vec<usize> = (0..vals.len()).filter(|&i| keep(vals[i])).collect();
    let mut v = CMat::zeros(n, cols.len());
    for (c, &i) in cols.iter().enumerate() {
        v.set_column(c, &vecs.column(i));
    }
    for c in 0..v.ncols() {
        for prev in 0..c {
            let overlap: Complex64 = (v.column(prev).adjoint() * v.column(c))[(0, 0)];
            let corrected = v.column(c) - v.column(prev).scale_complex(overlap);
            v.set_column(c, &corrected);
        }
        let norm = v.column(c).norm();
        if norm > 0.0 {
            let unit = v.column(c).unscale(norm);
            v.set_column(c, &unit);
        }
    }
    v
}

trait ScaleComplex {
    fn scale_complex(&self, s: Complex64) -> nalgebra::DVector<Complex64>;
}

impl ScaleComplex for nalgebra::DVectorView<'_, Complex64> {
    fn scale_complex(&self, s: Complex64) -> nalgebra::DVector<Complex64> {
        nalgebra::DVector::from_iterator(self.len(), self.iter().map(|v| v * s))
    }
}

/// Isometry onto the span of eigenvectors with eigenvalue above `eps`
/// (`V† V = I`, `V V†` = the support projection).
pub fn support_isometry(m: &CMat, eps: f64) -> CMat {
    let (vals, vecs) = herm_eig(m);
    selected_isometry(&vals, &vecs, |v| v > eps)
}

/// Projection onto the span of eigenvectors with eigenvalue above `eps`.
pub fn support_projection(m: &CMat, eps: f64) -> CMat {
    let v = support_isometry(m, eps);
    &v * v.adjoint()
}

/// Isometry onto the eigenvalue-one eigenspace of an effect.
pub fn floor_isometry(effect: &CMat, eps: f64) -> CMat {
    let (vals, vecs) = herm_eig(effect);
    selected_isometry(&vals, &vecs, |v| v >= 1.0 - eps)
}

/// Greatest projection below an effect: the eigenvalue-one eigenspace.
pub fn floor_projection(effect: &CMat, eps: f64) -> CMat {
    let v = floor_isometry(effect, eps);
    &v * v.adjoint()
}

/// Unique PSD square root; negative eigenvalues are clamped to zero.
pub fn sqrt_psd(m: &CMat, eps: f64) -> Result<CMat, f64> {
    let (vals, vecs) = herm_eig(m);
    if let Some(&min) = vals.last() {
        if min < -eps {
            return Err(min);
        }
    }
    Ok(rebuild(&vals, &vecs, |v| v.max(0.0).sqrt()))
}

/// `Σ g(λᵢ) vᵢvᵢ†` over the eigenpairs.
pub fn rebuild(vals: &[f64], vecs: &CMat, g: impl Fn(f64) -> f64) -> CMat {
    let n = vecs.nrows();
    let mut out = CMat::zeros(n, n);
    for (i, &v) in vals.iter().enumerate() {
        let col = vecs.column(i);
        out += (col * col.adjoint()).scale(g(v));
    }
    out
}

/// Pseudo-inverse of the PSD square root, supported above `eps`.
pub fn pinv_sqrt(m: &CMat, eps: f64) -> CMat {
    let (vals, vecs) = herm_eig(m);
    rebuild(&vals, &vecs, |v| if v > eps { 1.0 / v.sqrt() } else { 0.0 })
}

/// `true` when `a² = a = a†` within `tol`.
pub fn is_projection(a: &CMat, tol: f64) -> bool {
    is_hermitian(a, tol) && max_abs(&(a * a - a)) <= tol
}

/// Orthonormal basis of the intersection of the ranges of two projections,
/// via the nullspace of `(1−p) + (1−q)`.
pub fn range_intersection(p: &CMat, q: &CMat, eps: f64) -> CMat {
    let n = p.nrows();
    let eye = CMat::identity(n, n);
    let stacked = (&eye - p) + (&eye - q);
    let (vals, vecs) = herm_eig(&stacked);
    selected_isometry(&vals, &vecs, move |v| v <= eps)
}
