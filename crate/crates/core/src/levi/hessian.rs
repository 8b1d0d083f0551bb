use nalgebra::DMatrix;
use num_complex::Complex64;

use super::LeviError;

/// Hermitian matrix of mixed Wirtinger derivatives `∂²f/∂w_a∂w̄_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianForm {
    entries: DMatrix<Complex64>,
}

impl HermitianForm {
    /// Wraps `entries`, replacing them by `(H + H*)/2`.
    pub fn from_entries(entries: DMatrix<Complex64>) -> Self {
        assert!(entries.is_square(), "Hermitian form must be square");
        let sym = (&entries + entries.adjoint()) * Complex64::new(0.5, 0.0);
        Self { entries: sym }
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d = diag.len();
        let mut m = DMatrix::zeros(d, d);
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        Self { entries: m }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn entry(&self, a: usize, b: usize) -> Complex64 {
        self.entries[(a, b)]
    }

    /// `max |H − H*|` over `max |H|`; zero for the zero matrix.
    pub fn hermitian_residual(&self) -> f64 {
        let scale = self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        let diff = &self.entries - self.entries.adjoint();
        diff.iter().map(|z| z.norm()).fold(0.0, f64::max) / scale
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let eig = self.entries.clone().symmetric_eigen();
        let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        values
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    /// Levi form `Σ H_ab ξ_a ξ̄_b`.
    pub fn apply(&self, xi: &[Complex64]) -> f64 {
        let d = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 0..d {
            for b in 0..d {
                acc += self.entries[(a, b)] * xi[a] * xi[b].conj();
            }
        }
        acc.re
    }
}

pub fn min_eigenvalue(form: &HermitianForm) -> f64 {
    form.min_eigenvalue()
}

/// Real coordinate `k` of a point in ℂ^d: `x_a` for `k = 2a`, `y_a` for `k = 2a + 1`.
fn shifted(w: &[Complex64], moves: &[(usize, f64)]) -> Vec<Complex64> {
    let mut out = w.to_vec();
    for &(k, step) in moves {
        if k % 2 == 0 {
            out[k / 2].re += step;
        } else {
            out[k / 2].im += step;
        }
    }
    out
}

/// Complex Hessian of `f` at `w` by central differences with step `h` in
/// every real direction. `f` returns `None` outside its domain.
///
/// With real coordinates `w_a = x_a + i y_a`,
/// `∂²f/∂w_a∂w̄_b = ¼[(f_{x_a x_b} + f_{y_a y_b}) + i(f_{x_a y_b} − f_{y_a x_b})]`.
pub fn complex_hessian_fd<F>(f: F, w: &[Complex64], h: f64) -> Result<HermitianForm, LeviError>
where
    F: Fn(&[Complex64]) -> Option<f64>,
{
    let d = w.len();
    let n = 2 * d;
    let eval = |p: Vec<Complex64>| f(&p).ok_or(LeviError::StencilOutOfDomain { point: p });
    let center = eval(w.to_vec())?;
    let mut real_hessian = vec![vec![0.0; n]; n];
    for k in 0..n {
        let plus = eval(shifted(w, &[(k, h)]))?;
        let minus = eval(shifted(w, &[(k, -h)]))?;
        real_hessian[k][k] = (plus - 2.0 * center + minus) / (h * h);
    }
    for k in 0..n {
        for l in (k + 1)..n {
            let pp = eval(shifted(w, &[(k, h), (l, h)]))?;
            let pm = eval(shifted(w, &[(k, h), (l, -h)]))?;
            let mp = eval(shifted(w, &[(k, -h), (l, h)]))?;
            let mm = eval(shifted(w, &[(k, -h), (l, -h)]))?;
            let v = (pp - pm - mp + mm) / (4.0 * h * h);
            real_hessian[k][l] = v;
            real_hessian[l][k] = v;
        }
    }
    let mut m = DMatrix::zeros(d, d);
    for a in 0..d {
        for b in 0..d {
            let (xa, ya, xb, yb) = (2 * a, 2 * a + 1, 2 * b, 2 * b + 1);
            let re = real_hessian[xa][xb] + real_hessian[ya][yb];
            let im = real_hessian[xa][yb] - real_hessian[ya][xb];
            m[(a, b)] = Complex64::new(0.25 * re, 0.25 * im);
        }
    }
    Ok(HermitianForm::from_entries(m))
}

/// `∂²f/∂ζ∂ζ̄ = ¼Δf` for a function of one complex variable, five-point stencil.
pub fn mixed_wirtinger_1d<F>(f: F, zeta: Complex64, h: f64) -> Result<f64, LeviError>
where
    F: Fn(Complex64) -> Option<f64>,
{
    let eval = |p: Complex64| f(p).ok_or_else(|| LeviError::StencilOutOfDomain { point: vec![p] });
    let center = eval(zeta)?;
    let sum = eval(zeta + h)?
        + eval(zeta - h)?
        + eval(zeta + Complex64::new(0.0, h))?
        + eval(zeta - Complex64::new(0.0, h))?;
    Ok((sum - 4.0 * center) / (4.0 * h * h))
}

/// `∂f/∂ζ = ½(f_x − i f_y)` by central differences.
pub fn wirtinger_derivative_1d<F>(f: F, zeta: Complex64, h: f64) -> Result<Complex64, LeviError>
where
    F: Fn(Complex64) -> Option<f64>,
{
    let eval = |p: Complex64| f(p).ok_or_else(|| LeviError::StencilOutOfDomain { point: vec![p] });
    let fx = (eval(zeta + h)? - eval(zeta - h)?) / (2.0 * h);
    let dy = Complex64::new(0.0, h);
    let fy = (eval(zeta + dy)? - eval(zeta - dy)?) / (2.0 * h);
    Ok(Complex64::new(0.5 * fx, -0.5 * fy))
}
