//! Exponential-kernel calculus on the grid.
//!
//! All integrals are exact for the piecewise-linear interpolant of the integrand, so the
//! discretisation error is second order in the spacing for any kernel rate.

use crate::error::{Error, Result};
use crate::function_space::{Grid, LineFunction};

/// `e_a(x) = exp(-a x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpKernel {
    pub rate: f64,
}

impl ExpKernel {
    pub fn new(rate: f64) -> Self {
        ExpKernel { rate }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (-self.rate * x).exp()
    }

    /// Grid samples; a limit that does not exist is replaced by the boundary sample.
    pub fn sample(&self, grid: Grid) -> LineFunction {
        let f = LineFunction::from_fn(grid, |x| self.eval(x));
        let (lo, hi) = (f.limit_neg(), f.limit_pos());
        let lo = if self.rate < 0.0 { 0.0 } else { lo };
        let hi = if self.rate > 0.0 { 0.0 } else { hi };
        LineFunction::from_parts(grid, f.into_samples(), lo, hi)
    }
}

/// One-step weights for `int_0^h exp(-r v) p(v) dv` with `p` linear between two samples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepWeights {
    /// `exp(-r h)`.
    pub decay: f64,
    /// Weight of the sample at `v = 0`.
    pub near: f64,
    /// Weight of the sample at `v = h`.
    pub far: f64,
}

pub fn step_weights(rate: f64, h: f64) -> StepWeights {
    let z = rate * h;
    let decay = (-z).exp();
    if z.abs() < 0.5 {
        // near = h sum (-z)^k / (k+2)!, far = h sum (-1)^k (k+1) z^k / (k+2)!
        let (mut near, mut far) = (0.0, 0.0);
        let mut term = 0.5;
        for k in 0..18 {
            near += term;
            far += term * (k + 1) as f64;
            term *= -z / (k + 3) as f64;
        }
        StepWeights { decay, near: h * near, far: h * far }
    } else {
        let em = (-z).exp_m1();
        StepWeights {
            decay,
            near: h * (z + em) / (z * z),
            far: h * (-em - z * decay) / (z * z),
        }
    }
}

/// `I_j = int_0^{j h} exp(-a (j h - y)) v(y) dy` for samples `v_j` at `y = j h`, `j >= 0`.
pub fn convolve_from_origin(rate: f64, h: f64, values: &[f64]) -> Vec<f64> {
    let w = step_weights(rate, h);
    let mut out = Vec::with_capacity(values.len());
    let mut acc = 0.0;
    out.push(acc);
    for j in 1..values.len() {
        acc = w.decay * acc + w.near * values[j] + w.far * values[j - 1];
        out.push(acc);
    }
    out
}

/// Signed convolution `(e_a * phi)(x) = int_0^x exp(-a (x - y)) phi(y) dy` on the whole grid.
///
/// The limit at `+inf` is `phi(inf) / a` for `a > 0` and the limit at `-inf` is
/// `phi(-inf) / a` for `a < 0`; limits that do not exist are replaced by the boundary sample.
pub fn exp_convolve(a: f64, phi: &LineFunction) -> LineFunction {
    let grid = *phi.grid();
    let m = grid.center();
    let h = grid.spacing();
    let s = phi.samples();
    let n = s.len();
    let mut out = vec![0.0; n];
    let right = convolve_from_origin(a, h, &s[m..]);
    out[m..].copy_from_slice(&right);
    let w = step_weights(-a, h);
    let mut acc = 0.0;
    for k in (1..=m).rev() {
        acc = w.decay * acc + w.near * s[k - 1] + w.far * s[k];
        out[k - 1] = -acc;
    }
    let lo = if a < 0.0 { phi.limit_neg() / a } else { out[0] };
    let hi = if a > 0.0 { phi.limit_pos() / a } else { out[n - 1] };
    LineFunction::from_parts(grid, out, lo, hi)
}

/// `int_0^inf exp(-lambda x) phi(x) dx` with a constant tail beyond `L`.
pub fn laplace_at(phi: &LineFunction, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::NonPositiveLambda(lambda));
    }
    let grid = phi.grid();
    let h = grid.spacing();
    let m = grid.center();
    let s = phi.samples();
    let w = step_weights(lambda, h);
    let mut sum = 0.0;
    for k in m..s.len() - 1 {
        sum += (-lambda * grid.node(k)).exp() * (w.near * s[k] + w.far * s[k + 1]);
    }
    Ok(sum + phi.limit_pos() * (-lambda * grid.half_width()).exp() / lambda)
}

/// `x -> int_{-inf}^x exp(-gamma (x - y)) psi(y) dy`.
pub fn improper_left(gamma: f64, psi: &LineFunction) -> Result<LineFunction> {
    if !(gamma > 0.0) {
        return Err(Error::NonPositiveGamma(gamma));
    }
    let s = psi.samples();
    let w = step_weights(gamma, psi.grid().spacing());
    let mut out = Vec::with_capacity(s.len());
    let mut acc = psi.limit_neg() / gamma;
    out.push(acc);
    for k in 1..s.len() {
        acc = w.decay * acc + w.near * s[k] + w.far * s[k - 1];
        out.push(acc);
    }
    Ok(LineFunction::from_parts(*psi.grid(), out, psi.limit_neg() / gamma, psi.limit_pos() / gamma))
}

/// `x -> int_x^inf exp(gamma (x - y)) psi(y) dy`.
pub fn improper_right(gamma: f64, psi: &LineFunction) -> Result<LineFunction> {
    if !(gamma > 0.0) {
        return Err(Error::NonPositiveGamma(gamma));
    }
    let s = psi.samples();
    let n = s.len();
    let w = step_weights(gamma, psi.grid().spacing());
    let mut out = vec![0.0; n];
    let mut acc = psi.limit_pos() / gamma;
    out[n - 1] = acc;
    for k in (1..n).rev() {
        acc = w.decay * acc + w.near * s[k - 1] + w.far * s[k];
        out[k - 1] = acc;
    }
    Ok(LineFunction::from_parts(*psi.grid(), out, psi.limit_neg() / gamma, psi.limit_pos() / gamma))
}

/// Which approximate identity [`dirac_limit_residual`] measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiracVariant {
    /// `r int_{-inf}^x exp(-r (x - y)) phi(y) dy` on the whole line.
    Left,
    /// `r int_x^inf exp(r (x - y)) phi(y) dy` on the whole line.
    Right,
    /// `r int_0^x exp(-r (x - y)) phi(y) dy + exp(-r x) phi(0)` on `[0, L]`.
    Origin,
}

/// Sup over nodes of the distance between `phi` and its smoothing at rate `r = n a`.
pub fn dirac_limit_residual(a: f64, n: u32, phi: &LineFunction, variant: DiracVariant) -> f64 {
    let r = n as f64 * a;
    let grid = phi.grid();
    match variant {
        DiracVariant::Left | DiracVariant::Right => {
            let smooth = if variant == DiracVariant::Left { improper_left(r, phi) } else { improper_right(r, phi) };
            let smooth = smooth.expect("rate is positive");
            smooth.samples().iter().zip(phi.samples()).fold(0.0, |acc, (s, p)| f64::max(acc, (r * s - p).abs()))
        }
        DiracVariant::Origin => {
            let m = grid.center();
            let h = grid.spacing();
            let half = &phi.samples()[m..];
            let conv = convolve_from_origin(r, h, half);
            let decay = step_weights(r, h).decay;
            let mut tail = half[0];
            let mut res: f64 = 0.0;
            for j in 0..half.len() {
                res = res.max((r * conv[j] + tail - half[j]).abs());
                tail *= decay;
            }
            res
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn grid() -> Grid {
        Grid::default()
    }

    #[test]
    fn weights_match_closed_form_across_the_series_switch() {
        for &z in &[-0.6, -0.49, -1e-6, 0.0, 1e-7, 0.3, 0.49, 0.51, 2.0, 40.0] {
            let h = 0.01;
            let r = z / h;
            let w = step_weights(r, h);
            // Reference from high-resolution midpoint quadrature of the defining integrals.
            let steps = 200_000;
            let (mut near, mut far) = (0.0, 0.0);
            for i in 0..steps {
                let v = (i as f64 + 0.5) * h / steps as f64;
                let k = (-r * v).exp() * h / steps as f64;
                near += k * (1.0 - v / h);
                far += k * v / h;
            }
            assert_abs_diff_eq!(w.near, near, epsilon = 1e-12);
            assert_abs_diff_eq!(w.far, far, epsilon = 1e-12);
        }
    }

    #[test]
    fn kernel_samples_are_exact() {
        let k = ExpKernel::new(0.7);
        let f = k.sample(grid());
        for idx in [0usize, 1234, 3000, 6000] {
            assert_eq!(f.samples()[idx], (-0.7 * grid().node(idx)).exp());
        }
        assert_eq!(f.limit_pos(), 0.0);
    }

    #[test]
    fn convolution_of_constant() {
        let one = LineFunction::constant(grid(), 1.0);
        let i = exp_convolve(1.0, &one);
        assert_eq!(i.at_offset(0), 0.0);
        assert_abs_diff_eq!(i.at_offset(100), 0.632_120_558_828_557_7, epsilon = 1e-13);
        assert_abs_diff_eq!(i.at_offset(-100), -1.718_281_828_459_045, epsilon = 1e-12);
        assert_eq!(i.limit_pos(), 1.0);
    }

    #[test]
    fn convolution_of_exponential_solves_hilbert_pair() {
        let e2 = ExpKernel::new(2.0).sample(grid());
        let i = exp_convolve(1.0, &e2);
        let err = (0..grid().n_points())
            .filter(|&k| grid().node(k).abs() <= 5.0)
            .map(|k| {
                let x = grid().node(k);
                ((i.samples()[k] - ((-x).exp() - (-2.0 * x).exp())) / (-2.0 * x).exp().max(1.0)).abs()
            })
            .fold(0.0, f64::max);
        assert!(err < crate::tolerances::eps_disc(&grid()), "err = {err}");
    }

    #[test]
    fn laplace_examples() {
        let g = grid();
        assert_abs_diff_eq!(laplace_at(&LineFunction::constant(g, 1.0), 2.0).unwrap(), 0.5, epsilon = 1e-12);
        let e1 = ExpKernel::new(1.0).sample(g);
        assert_abs_diff_eq!(laplace_at(&e1, 1.0).unwrap(), 0.5, epsilon = 1e-5);
        assert!(matches!(laplace_at(&e1, 0.0), Err(Error::NonPositiveLambda(_))));
    }

    #[test]
    fn improper_integrals() {
        let g = grid();
        let c = LineFunction::constant(g, 3.0);
        let l = improper_left(1.5, &c).unwrap();
        let r = improper_right(1.5, &c).unwrap();
        assert!(l.samples().iter().chain(r.samples()).all(|v| (v - 2.0).abs() < 1e-12));
        let gamma = 1.3;
        let psi = LineFunction::from_fn_with_limits(g, |x| (gamma * x).exp().min(1.0), 0.0, 1.0);
        let l = improper_left(gamma, &psi).unwrap();
        assert_eq!(l.limit_pos(), 1.0 / gamma);
        for j in 0..=1000 {
            let x = -(j as f64) * 0.01;
            assert_abs_diff_eq!(l.at_offset(-(j as isize)), (gamma * x).exp() / (2.0 * gamma), epsilon = 1e-5);
        }
        assert!(improper_left(0.0, &psi).is_err());
        assert!(improper_right(-1.0, &psi).is_err());
    }

    #[test]
    fn dirac_residuals() {
        let g = grid();
        let one = LineFunction::constant(g, 1.0);
        for v in [DiracVariant::Left, DiracVariant::Right, DiracVariant::Origin] {
            assert!(dirac_limit_residual(0.5, 7, &one, v) < 1e-9);
        }
        let phi = LineFunction::from_fn(g, |x| x / (1.0 + x.abs()));
        for v in [DiracVariant::Left, DiracVariant::Right, DiracVariant::Origin] {
            assert!(dirac_limit_residual(1.0, 64, &phi, v) < dirac_limit_residual(1.0, 1, &phi, v));
        }
    }
}
