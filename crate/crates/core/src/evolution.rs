//! Cosine families and heat semigroups.
//!
//! Membrane families act by the Kelvin formula: extend to a pair on the whole line, evolve
//! each component by the free family, and restrict. Semigroups are Gaussian averages of the
//! cosine family over time.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::extensions::{extend, SubspaceKind};
use crate::function_space::{FunctionPair, LineFunction, MembraneParams, SharpFunction};
use crate::tolerances::{EPS_ALG, SHIFT_SNAP};

/// Which family acts on a function with a possible jump at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvolutionKind {
    /// The free family; input must be continuous at the origin.
    Free,
    /// Snapping-out transmission conditions.
    Snapping(MembraneParams),
    /// Opposite-values conditions; input must satisfy `f(0-) = -f(0+)`.
    Perp(MembraneParams),
    /// Limit of the snapping families; input must be continuous.
    Skew(MembraneParams),
    /// Limit of the opposite-values families; input must satisfy `f(0-) = -f(0+)`.
    Weks(MembraneParams),
}

impl EvolutionKind {
    pub fn subspace(&self) -> Option<(SubspaceKind, MembraneParams)> {
        match *self {
            EvolutionKind::Free => None,
            EvolutionKind::Snapping(p) => Some((SubspaceKind::SnappingC, p)),
            EvolutionKind::Perp(p) => Some((SubspaceKind::PerpD, p)),
            EvolutionKind::Skew(p) => Some((SubspaceKind::SkewC, p)),
            EvolutionKind::Weks(p) => Some((SubspaceKind::WeksD, p)),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EvolutionKind::Free => "free",
            EvolutionKind::Snapping(_) => "snapping",
            EvolutionKind::Perp(_) => "perp",
            EvolutionKind::Skew(_) => "skew",
            EvolutionKind::Weks(_) => "weks",
        }
    }

    /// Builds a kind from its name; `params` is ignored for `free`.
    pub fn from_name(name: &str, params: MembraneParams) -> Option<Self> {
        Some(match name {
            "free" => EvolutionKind::Free,
            "snapping" => EvolutionKind::Snapping(params),
            "perp" => EvolutionKind::Perp(params),
            "skew" => EvolutionKind::Skew(params),
            "weks" => EvolutionKind::Weks(params),
            _ => return None,
        })
    }
}

fn whole_step_shift(t: f64, h: f64) -> Option<isize> {
    let r = t / h;
    let k = r.round();
    ((r - k).abs() <= SHIFT_SNAP * k.max(1.0)).then_some(k as isize)
}

/// `x -> (f(x + t) + f(x - t)) / 2`; limits are unchanged.
pub fn cosine_basic(t: f64, f: &LineFunction) -> LineFunction {
    let t = t.abs();
    let grid = *f.grid();
    let samples = match whole_step_shift(t, grid.spacing()) {
        Some(s) => (0..grid.n_points() as isize).map(|k| 0.5 * (f.at_index(k + s) + f.at_index(k - s))).collect(),
        None => grid.nodes().into_iter().map(|x| 0.5 * (f.evaluate(x + t) + f.evaluate(x - t))).collect(),
    };
    LineFunction::from_parts(grid, samples, f.limit_neg(), f.limit_pos())
}

/// Componentwise [`cosine_basic`].
pub fn cosine_pair(t: f64, p: &FunctionPair) -> FunctionPair {
    p.map(|f| cosine_basic(t, f))
}

/// The extension used by the Kelvin formula of `kind`; the free kind embeds both branches
/// of a continuous `f` as the same whole-line function.
pub fn kelvin_extension(kind: &EvolutionKind, f: &SharpFunction) -> Result<FunctionPair> {
    match kind.subspace() {
        None => {
            let g = f.to_line(EPS_ALG)?;
            Ok(FunctionPair::new(g.clone(), g)?)
        }
        Some((sub, params)) => extend(sub, &params, f),
    }
}

pub fn cosine_evolve(kind: &EvolutionKind, t: f64, f: &SharpFunction) -> Result<SharpFunction> {
    Ok(cosine_pair(t, &kelvin_extension(kind, f)?).restrict())
}

/// Half-width of the time window: the Gaussian mass beyond it is below `1e-12`.
pub fn weierstrass_window(t: f64, h: f64) -> f64 {
    2.0 * (t * 1e12f64.ln()).sqrt() + h
}

/// Normalised trapezoid weights `w_j`, `j = 0..=N`, of the heat kernel at times `s = j h`;
/// `w_0 + 2 sum_{j >= 1} w_j = 1`.
pub fn weierstrass_weights(t: f64, h: f64) -> Vec<f64> {
    let n = (weierstrass_window(t, h) / h).ceil() as usize;
    let mut w: Vec<f64> = (0..=n).map(|j| (-(j as f64 * h).powi(2) / (4.0 * t)).exp()).collect();
    w[n] *= 0.5;
    let total = w[0] + 2.0 * w[1..].iter().sum::<f64>();
    w.iter_mut().for_each(|v| *v /= total);
    w
}

/// The free heat semigroup as the Gaussian average of [`cosine_basic`] over `s = j h`.
pub fn heat_basic(t: f64, f: &LineFunction) -> Result<LineFunction> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    let grid = *f.grid();
    let w = weierstrass_weights(t, grid.spacing());
    let samples: Vec<f64> = (0..grid.n_points() as isize)
        .into_par_iter()
        .map(|k| {
            let mut acc = w[0] * f.at_index(k);
            for (j, wj) in w.iter().enumerate().skip(1) {
                let j = j as isize;
                acc += wj * (f.at_index(k + j) + f.at_index(k - j));
            }
            acc
        })
        .collect();
    Ok(LineFunction::from_parts(grid, samples, f.limit_neg(), f.limit_pos()))
}

pub fn heat_pair(t: f64, p: &FunctionPair) -> Result<FunctionPair> {
    FunctionPair::new(heat_basic(t, p.first())?, heat_basic(t, p.second())?)
}

/// `e^{tA} f` for the generator `A` of the family `kind`.
pub fn semigroup_evolve(kind: &EvolutionKind, t: f64, f: &SharpFunction) -> Result<SharpFunction> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTime(t));
    }
    Ok(heat_pair(t, &kelvin_extension(kind, f)?)?.restrict())
}

/// One-sided values and derivatives at the origin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneSidedJet {
    pub value_left: f64,
    pub value_right: f64,
    pub slope_left: f64,
    pub slope_right: f64,
    pub curvature_left: f64,
    pub curvature_right: f64,
}

/// Second-order one-sided stencils at `0-` and `0+`.
pub fn one_sided_jet(f: &SharpFunction) -> Result<OneSidedJet> {
    if f.grid().n_points() < 9 {
        return Err(Error::GridTooCoarse(f.grid().n_points()));
    }
    let h = f.grid().spacing();
    let (l, r) = (|j| f.neg(j), |j| f.pos(j));
    Ok(OneSidedJet {
        value_left: l(0),
        value_right: r(0),
        slope_left: (3.0 * l(0) - 4.0 * l(1) + l(2)) / (2.0 * h),
        slope_right: (-3.0 * r(0) + 4.0 * r(1) - r(2)) / (2.0 * h),
        curvature_left: (2.0 * l(0) - 5.0 * l(1) + 4.0 * l(2) - l(3)) / (h * h),
        curvature_right: (2.0 * r(0) - 5.0 * r(1) + 4.0 * r(2) - r(3)) / (h * h),
    })
}

/// Mismatches in the transmission conditions of a family, one entry per condition.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionResidual {
    pub entries: Vec<(&'static str, f64)>,
}

impl TransmissionResidual {
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, e| m.max(e.1.abs()))
    }
}

pub fn transmission_residual(kind: &EvolutionKind, f: &SharpFunction) -> Result<TransmissionResidual> {
    let d = one_sided_jet(f)?;
    let jump = d.value_right - d.value_left;
    let entries = match *kind {
        EvolutionKind::Free => vec![
            ("f(0+) - f(0-)", jump),
            ("f'(0+) - f'(0-)", d.slope_right - d.slope_left),
        ],
        EvolutionKind::Snapping(p) => vec![
            ("f'(0-) - alpha [f]", d.slope_left - p.alpha() * jump),
            ("f'(0+) - beta [f]", d.slope_right - p.beta() * jump),
        ],
        EvolutionKind::Perp(p) => vec![
            ("f(0-) + f(0+)", d.value_left + d.value_right),
            (
                "f''(0+) - alpha f'(0-) - beta f'(0+)",
                d.curvature_right - p.alpha() * d.slope_left - p.beta() * d.slope_right,
            ),
            ("f''(0+) + f''(0-)", d.curvature_right + d.curvature_left),
        ],
        EvolutionKind::Skew(p) => vec![
            ("f(0+) - f(0-)", jump),
            ("alpha f'(0+) - beta f'(0-)", p.alpha() * d.slope_right - p.beta() * d.slope_left),
            ("f''(0+) - f''(0-)", d.curvature_right - d.curvature_left),
        ],
        EvolutionKind::Weks(p) => vec![
            ("f(0-) + f(0+)", d.value_left + d.value_right),
            ("beta f'(0+) + alpha f'(0-)", p.beta() * d.slope_right + p.alpha() * d.slope_left),
            ("f''(0+) + f''(0-)", d.curvature_right + d.curvature_left),
        ],
    };
    Ok(TransmissionResidual { entries })
}

/// Sup over branch nodes of `|2 t^-2 (Cos(t) f - f) - f''|`, with `f''` the centred second
/// difference inside each branch; the origin and the last `t + h` before `+-L` are skipped.
pub fn generator_residual(kind: &EvolutionKind, t: f64, f: &SharpFunction) -> Result<f64> {
    let g = cosine_evolve(kind, t, f)?;
    let grid = f.grid();
    let h = grid.spacing();
    let m = grid.center();
    let reach = grid.half_width() - t.abs() - h;
    let sides: [(&dyn Fn(usize) -> f64, &dyn Fn(usize) -> f64); 2] =
        [(&|i| f.neg(i), &|i| g.neg(i)), (&|i| f.pos(i), &|i| g.pos(i))];
    let mut res: f64 = 0.0;
    for j in (1..m).take_while(|&j| j as f64 * h <= reach) {
        for (fv, gv) in &sides {
            let second = (fv(j + 1) - 2.0 * fv(j) + fv(j - 1)) / (h * h);
            res = res.max((2.0 * (gv(j) - fv(j)) / (t * t) - second).abs());
        }
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_space::Grid;
    use crate::tolerances::eps_disc;
    use approx::assert_abs_diff_eq;

    fn grid() -> Grid {
        Grid::default()
    }

    fn params() -> MembraneParams {
        MembraneParams::new(0.5, 0.5).unwrap()
    }

    #[test]
    fn cosine_basic_identity_and_evenness() {
        let f = LineFunction::from_fn(grid(), |x| (-x * x).exp() + 0.1 * x.atan());
        assert_eq!(cosine_basic(0.0, &f), f);
        assert_eq!(cosine_basic(-0.73, &f), cosine_basic(0.73, &f));
        let u = cosine_basic(1.0, &f);
        let g = |x: f64| (-x * x).exp() + 0.1 * x.atan();
        for k in [2500usize, 3000, 3137] {
            let x = grid().node(k);
            assert_abs_diff_eq!(u.samples()[k], 0.5 * (g(x + 1.0) + g(x - 1.0)), epsilon = 1e-13);
        }
    }

    #[test]
    fn off_grid_times_interpolate() {
        let f = LineFunction::from_fn(grid(), |x| (-x * x).exp());
        let u = cosine_basic(0.333, &f);
        let exact = |x: f64| 0.5 * ((-(x + 0.333f64).powi(2)).exp() + (-(x - 0.333f64).powi(2)).exp());
        let err = (0..grid().n_points()).map(|k| (u.samples()[k] - exact(grid().node(k))).abs()).fold(0.0, f64::max);
        assert!(err < eps_disc(&grid()));
    }

    #[test]
    fn snapping_even_equal_rates_is_free() {
        let f = LineFunction::from_fn(grid(), |x| 1.0 / (1.0 + x * x));
        let s = SharpFunction::from_line(&f);
        let u = cosine_evolve(&EvolutionKind::Snapping(params()), 0.7, &s).unwrap();
        let v = SharpFunction::from_line(&cosine_basic(0.7, &f));
        assert!(u.distance(&v).unwrap() < 1e-14);
    }

    #[test]
    fn free_kind_rejects_jumps() {
        let f = SharpFunction::from_branches(grid(), |_| 0.0, |_| 1.0);
        assert!(matches!(cosine_evolve(&EvolutionKind::Free, 0.5, &f), Err(Error::JumpAtZero { .. })));
    }

    #[test]
    fn heat_kernel_oracle() {
        let s0 = 0.5;
        let t = 0.3;
        let f = LineFunction::from_fn(grid(), |x| (-x * x / (4.0 * s0)).exp());
        let u = heat_basic(t, &f).unwrap();
        let exact = LineFunction::from_fn(grid(), |x| (s0 / (s0 + t)).sqrt() * (-x * x / (4.0 * (s0 + t))).exp());
        assert!(u.distance(&exact).unwrap() < eps_disc(&grid()));
        assert!(matches!(heat_basic(0.0, &f), Err(Error::NonPositiveTime(_))));
    }

    #[test]
    fn weights_sum_to_one() {
        let w = weierstrass_weights(0.5, 0.01);
        assert_abs_diff_eq!(w[0] + 2.0 * w[1..].iter().sum::<f64>(), 1.0, epsilon = 1e-14);
        assert!(w[w.len() - 1] < 1e-12 * w[0]);
    }

    #[test]
    fn constants_are_stationary_for_snapping() {
        let one = SharpFunction::from_line(&LineFunction::constant(grid(), 1.0));
        let u = semigroup_evolve(&EvolutionKind::Snapping(params()), 0.5, &one).unwrap();
        assert!(u.sub(&one).unwrap().sup_norm() < 1e-12);
        let r = transmission_residual(&EvolutionKind::Snapping(params()), &one).unwrap();
        assert_eq!(r.max_abs(), 0.0);
    }

    #[test]
    fn engineered_snapping_slopes_have_small_residual() {
        let (a, b) = (0.5, 0.5);
        let f = SharpFunction::from_branches(grid(), |x| a * x * (-x * x).exp(), |x| (1.0 + b * x) * (-x * x).exp());
        let r = transmission_residual(&EvolutionKind::Snapping(params()), &f).unwrap();
        assert!(r.max_abs() < 1e-3, "{r:?}");
    }

    #[test]
    fn snapping_heat_of_step_satisfies_conditions() {
        let f = SharpFunction::from_branches(grid(), |_| -1.0, |_| 1.0);
        let kind = EvolutionKind::Snapping(params());
        let u = semigroup_evolve(&kind, 0.5, &f).unwrap();
        let r = transmission_residual(&kind, &u).unwrap();
        assert!(r.max_abs() < 5e-3, "{r:?}");
    }

    #[test]
    fn generator_residual_has_second_order_trend() {
        let f = SharpFunction::from_line(&LineFunction::from_fn(grid(), |x| (-x * x).exp()));
        let r: Vec<f64> = [0.2, 0.1, 0.05].iter().map(|&t| generator_residual(&EvolutionKind::Free, t, &f).unwrap()).collect();
        assert!(r[1] < r[0] / 3.0 && r[2] < r[1] / 3.0, "{r:?}");
        let one = SharpFunction::from_line(&LineFunction::constant(grid(), 2.0));
        assert!(generator_residual(&EvolutionKind::Free, 0.1, &one).unwrap() < 1e-10);
    }

    #[test]
    fn coarse_grids_are_rejected() {
        let g = Grid::new(1.0, 7).unwrap();
        let f = SharpFunction::from_line(&LineFunction::zero(g));
        assert!(matches!(transmission_residual(&EvolutionKind::Free, &f), Err(Error::GridTooCoarse(7))));
    }
}
