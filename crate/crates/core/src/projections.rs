//! Complementary projections onto the snapping subspace and the opposite-values subspace,
//! and their limits onto the skew and flipped-skew subspaces.

use crate::function_space::{FunctionPair, LineFunction, MembraneParams};
use crate::kernel::{exp_convolve, improper_left, improper_right, laplace_at};

/// Data shared by the projection formulas.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionInputs {
    /// `alpha f1^o + beta f2^o`; odd.
    pub k1: LineFunction,
    /// `f1^e - f2^e`; even.
    pub k2: LineFunction,
    /// `k1^(gamma) + (gamma / 2) k2^(gamma)` with `^` the Laplace transform.
    pub c: f64,
}

pub fn projection_inputs(params: &MembraneParams, p: &FunctionPair) -> ProjectionInputs {
    let (e1, o1) = p.first().parity_parts();
    let (e2, o2) = p.second().parity_parts();
    let k1 = LineFunction::combine(&[(params.alpha(), &o1), (params.beta(), &o2)]).expect("shared grid");
    let k2 = e1.sub(&e2).expect("shared grid");
    let gamma = params.gamma();
    let c = laplace_at(&k1, gamma).expect("gamma > 0") + 0.5 * gamma * laplace_at(&k2, gamma).expect("gamma > 0");
    ProjectionInputs { k1, k2, c }
}

/// Projection onto the snapping subspace along the opposite-values subspace.
///
/// Uses only decaying one-sided exponential integrals, so it is stable for any rate.
pub fn project_c(params: &MembraneParams, p: &FunctionPair) -> FunctionPair {
    let (al, be, ga) = (params.alpha(), params.beta(), params.gamma());
    let ProjectionInputs { k1, k2, .. } = projection_inputs(params, p);
    let psi_left = LineFunction::combine(&[(1.0 / ga, &k1), (-0.5, &k2)]).expect("shared grid");
    let psi_right = LineFunction::combine(&[(1.0 / ga, &k1), (0.5, &k2)]).expect("shared grid");
    let left = improper_left(ga, &psi_left).expect("gamma > 0");
    let right = improper_right(ga, &psi_right).expect("gamma > 0");
    let e1 = p.first().even();
    let e2 = p.second().even();
    let g1 = LineFunction::combine(&[(1.0, &e1), (0.5 * (ga + 2.0 * al), &left), (-0.5 * (ga - 2.0 * al), &right)])
        .expect("shared grid");
    let g2 = LineFunction::combine(&[(1.0, &e2), (0.5 * (ga + 2.0 * be), &right), (-0.5 * (ga - 2.0 * be), &left)])
        .expect("shared grid");
    FunctionPair::from_parts(g1, g2)
}

/// `p - project_c(p)`.
pub fn project_d(params: &MembraneParams, p: &FunctionPair) -> FunctionPair {
    p.sub(&project_c(params, p)).expect("shared grid")
}

/// The hyperbolic closed form of [`project_c`].
///
/// Its terms grow like `exp(gamma |x|)` and cancel only analytically, so it is accurate on a
/// window around the origin and meant purely as a cross-check.
pub fn project_c_closed_form(params: &MembraneParams, p: &FunctionPair) -> FunctionPair {
    let (al, be, ga) = (params.alpha(), params.beta(), params.gamma());
    let ProjectionInputs { k1, k2, c } = projection_inputs(params, p);
    let grid = *p.grid();
    let sinh = LineFunction::from_fn(grid, |x| (ga * x).sinh());
    let cosh = LineFunction::from_fn(grid, |x| (ga * x).cosh());
    // phi * sinh_gamma and phi * cosh_gamma through the two exponential convolutions.
    let hyper = |phi: &LineFunction| {
        let grow = exp_convolve(-ga, phi);
        let fall = exp_convolve(ga, phi);
        (
            LineFunction::combine(&[(0.5, &grow), (-0.5, &fall)]).expect("shared grid"),
            LineFunction::combine(&[(0.5, &grow), (0.5, &fall)]).expect("shared grid"),
        )
    };
    let combo = |a: f64, b: f64| LineFunction::combine(&[(a, &k1), (b, &k2)]).expect("shared grid");
    let (s1, _) = hyper(&combo(2.0 * al / ga, -0.5 * ga));
    let (_, c1) = hyper(&combo(1.0, -al));
    let (s2, _) = hyper(&combo(2.0 * be / ga, 0.5 * ga));
    let (_, c2) = hyper(&combo(1.0, be));
    let e1 = p.first().even();
    let e2 = p.second().even();
    let g1 = LineFunction::combine(&[
        (1.0, &e1),
        (c * 2.0 * al / ga, &sinh),
        (-c, &cosh),
        (-1.0, &s1),
        (1.0, &c1),
    ])
    .expect("shared grid");
    let g2 = LineFunction::combine(&[
        (1.0, &e2),
        (c * 2.0 * be / ga, &sinh),
        (c, &cosh),
        (-1.0, &s2),
        (-1.0, &c2),
    ])
    .expect("shared grid");
    FunctionPair::from_parts(g1, g2)
}

/// Projection onto the skew subspace along the flipped-skew subspace.
pub fn project_c_skew(params: &MembraneParams, p: &FunctionPair) -> FunctionPair {
    let (al, be) = (params.alpha(), params.beta());
    let g2 = params.gamma() * params.gamma();
    let (e1, o1) = p.first().parity_parts();
    let (e2, o2) = p.second().parity_parts();
    let k1 = LineFunction::combine(&[(al, &o1), (be, &o2)]).expect("shared grid");
    let k2 = e1.sub(&e2).expect("shared grid");
    FunctionPair::from_parts(
        LineFunction::combine(&[(1.0, &e1), (2.0 * al / g2, &k1), (-0.5, &k2)]).expect("shared grid"),
        LineFunction::combine(&[(1.0, &e2), (2.0 * be / g2, &k1), (0.5, &k2)]).expect("shared grid"),
    )
}

/// `p - project_c_skew(p)`.
pub fn project_d_weks(params: &MembraneParams, p: &FunctionPair) -> FunctionPair {
    p.sub(&project_c_skew(params, p)).expect("shared grid")
}

/// `int_{-w}^{w} |q1 - p1|^2 + |q2 - p2|^2` by the trapezoid rule on the grid.
pub fn squared_distance_on_window(p: &FunctionPair, q: &FunctionPair, half_width: f64) -> f64 {
    let grid = p.grid();
    let h = grid.spacing();
    let mut sum = 0.0;
    for k in 0..grid.n_points() {
        let x = grid.node(k);
        if x.abs() > half_width + 1e-12 {
            continue;
        }
        let weight = if (x.abs() - half_width).abs() < 1e-9 { 0.5 * h } else { h };
        let d1 = q.first().samples()[k] - p.first().samples()[k];
        let d2 = q.second().samples()[k] - p.second().samples()[k];
        sum += weight * (d1 * d1 + d2 * d2);
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::{extend_perp, extend_snapping, membership, SubspaceKind};
    use crate::function_space::{Grid, SharpFunction};
    use crate::tolerances::{eps_disc, EPS_ALG};
    use approx::assert_abs_diff_eq;

    fn grid() -> Grid {
        Grid::default()
    }

    fn params() -> MembraneParams {
        MembraneParams::new(0.4, 1.3).unwrap()
    }

    fn sample_pair() -> FunctionPair {
        FunctionPair::from_fn(
            grid(),
            |x| (-(x - 0.5) * (x - 0.5)).exp() + 0.3 * (0.8 * x).tanh(),
            |x| 0.6 * (-(x + 1.0).abs()).exp() - 0.2 * (x / 3.0).atan(),
        )
    }

    #[test]
    fn inputs_for_exponential_oracle() {
        let p = FunctionPair::from_fn(grid(), |x| (-x.abs()).exp(), |_| 0.0);
        let pr = params();
        let inp = projection_inputs(&pr, &p);
        assert_eq!(inp.k1.sup_norm(), 0.0);
        let ga = pr.gamma();
        assert_abs_diff_eq!(inp.c, 0.5 * ga / (ga + 1.0), epsilon = 1e-5);
        assert_eq!(inp.k1.reflect().scale(-1.0), inp.k1);
    }

    #[test]
    fn even_diagonal_pairs_are_fixed() {
        let f = LineFunction::from_fn(grid(), |x| 1.0 / (1.0 + x * x));
        let p = FunctionPair::new(f.clone(), f).unwrap();
        let inp = projection_inputs(&params(), &p);
        assert_eq!(inp.c, 0.0);
        assert_eq!(project_c(&params(), &p), p);
        assert_eq!(project_d(&params(), &p).sup_norm(), 0.0);
    }

    #[test]
    fn ranges_and_complement() {
        let pr = params();
        let tol = eps_disc(&grid());
        let p = sample_pair();
        let pc = project_c(&pr, &p);
        let qd = project_d(&pr, &p);
        assert!(membership(SubspaceKind::SnappingC, &pr, &pc, tol).pass);
        assert!(membership(SubspaceKind::PerpD, &pr, &qd, tol).pass);
        assert!(pc.add(&qd).unwrap().distance(&p).unwrap() <= 4.0 * f64::EPSILON * p.sup_norm());
        assert_abs_diff_eq!(qd.second().at_offset(0), -projection_inputs(&pr, &p).c, epsilon = 1e-6);
    }

    #[test]
    fn fixes_its_range() {
        let pr = params();
        let tol = 3.0 * eps_disc(&grid());
        let f = SharpFunction::from_branches(grid(), |x| 0.5 * (x + 1.0).tanh() - 0.5, |x| 1.0 / (1.0 + x * x));
        let p = extend_snapping(&pr, &f);
        assert!(project_c(&pr, &p).distance(&p).unwrap() <= tol);
        let ov = SharpFunction::from_branches(grid(), |x| -1.0 + 0.2 * x * (-x * x).exp(), |x| (-x * x).exp());
        let q = extend_perp(&pr, &ov).unwrap();
        assert!(project_d(&pr, &q).distance(&q).unwrap() <= tol);
    }

    #[test]
    fn closed_form_agrees_near_origin() {
        let pr = params();
        let p = sample_pair();
        let stable = project_c(&pr, &p);
        let closed = project_c_closed_form(&pr, &p);
        let diff = stable.sub(&closed).unwrap().sup_norm_where(|x| x.abs() <= 5.0);
        assert!(diff <= 10.0 * eps_disc(&grid()), "diff = {diff}");
    }

    #[test]
    fn skew_projection_structure() {
        let pr = params();
        let p = sample_pair();
        let g = project_c_skew(&pr, &p);
        let (e1, o1) = g.first().parity_parts();
        let (e2, o2) = g.second().parity_parts();
        assert!(e1.distance(&e2).unwrap() <= EPS_ALG);
        assert!(o1.scale(pr.beta()).distance(&o2.scale(pr.alpha())).unwrap() <= EPS_ALG);
        assert!(project_c_skew(&pr, &g).distance(&g).unwrap() <= EPS_ALG);
        let eq = MembraneParams::new(0.7, 0.7).unwrap();
        let f = LineFunction::from_fn(grid(), |x| (x * 0.3).sin() + 1.0);
        let diag = FunctionPair::new(f.clone(), f).unwrap();
        assert!(project_c_skew(&eq, &diag).distance(&diag).unwrap() <= EPS_ALG);
        assert!(project_d_weks(&eq, &diag).sup_norm() <= EPS_ALG);
    }

    #[test]
    fn window_distance_of_constant_offset() {
        let p = FunctionPair::from_fn(grid(), |_| 0.0, |_| 0.0);
        let q = FunctionPair::from_fn(grid(), |_| 1.0, |_| 0.0);
        assert_abs_diff_eq!(squared_distance_on_window(&p, &q, 5.0), 10.0, epsilon = 1e-9);
    }
}
