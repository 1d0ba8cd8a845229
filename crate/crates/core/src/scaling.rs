//! Ladder experiments for the scaling `(alpha, beta) -> (n alpha, n beta)`.
//!
//! Each experiment measures, for every rung `n` of a ladder, the sup distance between the
//! scaled object and its limit, and classifies the sequence.

use crate::error::{Error, Result};
use crate::evolution::{cosine_pair, heat_pair, kelvin_extension, weierstrass_weights, EvolutionKind};
use crate::extensions::{extend_perp, extend_snapping, skew_limit_extension};
use crate::function_space::{FunctionPair, LineFunction, MembraneParams, SharpFunction};
use crate::kernel::{dirac_limit_residual, DiracVariant};
use crate::projections::{project_c, project_c_skew, project_d, project_d_weks};
use crate::tolerances::EPS_ALG;

pub const DEFAULT_LADDER: [u32; 7] = [1, 2, 4, 8, 16, 32, 64];

/// Rung used as the limit when no closed-form limit is available.
pub const CAUCHY_REFERENCE: u32 = 256;

/// Fraction of the jump that the cosine error must stay above to witness divergence.
pub const WITNESS_FRACTION: f64 = 0.05;

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Converging,
    /// Error at `witness_t` stays at or above `floor` for every rung `n >= 4`.
    Diverging { witness_t: f64, floor: f64 },
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderReport {
    pub ladder: Vec<u32>,
    /// Max over the time set of the per-time errors, one per rung.
    pub errors: Vec<f64>,
    /// Per-time errors, one row per time; empty for time-independent experiments.
    pub per_t: Vec<(f64, Vec<f64>)>,
    pub uniform_over: String,
    pub verdict: Verdict,
}

/// Converging iff the last error is at most 5% of the first (or already below `EPS_ALG`) and
/// the errors from `n = 4` on never increase.
pub fn is_converging(ladder: &[u32], errors: &[f64]) -> bool {
    let (Some(first), Some(last)) = (errors.first(), errors.last()) else {
        return false;
    };
    let tail: Vec<f64> = ladder.iter().zip(errors).filter(|(n, _)| **n >= 4).map(|(_, e)| *e).collect();
    let monotone = tail.windows(2).all(|w| w[1] <= w[0] + 1e-14 * w[0].max(1.0));
    (*last <= 0.05 * first || *last <= EPS_ALG) && monotone
}

fn report(ladder: &[u32], per_t: Vec<(f64, Vec<f64>)>, uniform_over: String, witness_floor: Option<f64>) -> LadderReport {
    let errors: Vec<f64> =
        (0..ladder.len()).map(|i| per_t.iter().map(|(_, e)| e[i]).fold(0.0, f64::max)).collect();
    let verdict = if is_converging(ladder, &errors) {
        Verdict::Converging
    } else {
        witness_floor
            .and_then(|floor| {
                per_t.iter().find_map(|(t, e)| {
                    let holds = ladder.iter().zip(e).filter(|(n, _)| **n >= 4).all(|(_, v)| *v >= floor);
                    holds.then_some(Verdict::Diverging { witness_t: *t, floor })
                })
            })
            .unwrap_or(Verdict::Inconclusive)
    };
    LadderReport { ladder: ladder.to_vec(), errors, per_t, uniform_over, verdict }
}

fn describe(t_set: &[f64]) -> String {
    let ts: Vec<String> = t_set.iter().map(|t| format!("{t}")).collect();
    format!("t in {{{}}}", ts.join(", "))
}

/// Rejects rungs whose kernel rate `n * rate` is not resolved by the spacing `h`.
pub fn resolution_guard(n: u32, rate: f64, h: f64) -> Result<()> {
    if n as f64 * rate * h > 1.0 + 1e-12 {
        Err(Error::UnderResolved { n, rate, h })
    } else {
        Ok(())
    }
}

fn guard_ladder(ladder: &[u32], rate: f64, h: f64) -> Result<()> {
    ladder.iter().try_for_each(|&n| resolution_guard(n, rate, h))
}

/// `Cos_{n alpha, n beta}(t) f` against the skew cosine family of the pointwise limit
/// extension; for a jump at the origin the verdict looks for a divergence witness.
pub fn converge_cosine(params: &MembraneParams, f: &SharpFunction, ladder: &[u32], t_set: &[f64]) -> Result<LadderReport> {
    guard_ladder(ladder, params.sum(), f.grid().spacing())?;
    let reference = skew_limit_extension(params, f);
    let extensions: Vec<FunctionPair> = ladder.iter().map(|&n| extend_snapping(&params.scaled(n as f64), f)).collect();
    let per_t = t_set
        .iter()
        .map(|&t| {
            let r = cosine_pair(t, &reference).restrict();
            let e = extensions.iter().map(|p| cosine_pair(t, p).restrict().distance(&r).expect("shared grid")).collect();
            (t, e)
        })
        .collect();
    let floor = (!f.is_continuous(EPS_ALG)).then(|| WITNESS_FRACTION * f.jump().abs());
    Ok(report(ladder, per_t, describe(t_set), floor))
}

fn semigroup_at(params: &MembraneParams, n: u32, t: f64, f: &SharpFunction) -> Result<SharpFunction> {
    Ok(heat_pair(t, &extend_snapping(&params.scaled(n as f64), f))?.restrict())
}

/// `e^{t A_{n alpha, n beta}} f` against the skew semigroup for continuous `f`, or against the
/// rung [`CAUCHY_REFERENCE`] otherwise.
pub fn converge_semigroup(params: &MembraneParams, f: &SharpFunction, ladder: &[u32], t_set: &[f64]) -> Result<LadderReport> {
    let h = f.grid().spacing();
    guard_ladder(ladder, params.sum(), h)?;
    if let Some(t) = t_set.iter().find(|t| !(**t > 0.0)) {
        return Err(Error::NonPositiveTime(*t));
    }
    let continuous = f.is_continuous(EPS_ALG);
    if !continuous {
        resolution_guard(CAUCHY_REFERENCE, params.sum(), h)?;
    }
    let mut per_t = Vec::with_capacity(t_set.len());
    for &t in t_set {
        let reference = if continuous {
            heat_pair(t, &kelvin_extension(&EvolutionKind::Skew(*params), f)?)?.restrict()
        } else {
            semigroup_at(params, CAUCHY_REFERENCE, t, f)?
        };
        let e = ladder
            .iter()
            .map(|&n| Ok(semigroup_at(params, n, t, f)?.distance(&reference)?))
            .collect::<Result<Vec<f64>>>()?;
        per_t.push((t, e));
    }
    let label = if continuous { describe(t_set) } else { format!("{} against n = {CAUCHY_REFERENCE}", describe(t_set)) };
    Ok(report(ladder, per_t, label, None))
}

/// Successive differences `|| e^{t A_{2n}} f - e^{t A_n} f ||` for each rung `n`.
pub fn cauchy_differences(params: &MembraneParams, f: &SharpFunction, ladder: &[u32], t: f64) -> Result<Vec<f64>> {
    let h = f.grid().spacing();
    ladder.iter().try_for_each(|&n| resolution_guard(2 * n, params.sum(), h))?;
    ladder
        .iter()
        .map(|&n| Ok(semigroup_at(params, 2 * n, t, f)?.distance(&semigroup_at(params, n, t, f)?)?))
        .collect()
}

/// Opposite-values cosine families at `(n alpha, n beta)` against the flipped-skew family at `(alpha, beta)`.
pub fn converge_perp(params: &MembraneParams, f: &SharpFunction, ladder: &[u32], t_set: &[f64]) -> Result<LadderReport> {
    guard_ladder(ladder, params.sum(), f.grid().spacing())?;
    let reference = kelvin_extension(&EvolutionKind::Weks(*params), f)?;
    let extensions = ladder
        .iter()
        .map(|&n| extend_perp(&params.scaled(n as f64), f))
        .collect::<Result<Vec<FunctionPair>>>()?;
    let per_t = t_set
        .iter()
        .map(|&t| {
            let r = cosine_pair(t, &reference).restrict();
            let e = extensions.iter().map(|p| cosine_pair(t, p).restrict().distance(&r).expect("shared grid")).collect();
            (t, e)
        })
        .collect();
    Ok(report(ladder, per_t, describe(t_set), None))
}

/// Ladders for both projections: `P_{n alpha, n beta} -> P^skew` and `Q_{n alpha, n beta} -> Q^weks`.
/// The guard uses `gamma`, the rate of the projection kernels.
pub fn converge_projection(params: &MembraneParams, p: &FunctionPair, ladder: &[u32]) -> Result<(LadderReport, LadderReport)> {
    guard_ladder(ladder, params.gamma(), p.grid().spacing())?;
    let pr = project_c_skew(params, p);
    let qr = project_d_weks(params, p);
    let mut pe = Vec::with_capacity(ladder.len());
    let mut qe = Vec::with_capacity(ladder.len());
    for &n in ladder {
        let scaled = params.scaled(n as f64);
        pe.push(project_c(&scaled, p).distance(&pr)?);
        qe.push(project_d(&scaled, p).distance(&qr)?);
    }
    let label = "time-independent".to_string();
    Ok((
        report(ladder, vec![(0.0, pe)], label.clone(), None),
        report(ladder, vec![(0.0, qe)], label, None),
    ))
}

/// Approximate-identity residuals along the ladder.
pub fn converge_dirac(a: f64, phi: &LineFunction, variant: DiracVariant, ladder: &[u32]) -> Result<LadderReport> {
    guard_ladder(ladder, a, phi.grid().spacing())?;
    let e = ladder.iter().map(|&n| dirac_limit_residual(a, n, phi, variant)).collect();
    Ok(report(ladder, vec![(0.0, e)], "x on the grid".into(), None))
}

/// One rung and time of the uniformity-transfer comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferSample {
    pub n: u32,
    pub t: f64,
    /// `|| e^{t A_n} f - e^{t A^skew} f ||`.
    pub semigroup_error: f64,
    /// Max over the quadrature times `s` of `|| Cos_n(s) f - Cos^skew(s) f ||`.
    pub cosine_error: f64,
}

/// Semigroup errors next to the sup over quadrature times of the cosine errors; for
/// continuous `f` the former never exceeds the latter beyond rounding.
pub fn uniformity_transfer(params: &MembraneParams, f: &SharpFunction, ladder: &[u32], t_set: &[f64]) -> Result<Vec<TransferSample>> {
    let h = f.grid().spacing();
    guard_ladder(ladder, params.sum(), h)?;
    let reference = kelvin_extension(&EvolutionKind::Skew(*params), f)?;
    let mut out = Vec::new();
    for &n in ladder {
        let ext = extend_snapping(&params.scaled(n as f64), f);
        let diff = ext.sub(&reference)?;
        for &t in t_set {
            let semigroup_error = heat_pair(t, &diff)?.restrict().sup_norm();
            let steps = weierstrass_weights(t, h).len();
            let cosine_error = (0..steps)
                .map(|j| cosine_pair(j as f64 * h, &diff).restrict().sup_norm())
                .fold(0.0, f64::max);
            out.push(TransferSample { n, t, semigroup_error, cosine_error });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function_space::Grid;

    fn grid() -> Grid {
        Grid::default()
    }

    fn params() -> MembraneParams {
        MembraneParams::new(0.25, 0.75).unwrap()
    }

    const T_SET: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];

    #[test]
    fn verdict_rule() {
        let l = [1, 2, 4, 8];
        assert!(is_converging(&l, &[1.0, 2.0, 0.04, 0.03]));
        assert!(!is_converging(&l, &[1.0, 0.5, 0.03, 0.04]));
        assert!(!is_converging(&l, &[1.0, 0.5, 0.2, 0.1]));
        assert!(is_converging(&l, &[0.0; 4]));
        assert!(is_converging(&l, &[1e-16; 4]));
    }

    #[test]
    fn continuous_cosine_converges() {
        let f = SharpFunction::from_line(&LineFunction::from_fn(grid(), |x| x.atan() + (-x * x).exp()));
        let r = converge_cosine(&params(), &f, &DEFAULT_LADDER, &T_SET).unwrap();
        assert_eq!(r.verdict, Verdict::Converging, "{:?}", r.errors);
    }

    #[test]
    fn step_cosine_diverges_with_witness() {
        let f = SharpFunction::from_branches(grid(), |_| -1.0, |_| 1.0);
        let r = converge_cosine(&params(), &f, &DEFAULT_LADDER, &T_SET).unwrap();
        assert!(matches!(r.verdict, Verdict::Diverging { .. }), "{:?}", r.errors);
    }

    #[test]
    fn zero_input_gives_zero_errors() {
        let z = SharpFunction::from_line(&LineFunction::zero(grid()));
        let r = converge_cosine(&params(), &z, &DEFAULT_LADDER, &T_SET).unwrap();
        assert!(r.errors.iter().all(|e| *e == 0.0));
        let r = converge_perp(&params(), &z, &DEFAULT_LADDER, &T_SET).unwrap();
        assert!(r.errors.iter().all(|e| *e == 0.0));
        let zp = FunctionPair::from_fn(grid(), |_| 0.0, |_| 0.0);
        let (p, q) = converge_projection(&params(), &zp, &DEFAULT_LADDER).unwrap();
        assert!(p.errors.iter().chain(&q.errors).all(|e| *e == 0.0));
    }

    #[test]
    fn guard_rejects_under_resolved_rungs() {
        let f = SharpFunction::from_line(&LineFunction::zero(grid()));
        let fast = MembraneParams::new(1.0, 3.0).unwrap();
        assert!(matches!(
            converge_cosine(&fast, &f, &DEFAULT_LADDER, &T_SET),
            Err(Error::UnderResolved { n: 32, .. })
        ));
    }

    #[test]
    fn perp_converges_for_odd_input() {
        let f = SharpFunction::from_line(&LineFunction::from_fn(grid(), |x| x / (1.0 + x.abs())));
        let r = converge_perp(&params(), &f, &DEFAULT_LADDER, &T_SET).unwrap();
        assert_eq!(r.verdict, Verdict::Converging, "{:?}", r.errors);
    }

    #[test]
    fn projections_converge() {
        let p = FunctionPair::from_fn(grid(), |x| (0.7 * x).tanh() + (-x * x).exp(), |x| 0.5 * (-(x - 1.0).abs()).exp());
        let (pr, qr) = converge_projection(&params(), &p, &DEFAULT_LADDER).unwrap();
        assert_eq!(pr.verdict, Verdict::Converging, "{:?}", pr.errors);
        assert_eq!(qr.verdict, Verdict::Converging, "{:?}", qr.errors);
    }

    #[test]
    fn dirac_ladder_shrinks() {
        let phi = LineFunction::from_fn(grid(), |x| x / (1.0 + x.abs()));
        for v in [DiracVariant::Left, DiracVariant::Right, DiracVariant::Origin] {
            let r = converge_dirac(1.0, &phi, v, &DEFAULT_LADDER).unwrap();
            assert!(r.errors[6] <= 0.1 * r.errors[0], "{v:?} {:?}", r.errors);
        }
    }

    #[test]
    fn semigroup_error_is_bounded_by_cosine_error() {
        let g = Grid::new(8.0, 1601).unwrap();
        let f = SharpFunction::from_line(&LineFunction::from_fn(g, |x| (x - 0.5).atan()));
        for s in uniformity_transfer(&params(), &f, &[1, 4, 16], &[0.2, 0.5]).unwrap() {
            assert!(s.semigroup_error <= s.cosine_error + 1e-12, "{s:?}");
        }
    }
}
