//! Named verification suites, one per documented invariant, grouped by module.
//!
//! A suite returns a list of [`Check`]s; it passes when every check does. Checks marked exact
//! keep their tolerance when a caller overrides tolerances.

use crate::corpus::{CorpusFunction, RandomCorpus};
use crate::error::{Error, Result};
use crate::evolution::{cosine_basic, cosine_evolve, cosine_pair, semigroup_evolve, EvolutionKind};
use crate::extensions::{extend, extend_perp, extend_snapping, extend_weks, membership, SubspaceKind};
use crate::function_space::{
    flip_j, flip_j_inverse, flip_pair, matrix_apply, FunctionPair, Grid, LineFunction, Matrix2,
    MembraneParams, SharpFunction,
};
use crate::function_space::io::{write_pair, write_sharp};
use crate::kernel::{exp_convolve, DiracVariant, ExpKernel};
use crate::projections::{project_c, project_c_closed_form, project_c_skew, project_d, project_d_weks};
use crate::scaling::{converge_cosine, converge_dirac, converge_projection, is_converging, uniformity_transfer, Verdict, DEFAULT_LADDER};
use crate::tolerances::{eps_disc, EPS_ALG};

pub const MODULES: [&str; 7] =
    ["function_space", "kernel_calculus", "extensions", "projections", "evolution", "scaling_limits", "cli"];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub grid: Grid,
    pub params: MembraneParams,
    pub seed: u64,
    /// Replaces the tolerance of every check that is not exact.
    pub tolerance: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            grid: Grid::default(),
            params: MembraneParams::new(0.25, 0.75).expect("positive rates"),
            seed: 1,
            tolerance: None,
        }
    }
}

impl SuiteConfig {
    fn corpus(&self, salt: u64) -> RandomCorpus {
        RandomCorpus::new(self.grid, self.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(salt))
    }

    fn eps_disc(&self) -> f64 {
        eps_disc(&self.grid)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub value: f64,
    pub tolerance: f64,
    pub exact: bool,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.value <= self.tolerance
    }
}

fn check(label: impl Into<String>, value: f64, tolerance: f64) -> Check {
    Check { label: label.into(), value, tolerance, exact: false }
}

fn exact(label: impl Into<String>, value: f64, tolerance: f64) -> Check {
    Check { label: label.into(), value, tolerance, exact: true }
}

/// `0` when the predicate holds, `1` otherwise; paired with tolerance `0`.
fn holds(label: impl Into<String>, ok: bool) -> Check {
    exact(label, if ok { 0.0 } else { 1.0 }, 0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub module: &'static str,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }
}

pub struct Suite {
    pub name: &'static str,
    pub module: &'static str,
    pub summary: &'static str,
    run: fn(&SuiteConfig) -> Result<Vec<Check>>,
}

impl Suite {
    pub fn run(&self, cfg: &SuiteConfig) -> Result<SuiteReport> {
        let mut checks = (self.run)(cfg)?;
        if let Some(tol) = cfg.tolerance {
            checks.iter_mut().filter(|c| !c.exact).for_each(|c| c.tolerance = tol);
        }
        Ok(SuiteReport { name: self.name, module: self.module, checks })
    }
}

macro_rules! suite {
    ($name:literal, $module:literal, $summary:literal, $run:ident) => {
        Suite { name: $name, module: $module, summary: $summary, run: $run }
    };
}

static REGISTRY: [Suite; 31] = [
    suite!("involution", "function_space", "reflection is an involution; parity parts reconstruct f", involution),
    suite!("parity-reflection", "function_space", "reflection fixes even parts and negates odd parts", parity_reflection),
    suite!("cosine-commutation", "function_space", "the basic cosine family commutes with reflection and parity", cosine_commutation),
    suite!("matrix-commutation", "function_space", "matrix operators commute with the Cartesian product family", matrix_commutation),
    suite!("flip-isometry", "function_space", "the flip operators preserve the sup norm", flip_isometry),
    suite!("hilbert", "kernel_calculus", "resolvent-type identity for exponential kernels", hilbert),
    suite!("hyperbolic-identities", "kernel_calculus", "exponential convolutions of sinh and cosh", hyperbolic_identities),
    suite!("sign-symmetry", "kernel_calculus", "reflection turns e_a * g into e_{-a} * reflected g", sign_symmetry),
    suite!("convolution-commutation", "kernel_calculus", "cosine family against exponential convolution", convolution_commutation),
    suite!("commutation-counterpart", "kernel_calculus", "cosine family against the boundary-corrected convolution", commutation_counterpart),
    suite!("right-inverse", "extensions", "restriction undoes every extension exactly", right_inverse),
    suite!("left-inverse", "extensions", "extension undoes restriction on each subspace", left_inverse),
    suite!("norm-bounds", "extensions", "snapping and opposite-values extensions inflate norms at most fivefold", norm_bounds),
    suite!("extension-convergence", "extensions", "scaled extensions converge to the skew and flipped-skew ones", extension_convergence),
    suite!("subspace-invariance", "extensions", "the Cartesian product family preserves all four subspaces", subspace_invariance),
    suite!("idempotence", "projections", "projections are idempotent", idempotence),
    suite!("complementarity", "projections", "P + Q = I with P Q = 0, for both projection pairs", complementarity),
    suite!("range-laws", "projections", "projections land in their subspaces", range_laws),
    suite!("form-agreement", "projections", "stable and hyperbolic projection formulas agree near the origin", form_agreement),
    suite!("projection-convergence", "projections", "scaled projections converge to the skew pair", projection_convergence),
    suite!("skew-structure", "projections", "parity structure of the skew projection", skew_structure),
    suite!("cosine-axioms", "evolution", "identity at zero, evenness and the d'Alembert equation", cosine_axioms),
    suite!("kelvin-consistency", "evolution", "evolved functions re-extend to the evolved extension", kelvin_consistency),
    suite!("isometry-conjugation", "evolution", "flipped-skew family is the skew family conjugated by the flip", isometry_conjugation),
    suite!("semigroup-property", "evolution", "e^{(t+s)A} = e^{tA} e^{sA}", semigroup_property),
    suite!("contraction-positivity", "evolution", "Feller semigroups are contractive and positive", contraction_positivity),
    suite!("regularity-dichotomy", "scaling_limits", "cosine ladders converge exactly for inputs continuous at 0", regularity_dichotomy),
    suite!("uniformity-transfer", "scaling_limits", "semigroup errors are bounded by cosine errors", uniformity_transfer_suite),
    suite!("dirac-backbone", "scaling_limits", "exponential approximate identities converge", dirac_backbone),
    suite!("determinism", "cli", "seeded runs give byte-identical CSV", determinism),
    suite!("registry", "cli", "suite names are unique and grouped by module", registry_suite),
];

pub fn registry() -> &'static [Suite] {
    &REGISTRY
}

pub fn find(name: &str) -> Option<&'static Suite> {
    REGISTRY.iter().find(|s| s.name == name)
}

/// Suites selected by a suite name, a module name, or `all`.
pub fn select(selector: &str) -> Result<Vec<&'static Suite>> {
    if selector == "all" {
        return Ok(REGISTRY.iter().collect());
    }
    if let Some(s) = find(selector) {
        return Ok(vec![s]);
    }
    if MODULES.contains(&selector) {
        return Ok(REGISTRY.iter().filter(|s| s.module == selector).collect());
    }
    Err(Error::Parse(format!("unknown suite {selector:?}")))
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn dist<T>(a: &T, b: &T) -> f64
where
    T: Distance,
{
    a.dist(b)
}

trait Distance {
    fn dist(&self, other: &Self) -> f64;
}

impl Distance for LineFunction {
    fn dist(&self, other: &Self) -> f64 {
        self.distance(other).expect("shared grid")
    }
}

impl Distance for SharpFunction {
    fn dist(&self, other: &Self) -> f64 {
        self.distance(other).expect("shared grid")
    }
}

impl Distance for FunctionPair {
    fn dist(&self, other: &Self) -> f64 {
        self.distance(other).expect("shared grid")
    }
}

/// Max over nodes with `|x| <= w` of `|a - b| / scale(x)`.
fn scaled_gap(a: &LineFunction, b: &LineFunction, w: f64, scale: impl Fn(f64) -> f64) -> f64 {
    let g = a.grid();
    (0..g.n_points())
        .filter(|&k| g.node(k).abs() <= w + 1e-12)
        .map(|k| (a.samples()[k] - b.samples()[k]).abs() / scale(g.node(k)))
        .fold(0.0, f64::max)
}

fn involution(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(1);
    let fs: Vec<LineFunction> = (0..10).map(|_| rc.line()).collect();
    let twice = max_of(fs.iter().map(|f| dist(&f.reflect().reflect(), f)));
    let recon = max_of(fs.iter().map(|f| {
        let (e, o) = f.parity_parts();
        dist(&e.add(&o).expect("shared grid"), f) / f.sup_norm().max(f64::MIN_POSITIVE)
    }));
    Ok(vec![
        exact("reflect(reflect(f)) - f", twice, 0.0),
        exact("even + odd - f, relative to |f|", recon, 4.0 * f64::EPSILON),
    ])
}

fn parity_reflection(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(2);
    let (mut e_gap, mut o_gap) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let (e, o) = rc.line().parity_parts();
        e_gap = e_gap.max(dist(&e.reflect(), &e));
        o_gap = o_gap.max(o.reflect().add(&o)?.sup_norm());
    }
    Ok(vec![exact("reflect(even) - even", e_gap, 0.0), exact("reflect(odd) + odd", o_gap, 0.0)])
}

fn cosine_commutation(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(3);
    let (mut parity, mut refl) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let f = rc.line();
        let (e, o) = f.parity_parts();
        for t in [0.37, 1.0] {
            let c = cosine_basic(t, &f);
            let (ce, co) = c.parity_parts();
            parity = parity.max(dist(&ce, &cosine_basic(t, &e))).max(dist(&co, &cosine_basic(t, &o)));
            refl = refl.max(dist(&c.reflect(), &cosine_basic(t, &f.reflect())));
        }
    }
    let tol = cfg.eps_disc();
    Ok(vec![check("parity parts of C(t) f vs C(t) of parity parts", parity, tol), check("reflect C(t) f vs C(t) reflect f", refl, tol)])
}

fn matrix_commutation(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(4);
    let mut mats = vec![("sharp matrix", Matrix2::sharp())];
    if let Ok(m) = Matrix2::snapping_transform(&cfg.params) {
        mats.push(("snapping matrix", m));
    }
    let pairs: Vec<FunctionPair> = (0..5).map(|_| rc.pair()).collect();
    let tol = cfg.eps_disc();
    Ok(mats
        .into_iter()
        .map(|(name, m)| {
            let gap = max_of(pairs.iter().flat_map(|p| {
                [0.37, 1.0].map(|t| dist(&matrix_apply(&m, &cosine_pair(t, p)), &cosine_pair(t, &matrix_apply(&m, p))))
            }));
            check(format!("{name}: M C_D(t) p - C_D(t) M p"), gap, tol)
        })
        .collect())
}

fn flip_isometry(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(5);
    let (mut single, mut pair) = (0.0f64, 0.0f64);
    for _ in 0..10 {
        let f = rc.opposite_values();
        single = single.max((flip_j(&f)?.sup_norm() - f.sup_norm()).abs());
        let p = rc.pair();
        pair = pair.max((flip_pair(&p).sup_norm() - p.sup_norm()).abs());
    }
    Ok(vec![exact("| |J f| - |f| |", single, 0.0), exact("| |flip p| - |p| |", pair, 0.0)])
}

fn hilbert(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = cfg.grid;
    let rates = [(0.5, 2.0), (-1.5, 3.0), (4.0, -4.0), (-2.5, -0.5), (1.0, 1.0)];
    let gap = max_of(rates.iter().map(|&(a, b)| {
        let (ea, eb) = (ExpKernel::new(a).sample(g), ExpKernel::new(b).sample(g));
        let lhs = ea.sub(&eb).expect("shared grid");
        let rhs = exp_convolve(a, &eb).scale(b - a);
        scaled_gap(&lhs, &rhs, 5.0, |x| 1f64.max((-a * x).exp()).max((-b * x).exp()))
    }));
    Ok(vec![check("e_a - e_b - (b - a) e_a * e_b, relative, |x| <= 5", gap, cfg.eps_disc())])
}

fn hyperbolic_identities(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = cfg.grid;
    let samples = [cfg.params, MembraneParams::new(0.3, 1.7)?, MembraneParams::new(1.0, 1.0)?];
    let (mut first, mut second) = (0.0f64, 0.0f64);
    for p in samples {
        let (a, ga) = (p.sum(), p.gamma());
        let sinh = LineFunction::from_fn(g, |x| (ga * x).sinh());
        let cosh = LineFunction::from_fn(g, |x| (ga * x).cosh());
        let ea = ExpKernel::new(a).sample(g);
        let scale = |x: f64| 1f64.max((ga * x).cosh()).max((-a * x).exp());
        let g1 = LineFunction::combine(&[(a, &sinh), (ga, &cosh)])?;
        first = first.max(scaled_gap(&exp_convolve(a, &g1), &sinh, 5.0, scale));
        let g2 = LineFunction::combine(&[(ga, &sinh), (a, &cosh)])?;
        second = second.max(scaled_gap(&exp_convolve(a, &g2), &cosh.sub(&ea)?, 5.0, scale));
    }
    let tol = cfg.eps_disc();
    Ok(vec![
        check("e * [a sinh + gamma cosh] - sinh, relative", first, tol),
        check("e * [gamma sinh + a cosh] - (cosh - e), relative", second, tol),
    ])
}

fn sign_symmetry(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(6);
    let mut gap: f64 = 0.0;
    for _ in 0..5 {
        let f = rc.line();
        for a in [0.7, -1.2, 2.5] {
            let lhs = exp_convolve(a, &f).reflect().scale(-1.0);
            let rhs = exp_convolve(-a, &f.reflect());
            gap = gap.max(dist(&lhs, &rhs) / lhs.sup_norm().max(1.0));
        }
    }
    Ok(vec![check("-reflect(e_a * g) - e_{-a} * reflect(g), relative", gap, EPS_ALG)])
}

/// `(phi(t) + phi(-t)) / 2` by interpolation.
fn even_at(phi: &LineFunction, t: f64) -> f64 {
    0.5 * (phi.evaluate(t) + phi.evaluate(-t))
}

fn convolution_commutation(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = cfg.grid;
    let mut rc = cfg.corpus(7);
    let mut gap: f64 = 0.0;
    for _ in 0..4 {
        let phi = rc.line();
        for a in [0.5, 1.0] {
            let ea = ExpKernel::new(a).sample(g);
            let conv = exp_convolve(a, &phi);
            for t in [0.7, 1.3] {
                let lhs = cosine_basic(t, &conv);
                let rhs = LineFunction::combine(&[(1.0, &exp_convolve(a, &cosine_basic(t, &phi))), (even_at(&conv, t), &ea)])?;
                gap = gap.max(scaled_gap(&lhs, &rhs, 3.0, |x| 1f64.max((-a * x).exp())));
            }
        }
    }
    Ok(vec![check("C(t)(e_a * phi) - e_a * C(t) phi - e_a (e_a * phi)^e(t), |x| <= 3", gap, cfg.eps_disc())])
}

fn commutation_counterpart(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = cfg.grid;
    let mut rc = cfg.corpus(8);
    let mut gap: f64 = 0.0;
    for _ in 0..4 {
        let phi = rc.line();
        let phi0 = phi.at_offset(0);
        for a in [0.5, 1.0] {
            let ea = ExpKernel::new(a).sample(g);
            let conv = exp_convolve(a, &phi);
            let psi = LineFunction::combine(&[(a, &conv), (phi0, &ea)])?;
            let chi = LineFunction::combine(&[(1.0, &phi), (-a, &conv), (-phi0, &ea)])?;
            for t in [0.7, 1.3] {
                let ct_phi = cosine_basic(t, &phi);
                let lhs = cosine_basic(t, &psi);
                let rhs = LineFunction::combine(&[
                    (a, &exp_convolve(a, &ct_phi)),
                    (ct_phi.at_offset(0) - even_at(&chi, t), &ea),
                ])?;
                gap = gap.max(scaled_gap(&lhs, &rhs, 3.0, |x| 1f64.max((-a * x).exp())));
            }
        }
    }
    Ok(vec![check("boundary-corrected commutation residual, |x| <= 3", gap, cfg.eps_disc())])
}

/// Admissible inputs for each subspace.
fn admissible(kind: SubspaceKind, rc: &mut RandomCorpus) -> SharpFunction {
    match kind {
        SubspaceKind::SnappingC => rc.sharp(),
        SubspaceKind::SkewC => rc.continuous(),
        SubspaceKind::PerpD | SubspaceKind::WeksD => rc.opposite_values(),
    }
}

fn right_inverse(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(9);
    SubspaceKind::ALL
        .iter()
        .map(|&kind| {
            let gap = (0..5)
                .map(|_| {
                    let f = admissible(kind, &mut rc);
                    Ok(dist(&extend(kind, &cfg.params, &f)?.restrict(), &f))
                })
                .collect::<Result<Vec<f64>>>()?;
            Ok(exact(format!("{}: restrict(extend(f)) - f", kind.name()), max_of(gap), 0.0))
        })
        .collect()
}

/// A pair in the subspace `kind`, produced by projecting a random pair.
fn projected(kind: SubspaceKind, params: &MembraneParams, p: &FunctionPair) -> FunctionPair {
    match kind {
        SubspaceKind::SnappingC => project_c(params, p),
        SubspaceKind::PerpD => project_d(params, p),
        SubspaceKind::SkewC => project_c_skew(params, p),
        SubspaceKind::WeksD => project_d_weks(params, p),
    }
}

fn left_inverse(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(10);
    let tol = cfg.eps_disc();
    let mut out = Vec::new();
    for kind in SubspaceKind::ALL {
        let mut gap: f64 = 0.0;
        for _ in 0..5 {
            let p = projected(kind, &cfg.params, &rc.pair());
            if !membership(kind, &cfg.params, &p, tol).pass {
                gap = f64::INFINITY;
                continue;
            }
            // Membership holds only to discretization accuracy, so the restriction's values
            // at the origin are made exactly admissible before extending.
            let f = p.restrict();
            let (l, r) = (f.value_left_of_zero(), f.value_right_of_zero());
            let fixed = match kind {
                SubspaceKind::SnappingC => l,
                SubspaceKind::SkewC => r,
                SubspaceKind::PerpD | SubspaceKind::WeksD => -r,
            };
            let mut left = f.left().to_vec();
            *left.last_mut().expect("non-empty branch") = fixed;
            let f = SharpFunction::new(*f.grid(), left, f.right().to_vec(), f.limit_neg(), f.limit_pos())?;
            gap = gap.max(dist(&extend(kind, &cfg.params, &f)?, &p));
        }
        out.push(check(format!("{}: extend(restrict(p)) - p", kind.name()), gap, tol));
    }
    Ok(out)
}

fn norm_bounds(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(11);
    let (mut snap, mut perp) = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let pr = rc.params(0.25, 2.0);
        let f = rc.sharp();
        snap = snap.max(extend_snapping(&pr, &f).sup_norm() / f.sup_norm());
        let ov = rc.opposite_values();
        perp = perp.max(extend_perp(&pr, &ov)?.sup_norm() / ov.sup_norm());
    }
    Ok(vec![exact("snapping extension norm ratio", snap, 5.0), exact("opposite-values extension norm ratio", perp, 5.0)])
}

fn extension_convergence(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(12);
    let h = cfg.grid.spacing();
    crate::scaling::resolution_guard(DEFAULT_LADDER[DEFAULT_LADDER.len() - 1], cfg.params.sum(), h)?;
    let (mut snap_ok, mut perp_ok) = (true, true);
    for _ in 0..3 {
        let f = rc.continuous();
        let limit = extend(SubspaceKind::SkewC, &cfg.params, &f)?;
        let e: Vec<f64> =
            DEFAULT_LADDER.iter().map(|&n| dist(&extend_snapping(&cfg.params.scaled(n as f64), &f), &limit)).collect();
        snap_ok &= is_converging(&DEFAULT_LADDER, &e);
        let ov = rc.opposite_values();
        let limit = extend_weks(&cfg.params, &ov)?;
        let e = DEFAULT_LADDER
            .iter()
            .map(|&n| Ok(dist(&extend_perp(&cfg.params.scaled(n as f64), &ov)?, &limit)))
            .collect::<Result<Vec<f64>>>()?;
        perp_ok &= is_converging(&DEFAULT_LADDER, &e);
    }
    Ok(vec![holds("snapping extensions converge to the skew extension", snap_ok), holds("opposite-values extensions converge to the flipped-skew extension", perp_ok)])
}

fn subspace_invariance(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(13);
    let tol = 3.0 * cfg.eps_disc();
    SubspaceKind::ALL
        .iter()
        .map(|&kind| {
            let mut worst: f64 = 0.0;
            for _ in 0..3 {
                let f = admissible(kind, &mut rc);
                let p = extend(kind, &cfg.params, &f)?;
                for t in [0.5, 1.5] {
                    worst = worst.max(membership(kind, &cfg.params, &cosine_pair(t, &p), tol).max_residual);
                }
            }
            Ok(check(format!("{}: membership residual of C_D(t) p", kind.name()), worst, tol))
        })
        .collect()
}

fn idempotence(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(14);
    let (mut p2, mut s2) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let p = rc.pair();
        let pc = project_c(&cfg.params, &p);
        p2 = p2.max(dist(&project_c(&cfg.params, &pc), &pc));
        let ps = project_c_skew(&cfg.params, &p);
        s2 = s2.max(dist(&project_c_skew(&cfg.params, &ps), &ps));
    }
    Ok(vec![check("|P P p - P p|", p2, 3.0 * cfg.eps_disc()), check("|P^skew P^skew p - P^skew p|", s2, EPS_ALG)])
}

fn complementarity(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(15);
    let (mut sum_exact, mut skew_exact) = (true, true);
    let (mut pq, mut skew_pq) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let p = rc.pair();
        let (pc, qd) = (project_c(&cfg.params, &p), project_d(&cfg.params, &p));
        sum_exact &= p.sub(&pc)? == qd;
        pq = pq.max(project_c(&cfg.params, &qd).sup_norm());
        let (ps, qw) = (project_c_skew(&cfg.params, &p), project_d_weks(&cfg.params, &p));
        skew_exact &= p.sub(&ps)? == qw;
        skew_pq = skew_pq.max(project_c_skew(&cfg.params, &qw).sup_norm());
    }
    Ok(vec![
        holds("P + Q = I bit-exactly", sum_exact),
        check("|P Q p|", pq, 3.0 * cfg.eps_disc()),
        holds("P^skew + Q^weks = I bit-exactly", skew_exact),
        check("|P^skew Q^weks p|", skew_pq, EPS_ALG),
    ])
}

fn range_laws(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(16);
    let pairs: Vec<FunctionPair> = (0..5).map(|_| rc.pair()).collect();
    let tol = cfg.eps_disc();
    Ok(SubspaceKind::ALL
        .iter()
        .map(|&kind| {
            let worst = max_of(pairs.iter().map(|p| membership(kind, &cfg.params, &projected(kind, &cfg.params, p), tol).max_residual));
            check(format!("{}: membership residual of the projection", kind.name()), worst, tol)
        })
        .collect())
}

fn form_agreement(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(17);
    let samples = [cfg.params, MembraneParams::new(0.4, 1.3)?];
    let mut gap: f64 = 0.0;
    for pr in samples {
        for _ in 0..3 {
            let p = rc.pair();
            let diff = project_c(&pr, &p).sub(&project_c_closed_form(&pr, &p))?;
            gap = gap.max(diff.sup_norm_where(|x| x.abs() <= 5.0));
        }
    }
    Ok(vec![check("stable vs hyperbolic form on |x| <= 5", gap, 10.0 * cfg.eps_disc())])
}

fn projection_convergence(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(18);
    let (mut p_ok, mut q_ok) = (true, true);
    for _ in 0..3 {
        let (pr, qr) = converge_projection(&cfg.params, &rc.pair(), &DEFAULT_LADDER)?;
        p_ok &= pr.verdict == Verdict::Converging;
        q_ok &= qr.verdict == Verdict::Converging;
    }
    Ok(vec![holds("P ladder converges to P^skew", p_ok), holds("Q ladder converges to Q^weks", q_ok)])
}

fn skew_structure(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(19);
    let (al, be) = (cfg.params.alpha(), cfg.params.beta());
    let (mut even, mut odd) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let g = project_c_skew(&cfg.params, &rc.pair());
        let (e1, o1) = g.first().parity_parts();
        let (e2, o2) = g.second().parity_parts();
        even = even.max(dist(&e1, &e2));
        odd = odd.max(dist(&o1.scale(be), &o2.scale(al)));
    }
    Ok(vec![check("even parts of P^skew p agree", even, EPS_ALG), check("beta odd(first) - alpha odd(second)", odd, EPS_ALG)])
}

fn kinds(params: MembraneParams) -> [EvolutionKind; 5] {
    [
        EvolutionKind::Free,
        EvolutionKind::Snapping(params),
        EvolutionKind::Perp(params),
        EvolutionKind::Skew(params),
        EvolutionKind::Weks(params),
    ]
}

fn admissible_for(kind: &EvolutionKind, rc: &mut RandomCorpus) -> SharpFunction {
    match kind.subspace() {
        None => rc.continuous(),
        Some((sub, _)) => admissible(sub, rc),
    }
}

fn cosine_axioms(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(20);
    let times = [0.3, 0.7, 1.1];
    let tol = 3.0 * cfg.eps_disc();
    let mut out = Vec::new();
    for kind in kinds(cfg.params) {
        let f = admissible_for(&kind, &mut rc);
        let cos = |t: f64, g: &SharpFunction| cosine_evolve(&kind, t, g);
        let identity = cos(0.0, &f)? == f;
        let even = cos(-0.7, &f)? == cos(0.7, &f)?;
        let mut worst: f64 = 0.0;
        for &s in &times {
            let cs = cos(s, &f)?;
            for &t in &times {
                let lhs = cos(t + s, &f)?.add(&cos(t - s, &f)?)?;
                worst = worst.max(dist(&lhs, &cos(t, &cs)?.scale(2.0)));
            }
        }
        out.push(holds(format!("{}: Cos(0) f = f and Cos(-t) = Cos(t) bit-exactly", kind.name()), identity && even));
        out.push(check(format!("{}: d'Alembert residual", kind.name()), worst, tol));
    }
    Ok(out)
}

fn kelvin_consistency(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(21);
    let tol = 3.0 * cfg.eps_disc();
    let mut out = Vec::new();
    for kind in kinds(cfg.params).into_iter().skip(1) {
        let (sub, pr) = kind.subspace().expect("membrane kind");
        let mut worst: f64 = 0.0;
        for _ in 0..3 {
            let f = admissible_for(&kind, &mut rc);
            let p = extend(sub, &pr, &f)?;
            for t in [0.5, 1.5] {
                let evolved = cosine_pair(t, &p);
                let again = extend(sub, &pr, &evolved.restrict())?;
                worst = worst.max(dist(&again, &evolved));
            }
        }
        out.push(check(format!("{}: extend(Cos(t) f) - C_D(t) extend(f)", kind.name()), worst, tol));
    }
    Ok(out)
}

fn isometry_conjugation(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(22);
    let swapped = cfg.params.swapped();
    let (mut family, mut ext) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let f = rc.opposite_values();
        let jf = SharpFunction::from_line(&flip_j(&f)?);
        for t in [0.4, 1.25] {
            let skew = cosine_evolve(&EvolutionKind::Skew(swapped), t, &jf)?;
            let via = flip_j_inverse(&skew.to_line(EPS_ALG)?);
            family = family.max(dist(&cosine_evolve(&EvolutionKind::Weks(cfg.params), t, &f)?, &via));
        }
        let lifted = flip_pair(&extend(SubspaceKind::SkewC, &swapped, &jf)?);
        ext = ext.max(dist(&lifted, &extend_weks(&cfg.params, &f)?));
    }
    Ok(vec![
        check("flipped-skew family vs flip-conjugated skew family", family, EPS_ALG),
        check("flipped-skew extension vs flip-conjugated skew extension", ext, EPS_ALG),
    ])
}

fn semigroup_property(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(23);
    let tol = cfg.eps_disc();
    let mut out = Vec::new();
    for kind in kinds(cfg.params) {
        let f = admissible_for(&kind, &mut rc);
        let mut worst: f64 = 0.0;
        for s in [0.2, 0.5] {
            let us = semigroup_evolve(&kind, s, &f)?;
            for t in [0.2, 0.5] {
                worst = worst.max(dist(&semigroup_evolve(&kind, t, &us)?, &semigroup_evolve(&kind, t + s, &f)?));
            }
        }
        out.push(check(format!("{}: e^(tA) e^(sA) f - e^((t+s)A) f", kind.name()), worst, tol));
    }
    Ok(out)
}

fn min_value(f: &SharpFunction) -> f64 {
    f.left().iter().chain(f.right()).fold(f.limit_neg().min(f.limit_pos()), |m, v| m.min(*v))
}

fn contraction_positivity(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = cfg.grid;
    let mut rc = cfg.corpus(24);
    let mut out = Vec::new();
    for kind in [EvolutionKind::Free, EvolutionKind::Snapping(cfg.params), EvolutionKind::Skew(cfg.params)] {
        let mut inputs = vec![CorpusFunction::Gauss.sample(g), rc.continuous().map(f64::abs)];
        if matches!(kind, EvolutionKind::Snapping(_)) {
            inputs.push(CorpusFunction::Step { left: 0.0, right: 1.0 }.sample(g));
            inputs.push(rc.sharp().map(f64::abs));
        }
        let (mut growth, mut negative) = (f64::NEG_INFINITY, 0.0f64);
        for f in &inputs {
            for t in [0.1, 0.5, 2.0] {
                let u = semigroup_evolve(&kind, t, f)?;
                growth = growth.max(u.sup_norm() - f.sup_norm());
                negative = negative.max(-min_value(&u));
            }
        }
        out.push(exact(format!("{}: |e^(tA) f| - |f|", kind.name()), growth, 1e-8));
        out.push(exact(format!("{}: -min e^(tA) f for f >= 0", kind.name()), negative, 1e-8));
    }
    Ok(out)
}

fn regularity_dichotomy(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = cfg.grid;
    let mut rc = cfg.corpus(25);
    let t_set = [0.25, 0.5, 1.0, 2.0, 4.0];
    let mut inputs = vec![
        CorpusFunction::Gauss.sample(g),
        CorpusFunction::Atan.sample(g),
        CorpusFunction::ExpAbs.sample(g),
        CorpusFunction::OddStep.sample(g),
        CorpusFunction::Step { left: 0.0, right: 1.0 }.sample(g),
        CorpusFunction::Step { left: 2.0, right: -0.5 }.sample(g),
    ];
    inputs.extend([rc.continuous(), rc.continuous(), rc.sharp(), rc.sharp()]);
    let mut mismatches = 0usize;
    for f in &inputs {
        let r = converge_cosine(&cfg.params, f, &DEFAULT_LADDER, &t_set)?;
        if (r.verdict == Verdict::Converging) != f.is_continuous(EPS_ALG) {
            mismatches += 1;
        }
    }
    Ok(vec![exact("inputs where convergence and continuity at 0 disagree", mismatches as f64, 0.0)])
}

fn uniformity_transfer_suite(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut rc = cfg.corpus(26);
    let mut excess = f64::NEG_INFINITY;
    for _ in 0..2 {
        let f = rc.continuous();
        for s in uniformity_transfer(&cfg.params, &f, &[1, 4, 16, 64], &[0.25, 1.0])? {
            excess = excess.max(s.semigroup_error - s.cosine_error);
        }
    }
    Ok(vec![exact("semigroup error minus sup of cosine errors", excess, 1e-12)])
}

fn dirac_backbone(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let g = cfg.grid;
    let mut rc = cfg.corpus(27);
    let mut corpus = vec![LineFunction::from_fn(g, |x| x / (1.0 + x.abs())), LineFunction::from_fn(g, f64::atan)];
    corpus.extend((0..2).map(|_| rc.line()));
    let mut worst: f64 = 0.0;
    for phi in &corpus {
        for v in [DiracVariant::Left, DiracVariant::Right, DiracVariant::Origin] {
            let r = converge_dirac(cfg.params.sum(), phi, v, &DEFAULT_LADDER)?;
            worst = worst.max(r.errors[r.errors.len() - 1] / r.errors[0]);
        }
    }
    Ok(vec![exact("residual(64) / residual(1)", worst, 0.1)])
}

fn render(cfg: &SuiteConfig) -> Result<(Vec<u8>, Vec<u8>)> {
    let mut rc = cfg.corpus(28);
    let f = rc.sharp();
    let mut sharp = Vec::new();
    write_sharp(&semigroup_evolve(&EvolutionKind::Snapping(cfg.params), 0.5, &f)?, &mut sharp)?;
    let mut pair = Vec::new();
    write_pair(&project_c(&cfg.params, &rc.pair()), &mut pair)?;
    Ok((sharp, pair))
}

fn determinism(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let (a, b) = (render(cfg)?, render(cfg)?);
    Ok(vec![holds("repeated seeded runs are byte-identical", a == b)])
}

fn registry_suite(_: &SuiteConfig) -> Result<Vec<Check>> {
    let mut names: Vec<&str> = REGISTRY.iter().map(|s| s.name).collect();
    names.sort_unstable();
    let unique = names.windows(2).all(|w| w[0] != w[1]);
    let grouped = REGISTRY.iter().all(|s| MODULES.contains(&s.module));
    let covered = MODULES.iter().all(|m| REGISTRY.iter().any(|s| s.module == *m));
    let disjoint = names.iter().all(|n| !MODULES.contains(n) && *n != "all");
    Ok(vec![
        holds("suite names are unique", unique),
        holds("every suite belongs to a known module", grouped),
        holds("every module has a suite", covered),
        holds("suite names do not shadow module selectors", disjoint),
    ])
}
