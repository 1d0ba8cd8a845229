use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use membrane_core::corpus::{CorpusFunction, RandomCorpus};
use membrane_core::evolution::{cosine_evolve, semigroup_evolve, EvolutionKind};
use membrane_core::extensions::{extend, membership, SubspaceKind};
use membrane_core::function_space::io::{read_line, read_pair, read_sharp, write_pair, write_sharp};
use membrane_core::function_space::{FunctionPair, Grid, LineFunction, MembraneParams, SharpFunction};
use membrane_core::kernel::DiracVariant;
use membrane_core::projections::{project_c, project_c_skew, project_d, project_d_weks};
use membrane_core::scaling::{
    converge_cosine, converge_dirac, converge_perp, converge_projection, converge_semigroup, is_converging, LadderReport,
    Verdict, CAUCHY_REFERENCE,
};
use membrane_core::suites::{registry, select, SuiteConfig};
use membrane_core::tolerances::EPS_ALG;

use crate::config::{read_text, RunConfig, DEFAULT_POINTS};
use crate::{Cli, Command, Experiment, ExtensionKind, FamilyKind, ProjectionKind, Variant};

/// Alphas of the figure-data mode.
const FIGURE_ALPHAS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
/// Half-width of the window written by the figure-data mode.
const FIGURE_WINDOW: f64 = 5.0;

const RANDOM_NAMES: [&str; 3] = ["random", "random_continuous", "random_opposite"];

/// `Ok(true)` on success or pass, `Ok(false)` when a check fails.
pub fn run(cli: &Cli) -> Result<bool> {
    let cfg = RunConfig::resolve(&cli.common)?;
    match &cli.command {
        Command::Extend { kind, figure_data } => cmd_extend(&cfg, *kind, *figure_data),
        Command::Project { which } => cmd_project(&cfg, *which),
        Command::Evolve { kind, t, semigroup } => cmd_evolve(&cfg, *kind, *t, *semigroup),
        Command::Converge { experiment, ladder, t_set, variant } => cmd_converge(&cfg, *experiment, ladder, t_set, *variant),
        Command::Verify { suite, list } => cmd_verify(&cfg, suite, *list),
        Command::Corpus => cmd_corpus(&cfg),
    }
}

fn emit(cfg: &RunConfig, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match &cfg.out {
        Some(path) => {
            let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            let mut w = BufWriter::new(file);
            body(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

enum Loaded {
    Line(LineFunction),
    Sharp(SharpFunction),
    Pair(FunctionPair),
}

fn read_input(path: &Path) -> Result<Loaded> {
    let text = read_text(path)?;
    let header: String = text.lines().next().unwrap_or("").chars().filter(|c| !c.is_whitespace()).collect();
    let ctx = || format!("malformed input {}", path.display());
    Ok(match header.as_str() {
        "x,value" => Loaded::Line(read_line(text.as_bytes()).with_context(ctx)?),
        "x,side,value" => Loaded::Sharp(read_sharp(text.as_bytes()).with_context(ctx)?),
        "x,f1,f2" => Loaded::Pair(read_pair(text.as_bytes()).with_context(ctx)?),
        _ => bail!("{}: unrecognised header {header:?}", path.display()),
    })
}

fn named(name: &str, grid: Grid, seed: u64) -> Result<SharpFunction> {
    let mut rc = RandomCorpus::new(grid, seed);
    Ok(match name {
        "random" => rc.sharp(),
        "random_continuous" => rc.continuous(),
        "random_opposite" => rc.opposite_values(),
        _ => name.parse::<CorpusFunction>()?.sample(grid),
    })
}

/// The input as a function with a possible jump; files fix their own grid.
fn load_sharp(cfg: &RunConfig, grid: Grid) -> Result<SharpFunction> {
    match (&cfg.input, &cfg.function) {
        (Some(_), Some(_)) => bail!("pass either --input or --function, not both"),
        (Some(path), None) => match read_input(path)? {
            Loaded::Sharp(f) => Ok(f),
            Loaded::Line(f) => Ok(SharpFunction::from_line(&f)),
            Loaded::Pair(_) => bail!("{}: expected a single function, found a pair", path.display()),
        },
        (None, Some(name)) => named(name, grid, cfg.seed),
        (None, None) => bail!("no input: pass --input FILE or --function NAME"),
    }
}

/// Whole-line samples; a jump at the origin is replaced by the mean of the one-sided values.
fn as_line(f: &SharpFunction) -> LineFunction {
    f.to_line(f64::INFINITY).expect("any jump is accepted")
}

fn load_pair(cfg: &RunConfig, grid: Grid) -> Result<FunctionPair> {
    match (&cfg.input, &cfg.function) {
        (Some(_), Some(_)) => bail!("pass either --input or --function, not both"),
        (Some(path), None) => match read_input(path)? {
            Loaded::Pair(p) => Ok(p),
            _ => bail!("{}: expected a pair with header x,f1,f2", path.display()),
        },
        (None, Some(name)) => {
            if name == "random" && cfg.second.is_none() {
                return Ok(RandomCorpus::new(grid, cfg.seed).pair());
            }
            let first = as_line(&named(name, grid, cfg.seed)?);
            let second = match &cfg.second {
                Some(s) => as_line(&named(s, grid, cfg.seed.wrapping_add(1))?),
                None => first.clone(),
            };
            Ok(FunctionPair::new(first, second)?)
        }
        (None, None) => bail!("no input: pass --input FILE or --function NAME"),
    }
}

fn subspace(kind: ExtensionKind) -> SubspaceKind {
    match kind {
        ExtensionKind::Snapping => SubspaceKind::SnappingC,
        ExtensionKind::Perp => SubspaceKind::PerpD,
        ExtensionKind::Skew => SubspaceKind::SkewC,
        ExtensionKind::Weks => SubspaceKind::WeksD,
    }
}

/// Reports membership of `p` on stderr when a tolerance was requested.
fn membership_gate(cfg: &RunConfig, kind: SubspaceKind, params: &MembraneParams, p: &FunctionPair) -> bool {
    let Some(tol) = cfg.tol else { return true };
    let r = membership(kind, params, p, tol);
    eprintln!(
        "membership {}: max residual {:.3e} (tol {tol:.1e}) {}",
        kind.name(),
        r.max_residual,
        if r.pass { "PASS" } else { "FAIL" }
    );
    r.pass
}

fn cmd_extend(cfg: &RunConfig, kind: ExtensionKind, figure_data: bool) -> Result<bool> {
    let grid = cfg.grid()?;
    let sub = subspace(kind);
    if figure_data {
        let f = if cfg.input.is_none() && cfg.function.is_none() {
            CorpusFunction::OddStep.sample(grid)
        } else {
            load_sharp(cfg, grid)?
        };
        let pairs = FIGURE_ALPHAS
            .iter()
            .map(|&a| Ok((a, extend(sub, &MembraneParams::new(a, cfg.beta)?, &f)?)))
            .collect::<Result<Vec<(f64, FunctionPair)>>>()?;
        emit(cfg, |w| {
            writeln!(w, "alpha,x,f1,f2")?;
            for (a, p) in &pairs {
                let g = p.grid();
                for k in (0..g.n_points()).filter(|&k| g.node(k).abs() <= FIGURE_WINDOW + 1e-9) {
                    let (u, v) = (p.first().samples()[k], p.second().samples()[k]);
                    writeln!(w, "{a},{:.16e},{u:.16e},{v:.16e}", g.node(k))?;
                }
            }
            Ok(())
        })?;
        return Ok(true);
    }
    let params = cfg.params()?;
    let f = load_sharp(cfg, grid)?;
    let p = extend(sub, &params, &f)?;
    emit(cfg, |w| Ok(write_pair(&p, w)?))?;
    Ok(membership_gate(cfg, sub, &params, &p))
}

fn cmd_project(cfg: &RunConfig, which: ProjectionKind) -> Result<bool> {
    let params = cfg.params()?;
    let p = load_pair(cfg, cfg.grid()?)?;
    let (out, sub) = match which {
        ProjectionKind::C => (project_c(&params, &p), SubspaceKind::SnappingC),
        ProjectionKind::D => (project_d(&params, &p), SubspaceKind::PerpD),
        ProjectionKind::Skew => (project_c_skew(&params, &p), SubspaceKind::SkewC),
        ProjectionKind::Weks => (project_d_weks(&params, &p), SubspaceKind::WeksD),
    };
    emit(cfg, |w| Ok(write_pair(&out, w)?))?;
    Ok(membership_gate(cfg, sub, &params, &out))
}

fn family(kind: FamilyKind, params: MembraneParams) -> EvolutionKind {
    match kind {
        FamilyKind::Free => EvolutionKind::Free,
        FamilyKind::Snapping => EvolutionKind::Snapping(params),
        FamilyKind::Perp => EvolutionKind::Perp(params),
        FamilyKind::Skew => EvolutionKind::Skew(params),
        FamilyKind::Weks => EvolutionKind::Weks(params),
    }
}

fn cmd_evolve(cfg: &RunConfig, kind: FamilyKind, t: f64, semigroup: bool) -> Result<bool> {
    let kind = family(kind, cfg.params()?);
    let f = load_sharp(cfg, cfg.grid()?)?;
    let u = if semigroup { semigroup_evolve(&kind, t, &f)? } else { cosine_evolve(&kind, t, &f)? };
    emit(cfg, |w| Ok(write_sharp(&u, w)?))?;
    Ok(true)
}

/// The configured grid, refined when the point count was left open and the ladder would
/// otherwise violate `n * rate * h <= 1`.
fn ladder_grid(cfg: &RunConfig, n_max: u32, rate: f64) -> Result<Grid> {
    let grid = cfg.grid()?;
    if cfg.n_points.is_some() || n_max as f64 * rate * grid.spacing() <= 1.0 {
        return Ok(grid);
    }
    let h = 1.0 / (n_max as f64 * rate);
    let half = (cfg.half_width / h).ceil() as usize;
    let n = 2 * half + 1;
    eprintln!("grid refined from {DEFAULT_POINTS} to {n} points so that n * rate * h <= 1 up to n = {n_max}");
    Ok(Grid::new(cfg.half_width, n)?)
}

fn verdict_line(label: &str, verdict: &Verdict) {
    match verdict {
        Verdict::Converging => eprintln!("{label}: converging"),
        Verdict::Diverging { witness_t, floor } => {
            eprintln!("{label}: diverging (witness t = {witness_t}, error >= {floor:.3e} for n >= 4)")
        }
        Verdict::Inconclusive => eprintln!("{label}: inconclusive"),
    }
}

fn cmd_converge(cfg: &RunConfig, experiment: Experiment, ladder: &[u32], t_set: &[f64], variant: Variant) -> Result<bool> {
    if ladder.is_empty() || ladder.contains(&0) {
        bail!("ladder rungs must be positive");
    }
    let params = cfg.params()?;
    let n_max = *ladder.iter().max().expect("non-empty ladder");
    let rate = if experiment == Experiment::Projection { params.gamma() } else { params.sum() };
    let grid = ladder_grid(cfg, n_max, rate)?;
    let errors = match experiment {
        Experiment::Projection => {
            let p = load_pair(cfg, grid)?;
            let (pr, qr) = converge_projection(&params, &p, ladder)?;
            verdict_line("P", &pr.verdict);
            verdict_line("Q", &qr.verdict);
            let both: Vec<f64> = pr.errors.iter().zip(&qr.errors).map(|(a, b)| a.max(*b)).collect();
            let v = if is_converging(ladder, &both) { Verdict::Converging } else { Verdict::Inconclusive };
            verdict_line("max(P, Q)", &v);
            both
        }
        Experiment::Semigroup => {
            let probe = load_sharp(cfg, grid)?;
            let grid = if probe.is_continuous(EPS_ALG) { grid } else { ladder_grid(cfg, n_max.max(CAUCHY_REFERENCE), rate)? };
            report(converge_semigroup(&params, &load_sharp(cfg, grid)?, ladder, t_set)?)
        }
        Experiment::Cosine => report(converge_cosine(&params, &load_sharp(cfg, grid)?, ladder, t_set)?),
        Experiment::Perp => report(converge_perp(&params, &load_sharp(cfg, grid)?, ladder, t_set)?),
        Experiment::Dirac => {
            let v = match variant {
                Variant::Left => DiracVariant::Left,
                Variant::Right => DiracVariant::Right,
                Variant::Origin => DiracVariant::Origin,
            };
            report(converge_dirac(params.sum(), &as_line(&load_sharp(cfg, grid)?), v, ladder)?)
        }
    };
    emit(cfg, |w| {
        writeln!(w, "n,error")?;
        for (n, e) in ladder.iter().zip(&errors) {
            writeln!(w, "{n},{e:.16e}")?;
        }
        Ok(())
    })?;
    Ok(true)
}

fn report(r: LadderReport) -> Vec<f64> {
    verdict_line(&format!("uniform over {}", r.uniform_over), &r.verdict);
    r.errors
}

fn cmd_verify(cfg: &RunConfig, suite: &str, list: bool) -> Result<bool> {
    if list {
        emit(cfg, |w| {
            for s in registry() {
                writeln!(w, "{}\t{}\t{}", s.name, s.module, s.summary)?;
            }
            Ok(())
        })?;
        return Ok(true);
    }
    let suites = select(suite)?;
    let sc = SuiteConfig { grid: cfg.grid()?, params: cfg.params()?, seed: cfg.seed, tolerance: cfg.tol };
    let reports = suites.iter().map(|s| s.run(&sc)).collect::<membrane_core::Result<Vec<_>>>()?;
    let failed = reports.iter().filter(|r| !r.pass()).count();
    emit(cfg, |w| {
        for r in &reports {
            writeln!(w, "[{}] {} ({})", if r.pass() { "PASS" } else { "FAIL" }, r.name, r.module)?;
            for c in &r.checks {
                let mark = if c.pass() { "ok" } else { "FAILED" };
                writeln!(w, "    {mark:<6} {}: {:.3e} (tol {:.1e})", c.label, c.value, c.tolerance)?;
            }
        }
        writeln!(w, "{} suite(s) passed, {failed} failed", reports.len() - failed)?;
        Ok(())
    })?;
    Ok(failed == 0)
}

fn cmd_corpus(cfg: &RunConfig) -> Result<bool> {
    if cfg.function.is_none() && cfg.input.is_none() {
        emit(cfg, |w| {
            for n in CorpusFunction::NAMES.iter().chain(&RANDOM_NAMES) {
                writeln!(w, "{n}")?;
            }
            Ok(())
        })?;
        return Ok(true);
    }
    let f = load_sharp(cfg, cfg.grid()?)?;
    emit(cfg, |w| Ok(write_sharp(&f, w)?))?;
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig {
            half_width: 30.0,
            n_points: None,
            alpha: 1.0,
            beta: 3.0,
            input: None,
            function: None,
            second: None,
            out: None,
            seed: 1,
            tol: None,
        }
    }

    #[test]
    fn ladder_grid_refines_only_when_open() {
        let c = cfg();
        let g = ladder_grid(&c, 64, 4.0).unwrap();
        assert!(64.0 * 4.0 * g.spacing() <= 1.0);
        assert_eq!(ladder_grid(&c, 16, 4.0).unwrap().n_points(), DEFAULT_POINTS);
        let fixed = RunConfig { n_points: Some(6001), ..cfg() };
        assert_eq!(ladder_grid(&fixed, 64, 4.0).unwrap().n_points(), 6001);
    }

    #[test]
    fn named_inputs() {
        let g = Grid::new(5.0, 101).unwrap();
        assert!(named("random_opposite", g, 3).unwrap().has_opposite_values(0.0));
        assert_eq!(named("random", g, 3).unwrap(), named("random", g, 3).unwrap());
        assert!(named("nonsense", g, 3).is_err());
    }

    #[test]
    fn pairs_from_names() {
        let g = Grid::new(5.0, 101).unwrap();
        let c = RunConfig { function: Some("gauss".into()), second: Some("const(2)".into()), ..cfg() };
        let p = load_pair(&c, g).unwrap();
        assert_eq!(p.second().sup_norm(), 2.0);
        let c = RunConfig { function: None, ..cfg() };
        assert!(load_pair(&c, g).is_err());
    }
}
