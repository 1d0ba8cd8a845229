//! Named test functions, functions engineered to satisfy each family's transmission
//! conditions, and seeded random inputs.
//!
//! Random functions are built from Gaussian bumps and `tanh` ramps centred well inside the
//! grid, so they are flat near `+-L` and the constant-tail model holds to rounding.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::evolution::EvolutionKind;
use crate::function_space::{FunctionPair, Grid, LineFunction, MembraneParams, SharpFunction};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorpusFunction {
    /// `exp(-x^2)`.
    Gauss,
    /// `left` on `x < 0`, `right` on `x > 0`.
    Step { left: f64, right: f64 },
    /// `exp(-|x|)`.
    ExpAbs,
    /// `atan(x)`, held constant beyond the grid.
    Atan,
    /// `-1` on `x < 0`, `+1` on `x > 0`.
    OddStep,
    Const(f64),
}

impl CorpusFunction {
    pub const NAMES: [&'static str; 6] = ["gauss", "step(jL,jR)", "expabs", "atan", "odd_step", "const(c)"];

    pub fn sample(&self, grid: Grid) -> SharpFunction {
        match *self {
            CorpusFunction::Gauss => SharpFunction::from_line(&LineFunction::from_fn(grid, |x| (-x * x).exp())),
            CorpusFunction::Step { left, right } => SharpFunction::from_branches(grid, |_| left, |_| right),
            CorpusFunction::ExpAbs => SharpFunction::from_line(&LineFunction::from_fn(grid, |x| (-x.abs()).exp())),
            CorpusFunction::Atan => SharpFunction::from_line(&LineFunction::from_fn(grid, f64::atan)),
            CorpusFunction::OddStep => SharpFunction::from_branches(grid, |_| -1.0, |_| 1.0),
            CorpusFunction::Const(c) => SharpFunction::from_line(&LineFunction::constant(grid, c)),
        }
    }
}

impl fmt::Display for CorpusFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CorpusFunction::Gauss => write!(f, "gauss"),
            CorpusFunction::Step { left, right } => write!(f, "step({left},{right})"),
            CorpusFunction::ExpAbs => write!(f, "expabs"),
            CorpusFunction::Atan => write!(f, "atan"),
            CorpusFunction::OddStep => write!(f, "odd_step"),
            CorpusFunction::Const(c) => write!(f, "const({c})"),
        }
    }
}

fn parse_args(name: &str, args: &str, count: usize) -> Result<Vec<f64>> {
    let vals = args
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad argument {s:?} in {name}"))))
        .collect::<Result<Vec<f64>>>()?;
    if vals.len() != count || vals.iter().any(|v| !v.is_finite()) {
        return Err(Error::Parse(format!("{name} expects {count} finite argument(s)")));
    }
    Ok(vals)
}

impl FromStr for CorpusFunction {
    type Err = Error;

    /// Accepts the names in [`CorpusFunction::NAMES`]; bare `step` means `step(0,1)` and bare
    /// `const` means `const(1)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, args) = match s.split_once('(') {
            Some((h, rest)) => {
                let inner = rest.strip_suffix(')').ok_or_else(|| Error::Parse(format!("unclosed argument list in {s:?}")))?;
                (h.trim(), Some(inner))
            }
            None => (s, None),
        };
        match (head, args) {
            ("gauss", None) => Ok(CorpusFunction::Gauss),
            ("expabs", None) => Ok(CorpusFunction::ExpAbs),
            ("atan", None) => Ok(CorpusFunction::Atan),
            ("odd_step", None) => Ok(CorpusFunction::OddStep),
            ("step", None) => Ok(CorpusFunction::Step { left: 0.0, right: 1.0 }),
            ("step", Some(a)) => {
                let v = parse_args("step", a, 2)?;
                Ok(CorpusFunction::Step { left: v[0], right: v[1] })
            }
            ("const", None) => Ok(CorpusFunction::Const(1.0)),
            ("const", Some(a)) => Ok(CorpusFunction::Const(parse_args("const", a, 1)?[0])),
            _ => Err(Error::Parse(format!("unknown corpus function {s:?}"))),
        }
    }
}

/// Branches `(c + p x + q x^2) exp(-x^2)` chosen so that `f` satisfies the transmission
/// conditions of `kind` exactly at the origin.
pub fn domain_function(kind: &EvolutionKind, grid: Grid) -> SharpFunction {
    // (c, p, q) for the left and right branches.
    let (l, r) = match *kind {
        EvolutionKind::Free => ((1.0, 0.5, 0.0), (1.0, 0.5, 0.0)),
        EvolutionKind::Snapping(pr) => ((0.0, pr.alpha(), 0.0), (1.0, pr.beta(), 0.0)),
        EvolutionKind::Perp(pr) => {
            let (pl, pp) = (0.3, -0.2);
            let q = 0.5 * (pr.alpha() * pl + pr.beta() * pp + 2.0);
            ((-1.0, pl, -q), (1.0, pp, q))
        }
        EvolutionKind::Skew(pr) => ((1.0, pr.alpha(), 0.0), (1.0, pr.beta(), 0.0)),
        EvolutionKind::Weks(pr) => ((-1.0, pr.beta(), 0.0), (1.0, -pr.alpha(), 0.0)),
    };
    let branch = |(c, p, q): (f64, f64, f64)| move |x: f64| (c + p * x + q * x * x) * (-x * x).exp();
    SharpFunction::from_branches(grid, branch(l), branch(r))
}

/// Deterministic random inputs; equal seeds give bit-identical sequences.
#[derive(Debug, Clone)]
pub struct RandomCorpus {
    grid: Grid,
    rng: ChaCha8Rng,
}

/// Random smooth profile with flat tails.
#[derive(Debug, Clone)]
struct Profile {
    offset: f64,
    bumps: Vec<(f64, f64, f64)>,
    ramp: (f64, f64, f64),
}

impl Profile {
    fn eval(&self, x: f64) -> f64 {
        let (a, mu, s) = self.ramp;
        self.bumps.iter().fold(self.offset + a * ((x - mu) / s).tanh(), |acc, &(b, mu, s)| {
            let z = (x - mu) / s;
            acc + b * (-z * z).exp()
        })
    }
}

impl RandomCorpus {
    pub fn new(grid: Grid, seed: u64) -> Self {
        RandomCorpus { grid, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    fn profile(&mut self) -> Profile {
        let count = self.rng.gen_range(1..=3);
        let bumps = (0..count)
            .map(|_| (self.rng.gen_range(-1.0..1.0), self.rng.gen_range(-3.0..3.0), self.rng.gen_range(0.5..2.0)))
            .collect();
        Profile {
            offset: self.rng.gen_range(-0.5..0.5),
            bumps,
            ramp: (self.rng.gen_range(-0.5..0.5), self.rng.gen_range(-2.0..2.0), self.rng.gen_range(0.5..2.0)),
        }
    }

    pub fn line(&mut self) -> LineFunction {
        let p = self.profile();
        LineFunction::from_fn(self.grid, |x| p.eval(x))
    }

    /// Independent branches, so almost surely with a jump at the origin.
    pub fn sharp(&mut self) -> SharpFunction {
        let (pl, pr) = (self.profile(), self.profile());
        SharpFunction::from_branches(self.grid, |x| pl.eval(x), |x| pr.eval(x))
    }

    pub fn continuous(&mut self) -> SharpFunction {
        SharpFunction::from_line(&self.line())
    }

    /// Branches shifted so that `f(0-) = -f(0+)` exactly.
    pub fn opposite_values(&mut self) -> SharpFunction {
        let (pl, pr) = (self.profile(), self.profile());
        let shift = pl.eval(0.0) + pr.eval(0.0);
        let f = SharpFunction::from_branches(self.grid, |x| pl.eval(x) - shift, |x| pr.eval(x));
        let (mut left, right) = (f.left().to_vec(), f.right().to_vec());
        *left.last_mut().expect("non-empty branch") = -right[0];
        SharpFunction::new(self.grid, left, right, f.limit_neg(), f.limit_pos()).expect("finite samples")
    }

    pub fn pair(&mut self) -> FunctionPair {
        let (a, b) = (self.line(), self.line());
        FunctionPair::new(a, b).expect("shared grid")
    }

    /// `alpha, beta` drawn uniformly from `[lo, hi)`.
    pub fn params(&mut self, lo: f64, hi: f64) -> MembraneParams {
        let a = self.rng.gen_range(lo..hi);
        let b = self.rng.gen_range(lo..hi);
        MembraneParams::new(a, b).expect("positive rates")
    }

    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::transmission_residual;
    use crate::tolerances::EPS_ALG;

    #[test]
    fn names_round_trip() {
        for s in ["gauss", "step(-1,2.5)", "expabs", "atan", "odd_step", "const(3)"] {
            let f: CorpusFunction = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert_eq!("step".parse::<CorpusFunction>().unwrap(), CorpusFunction::Step { left: 0.0, right: 1.0 });
        for bad in ["gaus", "step(1)", "const(x)", "step(1,2", "const(nan)"] {
            assert!(bad.parse::<CorpusFunction>().is_err(), "{bad}");
        }
    }

    #[test]
    fn named_samples() {
        let g = Grid::default();
        let s = CorpusFunction::Step { left: -2.0, right: 3.0 }.sample(g);
        assert_eq!(s.jump(), 5.0);
        assert!(CorpusFunction::OddStep.sample(g).has_opposite_values(0.0));
        assert!(CorpusFunction::Gauss.sample(g).is_continuous(0.0));
        assert_eq!(CorpusFunction::Const(-4.0).sample(g).sup_norm(), 4.0);
    }

    #[test]
    fn domain_functions_satisfy_their_conditions() {
        let g = Grid::default();
        let p = MembraneParams::new(0.4, 1.3).unwrap();
        let kinds = [
            EvolutionKind::Free,
            EvolutionKind::Snapping(p),
            EvolutionKind::Perp(p),
            EvolutionKind::Skew(p),
            EvolutionKind::Weks(p),
        ];
        for k in kinds {
            let r = transmission_residual(&k, &domain_function(&k, g)).unwrap();
            assert!(r.max_abs() < 1e-3, "{} {r:?}", k.name());
        }
    }

    #[test]
    fn seeded_generators_are_reproducible_and_admissible() {
        let g = Grid::default();
        let mut a = RandomCorpus::new(g, 7);
        let mut b = RandomCorpus::new(g, 7);
        assert_eq!(a.sharp(), b.sharp());
        assert_eq!(a.pair(), b.pair());
        let ov = a.opposite_values();
        assert!(ov.has_opposite_values(0.0));
        assert!(a.continuous().is_continuous(EPS_ALG));
        let f = a.line();
        let s = f.samples();
        assert!((s[0] - s[1]).abs() < 1e-12 && (s[s.len() - 1] - s[s.len() - 2]).abs() < 1e-12);
    }
}
