use crate::error::{Error, Result};

/// Membrane permeabilities `alpha` (left to right) and `beta` (right to left).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembraneParams {
    alpha: f64,
    beta: f64,
}

impl MembraneParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let ok = alpha.is_finite() && beta.is_finite() && alpha >= 0.0 && beta >= 0.0 && alpha + beta > 0.0;
        if !ok {
            return Err(Error::DegenerateMembrane { alpha, beta });
        }
        Ok(MembraneParams { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `alpha + beta`.
    pub fn sum(&self) -> f64 {
        self.alpha + self.beta
    }

    /// `sqrt(2 (alpha^2 + beta^2))`.
    pub fn gamma(&self) -> f64 {
        (2.0 * (self.alpha * self.alpha + self.beta * self.beta)).sqrt()
    }

    /// `(n alpha, n beta)`.
    pub fn scaled(&self, n: f64) -> Self {
        MembraneParams { alpha: n * self.alpha, beta: n * self.beta }
    }

    /// `(beta, alpha)`.
    pub fn swapped(&self) -> Self {
        MembraneParams { alpha: self.beta, beta: self.alpha }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        assert!(MembraneParams::new(0.0, 0.0).is_err());
        assert!(MembraneParams::new(-1.0, 2.0).is_err());
        assert!(MembraneParams::new(f64::NAN, 1.0).is_err());
        assert!(MembraneParams::new(0.0, 1.0).is_ok());
    }

    #[test]
    fn derived_rates() {
        let p = MembraneParams::new(1.0, 3.0).unwrap();
        assert_eq!(p.sum(), 4.0);
        assert!((p.gamma() - 20f64.sqrt()).abs() < 1e-15);
        assert_eq!(p.scaled(2.0).gamma(), 2.0 * p.gamma());
        assert_eq!(p.swapped().alpha(), 3.0);
    }
}
