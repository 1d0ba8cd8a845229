use crate::error::{Error, Result};

/// Uniform symmetric grid `x_k = (k - m) h` on `[-L, L]` with odd node count `n = 2m + 1`.
#[derive(Debug, Clone, Copy)]
pub struct Grid {
    half_width: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width.is_finite() && half_width > 0.0) {
            return Err(Error::InvalidGrid(format!("half-width {half_width} must be positive")));
        }
        if n_points < 3 || n_points % 2 == 0 {
            return Err(Error::InvalidGrid(format!(
                "node count {n_points} must be odd and at least 3"
            )));
        }
        Ok(Grid { half_width, n_points })
    }

    /// Grid with spacing `h` and half-width `L`; `L / h` must be a whole number.
    pub fn with_spacing(half_width: f64, spacing: f64) -> Result<Self> {
        let m = (half_width / spacing).round();
        if !(m >= 1.0) || ((m * spacing - half_width).abs() > 1e-9 * half_width) {
            return Err(Error::InvalidGrid(format!(
                "half-width {half_width} is not a multiple of spacing {spacing}"
            )));
        }
        Grid::new(half_width, 2 * m as usize + 1)
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        self.half_width / self.center() as f64
    }

    /// Index `m` of the node at the origin.
    pub fn center(&self) -> usize {
        (self.n_points - 1) / 2
    }

    pub fn node(&self, k: usize) -> f64 {
        (k as f64 - self.center() as f64) * self.spacing()
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|k| self.node(k)).collect()
    }

    /// Index of the node equal to `x` up to a millionth of a step.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        let pos = x / self.spacing() + self.center() as f64;
        let k = pos.round();
        if (pos - k).abs() <= 1e-6 && k >= 0.0 && (k as usize) < self.n_points {
            Some(k as usize)
        } else {
            None
        }
    }
}

impl PartialEq for Grid {
    /// Half-widths agreeing to twelve digits denote the same grid.
    fn eq(&self, other: &Self) -> bool {
        self.n_points == other.n_points
            && (self.half_width - other.half_width).abs() <= 1e-12 * self.half_width.max(other.half_width)
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid { half_width: 30.0, n_points: 6001 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_geometry() {
        let g = Grid::default();
        assert_eq!(g.center(), 3000);
        assert!((g.spacing() - 0.01).abs() < 1e-15);
        assert_eq!(g.node(3000), 0.0);
        assert!((g.node(0) + 30.0).abs() < 1e-12);
        assert!((g.node(6000) - 30.0).abs() < 1e-12);
    }

    #[test]
    fn nodes_are_mirror_symmetric() {
        let g = Grid::new(7.0, 141).unwrap();
        let m = g.center();
        for j in 0..=m {
            assert_eq!(g.node(m + j), -g.node(m - j));
        }
    }

    #[test]
    fn rejects_even_or_tiny_counts() {
        assert!(Grid::new(1.0, 4).is_err());
        assert!(Grid::new(1.0, 1).is_err());
        assert!(Grid::new(-1.0, 5).is_err());
        assert!(Grid::with_spacing(12.0, 0.0025).is_ok());
        assert!(Grid::with_spacing(1.0, 0.3).is_err());
    }

    #[test]
    fn index_lookup() {
        let g = Grid::default();
        assert_eq!(g.index_of(0.5), Some(3050));
        assert_eq!(g.index_of(0.505), None);
        assert_eq!(g.index_of(31.0), None);
    }
}
