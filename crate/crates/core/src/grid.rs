//! One-dimensional grid coordinates and the multigrid level hierarchy.
//!
//! Coordinates run from `0` to `L` inclusive. Stretched grids use hyperbolic
//! tangent maps that cluster points near both walls or near the centre of
//! the interval. Coarse levels are built by injection: every other point of
//! the fine grid is kept, bit for bit.

use crate::error::{Error, Result};
use crate::layout::LevelLayouts;
use crate::stencil::{BandedLu, StencilCoeffs};

/// Strictly increasing coordinates `x_0 = 0 < x_1 < ... < x_n = L`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coords1D {
    values: Vec<f64>,
    length: f64,
}

/// Which stretching map generates a grid axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StretchSpec {
    Uniform,
    /// Clustering near both ends, `c` controls the amount.
    Wall {
        c: f64,
    },
    /// Clustering near the midpoint.
    Centre {
        c: f64,
    },
}

impl StretchSpec {
    pub fn build(&self, n: usize, length: f64) -> Result<Coords1D> {
        match *self {
            StretchSpec::Uniform => Coords1D::uniform(n, length),
            StretchSpec::Wall { c } => Coords1D::tanh_wall(n, length, c),
            StretchSpec::Centre { c } => Coords1D::tanh_centre(n, length, c),
        }
    }
}

fn check_n_len(n: usize, length: f64) -> Result<()> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::InvalidGrid(format!(
            "interval count must be even and >= 2, got {n}"
        )));
    }
    if !(length > 0.0 && length.is_finite()) {
        return Err(Error::InvalidGrid(format!(
            "domain length must be positive, got {length}"
        )));
    }
    Ok(())
}

fn check_c(c: f64) -> Result<()> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidGrid(format!(
            "stretching parameter must be positive, got {c}"
        )));
    }
    Ok(())
}

impl Coords1D {
    /// Wraps an explicit coordinate list. The first value must be `0`.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::InvalidGrid("need at least 3 points".into()));
        }
        if values[0] != 0.0 {
            return Err(Error::InvalidGrid("first coordinate must be 0".into()));
        }
        if values.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidGrid(
                "coordinates must be strictly increasing".into(),
            ));
        }
        let length = *values.last().unwrap();
        Ok(Self { values, length })
    }

    pub fn uniform(n: usize, length: f64) -> Result<Self> {
        check_n_len(n, length)?;
        let mut values: Vec<f64> = (0..=n).map(|i| i as f64 * length / n as f64).collect();
        values[n] = length;
        Ok(Self { values, length })
    }

    /// `x_i = (L/2) (1 + tanh(c (2i/n - 1)) / tanh c)`
    pub fn tanh_wall(n: usize, length: f64, c: f64) -> Result<Self> {
        check_n_len(n, length)?;
        check_c(c)?;
        let tc = c.tanh();
        let mut values: Vec<f64> = (0..=n)
            .map(|i| {
                let s = 2.0 * i as f64 / n as f64 - 1.0;
                0.5 * length * (1.0 + (c * s).tanh() / tc)
            })
            .collect();
        values[0] = 0.0;
        values[n / 2] = 0.5 * length;
        values[n] = length;
        Ok(Self { values, length })
    }

    /// Piecewise map clustering points around `L/2`; both halves meet at `L/2`.
    pub fn tanh_centre(n: usize, length: f64, c: f64) -> Result<Self> {
        check_n_len(n, length)?;
        check_c(c)?;
        let tc = c.tanh();
        let half = n / 2;
        let mut values: Vec<f64> = (0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                if i <= half {
                    0.5 * length * (2.0 * c * t).tanh() / tc
                } else {
                    0.5 * length * (2.0 - (c * (2.0 - 2.0 * t)).tanh() / tc)
                }
            })
            .collect();
        values[0] = 0.0;
        values[half] = 0.5 * length;
        values[n] = length;
        Ok(Self { values, length })
    }

    /// Keeps every other point. Requires an even interval count with at least
    /// one interior point left after halving.
    pub fn coarsen(&self) -> Result<Self> {
        let n = self.n();
        if !n.is_multiple_of(2) || n / 2 < 2 {
            return Err(Error::CannotCoarsen(n));
        }
        let values = self.values.iter().step_by(2).copied().collect();
        Ok(Self {
            values,
            length: self.length,
        })
    }

    /// Number of intervals.
    #[inline]
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.length
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Whether another simultaneous coarsening step keeps an interior point.
    #[inline]
    pub fn can_coarsen(&self) -> bool {
        let n = self.n();
        n.is_multiple_of(2) && n / 2 >= 2
    }
}

impl std::ops::Index<usize> for Coords1D {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// One grid of the hierarchy with everything the cycle needs on it.
#[derive(Debug, Clone)]
pub struct Level {
    pub x: Coords1D,
    pub y: Coords1D,
    pub stencil: StencilCoeffs,
    /// Present whenever both interior sides are odd and at least 3.
    pub layouts: Option<LevelLayouts>,
}

impl Level {
    pub fn new(x: Coords1D, y: Coords1D) -> Self {
        let stencil = StencilCoeffs::assemble(&x, &y);
        let layouts = LevelLayouts::build(x.n(), y.n()).ok();
        Self {
            x,
            y,
            stencil,
            layouts,
        }
    }

    #[inline]
    pub fn nx(&self) -> usize {
        self.x.n()
    }

    #[inline]
    pub fn ny(&self) -> usize {
        self.y.n()
    }

    pub(crate) fn layouts(&self) -> Result<&LevelLayouts> {
        self.layouts.as_ref().ok_or_else(|| {
            Error::InvalidLayout(format!(
                "no smoother layout on a {}x{} grid",
                self.nx(),
                self.ny()
            ))
        })
    }
}

/// Levels ordered finest first. The coarsest level carries a factorization
/// of its operator for the direct solve at the bottom of a cycle.
#[derive(Debug, Clone)]
pub struct Hierarchy {
    levels: Vec<Level>,
    coarse_lu: BandedLu,
}

impl Hierarchy {
    /// Coarsens both axes together for as long as each keeps an interior point.
    pub fn build(x: Coords1D, y: Coords1D) -> Result<Self> {
        Self::with_max_levels(x, y, usize::MAX)
    }

    /// Same as [`Hierarchy::build`] but stops after `max_levels` levels.
    pub fn with_max_levels(x: Coords1D, y: Coords1D, max_levels: usize) -> Result<Self> {
        if max_levels == 0 {
            return Err(Error::InvalidConfig(
                "hierarchy needs at least one level".into(),
            ));
        }
        let mut levels = vec![Level::new(x, y)];
        while levels.len() < max_levels {
            let last = levels.last().unwrap();
            if !(last.x.can_coarsen() && last.y.can_coarsen()) {
                break;
            }
            let (cx, cy) = (last.x.coarsen()?, last.y.coarsen()?);
            levels.push(Level::new(cx, cy));
        }
        let coarse_lu = BandedLu::factor(&levels.last().unwrap().stencil)?;
        Ok(Self { levels, coarse_lu })
    }

    #[inline]
    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    #[inline]
    pub fn finest(&self) -> &Level {
        &self.levels[0]
    }

    #[inline]
    pub fn coarsest(&self) -> &Level {
        self.levels.last().unwrap()
    }

    #[inline]
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    #[inline]
    pub fn coarse_lu(&self) -> &BandedLu {
        &self.coarse_lu
    }
}
