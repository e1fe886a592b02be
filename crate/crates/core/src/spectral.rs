//! Two-grid error propagation operator and its spectral radius.
//!
//! For an error `e` with zero boundary, `M e = S^nu2 (I - P Lc^-1 R L) S^nu1 e`
//! where `S` is one smoother sweep on the homogeneous problem and `Lc^-1` is
//! an exact factorization of the coarse operator. The radius is estimated by
//! block power iteration with a Rayleigh-Ritz step on the small projected
//! matrix, so `M` is never assembled and nearly tied or complex dominant
//! eigenvalues are resolved.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Coords1D, Level};
use crate::smoothers::{Relaxer, SmootherKind};
use crate::stencil::{BandedLu, Field};
use crate::transfer::{prolong_add, restrict_defect_into, TransferKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TwoGridConfig {
    pub smoother: SmootherKind,
    pub restriction: TransferKind,
    pub nu1: usize,
    pub nu2: usize,
    /// Number of simultaneously iterated vectors.
    pub block: usize,
    pub max_iters: usize,
    /// Relative spread allowed across the tail window.
    pub rel_tol: f64,
    pub tail_window: usize,
    pub seed: u64,
}

impl TwoGridConfig {
    /// All `nu` sweeps applied before the coarse correction.
    pub fn new(smoother: SmootherKind, restriction: TransferKind, nu: usize) -> Self {
        Self {
            smoother,
            restriction,
            nu1: nu,
            nu2: 0,
            block: 8,
            max_iters: 3000,
            rel_tol: 1e-4,
            tail_window: 30,
            seed: 1,
        }
    }

    pub fn nu(&self) -> usize {
        self.nu1 + self.nu2
    }

    pub fn validate(&self) -> Result<()> {
        if self.nu() == 0 {
            return Err(Error::InvalidConfig("nu must be at least 1".into()));
        }
        if self.block == 0 {
            return Err(Error::InvalidConfig("block must be at least 1".into()));
        }
        if self.tail_window < 2 || self.max_iters < self.tail_window {
            return Err(Error::InvalidConfig(
                "need tail_window >= 2 and max_iters >= tail_window".into(),
            ));
        }
        Ok(())
    }
}

/// A fine level and its coarsening, with the coarse operator factored.
#[derive(Debug, Clone)]
pub struct TwoGridOperator {
    cfg: TwoGridConfig,
    fine: Level,
    coarse: Level,
    coarse_lu: BandedLu,
    relaxer: Relaxer,
    zero: Field,
    fc: Field,
    uc: Field,
}

impl TwoGridOperator {
    pub fn new(x: Coords1D, y: Coords1D, cfg: TwoGridConfig) -> Result<Self> {
        cfg.validate()?;
        let (cx, cy) = (x.coarsen()?, y.coarsen()?);
        let fine = Level::new(x, y);
        fine.layouts()?;
        let coarse = Level::new(cx, cy);
        let coarse_lu = BandedLu::factor(&coarse.stencil)?;
        let (nx, ny) = (fine.nx(), fine.ny());
        let (cnx, cny) = (coarse.nx(), coarse.ny());
        Ok(Self {
            cfg,
            fine,
            coarse,
            coarse_lu,
            relaxer: Relaxer::new(),
            zero: Field::zeros(nx, ny),
            fc: Field::zeros(cnx, cny),
            uc: Field::zeros(cnx, cny),
        })
    }

    pub fn config(&self) -> &TwoGridConfig {
        &self.cfg
    }

    pub fn fine(&self) -> &Level {
        &self.fine
    }

    pub fn coarse(&self) -> &Level {
        &self.coarse
    }

    fn smooth(&mut self, e: &mut Field, times: usize) -> Result<()> {
        let layouts = self.fine.layouts.as_ref().expect("checked at construction");
        for _ in 0..times {
            self.relaxer.sweep(
                self.cfg.smoother,
                &self.fine.stencil,
                layouts,
                e,
                &self.zero,
            )?;
        }
        Ok(())
    }

    /// Replaces `e` by `M e`. `e` must have a zero boundary.
    pub fn apply(&mut self, e: &mut Field) -> Result<()> {
        e.check_dims(self.fine.nx(), self.fine.ny())?;
        self.smooth(e, self.cfg.nu1)?;
        // The defect of the homogeneous problem is -L e.
        restrict_defect_into(
            self.cfg.restriction,
            &self.fine.stencil,
            e,
            &self.zero,
            &mut self.fc,
        )?;
        let mut rhs = self.fc.interior_to_vec();
        self.coarse_lu.solve_in_place(&mut rhs);
        self.uc.set_interior(&rhs);
        prolong_add(&self.uc, e)?;
        self.smooth(e, self.cfg.nu2)
    }

    /// Block power iteration on `M` from seeded random starts. Each step maps
    /// an orthonormal block `Q` to `M Q`, takes the largest eigenvalue modulus
    /// of `Q^T M Q` as the estimate, and re-orthonormalizes.
    pub fn spectral_radius(&mut self) -> Result<SpectralEstimate> {
        let (nx, ny) = (self.fine.nx(), self.fine.ny());
        let p = self.cfg.block.min((nx - 1) * (ny - 1));
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        let mut q: Vec<Field> = (0..p).map(|_| random_interior(nx, ny, &mut rng)).collect();
        orthonormalize(&mut q, &mut rng);

        let window = self.cfg.tail_window;
        let mut est: Vec<f64> = Vec::with_capacity(self.cfg.max_iters);
        let mut complex = false;
        for it in 1..=self.cfg.max_iters {
            let mut w = q.clone();
            for v in &mut w {
                self.apply(v)?;
            }
            let b = DMatrix::from_fn(p, p, |r, c| dot(&q[r], &w[c]));
            let (rho, is_complex) = dominant_modulus(&b);
            est.push(rho);
            complex = is_complex;
            q = w;
            orthonormalize(&mut q, &mut rng);
            if est.len() >= window && spread(&est[est.len() - window..]) <= self.cfg.rel_tol {
                return Ok(SpectralEstimate {
                    rho,
                    converged: true,
                    oscillation: complex,
                    iters: it,
                });
            }
        }
        Ok(SpectralEstimate {
            rho: *est.last().expect("max_iters >= 1"),
            converged: false,
            oscillation: complex,
            iters: self.cfg.max_iters,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralEstimate {
    pub rho: f64,
    pub converged: bool,
    /// The dominant eigenvalue is one of a complex pair, so plain power
    /// iteration on a single vector would oscillate.
    pub oscillation: bool,
    pub iters: usize,
}

fn random_interior(nx: usize, ny: usize, rng: &mut ChaCha8Rng) -> Field {
    let mut v = Field::zeros(nx, ny);
    for j in 1..ny {
        for i in 1..nx {
            v[(i, j)] = rng.random::<f64>() - 0.5;
        }
    }
    v
}

// Boundary entries are zero, so whole-slice products are interior products.
fn dot(a: &Field, b: &Field) -> f64 {
    a.as_slice()
        .iter()
        .zip(b.as_slice())
        .map(|(x, y)| x * y)
        .sum()
}

/// Modified Gram-Schmidt. A column that collapses is replaced by a fresh
/// random vector, which only happens when `M` is (numerically) rank
/// deficient on the block.
fn orthonormalize(q: &mut [Field], rng: &mut ChaCha8Rng) {
    for k in 0..q.len() {
        for _attempt in 0..3 {
            let before = q[k].interior_norm2();
            for m in 0..k {
                let (done, rest) = q.split_at_mut(k);
                let c = dot(&done[m], &rest[0]);
                for (x, y) in rest[0].as_mut_slice().iter_mut().zip(done[m].as_slice()) {
                    *x -= c * y;
                }
            }
            let after = q[k].interior_norm2();
            if after > 1e-10 * before && after > 0.0 {
                for x in q[k].as_mut_slice() {
                    *x /= after;
                }
                break;
            }
            q[k] = random_interior(q[k].nx(), q[k].ny(), rng);
        }
    }
}

/// Largest eigenvalue modulus of a small matrix and whether that eigenvalue
/// has a nonzero imaginary part.
fn dominant_modulus(b: &DMatrix<f64>) -> (f64, bool) {
    let eig = b.complex_eigenvalues();
    let top = eig
        .iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .expect("non-empty block");
    let rho = top.norm();
    (rho, top.im.abs() > 1e-8 * rho.max(f64::MIN_POSITIVE))
}

fn spread(xs: &[f64]) -> f64 {
    let (lo, hi) = xs.iter().fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| {
        (lo.min(x), hi.max(x))
    });
    if hi == 0.0 {
        0.0
    } else {
        (hi - lo) / hi
    }
}

/// Convenience wrapper: build the operator and estimate its radius.
pub fn spectral_radius(x: Coords1D, y: Coords1D, cfg: TwoGridConfig) -> Result<SpectralEstimate> {
    TwoGridOperator::new(x, y, cfg)?.spectral_radius()
}
