//! V-cycle multigrid and the outer solve loop.
//!
//! One cycle on level `l`: `nu1` pre-sweeps, restrict the defect, recurse on
//! the coarser level from a zero guess, prolong and add the correction, `nu2`
//! post-sweeps. The coarsest level is solved directly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::{Hierarchy, Level};
use crate::smoothers::{Relaxer, SmootherKind};
use crate::stencil::{BandedLu, Field};
use crate::transfer::{prolong_add, restrict_defect_into, TransferKind};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleConfig {
    pub smoother: SmootherKind,
    pub restriction: TransferKind,
    pub nu1: usize,
    pub nu2: usize,
    /// Stop once the max-norm defect drops below `tol` times the initial one.
    pub tol: f64,
    pub max_cycles: usize,
    /// Seed for random right-hand sides in experiments.
    pub seed: u64,
}

impl Default for CycleConfig {
    fn default() -> Self {
        Self {
            smoother: SmootherKind::Checkerboard,
            restriction: TransferKind::Full,
            nu1: 1,
            nu2: 1,
            tol: 1e-10,
            max_cycles: 50,
            seed: 42,
        }
    }
}

impl CycleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nu1 + self.nu2 == 0 {
            return Err(Error::InvalidConfig("nu1 + nu2 must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "tol must be positive, got {}",
                self.tol
            )));
        }
        Ok(())
    }

    /// Relaxations performed on the finest level per cycle.
    pub fn relaxations_per_cycle(&self) -> usize {
        (self.nu1 + self.nu2) * self.smoother.relaxations_per_sweep()
    }
}

/// Defect history of a solve. Index 0 is the initial state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CycleReport {
    /// Max-norm of the finest-level defect after each cycle.
    pub defect_max: Vec<f64>,
    /// Cumulative finest-level relaxations after each cycle.
    pub relaxations: Vec<usize>,
    pub converged: bool,
    pub cycles: usize,
    pub final_rel_defect: f64,
}

impl CycleReport {
    pub fn rel_defects(&self) -> Vec<f64> {
        let d0 = self.defect_max[0];
        self.defect_max
            .iter()
            .map(|d| if d0 > 0.0 { d / d0 } else { 0.0 })
            .collect()
    }

    /// `d_k / d_{k-1}` for each cycle.
    pub fn per_cycle_ratios(&self) -> Vec<f64> {
        self.defect_max
            .windows(2)
            .map(|w| if w[0] > 0.0 { w[1] / w[0] } else { 0.0 })
            .collect()
    }

    /// Geometric mean of the last (up to three) per-cycle ratios, skipping
    /// the first cycle when later ones exist.
    pub fn asymptotic_ratio(&self) -> Option<f64> {
        let r = self.per_cycle_ratios();
        if r.is_empty() {
            return None;
        }
        let tail = if r.len() > 1 { &r[1..] } else { &r[..] };
        let tail = &tail[tail.len().saturating_sub(3)..];
        let log_mean = tail.iter().map(|x| x.ln()).sum::<f64>() / tail.len() as f64;
        Some(log_mean.exp())
    }

    /// Relative defect at `units` relaxations, interpolating `log(defect)`
    /// linearly between recorded cycles.
    pub fn rel_defect_at(&self, units: f64) -> Option<f64> {
        let rel = self.rel_defects();
        let last = *self.relaxations.last()? as f64;
        if units > last || units < 0.0 {
            return None;
        }
        for k in 1..rel.len() {
            let (a, b) = (self.relaxations[k - 1] as f64, self.relaxations[k] as f64);
            if units <= b {
                let t = (units - a) / (b - a);
                return Some((rel[k - 1].ln() * (1.0 - t) + rel[k].ln() * t).exp());
            }
        }
        rel.last().copied()
    }
}

/// Uniform samples in `[0, 1)` on the interior, zero on the boundary. The
/// stream is ChaCha8 seeded from `seed` and is the same on every platform.
pub fn random_rhs(nx: usize, ny: usize, seed: u64) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = Field::zeros(nx, ny);
    for j in 1..ny {
        for i in 1..nx {
            f[(i, j)] = rng.random::<f64>();
        }
    }
    f
}

/// Multigrid solver over a fixed hierarchy with preallocated level storage.
#[derive(Debug, Clone)]
pub struct Multigrid {
    hierarchy: Hierarchy,
    // (correction, right-hand side) for every level below the finest.
    work: Vec<(Field, Field)>,
    relaxer: Relaxer,
}

impl Multigrid {
    pub fn new(hierarchy: Hierarchy) -> Self {
        let work = hierarchy.levels()[1..]
            .iter()
            .map(|l| (Field::zeros(l.nx(), l.ny()), Field::zeros(l.nx(), l.ny())))
            .collect();
        Self {
            hierarchy,
            work,
            relaxer: Relaxer::new(),
        }
    }

    pub fn hierarchy(&self) -> &Hierarchy {
        &self.hierarchy
    }

    /// One V-cycle on the finest level. Boundary values of `u` are kept.
    pub fn v_cycle(&mut self, cfg: &CycleConfig, u: &mut Field, f: &Field) -> Result<()> {
        let fine = self.hierarchy.finest();
        u.check_dims(fine.nx(), fine.ny())?;
        f.check_dims(fine.nx(), fine.ny())?;
        cycle(
            self.hierarchy.levels(),
            self.hierarchy.coarse_lu(),
            &mut self.work,
            &mut self.relaxer,
            cfg,
            u,
            f,
        )
    }

    /// Runs V-cycles from `u = g` (zero interior) until the relative defect
    /// drops below `cfg.tol` or `cfg.max_cycles` is reached.
    pub fn solve(
        &mut self,
        cfg: &CycleConfig,
        f: &Field,
        g: &Field,
    ) -> Result<(Field, CycleReport)> {
        cfg.validate()?;
        let fine = self.hierarchy.finest();
        f.check_dims(fine.nx(), fine.ny())?;
        g.check_dims(fine.nx(), fine.ny())?;
        let mut u = g.clone();
        for j in 1..u.ny() {
            for i in 1..u.nx() {
                u[(i, j)] = 0.0;
            }
        }
        self.run(cfg, &mut u, f, cfg.max_cycles, true)
            .map(|report| (u, report))
    }

    /// Runs exactly `cycles` V-cycles from the given `u`, with no stopping test.
    pub fn run_cycles(
        &mut self,
        cfg: &CycleConfig,
        u: &mut Field,
        f: &Field,
        cycles: usize,
    ) -> Result<CycleReport> {
        cfg.validate()?;
        self.run(cfg, u, f, cycles, false)
    }

    fn run(
        &mut self,
        cfg: &CycleConfig,
        u: &mut Field,
        f: &Field,
        max_cycles: usize,
        stop_on_tol: bool,
    ) -> Result<CycleReport> {
        let st = &self.hierarchy.finest().stencil;
        let d0 = st.defect_max_abs(u, f);
        let per_cycle = cfg.relaxations_per_cycle();
        let mut report = CycleReport {
            defect_max: vec![d0],
            relaxations: vec![0],
            converged: d0 == 0.0,
            cycles: 0,
            final_rel_defect: if d0 == 0.0 { 0.0 } else { 1.0 },
        };
        if report.converged && stop_on_tol {
            return Ok(report);
        }
        for k in 1..=max_cycles {
            self.v_cycle(cfg, u, f)?;
            let d = self.hierarchy.finest().stencil.defect_max_abs(u, f);
            report.defect_max.push(d);
            report.relaxations.push(k * per_cycle);
            report.cycles = k;
            report.final_rel_defect = if d0 > 0.0 { d / d0 } else { 0.0 };
            if !d.is_finite() {
                report.converged = false;
                break;
            }
            report.converged = d <= cfg.tol * d0;
            if stop_on_tol && report.converged {
                break;
            }
        }
        Ok(report)
    }
}

fn cycle(
    levels: &[Level],
    coarse_lu: &BandedLu,
    work: &mut [(Field, Field)],
    relaxer: &mut Relaxer,
    cfg: &CycleConfig,
    u: &mut Field,
    f: &Field,
) -> Result<()> {
    let level = &levels[0];
    if levels.len() == 1 {
        let mut rhs = level.stencil.folded_rhs(f, u);
        coarse_lu.solve_in_place(&mut rhs);
        u.set_interior(&rhs);
        return Ok(());
    }
    let layouts = level.layouts()?;
    for _ in 0..cfg.nu1 {
        relaxer.sweep(cfg.smoother, &level.stencil, layouts, u, f)?;
    }
    let ((uc, fc), rest) = work.split_first_mut().expect("work per coarse level");
    restrict_defect_into(cfg.restriction, &level.stencil, u, f, fc)?;
    uc.fill(0.0);
    cycle(&levels[1..], coarse_lu, rest, relaxer, cfg, uc, fc)?;
    prolong_add(uc, u)?;
    for _ in 0..cfg.nu2 {
        relaxer.sweep(cfg.smoother, &level.stencil, layouts, u, f)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Coords1D;
    use crate::stencil::direct_solve;

    fn uniform(n: usize) -> Multigrid {
        let g = Coords1D::uniform(n, 1.0).unwrap();
        Multigrid::new(Hierarchy::build(g.clone(), g).unwrap())
    }

    #[test]
    fn zero_problem_stays_zero() {
        let mut mg = uniform(16);
        let mut u = Field::zeros(16, 16);
        let f = Field::zeros(16, 16);
        mg.v_cycle(&CycleConfig::default(), &mut u, &f).unwrap();
        assert_eq!(u, Field::zeros(16, 16));
    }

    #[test]
    fn exact_solution_is_fixed() {
        let mut mg = uniform(16);
        let exact = Field::from_fn(16, 16, |i, j| ((i * 3 + j * 7) % 5) as f64);
        let f = mg.hierarchy().finest().stencil.apply(&exact).unwrap();
        let mut u = exact.clone();
        for kind in SmootherKind::ALL {
            let cfg = CycleConfig {
                smoother: kind,
                ..Default::default()
            };
            mg.v_cycle(&cfg, &mut u, &f).unwrap();
        }
        for (a, b) in u.as_slice().iter().zip(exact.as_slice()) {
            assert!((a - b).abs() <= 1e-11 * b.abs().max(1.0));
        }
    }

    #[test]
    fn uniform_checkerboard_converges_fast() {
        let mut mg = uniform(16);
        let cfg = CycleConfig::default();
        let f = random_rhs(16, 16, 7);
        let (u, report) = mg.solve(&cfg, &f, &Field::zeros(16, 16)).unwrap();
        assert!(report.converged);
        assert!(report.asymptotic_ratio().unwrap() < 0.15);
        let exact =
            direct_solve(&mg.hierarchy().finest().stencil, &f, &Field::zeros(16, 16)).unwrap();
        let scale = exact.interior_max_abs();
        for (a, b) in u.as_slice().iter().zip(exact.as_slice()) {
            assert!((a - b).abs() <= 10.0 * cfg.tol * scale);
        }
    }

    #[test]
    fn boundary_untouched() {
        let g = Coords1D::tanh_wall(16, 1.0, 1.5).unwrap();
        let mut mg = Multigrid::new(Hierarchy::build(g.clone(), g).unwrap());
        let bc = Field::from_fn(16, 16, |i, j| (i as f64 * 0.3).sin() + j as f64);
        let f = random_rhs(16, 16, 1);
        let cfg = CycleConfig {
            smoother: SmootherKind::Tweed,
            max_cycles: 5,
            ..Default::default()
        };
        let (u, _) = mg.solve(&cfg, &f, &bc).unwrap();
        for j in 0..=16 {
            for i in 0..=16 {
                if u.is_boundary(i, j) {
                    assert_eq!(u[(i, j)].to_bits(), bc[(i, j)].to_bits());
                }
            }
        }
    }

    #[test]
    fn single_level_is_direct() {
        let mut mg = uniform(2);
        let f = random_rhs(2, 2, 3);
        let (_, report) = mg
            .solve(&CycleConfig::default(), &f, &Field::zeros(2, 2))
            .unwrap();
        assert!(report.converged);
        assert_eq!(report.cycles, 1);
    }

    #[test]
    fn rejects_bad_config() {
        let mut mg = uniform(8);
        let cfg = CycleConfig {
            nu1: 0,
            nu2: 0,
            ..Default::default()
        };
        assert!(mg
            .solve(&cfg, &Field::zeros(8, 8), &Field::zeros(8, 8))
            .is_err());
    }

    #[test]
    fn rhs_is_reproducible() {
        assert_eq!(random_rhs(8, 8, 42), random_rhs(8, 8, 42));
        assert_ne!(random_rhs(8, 8, 42), random_rhs(8, 8, 43));
        let f = random_rhs(8, 8, 42);
        assert!(f.as_slice().iter().all(|v| (0.0..1.0).contains(v)));
    }

    #[test]
    fn interpolated_defect() {
        let r = CycleReport {
            defect_max: vec![1.0, 0.01, 0.0001],
            relaxations: vec![0, 4, 8],
            converged: false,
            cycles: 2,
            final_rel_defect: 0.0001,
        };
        assert!((r.rel_defect_at(2.0).unwrap() - 0.1).abs() < 1e-12);
        assert!((r.rel_defect_at(6.0).unwrap() - 0.001).abs() < 1e-12);
        assert!(r.rel_defect_at(9.0).is_none());
    }
}
