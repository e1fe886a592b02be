//! Block Gauss-Seidel smoothers. One sub-sweep relaxes every block of one
//! colour exactly, with all out-of-block neighbours frozen at their current
//! values; a sweep is the red sub-sweep followed by the black one.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::layout::{Block, BlockLayout, Colour, LevelLayouts, Node, Scheme, Shape};
use crate::stencil::{Dir, Field, StencilCoeffs};
use crate::tridiag::{circulant_in_place, legged_in_place, thomas_in_place, Scratch};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SmootherKind {
    Checkerboard,
    ZebraX,
    ZebraY,
    /// `ZebraX` then `ZebraY`; the pair counts as one sweep unit.
    ZebraAlt,
    Tweed,
    Wireframe,
    /// `Tweed` then `Wireframe`; the pair counts as one sweep unit.
    TweedWireAlt,
}

impl SmootherKind {
    pub const ALL: [SmootherKind; 7] = [
        SmootherKind::Checkerboard,
        SmootherKind::ZebraX,
        SmootherKind::ZebraY,
        SmootherKind::ZebraAlt,
        SmootherKind::Tweed,
        SmootherKind::Wireframe,
        SmootherKind::TweedWireAlt,
    ];

    /// Layouts relaxed, in order, by one sweep unit.
    pub fn schemes(self) -> &'static [Scheme] {
        match self {
            SmootherKind::Checkerboard => &[Scheme::Checkerboard],
            SmootherKind::ZebraX => &[Scheme::ZebraX],
            SmootherKind::ZebraY => &[Scheme::ZebraY],
            SmootherKind::ZebraAlt => &[Scheme::ZebraX, Scheme::ZebraY],
            SmootherKind::Tweed => &[Scheme::Tweed],
            SmootherKind::Wireframe => &[Scheme::Wireframe],
            SmootherKind::TweedWireAlt => &[Scheme::Tweed, Scheme::Wireframe],
        }
    }

    /// Relaxations performed per sweep unit (2 for the alternating kinds).
    pub fn relaxations_per_sweep(self) -> usize {
        self.schemes().len()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SmootherKind::Checkerboard => "checkerboard",
            SmootherKind::ZebraX => "zebra_x",
            SmootherKind::ZebraY => "zebra_y",
            SmootherKind::ZebraAlt => "zebra_alt",
            SmootherKind::Tweed => "tweed",
            SmootherKind::Wireframe => "wireframe",
            SmootherKind::TweedWireAlt => "tweed_wire_alt",
        }
    }
}

impl fmt::Display for SmootherKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SmootherKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SmootherKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown smoother '{s}'")))
    }
}

/// Per-block system workspace, reused across blocks and sweeps.
#[derive(Debug, Default, Clone)]
pub struct Relaxer {
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
    rhs: Vec<f64>,
    bounds: Vec<usize>,
    coupling: Vec<f64>,
    scratch: Scratch,
}

impl Relaxer {
    pub fn new() -> Self {
        Self::default()
    }

    fn clear(&mut self) {
        self.sub.clear();
        self.diag.clear();
        self.sup.clear();
        self.rhs.clear();
    }

    /// Right-hand side at `p` with every neighbour except `prev`/`next`
    /// moved across.
    #[inline]
    fn frozen_rhs(
        st: &StencilCoeffs,
        u: &Field,
        f: &Field,
        p: Node,
        skip: [Option<Dir>; 2],
    ) -> f64 {
        let mut r = f[(p.i, p.j)];
        for dir in Dir::ALL {
            if skip[0] == Some(dir) || skip[1] == Some(dir) {
                continue;
            }
            let q = dir.step(p.i, p.j);
            r -= st.coeff(dir, p.i, p.j) * u[q];
        }
        r
    }

    /// Appends the row of point `p` coupled to `prev` and `next` in its block.
    #[inline]
    fn push_row(
        &mut self,
        st: &StencilCoeffs,
        u: &Field,
        f: &Field,
        p: Node,
        prev: Option<Node>,
        next: Option<Node>,
    ) {
        let dp = prev.and_then(|q| Dir::between((p.i, p.j), (q.i, q.j)));
        let dn = next.and_then(|q| Dir::between((p.i, p.j), (q.i, q.j)));
        self.sub.push(dp.map_or(0.0, |d| st.coeff(d, p.i, p.j)));
        self.sup.push(dn.map_or(0.0, |d| st.coeff(d, p.i, p.j)));
        self.diag.push(st.c(p.i, p.j));
        self.rhs.push(Self::frozen_rhs(st, u, f, p, [dp, dn]));
    }

    /// Solves the block's equations exactly and writes the result into `u`.
    pub fn relax_block(
        &mut self,
        st: &StencilCoeffs,
        u: &mut Field,
        f: &Field,
        block: &Block,
    ) -> Result<()> {
        match &block.shape {
            Shape::Point(p) => {
                let r = Self::frozen_rhs(st, u, f, *p, [None, None]);
                u[(p.i, p.j)] = r / st.c(p.i, p.j);
            }
            Shape::Line(pts) => {
                self.clear();
                let m = pts.len();
                for k in 0..m {
                    let prev = (k > 0).then(|| pts[k - 1]);
                    let next = (k + 1 < m).then(|| pts[k + 1]);
                    self.push_row(st, u, f, pts[k], prev, next);
                }
                thomas_in_place(
                    &self.sub,
                    &self.diag,
                    &self.sup,
                    &mut self.rhs,
                    &mut self.scratch,
                )?;
                for (p, v) in pts.iter().zip(&self.rhs) {
                    u[(p.i, p.j)] = *v;
                }
            }
            Shape::Ring(pts) => {
                self.clear();
                let m = pts.len();
                for k in 0..m {
                    let prev = pts[(k + m - 1) % m];
                    let next = pts[(k + 1) % m];
                    self.push_row(st, u, f, pts[k], Some(prev), Some(next));
                }
                circulant_in_place(
                    &self.sub,
                    &self.diag,
                    &self.sup,
                    &mut self.rhs,
                    &mut self.scratch,
                )?;
                for (p, v) in pts.iter().zip(&self.rhs) {
                    u[(p.i, p.j)] = *v;
                }
            }
            Shape::Legged { branch, legs } => {
                self.clear();
                self.bounds.clear();
                self.coupling.clear();
                self.bounds.push(0);
                for leg in legs {
                    let m = leg.len();
                    for k in 0..m {
                        let prev = (k > 0).then(|| leg[k - 1]);
                        let next = if k + 1 < m { leg[k + 1] } else { *branch };
                        self.push_row(st, u, f, leg[k], prev, Some(next));
                    }
                    self.bounds.push(self.rhs.len());
                    let tail = leg[m - 1];
                    let d = Dir::between((branch.i, branch.j), (tail.i, tail.j))
                        .expect("leg ends next to its branch");
                    self.coupling.push(st.coeff(d, branch.i, branch.j));
                }
                let mut r = f[(branch.i, branch.j)];
                for dir in Dir::ALL {
                    let q = dir.step(branch.i, branch.j);
                    if legs.iter().any(|leg| {
                        let t = leg[leg.len() - 1];
                        (t.i, t.j) == q
                    }) {
                        continue;
                    }
                    r -= st.coeff(dir, branch.i, branch.j) * u[q];
                }
                let centre = legged_in_place(
                    &self.sub,
                    &self.diag,
                    &self.sup,
                    &mut self.rhs,
                    &self.bounds,
                    &self.coupling,
                    st.c(branch.i, branch.j),
                    r,
                    &mut self.scratch,
                )?;
                let mut k = 0;
                for leg in legs {
                    for p in leg {
                        u[(p.i, p.j)] = self.rhs[k];
                        k += 1;
                    }
                }
                u[(branch.i, branch.j)] = centre;
            }
        }
        Ok(())
    }

    /// Relaxes every block of `colour`, in construction order.
    pub fn relax_colour(
        &mut self,
        st: &StencilCoeffs,
        layout: &BlockLayout,
        colour: Colour,
        u: &mut Field,
        f: &Field,
    ) -> Result<()> {
        check_dims(st, layout, u, f)?;
        for block in layout.blocks.iter().filter(|b| b.colour == colour) {
            self.relax_block(st, u, f, block)?;
        }
        Ok(())
    }

    /// Red then black over one layout.
    pub fn relax_layout(
        &mut self,
        st: &StencilCoeffs,
        layout: &BlockLayout,
        u: &mut Field,
        f: &Field,
    ) -> Result<()> {
        self.relax_colour(st, layout, Colour::Red, u, f)?;
        self.relax_colour(st, layout, Colour::Black, u, f)
    }

    /// One sweep unit of `kind`.
    pub fn sweep(
        &mut self,
        kind: SmootherKind,
        st: &StencilCoeffs,
        layouts: &LevelLayouts,
        u: &mut Field,
        f: &Field,
    ) -> Result<()> {
        for &scheme in kind.schemes() {
            self.relax_layout(st, layouts.get(scheme), u, f)?;
        }
        Ok(())
    }
}

fn check_dims(st: &StencilCoeffs, layout: &BlockLayout, u: &Field, f: &Field) -> Result<()> {
    if (layout.nx, layout.ny) != (st.nx(), st.ny()) {
        return Err(Error::DimensionMismatch {
            expected: (st.nx(), st.ny()),
            got: (layout.nx, layout.ny),
        });
    }
    u.check_dims(st.nx(), st.ny())?;
    f.check_dims(st.nx(), st.ny())
}

/// One sweep unit with a fresh workspace.
pub fn sweep(
    kind: SmootherKind,
    st: &StencilCoeffs,
    layouts: &LevelLayouts,
    u: &mut Field,
    f: &Field,
) -> Result<()> {
    Relaxer::new().sweep(kind, st, layouts, u, f)
}

/// Flops per sweep unit on an `n x n` interior. Tweed and wireframe use their
/// exact closed forms; the remaining kinds use leading-order counts.
pub fn sweep_cost(kind: SmootherKind, n: usize) -> Result<u64> {
    let needs_odd = matches!(
        kind,
        SmootherKind::Tweed | SmootherKind::Wireframe | SmootherKind::TweedWireAlt
    );
    if n == 0 || (needs_odd && (n < 3 || n.is_multiple_of(2))) {
        return Err(Error::InvalidConfig(format!(
            "sweep cost for {kind} needs an odd interior side >= 3, got {n}"
        )));
    }
    let n = n as i64;
    let cost = match kind {
        SmootherKind::Checkerboard => 9 * n * n,
        SmootherKind::ZebraX | SmootherKind::ZebraY => 12 * n * n,
        SmootherKind::ZebraAlt => 24 * n * n,
        SmootherKind::Tweed => 12 * n * n - 10 * n + 11,
        SmootherKind::Wireframe => 18 * n * n - 8 * n - 1,
        SmootherKind::TweedWireAlt => 30 * n * n,
    };
    Ok(cost as u64)
}

/// Cost of the branched solver on `legs` legs of `p` points each.
pub fn legged_thomas_cost(legs: usize, p: usize) -> u64 {
    (8 * legs * p + legs + 1) as u64
}

/// Cost of a periodic tridiagonal solve of size `m`.
pub fn circulant_thomas_cost(m: usize) -> u64 {
    (14 * m - 16) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Coords1D;

    fn level(n: usize) -> (StencilCoeffs, LevelLayouts) {
        let g = Coords1D::uniform(n, 1.0).unwrap();
        (
            StencilCoeffs::assemble(&g, &g),
            LevelLayouts::build(n, n).unwrap(),
        )
    }

    #[test]
    fn parse_names() {
        for k in SmootherKind::ALL {
            assert_eq!(k.as_str().parse::<SmootherKind>().unwrap(), k);
        }
        assert!("zebra".parse::<SmootherKind>().is_err());
    }

    #[test]
    fn checkerboard_red_update_formula() {
        let (st, layouts) = level(6);
        let u0 = Field::from_fn(6, 6, |i, j| ((i * 3 + j * 5) % 7) as f64 * 0.1);
        let f = Field::from_fn(6, 6, |i, j| (i as f64) - (j as f64));
        let mut u = u0.clone();
        Relaxer::new()
            .relax_colour(&st, &layouts.checkerboard, Colour::Red, &mut u, &f)
            .unwrap();
        for j in 1..6 {
            for i in 1..6 {
                let expect = if (i + j) % 2 == 0 {
                    (f[(i, j)]
                        - st.w(i) * u0[(i - 1, j)]
                        - st.e(i) * u0[(i + 1, j)]
                        - st.s(j) * u0[(i, j - 1)]
                        - st.n(j) * u0[(i, j + 1)])
                        / st.c(i, j)
                } else {
                    u0[(i, j)]
                };
                assert!((u[(i, j)] - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn exact_solution_is_fixed() {
        let (st, layouts) = level(8);
        let exact = Field::from_fn(8, 8, |i, j| ((i * i + 3 * j) % 5) as f64 - 1.0);
        let f = st.apply(&exact).unwrap();
        for kind in SmootherKind::ALL {
            let mut u = exact.clone();
            sweep(kind, &st, &layouts, &mut u, &f).unwrap();
            for (a, b) in u.as_slice().iter().zip(exact.as_slice()) {
                assert!((a - b).abs() <= 1e-12 * b.abs().max(1.0), "{kind}");
            }
        }
    }

    #[test]
    fn tweed_red_defect_vanishes() {
        let (st, layouts) = level(8);
        let mut u = Field::from_fn(8, 8, |i, j| ((i * 7 + j * 3) % 11) as f64 / 11.0);
        u.zero_boundary();
        let f = Field::from_fn(8, 8, |i, j| ((i * 5 + j * 13) % 9) as f64 / 9.0);
        Relaxer::new()
            .relax_colour(&st, &layouts.tweed, Colour::Red, &mut u, &f)
            .unwrap();
        let d = st.defect(&u, &f).unwrap();
        for b in layouts
            .tweed
            .blocks
            .iter()
            .filter(|b| b.colour == Colour::Red)
        {
            for p in b.members() {
                assert!(d[(p.i, p.j)].abs() <= 1e-11 * f.interior_max_abs());
            }
        }
    }

    #[test]
    fn costs() {
        assert_eq!(sweep_cost(SmootherKind::Tweed, 5).unwrap(), 261);
        assert_eq!(sweep_cost(SmootherKind::Wireframe, 5).unwrap(), 409);
        assert_eq!(36 + (12 * 25 - 34 * 5 - 6) + (24 * 5 - 19), 261);
        assert!(sweep_cost(SmootherKind::Tweed, 4).is_err());
        assert_eq!(sweep_cost(SmootherKind::ZebraAlt, 10).unwrap(), 2400);
        assert_eq!(legged_thomas_cost(2, 1), 19);
        assert_eq!(circulant_thomas_cost(8), 96);
    }

    #[test]
    fn size_mismatch() {
        let (st, layouts) = level(8);
        let mut u = Field::zeros(6, 6);
        let f = Field::zeros(6, 6);
        assert!(matches!(
            sweep(SmootherKind::Tweed, &st, &layouts, &mut u, &f),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
