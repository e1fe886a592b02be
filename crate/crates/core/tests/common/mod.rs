//! Dense reference implementations built from first principles with
//! nalgebra. Interior unknowns are ordered `j` outer, `i` inner.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector};
use tweedwire::layout::{BlockLayout, Colour, LevelLayouts};
use tweedwire::{Coords1D, Field, SmootherKind, StencilCoeffs, TransferKind};

pub fn dense(st: &StencilCoeffs) -> DMatrix<f64> {
    let a = st.assemble_dense();
    let n = a.size();
    DMatrix::from_row_slice(n, n, a.as_slice())
}

pub fn interior(u: &Field) -> DVector<f64> {
    DVector::from_vec(u.interior_to_vec())
}

pub fn field_from(nx: usize, ny: usize, v: &DVector<f64>) -> Field {
    let mut u = Field::zeros(nx, ny);
    u.set_interior(v.as_slice());
    u
}

pub fn lu_solve(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    a.clone().lu().solve(b).expect("nonsingular")
}

fn row_of(mx: usize, i: usize, j: usize) -> usize {
    (j - 1) * mx + (i - 1)
}

/// One colour of block Gauss-Seidel: every block of `colour` solves its own
/// equations exactly with all other unknowns frozen.
pub fn block_gs_colour(
    a: &DMatrix<f64>,
    layout: &BlockLayout,
    colour: Colour,
    u: &mut DVector<f64>,
    rhs: &DVector<f64>,
) {
    let mx = layout.nx - 1;
    let old = u.clone();
    for block in layout.blocks.iter().filter(|b| b.colour == colour) {
        let idx: Vec<usize> = block
            .members()
            .iter()
            .map(|p| row_of(mx, p.i, p.j))
            .collect();
        let k = idx.len();
        let mut abb = DMatrix::zeros(k, k);
        let mut r = DVector::zeros(k);
        for (p, &row) in idx.iter().enumerate() {
            r[p] = rhs[row];
            for col in 0..a.ncols() {
                match idx.iter().position(|&c| c == col) {
                    Some(q) => abb[(p, q)] = a[(row, col)],
                    None => r[p] -= a[(row, col)] * old[col],
                }
            }
        }
        let x = lu_solve(&abb, &r);
        for (p, &row) in idx.iter().enumerate() {
            u[row] = x[p];
        }
    }
}

pub fn block_gs_sweep(
    a: &DMatrix<f64>,
    layouts: &LevelLayouts,
    kind: SmootherKind,
    u: &mut DVector<f64>,
    rhs: &DVector<f64>,
) {
    for &scheme in kind.schemes() {
        let layout = layouts.get(scheme);
        block_gs_colour(a, layout, Colour::Red, u, rhs);
        block_gs_colour(a, layout, Colour::Black, u, rhs);
    }
}

/// Error propagation matrix of one sweep on the homogeneous problem.
pub fn smoother_matrix(
    a: &DMatrix<f64>,
    layouts: &LevelLayouts,
    kind: SmootherKind,
) -> DMatrix<f64> {
    let n = a.nrows();
    let zero = DVector::zeros(n);
    let mut s = DMatrix::zeros(n, n);
    for k in 0..n {
        let mut e = DVector::zeros(n);
        e[k] = 1.0;
        block_gs_sweep(a, layouts, kind, &mut e, &zero);
        s.set_column(k, &e);
    }
    s
}

/// Bilinear interpolation from a coarse interior to a fine interior.
pub fn prolongation_matrix(nx: usize, ny: usize) -> DMatrix<f64> {
    let (mx, my) = (nx - 1, ny - 1);
    let (cmx, cmy) = (nx / 2 - 1, ny / 2 - 1);
    let mut p = DMatrix::zeros(mx * my, cmx * cmy);
    for cj in 1..=cmy {
        for ci in 1..=cmx {
            let col = row_of(cmx, ci, cj);
            for dj in -1i64..=1 {
                for di in -1i64..=1 {
                    let (i, j) = ((2 * ci) as i64 + di, (2 * cj) as i64 + dj);
                    let w = (if di == 0 { 1.0 } else { 0.5 }) * (if dj == 0 { 1.0 } else { 0.5 });
                    p[(row_of(mx, i as usize, j as usize), col)] = w;
                }
            }
        }
    }
    p
}

/// Restriction stencil weights indexed by `(di + 1, dj + 1)`.
fn restriction_weights(kind: TransferKind) -> [[f64; 3]; 3] {
    match kind {
        TransferKind::Full => [
            [1.0 / 16.0, 1.0 / 8.0, 1.0 / 16.0],
            [1.0 / 8.0, 1.0 / 4.0, 1.0 / 8.0],
            [1.0 / 16.0, 1.0 / 8.0, 1.0 / 16.0],
        ],
        TransferKind::Half => [
            [0.0, 1.0 / 8.0, 0.0],
            [1.0 / 8.0, 1.0 / 2.0, 1.0 / 8.0],
            [0.0, 1.0 / 8.0, 0.0],
        ],
    }
}

pub fn restriction_matrix(kind: TransferKind, nx: usize, ny: usize) -> DMatrix<f64> {
    let (mx, my) = (nx - 1, ny - 1);
    let (cmx, cmy) = (nx / 2 - 1, ny / 2 - 1);
    let w = restriction_weights(kind);
    let mut r = DMatrix::zeros(cmx * cmy, mx * my);
    for cj in 1..=cmy {
        for ci in 1..=cmx {
            let row = row_of(cmx, ci, cj);
            for dj in 0..3 {
                for di in 0..3 {
                    let (i, j) = (2 * ci + di - 1, 2 * cj + dj - 1);
                    r[(row, row_of(mx, i, j))] = w[di][dj];
                }
            }
        }
    }
    r
}

/// `S^nu2 (I - P Lc^-1 R L) S^nu1` assembled densely.
pub fn two_grid_matrix(
    x: &Coords1D,
    y: &Coords1D,
    kind: SmootherKind,
    restriction: TransferKind,
    nu1: usize,
    nu2: usize,
) -> DMatrix<f64> {
    let (nx, ny) = (x.n(), y.n());
    let l = dense(&StencilCoeffs::assemble(x, y));
    let (cx, cy) = (x.coarsen().unwrap(), y.coarsen().unwrap());
    let lc = dense(&StencilCoeffs::assemble(&cx, &cy));
    let layouts = LevelLayouts::build(nx, ny).unwrap();
    let s = smoother_matrix(&l, &layouts, kind);
    let p = prolongation_matrix(nx, ny);
    let r = restriction_matrix(restriction, nx, ny);
    let lc_inv = lc.try_inverse().expect("coarse operator invertible");
    let n = l.nrows();
    let cgc = DMatrix::identity(n, n) - &p * lc_inv * &r * &l;
    s.pow(nu2 as u32) * cgc * s.pow(nu1 as u32)
}

pub fn spectral_radius_dense(m: &DMatrix<f64>) -> f64 {
    m.complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

pub fn rel_max_diff(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    max_abs(&(a - b)) / max_abs(b).max(f64::MIN_POSITIVE)
}

/// The three grid families exercised by the tests, on `n` intervals.
pub fn stretchings(n: usize) -> Vec<(&'static str, Coords1D)> {
    vec![
        ("uniform", Coords1D::uniform(n, 1.0).unwrap()),
        ("wall", Coords1D::tanh_wall(n, 1.0, 3.0).unwrap()),
        ("centre", Coords1D::tanh_centre(n, 1.0, 1.5).unwrap()),
    ]
}
