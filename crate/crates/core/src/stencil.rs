//! Five-point finite-difference Laplacian on a rectilinear (possibly
//! stretched) grid, with Dirichlet data carried on the boundary ring of each
//! [`Field`].

use crate::error::{Error, Result};
use crate::grid::Coords1D;

/// Values on all `(nx+1) x (ny+1)` grid points, stored with `i` fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    nx: usize,
    ny: usize,
    data: Vec<f64>,
}

impl Field {
    pub fn zeros(nx: usize, ny: usize) -> Self {
        Self {
            nx,
            ny,
            data: vec![0.0; (nx + 1) * (ny + 1)],
        }
    }

    pub fn from_fn(nx: usize, ny: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut out = Self::zeros(nx, ny);
        for j in 0..=ny {
            for i in 0..=nx {
                out.data[j * (nx + 1) + i] = f(i, j);
            }
        }
        out
    }

    #[inline]
    pub fn nx(&self) -> usize {
        self.nx
    }

    #[inline]
    pub fn ny(&self) -> usize {
        self.ny
    }

    #[inline]
    pub fn dims(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * (self.nx + 1) + i
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.data
    }

    #[inline]
    pub fn is_boundary(&self, i: usize, j: usize) -> bool {
        i == 0 || j == 0 || i == self.nx || j == self.ny
    }

    pub fn fill(&mut self, v: f64) {
        self.data.fill(v);
    }

    pub fn zero_boundary(&mut self) {
        let (nx, ny) = (self.nx, self.ny);
        for i in 0..=nx {
            self[(i, 0)] = 0.0;
            self[(i, ny)] = 0.0;
        }
        for j in 0..=ny {
            self[(0, j)] = 0.0;
            self[(nx, j)] = 0.0;
        }
    }

    /// Max-norm over interior points.
    pub fn interior_max_abs(&self) -> f64 {
        let mut m = 0.0f64;
        for j in 1..self.ny {
            for i in 1..self.nx {
                m = m.max(self[(i, j)].abs());
            }
        }
        m
    }

    /// Euclidean norm over interior points.
    pub fn interior_norm2(&self) -> f64 {
        let mut s = 0.0;
        for j in 1..self.ny {
            for i in 1..self.nx {
                s += self[(i, j)] * self[(i, j)];
            }
        }
        s.sqrt()
    }

    /// Interior values, `j` outer and `i` inner.
    pub fn interior_to_vec(&self) -> Vec<f64> {
        let mut v = Vec::with_capacity(self.interior_len());
        for j in 1..self.ny {
            for i in 1..self.nx {
                v.push(self[(i, j)]);
            }
        }
        v
    }

    /// Overwrites the interior from a vector in `interior_to_vec` order.
    pub fn set_interior(&mut self, v: &[f64]) {
        assert_eq!(v.len(), self.interior_len());
        let mut k = 0;
        for j in 1..self.ny {
            for i in 1..self.nx {
                self[(i, j)] = v[k];
                k += 1;
            }
        }
    }

    #[inline]
    pub fn interior_len(&self) -> usize {
        (self.nx - 1) * (self.ny - 1)
    }

    pub(crate) fn check_dims(&self, nx: usize, ny: usize) -> Result<()> {
        if self.nx != nx || self.ny != ny {
            return Err(Error::DimensionMismatch {
                expected: (nx, ny),
                got: (self.nx, self.ny),
            });
        }
        Ok(())
    }
}

impl std::ops::Index<(usize, usize)> for Field {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[j * (self.nx + 1) + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Field {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[j * (self.nx + 1) + i]
    }
}

/// Neighbour direction within the five-point stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    West,
    East,
    South,
    North,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::West, Dir::East, Dir::South, Dir::North];

    #[inline]
    pub fn step(self, i: usize, j: usize) -> (usize, usize) {
        match self {
            Dir::West => (i - 1, j),
            Dir::East => (i + 1, j),
            Dir::South => (i, j - 1),
            Dir::North => (i, j + 1),
        }
    }

    /// Direction from `(i, j)` to an adjacent point.
    #[inline]
    pub fn between(from: (usize, usize), to: (usize, usize)) -> Option<Dir> {
        match (
            to.0 as isize - from.0 as isize,
            to.1 as isize - from.1 as isize,
        ) {
            (-1, 0) => Some(Dir::West),
            (1, 0) => Some(Dir::East),
            (0, -1) => Some(Dir::South),
            (0, 1) => Some(Dir::North),
            _ => None,
        }
    }
}

/// West/east coefficients per column and south/north per row. The centre
/// coefficient is always recomputed as minus their sum.
///
/// Arrays are indexed by grid index; entries at the boundary indices are
/// zero and never read.
#[derive(Debug, Clone, PartialEq)]
pub struct StencilCoeffs {
    w: Vec<f64>,
    e: Vec<f64>,
    s: Vec<f64>,
    n: Vec<f64>,
}

fn axis_coeffs(x: &Coords1D) -> (Vec<f64>, Vec<f64>) {
    let n = x.n();
    let mut lo = vec![0.0; n + 1];
    let mut hi = vec![0.0; n + 1];
    for i in 1..n {
        let dm = x[i] - x[i - 1];
        let dp = x[i + 1] - x[i];
        let dc = 0.5 * (x[i + 1] - x[i - 1]);
        lo[i] = 1.0 / (dc * dm);
        hi[i] = 1.0 / (dc * dp);
    }
    (lo, hi)
}

impl StencilCoeffs {
    pub fn assemble(x: &Coords1D, y: &Coords1D) -> Self {
        let (w, e) = axis_coeffs(x);
        let (s, n) = axis_coeffs(y);
        Self { w, e, s, n }
    }

    #[inline]
    pub fn nx(&self) -> usize {
        self.w.len() - 1
    }

    #[inline]
    pub fn ny(&self) -> usize {
        self.s.len() - 1
    }

    #[inline]
    pub fn w(&self, i: usize) -> f64 {
        self.w[i]
    }

    #[inline]
    pub fn e(&self, i: usize) -> f64 {
        self.e[i]
    }

    #[inline]
    pub fn s(&self, j: usize) -> f64 {
        self.s[j]
    }

    #[inline]
    pub fn n(&self, j: usize) -> f64 {
        self.n[j]
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize) -> f64 {
        -(self.w[i] + self.e[i] + self.s[j] + self.n[j])
    }

    #[inline]
    pub fn coeff(&self, dir: Dir, i: usize, j: usize) -> f64 {
        match dir {
            Dir::West => self.w[i],
            Dir::East => self.e[i],
            Dir::South => self.s[j],
            Dir::North => self.n[j],
        }
    }

    /// `(L u)(i, j)` at one interior point.
    #[inline]
    pub fn apply_at(&self, u: &Field, i: usize, j: usize) -> f64 {
        self.w[i] * u[(i - 1, j)]
            + self.e[i] * u[(i + 1, j)]
            + self.s[j] * u[(i, j - 1)]
            + self.n[j] * u[(i, j + 1)]
            + self.c(i, j) * u[(i, j)]
    }

    /// Interior `L u`, zero on the boundary.
    pub fn apply(&self, u: &Field) -> Result<Field> {
        u.check_dims(self.nx(), self.ny())?;
        let mut out = Field::zeros(self.nx(), self.ny());
        for j in 1..self.ny() {
            for i in 1..self.nx() {
                out[(i, j)] = self.apply_at(u, i, j);
            }
        }
        Ok(out)
    }

    /// `d = f - L u` on the interior, zero on the boundary.
    pub fn defect(&self, u: &Field, f: &Field) -> Result<Field> {
        let mut d = Field::zeros(self.nx(), self.ny());
        self.defect_into(u, f, &mut d)?;
        Ok(d)
    }

    pub fn defect_into(&self, u: &Field, f: &Field, d: &mut Field) -> Result<()> {
        let (nx, ny) = (self.nx(), self.ny());
        u.check_dims(nx, ny)?;
        f.check_dims(nx, ny)?;
        d.check_dims(nx, ny)?;
        d.zero_boundary();
        for j in 1..ny {
            for i in 1..nx {
                d[(i, j)] = f[(i, j)] - self.apply_at(u, i, j);
            }
        }
        Ok(())
    }

    /// Max-norm of the interior defect without allocating.
    pub fn defect_max_abs(&self, u: &Field, f: &Field) -> f64 {
        let mut m = 0.0f64;
        for j in 1..self.ny() {
            for i in 1..self.nx() {
                m = m.max((f[(i, j)] - self.apply_at(u, i, j)).abs());
            }
        }
        m
    }

    /// The operator restricted to interior unknowns, ordered `j` outer and
    /// `i` inner. Couplings to boundary points are dropped.
    pub fn assemble_dense(&self) -> DenseMatrix {
        let (mx, my) = (self.nx() - 1, self.ny() - 1);
        let size = mx * my;
        let mut a = DenseMatrix::zeros(size);
        let row = |i: usize, j: usize| (j - 1) * mx + (i - 1);
        for j in 1..=my {
            for i in 1..=mx {
                let r = row(i, j);
                a[(r, r)] = self.c(i, j);
                for dir in Dir::ALL {
                    let (ni, nj) = dir.step(i, j);
                    if ni >= 1 && ni <= mx && nj >= 1 && nj <= my {
                        a[(r, row(ni, nj))] = self.coeff(dir, i, j);
                    }
                }
            }
        }
        a
    }

    /// Interior right-hand side with the Dirichlet couplings of `g` folded in.
    pub fn folded_rhs(&self, f: &Field, g: &Field) -> Vec<f64> {
        let (nx, ny) = (self.nx(), self.ny());
        let mut rhs = Vec::with_capacity((nx - 1) * (ny - 1));
        for j in 1..ny {
            for i in 1..nx {
                let mut r = f[(i, j)];
                for dir in Dir::ALL {
                    let (ni, nj) = dir.step(i, j);
                    if g.is_boundary(ni, nj) {
                        r -= self.coeff(dir, i, j) * g[(ni, nj)];
                    }
                }
                rhs.push(r);
            }
        }
        rhs
    }
}

/// Small square row-major matrix used for oracles and dense assembly.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|r| {
                self.data[r * self.n..(r + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.data[r * self.n + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.data[r * self.n + c]
    }
}

/// Band LU factors of the interior operator, without pivoting.
///
/// With `j`-outer ordering the half-bandwidth equals the number of interior
/// points per row, so factoring costs `O(N b^2)` and a solve `O(N b)`. The
/// operator is diagonally dominant by rows and elimination preserves that, so
/// pivoting is unnecessary.
#[derive(Debug, Clone)]
pub struct BandedLu {
    size: usize,
    band: usize,
    // Row r holds columns r-band ..= r+band; L below the diagonal (unit
    // diagonal implied), U on and above it.
    lu: Vec<f64>,
    nx: usize,
    ny: usize,
}

const PIVOT_FLOOR: f64 = 1e-300;

impl BandedLu {
    pub fn factor(st: &StencilCoeffs) -> Result<Self> {
        let (nx, ny) = (st.nx(), st.ny());
        let (mx, my) = (nx - 1, ny - 1);
        let size = mx * my;
        let band = mx;
        let width = 2 * band + 1;
        let mut lu = vec![0.0; size * width];
        let at = |r: usize, c: usize| r * width + (c + band - r);
        for j in 1..=my {
            for i in 1..=mx {
                let r = (j - 1) * mx + (i - 1);
                lu[at(r, r)] = st.c(i, j);
                if i > 1 {
                    lu[at(r, r - 1)] = st.w(i);
                }
                if i < mx {
                    lu[at(r, r + 1)] = st.e(i);
                }
                if j > 1 {
                    lu[at(r, r - mx)] = st.s(j);
                }
                if j < my {
                    lu[at(r, r + mx)] = st.n(j);
                }
            }
        }
        for k in 0..size {
            let pivot = lu[at(k, k)];
            if !(pivot.abs() >= PIVOT_FLOOR) {
                return Err(Error::SingularSystem { row: k, pivot });
            }
            let last = (k + band).min(size - 1);
            for r in k + 1..=last {
                let l = lu[at(r, k)] / pivot;
                if l == 0.0 {
                    continue;
                }
                lu[at(r, k)] = l;
                for c in k + 1..=last {
                    lu[at(r, c)] -= l * lu[at(k, c)];
                }
            }
        }
        Ok(Self {
            size,
            band,
            lu,
            nx,
            ny,
        })
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    /// Solves in place for an interior vector in `j`-outer order.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        assert_eq!(b.len(), self.size);
        let width = 2 * self.band + 1;
        let band = self.band;
        let at = |r: usize, c: usize| r * width + (c + band - r);
        for r in 0..self.size {
            let first = r.saturating_sub(band);
            let mut acc = b[r];
            for c in first..r {
                acc -= self.lu[at(r, c)] * b[c];
            }
            b[r] = acc;
        }
        for r in (0..self.size).rev() {
            let last = (r + band).min(self.size - 1);
            let mut acc = b[r];
            for c in r + 1..=last {
                acc -= self.lu[at(r, c)] * b[c];
            }
            b[r] = acc / self.lu[at(r, r)];
        }
    }

    /// Solves `L u = f` with boundary values taken from `g`.
    pub fn solve(&self, st: &StencilCoeffs, f: &Field, g: &Field) -> Result<Field> {
        f.check_dims(self.nx, self.ny)?;
        g.check_dims(self.nx, self.ny)?;
        let mut rhs = st.folded_rhs(f, g);
        self.solve_in_place(&mut rhs);
        let mut u = g.clone();
        u.set_interior(&rhs);
        Ok(u)
    }
}

/// Direct solve of `L u = f`, `u = g` on the boundary.
pub fn direct_solve(st: &StencilCoeffs, f: &Field, g: &Field) -> Result<Field> {
    BandedLu::factor(st)?.solve(st, f, g)
}
