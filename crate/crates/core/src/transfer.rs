//! Inter-grid transfer with index-based weights: half- or full-weighting
//! restriction of defects and bilinear prolongation of corrections. Coarse
//! point `(i, j)` sits on fine point `(2i, 2j)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::stencil::{Field, StencilCoeffs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TransferKind {
    Half,
    Full,
}

impl TransferKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TransferKind::Half => "half",
            TransferKind::Full => "full",
        }
    }
}

impl fmt::Display for TransferKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TransferKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "half" => Ok(TransferKind::Half),
            "full" => Ok(TransferKind::Full),
            _ => Err(Error::InvalidConfig(format!("unknown restriction '{s}'"))),
        }
    }
}

fn check_pair(fine: (usize, usize), coarse: (usize, usize)) -> Result<()> {
    if fine.0 != 2 * coarse.0 || fine.1 != 2 * coarse.1 {
        return Err(Error::DimensionMismatch {
            expected: (2 * coarse.0, 2 * coarse.1),
            got: fine,
        });
    }
    Ok(())
}

/// Weighted sum around fine point `(fi, fj)` of values produced by `val`.
#[inline]
fn weigh(
    kind: TransferKind,
    fi: usize,
    fj: usize,
    val: &mut impl FnMut(usize, usize) -> f64,
) -> f64 {
    let centre = val(fi, fj);
    let edges = val(fi - 1, fj) + val(fi + 1, fj) + val(fi, fj - 1) + val(fi, fj + 1);
    match kind {
        TransferKind::Half => 0.5 * centre + 0.125 * edges,
        TransferKind::Full => {
            let corners = val(fi - 1, fj - 1)
                + val(fi + 1, fj - 1)
                + val(fi - 1, fj + 1)
                + val(fi + 1, fj + 1);
            0.25 * centre + 0.125 * edges + 0.0625 * corners
        }
    }
}

/// Restricts a defect (zero boundary) to the next coarser grid.
pub fn restrict(kind: TransferKind, fine: &Field) -> Result<Field> {
    if !fine.nx().is_multiple_of(2) || !fine.ny().is_multiple_of(2) {
        return Err(Error::CannotCoarsen(fine.nx().max(fine.ny())));
    }
    let mut out = Field::zeros(fine.nx() / 2, fine.ny() / 2);
    restrict_into(kind, fine, &mut out)?;
    Ok(out)
}

pub fn restrict_into(kind: TransferKind, fine: &Field, coarse: &mut Field) -> Result<()> {
    check_pair(fine.dims(), coarse.dims())?;
    coarse.zero_boundary();
    let mut val = |i: usize, j: usize| fine[(i, j)];
    for j in 1..coarse.ny() {
        for i in 1..coarse.nx() {
            coarse[(i, j)] = weigh(kind, 2 * i, 2 * j, &mut val);
        }
    }
    Ok(())
}

/// Computes `f - L u` on the fly and restricts it, without storing the fine
/// defect. Boundary points contribute zero.
pub fn restrict_defect_into(
    kind: TransferKind,
    st: &StencilCoeffs,
    u: &Field,
    f: &Field,
    coarse: &mut Field,
) -> Result<()> {
    let (nx, ny) = (st.nx(), st.ny());
    u.check_dims(nx, ny)?;
    f.check_dims(nx, ny)?;
    check_pair((nx, ny), coarse.dims())?;
    coarse.zero_boundary();
    let mut val = |i: usize, j: usize| {
        if i == 0 || j == 0 || i == nx || j == ny {
            0.0
        } else {
            f[(i, j)] - st.apply_at(u, i, j)
        }
    };
    for j in 1..coarse.ny() {
        for i in 1..coarse.nx() {
            coarse[(i, j)] = weigh(kind, 2 * i, 2 * j, &mut val);
        }
    }
    Ok(())
}

/// Bilinear value at fine point `(i, j)` from coarse values.
#[inline]
fn interp(c: &Field, i: usize, j: usize) -> f64 {
    match (i % 2, j % 2) {
        (0, 0) => c[(i / 2, j / 2)],
        (0, _) => 0.5 * (c[(i / 2, (j - 1) / 2)] + c[(i / 2, j.div_ceil(2))]),
        (_, 0) => 0.5 * (c[((i - 1) / 2, j / 2)] + c[(i.div_ceil(2), j / 2)]),
        _ => {
            0.25 * (c[((i - 1) / 2, (j - 1) / 2)]
                + c[(i.div_ceil(2), (j - 1) / 2)]
                + c[((i - 1) / 2, j.div_ceil(2))]
                + c[(i.div_ceil(2), j.div_ceil(2))])
        }
    }
}

/// Bilinear prolongation of a correction (zero boundary). The fine boundary
/// is zero.
pub fn prolong(coarse: &Field) -> Field {
    let (nx, ny) = (2 * coarse.nx(), 2 * coarse.ny());
    let mut out = Field::zeros(nx, ny);
    for j in 1..ny {
        for i in 1..nx {
            out[(i, j)] = interp(coarse, i, j);
        }
    }
    out
}

/// `u += P coarse` on the fine interior.
pub fn prolong_add(coarse: &Field, u: &mut Field) -> Result<()> {
    check_pair(u.dims(), coarse.dims())?;
    for j in 1..u.ny() {
        for i in 1..u.nx() {
            u[(i, j)] += interp(coarse, i, j);
        }
    }
    Ok(())
}
