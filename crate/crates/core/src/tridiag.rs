//! Direct solvers for the small systems that arise in block relaxation:
//! plain tridiagonal lines, closed rings (periodic tridiagonal) and
//! branched lines where several tridiagonal legs meet at one centre unknown.
//!
//! Row `k` of a leg or line reads `sub[k] x[k-1] + diag[k] x[k] + sup[k] x[k+1] = rhs[k]`.
//! The in-place entry points overwrite `rhs` with the solution and borrow
//! their workspace from a [`Scratch`] so that a sweep does not allocate per
//! block.

use crate::error::{Error, Result};

const PIVOT_FLOOR: f64 = 1e-300;

/// Reusable workspace for the in-place solvers.
#[derive(Debug, Default, Clone)]
pub struct Scratch {
    w: Vec<f64>,
    y: Vec<f64>,
}

impl Scratch {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            w: Vec::with_capacity(n),
            y: Vec::with_capacity(n),
        }
    }

    fn prepare(&mut self, n: usize) -> (&mut [f64], &mut [f64]) {
        if self.w.len() < n {
            self.w.resize(n, 0.0);
            self.y.resize(n, 0.0);
        }
        (&mut self.w[..n], &mut self.y[..n])
    }
}

#[inline]
fn check_pivot(p: f64, row: usize) -> Result<()> {
    if p.abs() >= PIVOT_FLOOR && p.is_finite() {
        Ok(())
    } else {
        Err(Error::SingularSystem { row, pivot: p })
    }
}

/// Forward elimination leaving `x[k] + w[k] x[k+1] = rhs[k]`. The final
/// `w` entry is the coupling of the last row to whatever follows it.
#[inline]
fn eliminate(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &mut [f64], w: &mut [f64]) -> Result<()> {
    let m = rhs.len();
    check_pivot(diag[0], 0)?;
    w[0] = sup[0] / diag[0];
    rhs[0] /= diag[0];
    for k in 1..m {
        let den = diag[k] - sub[k] * w[k - 1];
        check_pivot(den, k)?;
        w[k] = sup[k] / den;
        rhs[k] = (rhs[k] - sub[k] * rhs[k - 1]) / den;
    }
    Ok(())
}

/// Thomas algorithm. `sub[0]` and `sup[m-1]` are ignored.
pub fn thomas_in_place(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &mut [f64],
    scratch: &mut Scratch,
) -> Result<()> {
    let m = rhs.len();
    if m == 0 {
        return Ok(());
    }
    let (w, _) = scratch.prepare(m);
    check_pivot(diag[0], 0)?;
    w[0] = if m > 1 { sup[0] / diag[0] } else { 0.0 };
    rhs[0] /= diag[0];
    for k in 1..m {
        let den = diag[k] - sub[k] * w[k - 1];
        check_pivot(den, k)?;
        w[k] = if k + 1 < m { sup[k] / den } else { 0.0 };
        rhs[k] = (rhs[k] - sub[k] * rhs[k - 1]) / den;
    }
    for k in (0..m - 1).rev() {
        rhs[k] -= w[k] * rhs[k + 1];
    }
    Ok(())
}

/// Periodic tridiagonal solve. `sub[0]` couples the first row to the last
/// unknown and `sup[m-1]` couples the last row to the first unknown.
///
/// The leading `m-1` rows are solved for two right-hand sides that share one
/// elimination, which expresses every unknown affinely in the last one; the
/// last row then closes the loop.
pub fn circulant_in_place(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &mut [f64],
    scratch: &mut Scratch,
) -> Result<()> {
    let m = rhs.len();
    if m < 3 {
        return Err(Error::InvalidConfig(format!(
            "circulant system needs m >= 3, got {m}"
        )));
    }
    let (w, y) = scratch.prepare(m);
    let k_last = m - 1;
    let inner = m - 1;

    // y holds the response to the coupling column of x_last.
    y[..inner].fill(0.0);
    y[0] = sub[0];
    y[inner - 1] += sup[inner - 1];

    check_pivot(diag[0], 0)?;
    w[0] = sup[0] / diag[0];
    rhs[0] /= diag[0];
    y[0] /= diag[0];
    for k in 1..inner {
        let den = diag[k] - sub[k] * w[k - 1];
        check_pivot(den, k)?;
        w[k] = if k + 1 < inner { sup[k] / den } else { 0.0 };
        rhs[k] = (rhs[k] - sub[k] * rhs[k - 1]) / den;
        y[k] = (y[k] - sub[k] * y[k - 1]) / den;
    }
    for k in (0..inner - 1).rev() {
        rhs[k] -= w[k] * rhs[k + 1];
        y[k] -= w[k] * y[k + 1];
    }

    let a_last = sub[k_last];
    let c_last = sup[k_last];
    let den = diag[k_last] - a_last * y[inner - 1] - c_last * y[0];
    check_pivot(den, k_last)?;
    let x_last = (rhs[k_last] - a_last * rhs[inner - 1] - c_last * rhs[0]) / den;
    rhs[k_last] = x_last;
    for k in 0..inner {
        rhs[k] -= x_last * y[k];
    }
    Ok(())
}

/// Branched solve: `m` legs stored back to back, leg `l` occupying
/// `bounds[l]..bounds[l + 1]` and ordered tip first. Each leg's last
/// `sup` entry couples it to the centre unknown. The centre row is
/// `sum_l coupling[l] x_last(l) + centre_diag x_centre = centre_rhs`.
///
/// Legs are eliminated independently from tip to branch, leaving each leg's
/// last unknown affine in the centre value. The scalar centre equation is
/// solved and the legs are back-substituted outward. Returns the centre value;
/// leg solutions overwrite `rhs`.
#[allow(clippy::too_many_arguments)]
pub fn legged_in_place(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &mut [f64],
    bounds: &[usize],
    coupling: &[f64],
    centre_diag: f64,
    centre_rhs: f64,
    scratch: &mut Scratch,
) -> Result<f64> {
    let legs = bounds.len() - 1;
    debug_assert_eq!(coupling.len(), legs);
    let total = bounds[legs];
    let (w, _) = scratch.prepare(total);

    let mut den = centre_diag;
    let mut num = centre_rhs;
    for l in 0..legs {
        let (a, b) = (bounds[l], bounds[l + 1]);
        if b <= a {
            return Err(Error::InvalidConfig(format!("leg {l} is empty")));
        }
        eliminate(
            &sub[a..b],
            &diag[a..b],
            &sup[a..b],
            &mut rhs[a..b],
            &mut w[a..b],
        )
        .map_err(|e| offset_row(e, a))?;
        den -= coupling[l] * w[b - 1];
        num -= coupling[l] * rhs[b - 1];
    }
    check_pivot(den, total)?;
    let centre = num / den;

    for l in 0..legs {
        let (a, b) = (bounds[l], bounds[l + 1]);
        rhs[b - 1] -= w[b - 1] * centre;
        for k in (a..b - 1).rev() {
            rhs[k] -= w[k] * rhs[k + 1];
        }
    }
    Ok(centre)
}

fn offset_row(e: Error, by: usize) -> Error {
    match e {
        Error::SingularSystem { row, pivot } => Error::SingularSystem {
            row: row + by,
            pivot,
        },
        other => other,
    }
}

/// A tridiagonal system `A x = r`; `sub[0]` and `sup[m-1]` are unused.
#[derive(Debug, Clone, PartialEq)]
pub struct TriDiagSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TriDiagSystem {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn solve(&self) -> Result<Vec<f64>> {
        let mut x = self.rhs.clone();
        thomas_in_place(
            &self.sub,
            &self.diag,
            &self.sup,
            &mut x,
            &mut Scratch::default(),
        )?;
        Ok(x)
    }
}

/// A periodic tridiagonal system; `sub[0]` and `sup[m-1]` are the corner
/// entries closing the loop.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl CirculantSystem {
    pub fn solve(&self) -> Result<Vec<f64>> {
        let mut x = self.rhs.clone();
        circulant_in_place(
            &self.sub,
            &self.diag,
            &self.sup,
            &mut x,
            &mut Scratch::default(),
        )?;
        Ok(x)
    }
}

/// Legs joined at one centre unknown. Each leg is ordered tip to branch and
/// its last `sup` entry is the coupling to the centre.
#[derive(Debug, Clone, PartialEq)]
pub struct LeggedSystem {
    pub legs: Vec<TriDiagSystem>,
    /// Coupling of the centre row to each leg's last unknown.
    pub centre_coupling: Vec<f64>,
    pub centre_diag: f64,
    pub centre_rhs: f64,
}

impl LeggedSystem {
    /// Returns the per-leg solutions and the centre value.
    pub fn solve(&self) -> Result<(Vec<Vec<f64>>, f64)> {
        if self.legs.len() < 2 {
            return Err(Error::InvalidConfig("legged system needs >= 2 legs".into()));
        }
        let mut bounds = vec![0];
        let (mut sub, mut diag, mut sup, mut rhs) = (vec![], vec![], vec![], vec![]);
        for leg in &self.legs {
            sub.extend_from_slice(&leg.sub);
            diag.extend_from_slice(&leg.diag);
            sup.extend_from_slice(&leg.sup);
            rhs.extend_from_slice(&leg.rhs);
            bounds.push(rhs.len());
        }
        let centre = legged_in_place(
            &sub,
            &diag,
            &sup,
            &mut rhs,
            &bounds,
            &self.centre_coupling,
            self.centre_diag,
            self.centre_rhs,
            &mut Scratch::default(),
        )?;
        let legs = bounds
            .windows(2)
            .map(|b| rhs[b[0]..b[1]].to_vec())
            .collect();
        Ok((legs, centre))
    }
}
