//! Geometric multigrid for the 2D Poisson equation with Dirichlet data on
//! stretched rectilinear grids.
//!
//! Besides the usual checkerboard and zebra smoothers the crate provides two
//! branched-line smoothers:
//!
//! - **tweed** relaxes blocks of lines that run perpendicular to the nearest
//!   wall and meet at branch points; it suits grids clustered near the walls;
//! - **wireframe** relaxes concentric closed rings; it suits grids clustered
//!   near the centre.
//!
//! A two-grid analyzer estimates the asymptotic convergence factor of any
//! smoother/restriction pair by power iteration.
//!
//! ```
//! use tweedwire::{Coords1D, CycleConfig, Field, Hierarchy, Multigrid, SmootherKind};
//!
//! let x = Coords1D::tanh_wall(32, 1.0, 1.5).unwrap();
//! let mut mg = Multigrid::new(Hierarchy::build(x.clone(), x).unwrap());
//! let f = tweedwire::random_rhs(32, 32, 42);
//! let cfg = CycleConfig { smoother: SmootherKind::Tweed, nu1: 2, nu2: 2, ..Default::default() };
//! let (_u, report) = mg.solve(&cfg, &f, &Field::zeros(32, 32)).unwrap();
//! assert!(report.converged);
//! ```

pub mod cli;
pub mod error;
pub mod grid;
pub mod layout;
pub mod mgcycle;
pub mod smoothers;
pub mod spectral;
pub mod stencil;
pub mod transfer;
pub mod tridiag;

pub use error::{Error, Result};
pub use grid::{Coords1D, Hierarchy, Level, StretchSpec};
pub use layout::{
    edge_cover_check, tweed_layout, wireframe_layout, Block, BlockKind, BlockLayout, Colour,
    EdgeCoverReport, LevelLayouts, Node, Scheme, Shape,
};
pub use mgcycle::{random_rhs, CycleConfig, CycleReport, Multigrid};
pub use smoothers::{sweep, sweep_cost, Relaxer, SmootherKind};
pub use spectral::{spectral_radius, SpectralEstimate, TwoGridConfig, TwoGridOperator};
pub use stencil::{direct_solve, BandedLu, DenseMatrix, Dir, Field, StencilCoeffs};
pub use transfer::{prolong, restrict, TransferKind};
