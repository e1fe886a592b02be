//! Two-grid convergence factors on a 128x128 grid clustered at the walls.

use std::time::Instant;

use tweedwire::{spectral_radius, Coords1D, SmootherKind, TransferKind, TwoGridConfig};

fn main() {
    let x = Coords1D::tanh_wall(128, 1.0, 1.5).expect("grid");
    for kind in [
        SmootherKind::Checkerboard,
        SmootherKind::ZebraAlt,
        SmootherKind::Tweed,
        SmootherKind::Wireframe,
    ] {
        for nu in 1..=2 {
            let t = Instant::now();
            let cfg = TwoGridConfig::new(kind, TransferKind::Full, nu);
            let est = spectral_radius(x.clone(), x.clone(), cfg).expect("estimate");
            println!(
                "{:>14} nu={nu} rho={:.4} iters={:4} osc={} ({:.2?})",
                kind.as_str(),
                est.rho,
                est.iters,
                est.oscillation,
                t.elapsed()
            );
        }
    }
}
