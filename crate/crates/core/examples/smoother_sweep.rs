//! Applies single sweeps of each smoother to a random error and reports how
//! much of it survives.

use tweedwire::{sweep, sweep_cost, Coords1D, Field, Level, SmootherKind};

fn main() {
    let n = 64;
    let x = Coords1D::tanh_wall(n, 1.0, 1.5).expect("grid");
    let level = Level::new(x.clone(), x);
    let layouts = level.layouts.as_ref().expect("layouts");
    let f = Field::zeros(n, n);
    let e0 = tweedwire::random_rhs(n, n, 7);

    for kind in [
        SmootherKind::Checkerboard,
        SmootherKind::ZebraX,
        SmootherKind::ZebraAlt,
        SmootherKind::Tweed,
        SmootherKind::Wireframe,
    ] {
        let mut e = e0.clone();
        let mut norms = Vec::new();
        for _ in 0..4 {
            sweep(kind, &level.stencil, layouts, &mut e, &f).expect("sweep");
            norms.push(e.interior_norm2() / e0.interior_norm2());
        }
        println!(
            "{:>12}: flops/sweep={:8} |e|/|e0| = {:.3?}",
            kind.as_str(),
            sweep_cost(kind, n - 1).expect("cost"),
            norms
        );
    }
}
