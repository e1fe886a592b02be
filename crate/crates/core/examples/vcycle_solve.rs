//! Solves a Poisson problem with a manufactured solution and prints the
//! defect history and the final error.

use std::f64::consts::PI;

use tweedwire::{Coords1D, CycleConfig, Field, Hierarchy, Multigrid, SmootherKind};

fn main() {
    let n = 128;
    let x = Coords1D::tanh_wall(n, 1.0, 1.5).expect("grid");
    let (xv, yv) = (x.values().to_vec(), x.values().to_vec());
    let mut mg = Multigrid::new(Hierarchy::build(x.clone(), x).expect("hierarchy"));

    // lap(u) = f with u = sin(pi x) sin(pi y) + x y, so g carries x y on the walls.
    let exact = |i: usize, j: usize| (PI * xv[i]).sin() * (PI * yv[j]).sin() + xv[i] * yv[j];
    let g = Field::from_fn(n, n, |i, j| {
        if i == 0 || j == 0 || i == n || j == n {
            exact(i, j)
        } else {
            0.0
        }
    });
    let f = Field::from_fn(n, n, |i, j| {
        -2.0 * PI * PI * (PI * xv[i]).sin() * (PI * yv[j]).sin()
    });

    let cfg = CycleConfig {
        smoother: SmootherKind::Tweed,
        nu1: 2,
        nu2: 2,
        ..Default::default()
    };
    let (u, report) = mg.solve(&cfg, &f, &g).expect("solve");
    for (k, (d, r)) in report
        .defect_max
        .iter()
        .zip(report.relaxations.iter())
        .enumerate()
    {
        println!("cycle {k:2} relax {r:3} defect {d:.3e}");
    }
    let err = (1..n)
        .flat_map(|j| (1..n).map(move |i| (i, j)))
        .map(|(i, j)| (u[(i, j)] - exact(i, j)).abs())
        .fold(0.0, f64::max);
    println!(
        "converged={} max discretisation error={err:.3e}",
        report.converged
    );
}
