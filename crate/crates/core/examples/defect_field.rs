//! Locates the largest remaining defect after a few V-cycles for the
//! smoother matched to each stretching.

use tweedwire::{Coords1D, CycleConfig, Field, Hierarchy, Multigrid, SmootherKind};

fn main() {
    let n = 64;
    let cases = [
        (
            "wall c=1.5",
            Coords1D::tanh_wall(n, 1.0, 1.5),
            SmootherKind::Tweed,
        ),
        (
            "centre c=1.5",
            Coords1D::tanh_centre(n, 1.0, 1.5),
            SmootherKind::Wireframe,
        ),
    ];
    for (name, x, kind) in cases {
        let x = x.expect("grid");
        let level_x = x.clone();
        let mut mg = Multigrid::new(Hierarchy::build(x.clone(), x).expect("hierarchy"));
        let f = tweedwire::random_rhs(n, n, 42);
        let cfg = CycleConfig {
            smoother: kind,
            nu1: 2,
            nu2: 2,
            max_cycles: 3,
            tol: 1e-300,
            ..Default::default()
        };
        let (u, _) = mg.solve(&cfg, &f, &Field::zeros(n, n)).expect("solve");
        let d = mg
            .hierarchy()
            .finest()
            .stencil
            .defect(&u, &f)
            .expect("defect");
        let (mut best, mut at) = (0.0, (0, 0));
        for j in 1..n {
            for i in 1..n {
                if d[(i, j)].abs() > best {
                    best = d[(i, j)].abs();
                    at = (i, j);
                }
            }
        }
        let v = level_x.values();
        println!(
            "{name:>12} {:>9}: max |d| = {best:.3e} at ({}, {}) = ({:.3}, {:.3})",
            kind.as_str(),
            at.0,
            at.1,
            v[at.0],
            v[at.1]
        );
    }
}
