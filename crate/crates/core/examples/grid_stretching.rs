//! Prints the smallest and largest spacing of each stretching and how the
//! hierarchy coarsens a wall-clustered grid.

use tweedwire::{Coords1D, Hierarchy, StretchSpec};

fn spacing(x: &Coords1D) -> (f64, f64) {
    x.values()
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold((f64::INFINITY, 0.0), |(lo, hi), h| (lo.min(h), hi.max(h)))
}

fn main() {
    let specs = [
        ("uniform", StretchSpec::Uniform),
        ("wall c=1.5", StretchSpec::Wall { c: 1.5 }),
        ("wall c=3", StretchSpec::Wall { c: 3.0 }),
        ("centre c=1.5", StretchSpec::Centre { c: 1.5 }),
    ];
    for (name, spec) in specs {
        let x = spec.build(128, 1.0).expect("grid");
        let (lo, hi) = spacing(&x);
        println!(
            "{name:>13}: h_min={lo:.3e} h_max={hi:.3e} ratio={:.1}",
            hi / lo
        );
    }

    let x = Coords1D::tanh_wall(128, 1.0, 3.0).expect("grid");
    let h = Hierarchy::build(x.clone(), x).expect("hierarchy");
    for (k, level) in h.levels().iter().enumerate() {
        let (lo, hi) = spacing(&level.x);
        println!(
            "level {k}: n={:3} h_min={lo:.3e} h_max={hi:.3e}",
            level.nx()
        );
    }
}
