//! V-cycle convergence of every smoother on 128x128 stretched grids,
//! reported per relaxation unit so alternating kinds compare fairly.

use tweedwire::{
    random_rhs, Coords1D, CycleConfig, Field, Hierarchy, Multigrid, SmootherKind, StretchSpec,
};

fn main() {
    let cases = [
        ("wall c=1.5", StretchSpec::Wall { c: 1.5 }),
        ("wall c=3.0", StretchSpec::Wall { c: 3.0 }),
        ("centre c=1.5", StretchSpec::Centre { c: 1.5 }),
    ];
    let n = 128;
    let f = random_rhs(n, n, 42);
    let g = Field::zeros(n, n);
    for (name, spec) in cases {
        let x: Coords1D = spec.build(n, 1.0).expect("grid");
        let mut mg = Multigrid::new(Hierarchy::build(x.clone(), x).expect("hierarchy"));
        println!("{name}");
        for kind in SmootherKind::ALL {
            let cfg = CycleConfig {
                smoother: kind,
                nu1: 2,
                nu2: 2,
                ..Default::default()
            };
            let (_, rep) = mg.solve(&cfg, &f, &g).expect("solve");
            let ratio = rep.asymptotic_ratio().unwrap_or(f64::NAN);
            let per_unit = ratio.powf(1.0 / cfg.relaxations_per_cycle() as f64);
            println!(
                "  {:<14} converged={:<5} cycles={:>2} ratio={:.4} per-unit={:.4} d@5={:.3e} d@10={:.3e}",
                kind.as_str(),
                rep.converged,
                rep.cycles,
                ratio,
                per_unit,
                rep.rel_defect_at(5.0).unwrap_or(f64::NAN),
                rep.rel_defect_at(10.0).unwrap_or(f64::NAN),
            );
        }
    }
}
