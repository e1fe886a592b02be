//! Block smoothers against a dense block Gauss-Seidel reference.

mod common;

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tweedwire::layout::{Colour, LevelLayouts};
use tweedwire::{Coords1D, Field, Relaxer, SmootherKind, StencilCoeffs};

fn random_field(nx: usize, ny: usize, seed: u64, boundary: bool) -> Field {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Field::from_fn(nx, ny, |i, j| {
        let on_edge = i == 0 || j == 0 || i == nx || j == ny;
        if on_edge && !boundary {
            0.0
        } else {
            rng.random::<f64>() - 0.5
        }
    })
}

fn shapes() -> Vec<(usize, usize)> {
    vec![(10, 10), (10, 8), (8, 10)]
}

#[test]
fn each_colour_pass_zeroes_its_own_defect() {
    for (nx, ny) in shapes() {
        for ((name, x), (_, y)) in common::stretchings(nx)
            .into_iter()
            .zip(common::stretchings(ny))
        {
            let st = StencilCoeffs::assemble(&x, &y);
            let layouts = LevelLayouts::build(nx, ny).unwrap();
            let f = random_field(nx, ny, 3, false);
            let fmax = f.interior_max_abs();
            for kind in SmootherKind::ALL {
                let mut u = random_field(nx, ny, 4, true);
                let mut relaxer = Relaxer::new();
                for &scheme in kind.schemes() {
                    let layout = layouts.get(scheme);
                    for colour in [Colour::Red, Colour::Black] {
                        relaxer
                            .relax_colour(&st, layout, colour, &mut u, &f)
                            .unwrap();
                        let d = st.defect(&u, &f).unwrap();
                        for b in layout.blocks.iter().filter(|b| b.colour == colour) {
                            for p in b.members() {
                                assert!(
                                    d[(p.i, p.j)].abs() <= 1e-11 * fmax,
                                    "{kind} {scheme:?} {colour:?} {name} {nx}x{ny}: {:e}",
                                    d[(p.i, p.j)]
                                );
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn sweep_matches_dense_block_gauss_seidel() {
    for (nx, ny) in shapes() {
        for ((name, x), (_, y)) in common::stretchings(nx)
            .into_iter()
            .zip(common::stretchings(ny))
        {
            let st = StencilCoeffs::assemble(&x, &y);
            let a = common::dense(&st);
            let layouts = LevelLayouts::build(nx, ny).unwrap();
            let f = random_field(nx, ny, 5, false);
            let g = Field::zeros(nx, ny);
            let rhs = DVector::from_vec(st.folded_rhs(&f, &g));
            for kind in SmootherKind::ALL {
                let mut u = random_field(nx, ny, 6, false);
                let mut v = common::interior(&u);
                for _ in 0..2 {
                    Relaxer::new()
                        .sweep(kind, &st, &layouts, &mut u, &f)
                        .unwrap();
                    common::block_gs_sweep(&a, &layouts, kind, &mut v, &rhs);
                }
                let err = common::rel_max_diff(&common::interior(&u), &v);
                assert!(err < 1e-12, "{kind} {name} {nx}x{ny}: {err:e}");
            }
        }
    }
}

#[test]
fn order_within_a_colour_does_not_matter() {
    let x = Coords1D::tanh_wall(12, 1.0, 2.0).unwrap();
    let st = StencilCoeffs::assemble(&x, &x);
    let layouts = LevelLayouts::build(12, 12).unwrap();
    let f = random_field(12, 12, 7, false);
    for kind in SmootherKind::ALL {
        let u0 = random_field(12, 12, 8, true);
        let mut forward = u0.clone();
        Relaxer::new()
            .sweep(kind, &st, &layouts, &mut forward, &f)
            .unwrap();

        let mut backward = u0.clone();
        let mut relaxer = Relaxer::new();
        for &scheme in kind.schemes() {
            let layout = layouts.get(scheme);
            for colour in [Colour::Red, Colour::Black] {
                for b in layout.blocks.iter().rev().filter(|b| b.colour == colour) {
                    relaxer.relax_block(&st, &mut backward, &f, b).unwrap();
                }
            }
        }
        assert_eq!(forward, backward, "{kind}");
    }
}

#[test]
fn boundary_values_are_never_written() {
    let x = Coords1D::tanh_centre(8, 1.0, 1.5).unwrap();
    let st = StencilCoeffs::assemble(&x, &x);
    let layouts = LevelLayouts::build(8, 8).unwrap();
    let f = random_field(8, 8, 9, false);
    for kind in SmootherKind::ALL {
        let u0 = random_field(8, 8, 10, true);
        let mut u = u0.clone();
        Relaxer::new()
            .sweep(kind, &st, &layouts, &mut u, &f)
            .unwrap();
        for j in 0..=8 {
            for i in 0..=8 {
                if u.is_boundary(i, j) {
                    assert_eq!(u[(i, j)].to_bits(), u0[(i, j)].to_bits());
                }
            }
        }
    }
}

#[test]
fn exact_solution_is_a_fixed_point() {
    let x = Coords1D::tanh_wall(10, 1.0, 3.0).unwrap();
    let st = StencilCoeffs::assemble(&x, &x);
    let layouts = LevelLayouts::build(10, 10).unwrap();
    let u_exact = random_field(10, 10, 11, true);
    let f = st.apply(&u_exact).unwrap();
    for kind in SmootherKind::ALL {
        let mut u = u_exact.clone();
        Relaxer::new()
            .sweep(kind, &st, &layouts, &mut u, &f)
            .unwrap();
        let scale = u_exact.interior_max_abs();
        for j in 1..10 {
            for i in 1..10 {
                assert!(
                    (u[(i, j)] - u_exact[(i, j)]).abs() <= 1e-10 * scale,
                    "{kind}"
                );
            }
        }
    }
}
