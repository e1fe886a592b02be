//! Solves a four-legged system with the branched Thomas kernel and checks
//! the residual of every row.

use tweedwire::tridiag::{LeggedSystem, TriDiagSystem};

fn main() {
    let p = 6;
    let legs: Vec<TriDiagSystem> = (0..4)
        .map(|l| TriDiagSystem {
            sub: vec![-1.0; p],
            diag: vec![4.0 + l as f64 * 0.5; p],
            sup: vec![-1.0; p],
            rhs: (0..p).map(|k| (k + l) as f64).collect(),
        })
        .collect();
    let sys = LeggedSystem {
        legs,
        centre_coupling: vec![-1.0; 4],
        centre_diag: 4.0,
        centre_rhs: 1.0,
    };
    let (x, c) = sys.solve().expect("solve");

    let mut worst: f64 = 0.0;
    for (leg, xs) in sys.legs.iter().zip(&x) {
        for k in 0..p {
            let left = if k > 0 { leg.sub[k] * xs[k - 1] } else { 0.0 };
            let right = if k + 1 < p {
                leg.sup[k] * xs[k + 1]
            } else {
                leg.sup[k] * c
            };
            worst = worst.max((left + leg.diag[k] * xs[k] + right - leg.rhs[k]).abs());
        }
    }
    let centre_row: f64 = sys
        .centre_coupling
        .iter()
        .zip(&x)
        .map(|(a, xs)| a * xs[p - 1])
        .sum::<f64>()
        + sys.centre_diag * c
        - sys.centre_rhs;
    worst = worst.max(centre_row.abs());
    println!("centre = {c:.12}");
    for (l, xs) in x.iter().enumerate() {
        println!("leg {l}: {:.6?}", xs);
    }
    println!("max residual = {worst:.2e}");
}
