//! Builds every layout on a small grid, checks the structural invariants and
//! draws the tweed and wireframe block maps.

use tweedwire::{edge_cover_check, BlockKind, BlockLayout, Scheme};

fn draw(layout: &BlockLayout) {
    let owner = layout.owner_map().expect("owner map");
    for j in (1..layout.ny).rev() {
        let row: String = (1..layout.nx)
            .map(|i| {
                let b = owner[(j - 1) * (layout.nx - 1) + (i - 1)].expect("covered");
                char::from(b"0123456789abcdefghijklmnopqrstuvwxyz"[b % 36])
            })
            .collect();
        println!("  {row}");
    }
}

fn main() {
    let n = 8;
    for scheme in [
        Scheme::Checkerboard,
        Scheme::ZebraX,
        Scheme::ZebraY,
        Scheme::Tweed,
        Scheme::Wireframe,
    ] {
        let l = BlockLayout::build(scheme, n, n).expect("layout");
        println!(
            "{:>12}: {} blocks, partition={} independent={} points={} lines={} rings={} legged={}",
            scheme.as_str(),
            l.blocks.len(),
            l.is_partition(),
            l.same_colour_independent(),
            l.count(BlockKind::Point),
            l.count(BlockKind::Line),
            l.count(BlockKind::Ring),
            l.count(BlockKind::Legged),
        );
    }

    let tweed = BlockLayout::build(Scheme::Tweed, n, n).unwrap();
    let wire = BlockLayout::build(Scheme::Wireframe, n, n).unwrap();
    println!("{:?}", edge_cover_check(&tweed, &wire).unwrap());
    println!("tweed blocks:");
    draw(&tweed);
    println!("wireframe blocks:");
    draw(&wire);
}
