//! Structural checks over every even grid size from 4 to 40.

use std::collections::HashSet;

use tweedwire::layout::{
    edge_cover_check, interior_edge_count, BlockKind, BlockLayout, Colour, Node, Scheme,
};

const SCHEMES: [Scheme; 5] = [
    Scheme::Checkerboard,
    Scheme::ZebraX,
    Scheme::ZebraY,
    Scheme::Tweed,
    Scheme::Wireframe,
];

fn sizes() -> impl Iterator<Item = (usize, usize)> {
    (4..=40)
        .step_by(2)
        .flat_map(|nx| (4..=40).step_by(2).map(move |ny| (nx, ny)))
}

/// Independent partition check that does not use the layout's own helpers.
fn covers_once(layout: &BlockLayout) -> bool {
    let mut seen = HashSet::new();
    for b in &layout.blocks {
        for p in b.members() {
            if p.i == 0 || p.j == 0 || p.i >= layout.nx || p.j >= layout.ny || !seen.insert(p) {
                return false;
            }
        }
    }
    seen.len() == (layout.nx - 1) * (layout.ny - 1)
}

fn colours_independent(layout: &BlockLayout) -> bool {
    let mut owner = std::collections::HashMap::new();
    for (id, b) in layout.blocks.iter().enumerate() {
        for p in b.members() {
            owner.insert(p, (id, b.colour));
        }
    }
    owner.iter().all(|(p, &(id, colour))| {
        [(1i64, 0i64), (0, 1)].iter().all(|&(di, dj)| {
            let q = Node {
                i: (p.i as i64 + di) as usize,
                j: (p.j as i64 + dj) as usize,
            };
            match owner.get(&q) {
                Some(&(other, c)) => other == id || c != colour,
                None => true,
            }
        })
    })
}

#[test]
fn every_layout_partitions_with_independent_colours() {
    for (nx, ny) in sizes() {
        for scheme in SCHEMES {
            let l = BlockLayout::build(scheme, nx, ny).unwrap();
            assert!(covers_once(&l), "{scheme:?} {nx}x{ny} is not a partition");
            assert!(l.is_partition());
            assert!(
                colours_independent(&l),
                "{scheme:?} {nx}x{ny} couples same-colour blocks"
            );
            assert!(l.same_colour_independent());
            assert!(
                l.blocks_well_formed(),
                "{scheme:?} {nx}x{ny} has a malformed block"
            );
        }
    }
}

#[test]
fn square_tweed_census() {
    for nx in (4..=40).step_by(2) {
        let n = nx - 1;
        let l = BlockLayout::build(Scheme::Tweed, nx, nx).unwrap();
        assert_eq!(l.count(BlockKind::Point), 4, "n={n}");
        assert_eq!(l.count_legged(2), 2 * (n - 3), "n={n}");
        assert_eq!(l.count_legged(4), 1, "n={n}");
        assert_eq!(l.blocks.len(), 4 + 2 * (n - 3) + 1);
        // Corners are red.
        for b in l.blocks.iter().filter(|b| b.kind() == BlockKind::Point) {
            assert_eq!(b.colour, Colour::Red);
        }
    }
}

#[test]
fn square_wireframe_census() {
    for nx in (4..=40).step_by(2) {
        let n = nx - 1;
        let l = BlockLayout::build(Scheme::Wireframe, nx, nx).unwrap();
        assert_eq!(l.count(BlockKind::Ring), (n - 1) / 2, "n={n}");
        assert_eq!(l.count(BlockKind::Point), 1, "n={n}");
        assert_eq!(l.blocks.len(), (n - 1) / 2 + 1);
        let rings: Vec<usize> = l
            .blocks
            .iter()
            .filter(|b| b.kind() == BlockKind::Ring)
            .map(|b| b.len())
            .collect();
        let want: Vec<usize> = (1..=(n - 1) / 2).map(|k| 8 * k).rev().collect();
        assert_eq!(rings, want);
    }
}

#[test]
fn rectangular_wireframe_ends_in_a_line() {
    for (nx, ny) in sizes().filter(|(a, b)| a != b) {
        let l = BlockLayout::build(Scheme::Wireframe, nx, ny).unwrap();
        let s = nx.min(ny) - 1;
        assert_eq!(l.count(BlockKind::Ring), (s - 1) / 2, "{nx}x{ny}");
        assert_eq!(l.count(BlockKind::Line), 1, "{nx}x{ny}");
        assert_eq!(l.count(BlockKind::Point), 0, "{nx}x{ny}");
    }
}

#[test]
fn tweed_and_wireframe_cover_every_edge_once() {
    for (nx, ny) in sizes() {
        let t = BlockLayout::build(Scheme::Tweed, nx, ny).unwrap();
        let w = BlockLayout::build(Scheme::Wireframe, nx, ny).unwrap();
        let r = edge_cover_check(&t, &w).unwrap();
        assert!(r.disjoint && r.complete, "{nx}x{ny}: {r:?}");
        assert_eq!(
            r.tweed_edges + r.wireframe_edges,
            interior_edge_count(nx, ny)
        );

        // Recount from the raw block edges.
        let mut all: Vec<(Node, Node)> = Vec::new();
        for b in t.blocks.iter().chain(&w.blocks) {
            all.extend(
                b.edges()
                    .into_iter()
                    .map(|(a, b)| if a < b { (a, b) } else { (b, a) }),
            );
        }
        let unique: HashSet<_> = all.iter().copied().collect();
        assert_eq!(unique.len(), all.len(), "{nx}x{ny}: overlapping edges");
        let (mx, my) = (nx - 1, ny - 1);
        assert_eq!(all.len(), (mx - 1) * my + mx * (my - 1));
    }
}

#[test]
fn odd_or_small_sizes_are_rejected_for_branched_layouts() {
    for (nx, ny) in [(5, 6), (6, 5), (2, 6), (6, 2), (3, 3)] {
        assert!(BlockLayout::build(Scheme::Tweed, nx, ny).is_err());
        assert!(BlockLayout::build(Scheme::Wireframe, nx, ny).is_err());
    }
}
