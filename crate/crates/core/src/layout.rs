//! Colour-partitioned block decompositions of a level's interior points.
//!
//! Every smoother is block Gauss-Seidel over one of these layouts: all red
//! blocks are relaxed, then all black blocks. Blocks of one colour never
//! touch each other through the five-point stencil, so their relaxations
//! are independent.
//!
//! Interior points are indexed `1..=mx` by `1..=my` where `mx = nx - 1` and
//! `my = ny - 1`.

use std::collections::HashSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub i: usize,
    pub j: usize,
}

impl Node {
    #[inline]
    pub const fn new(i: usize, j: usize) -> Self {
        Self { i, j }
    }

    #[inline]
    pub fn is_adjacent(self, other: Node) -> bool {
        self.i.abs_diff(other.i) + self.j.abs_diff(other.j) == 1
    }
}

impl From<(usize, usize)> for Node {
    fn from((i, j): (usize, usize)) -> Self {
        Node { i, j }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Colour {
    Red,
    Black,
}

impl Colour {
    /// Red for odd `k`.
    #[inline]
    pub fn odd_red(k: usize) -> Self {
        if k % 2 == 1 {
            Colour::Red
        } else {
            Colour::Black
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Colour::Red => "red",
            Colour::Black => "black",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Point,
    Line,
    Legged,
    Ring,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Point(Node),
    /// Straight run of adjacent points.
    Line(Vec<Node>),
    /// Straight legs ordered tip to branch; each leg's last point is adjacent
    /// to the branch point.
    Legged {
        branch: Node,
        legs: Vec<Vec<Node>>,
    },
    /// Closed cycle starting at the lower-left corner, x increasing first.
    Ring(Vec<Node>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub colour: Colour,
    pub shape: Shape,
}

impl Block {
    pub fn kind(&self) -> BlockKind {
        match self.shape {
            Shape::Point(_) => BlockKind::Point,
            Shape::Line(_) => BlockKind::Line,
            Shape::Legged { .. } => BlockKind::Legged,
            Shape::Ring(_) => BlockKind::Ring,
        }
    }

    pub fn members(&self) -> Vec<Node> {
        match &self.shape {
            Shape::Point(p) => vec![*p],
            Shape::Line(pts) | Shape::Ring(pts) => pts.clone(),
            Shape::Legged { branch, legs } => {
                let mut v: Vec<Node> = legs.iter().flatten().copied().collect();
                v.push(*branch);
                v
            }
        }
    }

    pub fn len(&self) -> usize {
        match &self.shape {
            Shape::Point(_) => 1,
            Shape::Line(pts) | Shape::Ring(pts) => pts.len(),
            Shape::Legged { legs, .. } => 1 + legs.iter().map(Vec::len).sum::<usize>(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid edges joining members that the block's system couples directly.
    pub fn edges(&self) -> Vec<(Node, Node)> {
        let mut out = Vec::new();
        match &self.shape {
            Shape::Point(_) => {}
            Shape::Line(pts) => {
                out.extend(pts.windows(2).map(|w| (w[0], w[1])));
            }
            Shape::Ring(pts) => {
                out.extend(pts.windows(2).map(|w| (w[0], w[1])));
                out.push((*pts.last().unwrap(), pts[0]));
            }
            Shape::Legged { branch, legs } => {
                for leg in legs {
                    out.extend(leg.windows(2).map(|w| (w[0], w[1])));
                    out.push((*leg.last().unwrap(), *branch));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Checkerboard,
    ZebraX,
    ZebraY,
    Tweed,
    Wireframe,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Checkerboard => "checkerboard",
            Scheme::ZebraX => "zebra_x",
            Scheme::ZebraY => "zebra_y",
            Scheme::Tweed => "tweed",
            Scheme::Wireframe => "wireframe",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockLayout {
    pub scheme: Scheme,
    pub nx: usize,
    pub ny: usize,
    pub blocks: Vec<Block>,
}

fn check_even_sides(nx: usize, ny: usize) -> Result<()> {
    if nx < 4 || ny < 4 || !nx.is_multiple_of(2) || !ny.is_multiple_of(2) {
        return Err(Error::InvalidLayout(format!(
            "branched layouts need even nx, ny >= 4, got {nx}x{ny}"
        )));
    }
    Ok(())
}

fn check_interior(nx: usize, ny: usize) -> Result<()> {
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidLayout(format!(
            "no interior points on a {nx}x{ny} grid"
        )));
    }
    Ok(())
}

/// Red-black point blocks; red where `i + j` is even.
pub fn checkerboard_layout(nx: usize, ny: usize) -> Result<BlockLayout> {
    check_interior(nx, ny)?;
    let mut blocks = Vec::with_capacity((nx - 1) * (ny - 1));
    for j in 1..ny {
        for i in 1..nx {
            blocks.push(Block {
                colour: if (i + j) % 2 == 0 {
                    Colour::Red
                } else {
                    Colour::Black
                },
                shape: Shape::Point(Node::new(i, j)),
            });
        }
    }
    Ok(BlockLayout {
        scheme: Scheme::Checkerboard,
        nx,
        ny,
        blocks,
    })
}

/// Lines along x, one per interior row; odd rows are red.
pub fn zebra_x_layout(nx: usize, ny: usize) -> Result<BlockLayout> {
    check_interior(nx, ny)?;
    let blocks = (1..ny)
        .map(|j| Block {
            colour: Colour::odd_red(j),
            shape: Shape::Line((1..nx).map(|i| Node::new(i, j)).collect()),
        })
        .collect();
    Ok(BlockLayout {
        scheme: Scheme::ZebraX,
        nx,
        ny,
        blocks,
    })
}

/// Lines along y, one per interior column; odd columns are red.
pub fn zebra_y_layout(nx: usize, ny: usize) -> Result<BlockLayout> {
    check_interior(nx, ny)?;
    let blocks = (1..nx)
        .map(|i| Block {
            colour: Colour::odd_red(i),
            shape: Shape::Line((1..ny).map(|j| Node::new(i, j)).collect()),
        })
        .collect();
    Ok(BlockLayout {
        scheme: Scheme::ZebraY,
        nx,
        ny,
        blocks,
    })
}

/// Branched lines perpendicular to the nearest boundary.
///
/// With `s = min(mx, my)` and `c = (s + 1) / 2`:
/// - the four interior corners are red point blocks;
/// - around each corner, ring `k = 2..c` is an L-shaped two-legged block with
///   its branch at diagonal distance `k` and both legs running to the
///   boundaries, red for odd `k`;
/// - a square interior closes with one four-legged cross at the centre;
/// - a rectangular one gets two three-legged T blocks and full-length lines
///   across the middle strip, alternating in colour.
pub fn tweed_layout(nx: usize, ny: usize) -> Result<BlockLayout> {
    check_even_sides(nx, ny)?;
    let (mx, my) = (nx - 1, ny - 1);
    let c = mx.min(my).div_ceil(2);
    // Maps corner-local coordinates to grid coordinates.
    let corners: [&dyn Fn(usize, usize) -> Node; 4] = [
        &|a, b| Node::new(a, b),
        &|a, b| Node::new(mx + 1 - a, b),
        &|a, b| Node::new(a, my + 1 - b),
        &|a, b| Node::new(mx + 1 - a, my + 1 - b),
    ];

    let mut blocks = Vec::new();
    for map in &corners {
        blocks.push(Block {
            colour: Colour::Red,
            shape: Shape::Point(map(1, 1)),
        });
    }
    for k in 2..c {
        for map in &corners {
            let along_x: Vec<Node> = (1..k).map(|a| map(a, k)).collect();
            let along_y: Vec<Node> = (1..k).map(|b| map(k, b)).collect();
            blocks.push(Block {
                colour: Colour::odd_red(k),
                shape: Shape::Legged {
                    branch: map(k, k),
                    legs: vec![along_x, along_y],
                },
            });
        }
    }

    let leg_w = |j: usize, to: usize| (1..to).map(|i| Node::new(i, j)).collect::<Vec<_>>();
    let leg_e = |j: usize, from: usize| {
        (from + 1..=mx)
            .rev()
            .map(|i| Node::new(i, j))
            .collect::<Vec<_>>()
    };
    let leg_s = |i: usize, to: usize| (1..to).map(|j| Node::new(i, j)).collect::<Vec<_>>();
    let leg_n = |i: usize, from: usize| {
        (from + 1..=my)
            .rev()
            .map(|j| Node::new(i, j))
            .collect::<Vec<_>>()
    };

    let centre_colour = Colour::odd_red(c);
    if mx == my {
        blocks.push(Block {
            colour: centre_colour,
            shape: Shape::Legged {
                branch: Node::new(c, c),
                legs: vec![leg_w(c, c), leg_e(c, c), leg_s(c, c), leg_n(c, c)],
            },
        });
    } else if mx > my {
        let right = mx + 1 - c;
        blocks.push(Block {
            colour: centre_colour,
            shape: Shape::Legged {
                branch: Node::new(c, c),
                legs: vec![leg_w(c, c), leg_s(c, c), leg_n(c, c)],
            },
        });
        blocks.push(Block {
            colour: centre_colour,
            shape: Shape::Legged {
                branch: Node::new(right, c),
                legs: vec![leg_e(c, right), leg_s(right, c), leg_n(right, c)],
            },
        });
        for i in c + 1..right {
            blocks.push(Block {
                colour: Colour::odd_red(i),
                shape: Shape::Line((1..=my).map(|j| Node::new(i, j)).collect()),
            });
        }
    } else {
        let top = my + 1 - c;
        blocks.push(Block {
            colour: centre_colour,
            shape: Shape::Legged {
                branch: Node::new(c, c),
                legs: vec![leg_s(c, c), leg_w(c, c), leg_e(c, c)],
            },
        });
        blocks.push(Block {
            colour: centre_colour,
            shape: Shape::Legged {
                branch: Node::new(c, top),
                legs: vec![leg_n(c, top), leg_w(top, c), leg_e(top, c)],
            },
        });
        for j in c + 1..top {
            blocks.push(Block {
                colour: Colour::odd_red(j),
                shape: Shape::Line((1..=mx).map(|i| Node::new(i, j)).collect()),
            });
        }
    }

    Ok(BlockLayout {
        scheme: Scheme::Tweed,
        nx,
        ny,
        blocks,
    })
}

/// Concentric rectangular rings, outermost first and red, alternating inward,
/// closed by a centre point (square) or a line along the longer axis.
pub fn wireframe_layout(nx: usize, ny: usize) -> Result<BlockLayout> {
    check_even_sides(nx, ny)?;
    let (mx, my) = (nx - 1, ny - 1);
    let q = (mx.min(my) - 1) / 2;
    let mut blocks = Vec::with_capacity(q + 1);
    for r in 1..=q {
        let (lo_i, hi_i) = (r, mx + 1 - r);
        let (lo_j, hi_j) = (r, my + 1 - r);
        let mut pts = Vec::with_capacity(2 * (hi_i - lo_i + hi_j - lo_j));
        pts.extend((lo_i..=hi_i).map(|i| Node::new(i, lo_j)));
        pts.extend((lo_j + 1..=hi_j).map(|j| Node::new(hi_i, j)));
        pts.extend((lo_i..hi_i).rev().map(|i| Node::new(i, hi_j)));
        pts.extend((lo_j + 1..hi_j).rev().map(|j| Node::new(lo_i, j)));
        blocks.push(Block {
            colour: Colour::odd_red(r),
            shape: Shape::Ring(pts),
        });
    }
    let k = q + 1;
    let shape = if mx == my {
        Shape::Point(Node::new(k, k))
    } else if mx > my {
        Shape::Line((k..=mx - q).map(|i| Node::new(i, k)).collect())
    } else {
        Shape::Line((k..=my - q).map(|j| Node::new(k, j)).collect())
    };
    blocks.push(Block {
        colour: Colour::odd_red(k),
        shape,
    });
    Ok(BlockLayout {
        scheme: Scheme::Wireframe,
        nx,
        ny,
        blocks,
    })
}

impl BlockLayout {
    pub fn build(scheme: Scheme, nx: usize, ny: usize) -> Result<Self> {
        match scheme {
            Scheme::Checkerboard => checkerboard_layout(nx, ny),
            Scheme::ZebraX => zebra_x_layout(nx, ny),
            Scheme::ZebraY => zebra_y_layout(nx, ny),
            Scheme::Tweed => tweed_layout(nx, ny),
            Scheme::Wireframe => wireframe_layout(nx, ny),
        }
    }

    #[inline]
    fn mx(&self) -> usize {
        self.nx - 1
    }

    #[inline]
    fn my(&self) -> usize {
        self.ny - 1
    }

    /// Block id of every interior point, `None` where uncovered. Errors if a
    /// point is claimed twice or a member lies outside the interior.
    pub fn owner_map(&self) -> Result<Vec<Option<usize>>> {
        let (mx, my) = (self.mx(), self.my());
        let mut owner = vec![None; mx * my];
        for (b, block) in self.blocks.iter().enumerate() {
            for p in block.members() {
                if p.i < 1 || p.i > mx || p.j < 1 || p.j > my {
                    return Err(Error::InvalidLayout(format!(
                        "block {b} has non-interior member ({}, {})",
                        p.i, p.j
                    )));
                }
                let slot = &mut owner[(p.j - 1) * mx + (p.i - 1)];
                if let Some(prev) = *slot {
                    return Err(Error::InvalidLayout(format!(
                        "({}, {}) claimed by blocks {prev} and {b}",
                        p.i, p.j
                    )));
                }
                *slot = Some(b);
            }
        }
        Ok(owner)
    }

    /// Every interior point in exactly one block.
    pub fn is_partition(&self) -> bool {
        self.owner_map()
            .map(|o| o.iter().all(Option::is_some))
            .unwrap_or(false)
    }

    /// No two distinct blocks of one colour hold 4-neighbours.
    pub fn same_colour_independent(&self) -> bool {
        let Ok(owner) = self.owner_map() else {
            return false;
        };
        let (mx, my) = (self.mx(), self.my());
        let at = |i: usize, j: usize| owner[(j - 1) * mx + (i - 1)];
        for j in 1..=my {
            for i in 1..=mx {
                let Some(a) = at(i, j) else { continue };
                let check = |ni: usize, nj: usize| {
                    if let Some(b) = at(ni, nj) {
                        a == b || self.blocks[a].colour != self.blocks[b].colour
                    } else {
                        true
                    }
                };
                if i < mx && !check(i + 1, j) {
                    return false;
                }
                if j < my && !check(i, j + 1) {
                    return false;
                }
            }
        }
        true
    }

    /// Structural checks on each block: legs and lines are straight chains of
    /// neighbours, rings close.
    pub fn blocks_well_formed(&self) -> bool {
        let chain = |pts: &[Node]| pts.windows(2).all(|w| w[0].is_adjacent(w[1]));
        self.blocks.iter().all(|b| match &b.shape {
            Shape::Point(_) => true,
            Shape::Line(pts) => !pts.is_empty() && chain(pts),
            Shape::Ring(pts) => {
                pts.len() >= 4 && chain(pts) && pts.last().unwrap().is_adjacent(pts[0])
            }
            Shape::Legged { branch, legs } => {
                legs.len() >= 2
                    && legs.iter().all(|leg| {
                        !leg.is_empty()
                            && chain(leg)
                            && leg.last().unwrap().is_adjacent(*branch)
                            && (leg.iter().all(|p| p.i == branch.i)
                                || leg.iter().all(|p| p.j == branch.j))
                    })
            }
        })
    }

    pub fn count(&self, kind: BlockKind) -> usize {
        self.blocks.iter().filter(|b| b.kind() == kind).count()
    }

    /// Legged blocks with exactly `legs` legs.
    pub fn count_legged(&self, legs: usize) -> usize {
        self.blocks
            .iter()
            .filter(|b| matches!(&b.shape, Shape::Legged { legs: l, .. } if l.len() == legs))
            .count()
    }

    pub fn edge_set(&self) -> HashSet<(Node, Node)> {
        self.blocks
            .iter()
            .flat_map(Block::edges)
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect()
    }
}

/// Number of grid edges joining two interior points.
pub fn interior_edge_count(nx: usize, ny: usize) -> usize {
    let (mx, my) = (nx - 1, ny - 1);
    (mx - 1) * my + mx * (my - 1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeCoverReport {
    pub tweed_edges: usize,
    pub wireframe_edges: usize,
    pub interior_edges: usize,
    pub disjoint: bool,
    /// Union equals all interior-interior edges.
    pub complete: bool,
}

/// Compares the intra-block edges of two layouts on the same grid.
pub fn edge_cover_check(tweed: &BlockLayout, wire: &BlockLayout) -> Result<EdgeCoverReport> {
    if (tweed.nx, tweed.ny) != (wire.nx, wire.ny) {
        return Err(Error::DimensionMismatch {
            expected: (tweed.nx, tweed.ny),
            got: (wire.nx, wire.ny),
        });
    }
    let a = tweed.edge_set();
    let b = wire.edge_set();
    let total = interior_edge_count(tweed.nx, tweed.ny);
    let disjoint = a.is_disjoint(&b);
    let union = a.union(&b).count();
    Ok(EdgeCoverReport {
        tweed_edges: a.len(),
        wireframe_edges: b.len(),
        interior_edges: total,
        disjoint,
        complete: union == total,
    })
}

/// All smoother layouts of one level.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelLayouts {
    pub checkerboard: BlockLayout,
    pub zebra_x: BlockLayout,
    pub zebra_y: BlockLayout,
    pub tweed: BlockLayout,
    pub wireframe: BlockLayout,
}

impl LevelLayouts {
    pub fn build(nx: usize, ny: usize) -> Result<Self> {
        check_even_sides(nx, ny)?;
        Ok(Self {
            checkerboard: checkerboard_layout(nx, ny)?,
            zebra_x: zebra_x_layout(nx, ny)?,
            zebra_y: zebra_y_layout(nx, ny)?,
            tweed: tweed_layout(nx, ny)?,
            wireframe: wireframe_layout(nx, ny)?,
        })
    }

    pub fn get(&self, scheme: Scheme) -> &BlockLayout {
        match scheme {
            Scheme::Checkerboard => &self.checkerboard,
            Scheme::ZebraX => &self.zebra_x,
            Scheme::ZebraY => &self.zebra_y,
            Scheme::Tweed => &self.tweed,
            Scheme::Wireframe => &self.wireframe,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tweed_5x5_census() {
        let t = tweed_layout(6, 6).unwrap();
        assert_eq!(t.count(BlockKind::Point), 4);
        assert_eq!(t.count_legged(2), 4);
        assert_eq!(t.count_legged(4), 1);
        assert_eq!(t.blocks.len(), 9);
        assert_eq!(t.blocks.iter().map(Block::len).sum::<usize>(), 25);
        assert!(t.is_partition());
        assert!(t.same_colour_independent());
        assert!(t.blocks_well_formed());
    }

    #[test]
    fn tweed_7x5() {
        let t = tweed_layout(8, 6).unwrap();
        assert_eq!(t.count(BlockKind::Point), 4);
        assert_eq!(t.count_legged(2), 4);
        assert_eq!(t.count_legged(3), 2);
        assert_eq!(t.count(BlockKind::Line), 1);
        let line = t
            .blocks
            .iter()
            .find(|b| b.kind() == BlockKind::Line)
            .unwrap();
        assert!(line.members().iter().all(|p| p.i == 4));
        assert_eq!(line.len(), 5);
        assert!(t.is_partition());
        assert!(t.same_colour_independent());
    }

    #[test]
    fn wireframe_censuses() {
        let w = wireframe_layout(6, 6).unwrap();
        let sizes: Vec<_> = w.blocks.iter().map(Block::len).collect();
        assert_eq!(sizes, vec![16, 8, 1]);
        assert_eq!(w.blocks[0].colour, Colour::Red);

        let w = wireframe_layout(8, 6).unwrap();
        let sizes: Vec<_> = w.blocks.iter().map(Block::len).collect();
        assert_eq!(sizes, vec![20, 12, 3]);
        assert!(w.blocks[2].members().iter().all(|p| p.j == 3));

        let w = wireframe_layout(4, 4).unwrap();
        let sizes: Vec<_> = w.blocks.iter().map(Block::len).collect();
        assert_eq!(sizes, vec![8, 1]);
    }

    #[test]
    fn ring_order_matches_box_example() {
        // 3x3 ring with corners (2,2)..(4,4) in 1-based figure numbering is
        // the r = 1 ring of a 3x3 interior here, shifted by one.
        let w = wireframe_layout(4, 4).unwrap();
        let Shape::Ring(pts) = &w.blocks[0].shape else {
            panic!("expected ring")
        };
        let got: Vec<_> = pts.iter().map(|p| (p.i, p.j)).collect();
        assert_eq!(
            got,
            vec![
                (1, 1),
                (2, 1),
                (3, 1),
                (3, 2),
                (3, 3),
                (2, 3),
                (1, 3),
                (1, 2)
            ]
        );
    }

    #[test]
    fn edge_cover_small() {
        let r = edge_cover_check(
            &tweed_layout(6, 6).unwrap(),
            &wireframe_layout(6, 6).unwrap(),
        )
        .unwrap();
        assert_eq!(
            r,
            EdgeCoverReport {
                tweed_edges: 16,
                wireframe_edges: 24,
                interior_edges: 40,
                disjoint: true,
                complete: true
            }
        );
        let r = edge_cover_check(
            &tweed_layout(4, 4).unwrap(),
            &wireframe_layout(4, 4).unwrap(),
        )
        .unwrap();
        assert_eq!(r.interior_edges, 12);
        assert!(r.disjoint && r.complete);
    }

    #[test]
    fn rejects_small_or_odd() {
        assert!(tweed_layout(2, 4).is_err());
        assert!(wireframe_layout(6, 5).is_err());
        assert!(checkerboard_layout(1, 4).is_err());
    }

    #[test]
    fn zebra_and_checkerboard_are_partitions() {
        for (nx, ny) in [(2, 2), (4, 8), (8, 6)] {
            for l in [
                checkerboard_layout(nx, ny).unwrap(),
                zebra_x_layout(nx, ny).unwrap(),
                zebra_y_layout(nx, ny).unwrap(),
            ] {
                assert!(l.is_partition());
                assert!(l.same_colour_independent());
            }
        }
    }
}
