//! Placement enumeration by developing polyominoes across edge transitions.
//!
//! A placement is found by walking a spanning tree of the tile's adjacency
//! graph from its normalization root, transporting the local frame with
//! [`frame_map`] at every crossed edge. Gluings let tiles wrap through
//! identified sides; the closure check over all (not just tree) adjacencies
//! rejects developments that fold over cone points.

use std::collections::BTreeMap;

use crate::grid::{frame_map, CellId, Direction, SurfaceGrid, Symmetry};
use crate::polyomino::{Polyomino, SymmetryPolicy};

/// A set of distinct grid cells covered by one developed copy of a prototile.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Placement {
    /// Covered cells, sorted ascending.
    pub cells: Vec<CellId>,
    pub tile: String,
    /// Where the tile's root cell landed (diagnostic).
    pub anchor: CellId,
    /// Initial frame applied at the root cell (diagnostic).
    pub frame: Symmetry,
}

/// Develops `p` on the grid with its root cell on `anchor` and initial frame
/// `frame`. Returns `None` (Reject) if the development leaves the grid, hits
/// a removed cell, covers a cell twice, or fails the closure check.
pub fn develop(
    grid: &SurfaceGrid,
    anchor: CellId,
    frame: Symmetry,
    p: &Polyomino,
) -> Option<Placement> {
    if grid.is_removed(anchor) {
        return None;
    }
    let offsets = p.cells();
    let index: BTreeMap<(i32, i32), usize> =
        offsets.iter().enumerate().map(|(i, &rc)| (rc, i)).collect();
    let mut state: Vec<Option<(CellId, Symmetry)>> = vec![None; offsets.len()];
    state[0] = Some((anchor, frame));

    // BFS spanning tree from the root (offsets are sorted, root is first).
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let u = queue[head];
        head += 1;
        let (cell, f) = state[u].unwrap();
        for d in Direction::ALL {
            let (dr, dc) = d.offset();
            let target = (offsets[u].0 + dr, offsets[u].1 + dc);
            let Some(&v) = index.get(&target) else { continue };
            if state[v].is_some() {
                continue;
            }
            let step = f.apply(d);
            let t = grid.neighbor(cell, step)?;
            if grid.is_removed(t.target) {
                return None;
            }
            state[v] = Some((t.target, frame_map(step, &t).compose(f)));
            queue.push(v);
        }
    }

    // Closure: every adjacency of the tile must be realized by the matching
    // grid edge with consistent frames.
    for (u, &(ur, uc)) in offsets.iter().enumerate() {
        for d in [Direction::East, Direction::South] {
            let (dr, dc) = d.offset();
            let Some(&v) = index.get(&(ur + dr, uc + dc)) else {
                continue;
            };
            let (cu, fu) = state[u].unwrap();
            let (cv, fv) = state[v].unwrap();
            let step = fu.apply(d);
            let t = grid.neighbor(cu, step)?;
            if t.target != cv || frame_map(step, &t).compose(fu) != fv {
                return None;
            }
        }
    }

    let mut cells: Vec<CellId> = state.iter().map(|s| s.unwrap().0).collect();
    cells.sort_unstable();
    if cells.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(Placement {
        cells,
        tile: p.name().unwrap_or("tile").to_string(),
        anchor,
        frame,
    })
}

/// All placements of the given tiles on the grid: every allowed frame at
/// every non-removed anchor, deduplicated by covered cell set and sorted.
pub fn enumerate_placements(
    grid: &SurfaceGrid,
    tiles: &[(Polyomino, SymmetryPolicy)],
) -> Vec<Placement> {
    let mut by_cells: BTreeMap<Vec<CellId>, Placement> = BTreeMap::new();
    for (p, policy) in tiles {
        for anchor in grid.active_cells() {
            for frame in policy.frames() {
                if let Some(pl) = develop(grid, anchor, frame, p) {
                    by_cells.entry(pl.cells.clone()).or_insert(pl);
                }
            }
        }
    }
    by_cells.into_values().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{elaborate, generate, parse_surface, Model};
    use crate::polyomino::catalog;

    fn tile(name: &str) -> (Polyomino, SymmetryPolicy) {
        (catalog(name).unwrap(), SymmetryPolicy::Free)
    }

    #[test]
    fn torus_row_wraps() {
        // 1x4 torus row: horizontal I4 wraps from every anchor.
        let g = generate(Model::Torus { rows: 1, cols: 4 }, &[]).unwrap();
        let i4 = catalog("I4").unwrap();
        for anchor in g.active_cells() {
            assert!(develop(&g, anchor, Symmetry::IDENTITY, &i4).is_some());
        }
        // 1x3 torus row: the fourth cell repeats the first.
        let g3 = generate(Model::Torus { rows: 1, cols: 3 }, &[]).unwrap();
        assert!(develop(&g3, CellId(0), Symmetry::IDENTITY, &i4).is_none());
    }

    #[test]
    fn boundary_rejects() {
        let g = generate(Model::Rect { rows: 2, cols: 3 }, &[]).unwrap();
        let i4 = catalog("I4").unwrap();
        assert!(develop(&g, g.cell_at("P", 1, 1).unwrap(), Symmetry::IDENTITY, &i4).is_none());
    }

    #[test]
    fn removed_cell_rejects() {
        let g = generate(Model::Rect { rows: 1, cols: 4 }, &[(1, 2)]).unwrap();
        let i4 = catalog("I4").unwrap();
        assert!(develop(&g, g.cell_at("P", 1, 1).unwrap(), Symmetry::IDENTITY, &i4).is_none());
        assert!(develop(&g, g.cell_at("P", 1, 2).unwrap(), Symmetry::IDENTITY, &i4).is_none());
    }

    /// Three unit squares glued around a single interior vertex (cone angle
    /// 3*pi/2); a 2x2 square tile cannot close up around it.
    #[test]
    fn cone_vertex_rejects_square_tile() {
        let text = "grid cone3\n\
                    patch A 1 1\npatch B 1 1\npatch C 1 1\n\
                    glue A.right[1..1] B.left[1..1]\n\
                    glue B.bottom[1..1] C.top[1..1]\n\
                    glue C.left[1..1] A.bottom[1..1] reversed\n";
        let g = elaborate(&parse_surface(text).unwrap()).unwrap();
        let t = g.topology();
        assert_eq!(t.cone_points, vec![(t.cone_points[0].0, 3)]);
        assert!(t.orientable);
        let o4 = catalog("O4").unwrap();
        for anchor in g.active_cells() {
            for frame in Symmetry::all() {
                assert!(develop(&g, anchor, frame, &o4).is_none());
            }
        }
        assert!(enumerate_placements(&g, &[tile("O4")]).is_empty());
    }

    /// Five unit squares around a vertex (cone angle 5*pi/2): the 2x2 tile
    /// reaches four distinct cells but the closing adjacency lands on the
    /// fifth square, so closure fails.
    #[test]
    fn five_cone_fails_closure_with_distinct_cells() {
        let text = "grid cone5\n\
                    patch A 1 1\npatch B 1 1\npatch C 1 1\npatch D 1 1\npatch E 1 1\n\
                    glue A.right[1..1] B.left[1..1]\n\
                    glue B.bottom[1..1] C.top[1..1]\n\
                    glue C.left[1..1] D.top[1..1]\n\
                    glue D.left[1..1] E.top[1..1]\n\
                    glue E.left[1..1] A.bottom[1..1] reversed\n";
        let g = elaborate(&parse_surface(text).unwrap()).unwrap();
        let t = g.topology();
        assert!(t.orientable);
        assert_eq!(t.boundary_components, 1);
        assert_eq!(t.cone_points.iter().map(|c| c.1).collect::<Vec<_>>(), vec![5]);
        assert!(enumerate_placements(&g, &[tile("O4")]).is_empty());
    }

    #[test]
    fn torus_bar_count() {
        let g = generate(Model::Torus { rows: 6, cols: 6 }, &[]).unwrap();
        let pls = enumerate_placements(&g, &[tile("I4")]);
        assert_eq!(pls.len(), 72);
        // Wrapping fully around a 4-cycle dedupes to one placement per line.
        let g4 = generate(Model::Torus { rows: 4, cols: 4 }, &[]).unwrap();
        assert_eq!(enumerate_placements(&g4, &[tile("I4")]).len(), 8);
    }

    #[test]
    fn planar_bar_count_matches_formula() {
        // m(n-3) + n(m-3) placements of a free bar of 4 on an m x n rectangle.
        for (m, n) in [(8u32, 8u32), (4, 7), (5, 5)] {
            let g = generate(Model::Rect { rows: m, cols: n }, &[]).unwrap();
            let got = enumerate_placements(&g, &[tile("I4")]).len();
            let expect = (m * n.saturating_sub(3) + n * m.saturating_sub(3)) as usize;
            assert_eq!(got, expect, "{m}x{n}");
        }
    }

    #[test]
    fn chessboard_domino_count() {
        let g = generate(Model::Rect { rows: 8, cols: 8 }, &[(1, 1), (8, 8)]).unwrap();
        let pls = enumerate_placements(&g, &[tile("domino")]);
        // 2*8*7 planar dominoes minus the 4 touching the removed corners.
        assert_eq!(pls.len(), 108);
        for pl in &pls {
            assert_eq!(pl.cells.len(), 2);
            assert!(pl.cells.iter().all(|&c| !g.is_removed(c)));
        }
    }

    #[test]
    fn placements_are_distinct_sorted_sets() {
        let g = generate(Model::Klein { rows: 4, cols: 4 }, &[]).unwrap();
        let pls = enumerate_placements(&g, &[tile("T4")]);
        for w in pls.windows(2) {
            assert!(w[0].cells < w[1].cells);
        }
        for pl in &pls {
            assert!(pl.cells.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn relabeling_patches_permutes_placements() {
        // The same 2x4 strip built from two 2x2 patches, declared in both
        // orders; placements must correspond under the label bijection.
        let a = "grid s\npatch A 2 2\npatch B 2 2\nglue A.right[1..2] B.left[1..2]\n";
        let b = "grid s\npatch B 2 2\npatch A 2 2\nglue A.right[1..2] B.left[1..2]\n";
        let ga = elaborate(&parse_surface(a).unwrap()).unwrap();
        let gb = elaborate(&parse_surface(b).unwrap()).unwrap();
        let key = |g: &SurfaceGrid, pls: &[Placement]| -> Vec<Vec<String>> {
            let mut v: Vec<Vec<String>> = pls
                .iter()
                .map(|p| p.cells.iter().map(|&c| g.label(c).to_string()).collect())
                .collect();
            v.iter_mut().for_each(|c| c.sort());
            v.sort();
            v
        };
        let pa = enumerate_placements(&ga, &[tile("L3")]);
        let pb = enumerate_placements(&gb, &[tile("L3")]);
        assert_eq!(key(&ga, &pa), key(&gb, &pb));
    }
}
