//! Quotient cell complexes: finite square grids glued into surfaces.
//!
//! A [`SurfaceGrid`] is a set of unit cells together with a total transition
//! map `(cell, side) -> Transition | Boundary`. Crossing a glued edge
//! transports the local frame by an element of the square's symmetry group;
//! the chirality bit of a gluing records whether that element preserves or
//! reverses orientation. Topological invariants (Euler characteristic,
//! orientability, boundary components, genus, cone points) are computed on
//! the quotient complex.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

/// Local edge label on a unit cell, in clockwise order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Direction {
    North,
    East,
    South,
    West,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::North,
        Direction::East,
        Direction::South,
        Direction::West,
    ];

    pub fn index(self) -> usize {
        match self {
            Direction::North => 0,
            Direction::East => 1,
            Direction::South => 2,
            Direction::West => 3,
        }
    }

    pub fn from_index(i: usize) -> Direction {
        Direction::ALL[i % 4]
    }

    pub fn opposite(self) -> Direction {
        Direction::from_index(self.index() + 2)
    }

    /// Clockwise quarter turn (N -> E -> S -> W -> N).
    pub fn rot90(self) -> Direction {
        Direction::from_index(self.index() + 1)
    }

    /// Reflection across the vertical (north-south) axis: E and W swap.
    pub fn mirrored(self) -> Direction {
        Direction::from_index(4 - self.index())
    }

    /// Step as a (row, col) offset; rows grow southward, cols eastward.
    pub fn offset(self) -> (i32, i32) {
        match self {
            Direction::North => (-1, 0),
            Direction::East => (0, 1),
            Direction::South => (1, 0),
            Direction::West => (0, -1),
        }
    }

    pub fn perpendicular(self) -> [Direction; 2] {
        [self.rot90(), self.opposite().rot90()]
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::North => "N",
            Direction::East => "E",
            Direction::South => "S",
            Direction::West => "W",
        };
        f.write_str(s)
    }
}

/// An element of the 8-element symmetry group of the square, acting on
/// directions as `d -> rot^r (mirror^f (d))` with `mirror` the reflection
/// across the vertical axis.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Symmetry {
    rot: u8,
    flip: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { rot: 0, flip: false };

    pub fn new(rot: u8, flip: bool) -> Symmetry {
        Symmetry { rot: rot % 4, flip }
    }

    /// Pure clockwise rotation by `quarter_turns` quarter turns.
    pub fn rotation(quarter_turns: u8) -> Symmetry {
        Symmetry::new(quarter_turns, false)
    }

    pub fn all() -> [Symmetry; 8] {
        let mut out = [Symmetry::IDENTITY; 8];
        for r in 0..4u8 {
            out[r as usize] = Symmetry::new(r, false);
            out[4 + r as usize] = Symmetry::new(r, true);
        }
        out
    }

    pub fn rotations() -> [Symmetry; 4] {
        [
            Symmetry::rotation(0),
            Symmetry::rotation(1),
            Symmetry::rotation(2),
            Symmetry::rotation(3),
        ]
    }

    pub fn apply(self, d: Direction) -> Direction {
        let base = if self.flip { d.mirrored() } else { d };
        Direction::from_index(base.index() + self.rot as usize)
    }

    /// Action on (row, col) offsets, consistent with [`Symmetry::apply`]:
    /// `apply_offset(d.offset()) == apply(d).offset()`.
    pub fn apply_offset(self, (r, c): (i32, i32)) -> (i32, i32) {
        let (mut r, mut c) = if self.flip { (r, -c) } else { (r, c) };
        for _ in 0..self.rot {
            let (nr, nc) = (c, -r);
            r = nr;
            c = nc;
        }
        (r, c)
    }

    /// Composition `self ∘ first` (apply `first`, then `self`).
    pub fn compose(self, first: Symmetry) -> Symmetry {
        let rot = if self.flip {
            4 + self.rot as i8 - first.rot as i8
        } else {
            self.rot as i8 + first.rot as i8
        };
        Symmetry::new(rot.rem_euclid(4) as u8, self.flip != first.flip)
    }

    pub fn inverse(self) -> Symmetry {
        if self.flip {
            self
        } else {
            Symmetry::new(4 - self.rot, false)
        }
    }

    pub fn is_orientation_preserving(self) -> bool {
        !self.flip
    }
}

/// Whether frame transport across a gluing preserves or reverses orientation.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Chirality {
    Preserving,
    Reversing,
}

/// Dense 0-based identifier into a grid's cell table.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CellId(pub usize);

/// Human-readable cell label: patch id plus 1-based (row, col) from the
/// patch's top-left corner.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CellLabel {
    pub patch: String,
    pub row: u32,
    pub col: u32,
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.patch, self.row, self.col)
    }
}

/// Result of crossing a glued edge.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Transition {
    pub target: CellId,
    /// Side of the target through which one enters.
    pub entry: Direction,
    pub chirality: Chirality,
}

/// The unique square symmetry `g` with `g(exit) = opposite(t.entry)` whose
/// orientation character matches the transition's chirality. Composing the
/// current frame with `g` transports it across the edge.
pub fn frame_map(exit: Direction, t: &Transition) -> Symmetry {
    let target = t.entry.opposite();
    match t.chirality {
        Chirality::Preserving => {
            Symmetry::new((4 + target.index() - exit.index()) as u8 % 4, false)
        }
        Chirality::Reversing => {
            Symmetry::new((4 + target.index() - exit.mirrored().index()) as u8 % 4, true)
        }
    }
}

#[derive(Clone, Debug)]
struct Patch {
    name: String,
    rows: u32,
    cols: u32,
    base: usize,
}

/// Topological invariants of the quotient complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TopologyReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub orientable: bool,
    pub boundary_components: usize,
    pub genus: usize,
    /// Interior quotient vertices whose incident-square count differs from 4
    /// (total cone angle = count * pi/2), as (vertex id, count).
    pub cone_points: Vec<(usize, usize)>,
}

#[derive(Error, Debug)]
pub enum GridError {
    #[error("edge {cell}:{dir} is glued to itself")]
    SelfGluedEdge { cell: String, dir: Direction },
    #[error("inconsistent gluing: {a}:{da} maps to {b}:{db} but not back")]
    BrokenInvolution {
        a: String,
        da: Direction,
        b: String,
        db: Direction,
    },
    #[error("transition target out of range for {cell}:{dir}")]
    BadTarget { cell: String, dir: Direction },
}

/// A finite square grid on a surface: the quotient cell complex.
///
/// Immutable after construction; removed cells stay in the cell table (they
/// keep their labels and take part in the quotient complex) but are excluded
/// from tiling.
#[derive(Clone, Debug)]
pub struct SurfaceGrid {
    name: String,
    patches: Vec<Patch>,
    transitions: Vec<[Option<Transition>; 4]>,
    removed: Vec<bool>,
    warnings: Vec<String>,
}

impl SurfaceGrid {
    /// Builds and validates a grid from raw parts. `transitions` must hold
    /// one entry per cell; validation checks the gluing involution and
    /// rejects edges glued to themselves.
    pub fn from_parts(
        name: String,
        patches: Vec<(String, u32, u32)>,
        transitions: Vec<[Option<Transition>; 4]>,
        removed: Vec<bool>,
    ) -> Result<SurfaceGrid, GridError> {
        let mut ps = Vec::with_capacity(patches.len());
        let mut base = 0usize;
        for (name, rows, cols) in patches {
            ps.push(Patch { name, rows, cols, base });
            base += rows as usize * cols as usize;
        }
        assert_eq!(transitions.len(), base, "one transition row per cell");
        assert_eq!(removed.len(), base);
        let mut grid = SurfaceGrid {
            name,
            patches: ps,
            transitions,
            removed,
            warnings: Vec::new(),
        };
        grid.validate()?;
        if !grid.active_connected() {
            grid.warnings
                .push("non-removed cells are not edge-connected".to_string());
        }
        Ok(grid)
    }

    fn validate(&self) -> Result<(), GridError> {
        for cell in self.cells() {
            for dir in Direction::ALL {
                let Some(t) = self.transitions[cell.0][dir.index()] else {
                    continue;
                };
                if t.target.0 >= self.cell_count() {
                    return Err(GridError::BadTarget {
                        cell: self.label(cell).to_string(),
                        dir,
                    });
                }
                if t.target == cell && t.entry == dir {
                    return Err(GridError::SelfGluedEdge {
                        cell: self.label(cell).to_string(),
                        dir,
                    });
                }
                let back = self.transitions[t.target.0][t.entry.index()];
                let ok = back
                    .map(|b| b.target == cell && b.entry == dir && b.chirality == t.chirality)
                    .unwrap_or(false);
                if !ok {
                    return Err(GridError::BrokenInvolution {
                        a: self.label(cell).to_string(),
                        da: dir,
                        b: self.label(t.target).to_string(),
                        db: t.entry,
                    });
                }
            }
        }
        Ok(())
    }

    fn active_connected(&self) -> bool {
        let Some(start) = self.cells().find(|c| !self.removed[c.0]) else {
            return true;
        };
        let mut seen = vec![false; self.cell_count()];
        let mut queue = VecDeque::from([start]);
        seen[start.0] = true;
        let mut reached = 1usize;
        while let Some(c) = queue.pop_front() {
            for d in Direction::ALL {
                if let Some(t) = self.neighbor(c, d) {
                    if !self.removed[t.target.0] && !seen[t.target.0] {
                        seen[t.target.0] = true;
                        reached += 1;
                        queue.push_back(t.target);
                    }
                }
            }
        }
        reached == self.cells().filter(|c| !self.removed[c.0]).count()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub(crate) fn push_warning(&mut self, w: String) {
        self.warnings.push(w);
    }

    pub fn cell_count(&self) -> usize {
        self.transitions.len()
    }

    pub fn cells(&self) -> impl Iterator<Item = CellId> {
        (0..self.cell_count()).map(CellId)
    }

    /// Non-removed cells in ascending id order.
    pub fn active_cells(&self) -> Vec<CellId> {
        self.cells().filter(|c| !self.removed[c.0]).collect()
    }

    pub fn is_removed(&self, cell: CellId) -> bool {
        self.removed[cell.0]
    }

    pub fn removed_count(&self) -> usize {
        self.removed.iter().filter(|&&r| r).count()
    }

    pub fn label(&self, cell: CellId) -> CellLabel {
        let p = self
            .patches
            .iter()
            .rev()
            .find(|p| cell.0 >= p.base)
            .expect("cell id in range");
        let off = cell.0 - p.base;
        CellLabel {
            patch: p.name.clone(),
            row: (off / p.cols as usize) as u32 + 1,
            col: (off % p.cols as usize) as u32 + 1,
        }
    }

    /// Looks up a cell by its (patch, row, col) label; rows and cols 1-based.
    pub fn cell_at(&self, patch: &str, row: u32, col: u32) -> Option<CellId> {
        let p = self.patches.iter().find(|p| p.name == patch)?;
        if row == 0 || col == 0 || row > p.rows || col > p.cols {
            return None;
        }
        Some(CellId(
            p.base + (row as usize - 1) * p.cols as usize + (col as usize - 1),
        ))
    }

    pub fn patch_dims(&self) -> Vec<(String, u32, u32)> {
        self.patches
            .iter()
            .map(|p| (p.name.clone(), p.rows, p.cols))
            .collect()
    }

    /// The stored transition for `(cell, dir)`; `None` means the edge is on
    /// the boundary (unglued).
    ///
    /// Panics if `cell` is not a valid id for this grid (usage error).
    pub fn neighbor(&self, cell: CellId, dir: Direction) -> Option<Transition> {
        assert!(cell.0 < self.cell_count(), "unknown cell {:?}", cell);
        self.transitions[cell.0][dir.index()]
    }

    /// Invariants of the full quotient complex (removed cells included).
    pub fn topology(&self) -> TopologyReport {
        self.topology_of(|_| true)
    }

    /// Invariants of the subcomplex spanned by non-removed cells; gluings to
    /// removed cells count as boundary.
    pub fn topology_masked(&self) -> TopologyReport {
        self.topology_of(|c| !self.removed[c.0])
    }

    fn topology_of(&self, keep: impl Fn(CellId) -> bool) -> TopologyReport {
        let kept: Vec<CellId> = self.cells().filter(|&c| keep(c)).collect();
        let faces = kept.len();
        if faces == 0 {
            return TopologyReport {
                vertices: 0,
                edges: 0,
                faces: 0,
                euler: 0,
                orientable: true,
                boundary_components: 0,
                genus: 0,
                cone_points: Vec::new(),
            };
        }
        let index_of = {
            let mut map = vec![usize::MAX; self.cell_count()];
            for (i, c) in kept.iter().enumerate() {
                map[c.0] = i;
            }
            map
        };
        // Effective transition inside the subcomplex.
        let trans = |c: CellId, d: Direction| -> Option<Transition> {
            self.neighbor(c, d).filter(|t| index_of[t.target.0] != usize::MAX)
        };

        // Corner slot k of a cell sits between side k and side k+1 (cw).
        let corner = |c: CellId, a: Direction, b: Direction| -> usize {
            let k = if b == a.rot90() { a.index() } else { b.index() };
            index_of[c.0] * 4 + k
        };
        let mut verts = UnionFind::new(faces * 4);
        let mut edges = 0usize;
        let mut boundary_sides: Vec<(CellId, Direction)> = Vec::new();
        for &c in &kept {
            for d in Direction::ALL {
                match trans(c, d) {
                    Some(t) => {
                        // Count each glued edge once.
                        if (c, d) < (t.target, t.entry) {
                            edges += 1;
                        }
                        let g = frame_map(d, &t);
                        for e in d.perpendicular() {
                            verts.union(corner(c, d, e), corner(t.target, t.entry, g.apply(e)));
                        }
                    }
                    None => {
                        edges += 1;
                        boundary_sides.push((c, d));
                    }
                }
            }
        }
        let vertices = verts.class_count();

        // Orientability: propagate a sign across transitions.
        let mut sign = vec![0i8; faces];
        let mut orientable = true;
        for start in 0..faces {
            if sign[start] != 0 {
                continue;
            }
            sign[start] = 1;
            let mut queue = VecDeque::from([kept[start]]);
            while let Some(c) = queue.pop_front() {
                for d in Direction::ALL {
                    let Some(t) = trans(c, d) else { continue };
                    let want = match t.chirality {
                        Chirality::Preserving => sign[index_of[c.0]],
                        Chirality::Reversing => -sign[index_of[c.0]],
                    };
                    let s = &mut sign[index_of[t.target.0]];
                    if *s == 0 {
                        *s = want;
                        queue.push_back(t.target);
                    } else if *s != want {
                        orientable = false;
                    }
                }
            }
        }

        // Boundary components: connected components of the graph whose nodes
        // are quotient vertices and whose edges are boundary sides.
        let mut on_boundary = vec![false; faces * 4];
        let mut bnd = UnionFind::new(faces * 4);
        for &(c, d) in &boundary_sides {
            let [e1, e2] = d.perpendicular();
            let v1 = verts.find(corner(c, d, e1));
            let v2 = verts.find(corner(c, d, e2));
            on_boundary[v1] = true;
            on_boundary[v2] = true;
            bnd.union(v1, v2);
        }
        let mut comp_roots: Vec<usize> = (0..faces * 4)
            .filter(|&v| on_boundary[v] && verts.find(v) == v)
            .map(|v| bnd.find(v))
            .collect();
        comp_roots.sort_unstable();
        comp_roots.dedup();
        let boundary_components = comp_roots.len();

        let euler = vertices as i64 - edges as i64 + faces as i64;
        let genus = if orientable {
            ((2 - euler - boundary_components as i64).max(0) / 2) as usize
        } else {
            (2 - euler - boundary_components as i64).max(0) as usize
        };

        // Cone points: interior vertices with incident-square count != 4.
        let mut slot_count = vec![0usize; faces * 4];
        for slot in 0..faces * 4 {
            slot_count[verts.find(slot)] += 1;
        }
        let mut cone_points: Vec<(usize, usize)> = (0..faces * 4)
            .filter(|&v| verts.find(v) == v && !on_boundary[v] && slot_count[v] != 4)
            .map(|v| (v, slot_count[v]))
            .collect();
        cone_points.sort_unstable();

        TopologyReport {
            vertices,
            edges,
            faces,
            euler,
            orientable,
            boundary_components,
            genus,
            cone_points,
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller index as root so class ids are stable.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn class_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{generate, Model};

    #[test]
    fn direction_involution_and_rotation() {
        for d in Direction::ALL {
            assert_eq!(d.opposite().opposite(), d);
            assert_eq!(d.rot90().rot90().rot90().rot90(), d);
        }
    }

    #[test]
    fn symmetry_offset_action_matches_direction_action() {
        for s in Symmetry::all() {
            for d in Direction::ALL {
                assert_eq!(s.apply_offset(d.offset()), s.apply(d).offset());
            }
        }
    }

    #[test]
    fn symmetry_compose_and_inverse() {
        for a in Symmetry::all() {
            assert_eq!(a.compose(a.inverse()), Symmetry::IDENTITY);
            assert_eq!(a.inverse().compose(a), Symmetry::IDENTITY);
            for b in Symmetry::all() {
                for d in Direction::ALL {
                    assert_eq!(a.compose(b).apply(d), a.apply(b.apply(d)));
                }
            }
        }
    }

    #[test]
    fn frame_map_is_the_unique_constrained_element() {
        // Exhaustive: for every (exit, entry, chirality) the returned element
        // is the only one of the 8 satisfying both constraints.
        for exit in Direction::ALL {
            for entry in Direction::ALL {
                for chi in [Chirality::Preserving, Chirality::Reversing] {
                    let t = Transition {
                        target: CellId(0),
                        entry,
                        chirality: chi,
                    };
                    let g = frame_map(exit, &t);
                    let hits: Vec<Symmetry> = Symmetry::all()
                        .into_iter()
                        .filter(|s| {
                            s.apply(exit) == entry.opposite()
                                && s.is_orientation_preserving()
                                    == (chi == Chirality::Preserving)
                        })
                        .collect();
                    assert_eq!(hits, vec![g]);
                }
            }
        }
    }

    #[test]
    fn frame_map_examples() {
        let t = |entry, chirality| Transition {
            target: CellId(0),
            entry,
            chirality,
        };
        assert_eq!(
            frame_map(Direction::East, &t(Direction::West, Chirality::Preserving)),
            Symmetry::IDENTITY
        );
        assert_eq!(
            frame_map(Direction::East, &t(Direction::East, Chirality::Preserving)),
            Symmetry::rotation(2)
        );
        // exit N entering N reversing: the reflection sending N->S, E->E.
        let g = frame_map(Direction::North, &t(Direction::North, Chirality::Reversing));
        assert_eq!(g.apply(Direction::North), Direction::South);
        assert_eq!(g.apply(Direction::East), Direction::East);
    }

    #[test]
    fn torus_neighbors() {
        let g = generate(Model::Torus { rows: 6, cols: 6 }, &[]).unwrap();
        let c11 = g.cell_at("P", 1, 1).unwrap();
        let c12 = g.cell_at("P", 1, 2).unwrap();
        let c16 = g.cell_at("P", 1, 6).unwrap();
        let c61 = g.cell_at("P", 6, 1).unwrap();
        assert_eq!(
            g.neighbor(c11, Direction::East),
            Some(Transition {
                target: c12,
                entry: Direction::West,
                chirality: Chirality::Preserving
            })
        );
        assert_eq!(
            g.neighbor(c16, Direction::East),
            Some(Transition {
                target: c11,
                entry: Direction::West,
                chirality: Chirality::Preserving
            })
        );
        assert_eq!(
            g.neighbor(c11, Direction::North),
            Some(Transition {
                target: c61,
                entry: Direction::South,
                chirality: Chirality::Preserving
            })
        );
    }

    #[test]
    fn rect_boundary() {
        let g = generate(Model::Rect { rows: 8, cols: 8 }, &[]).unwrap();
        let c11 = g.cell_at("P", 1, 1).unwrap();
        assert_eq!(g.neighbor(c11, Direction::North), None);
        assert_eq!(g.neighbor(c11, Direction::West), None);
    }

    #[test]
    fn topology_torus() {
        let g = generate(Model::Torus { rows: 6, cols: 6 }, &[]).unwrap();
        let t = g.topology();
        assert_eq!((t.vertices, t.edges, t.faces), (36, 72, 36));
        assert_eq!(t.euler, 0);
        assert!(t.orientable);
        assert_eq!(t.boundary_components, 0);
        assert_eq!(t.genus, 1);
        assert!(t.cone_points.is_empty());
    }

    #[test]
    fn topology_klein() {
        let g = generate(Model::Klein { rows: 6, cols: 6 }, &[]).unwrap();
        let t = g.topology();
        assert_eq!(t.euler, 0);
        assert!(!t.orientable);
        assert_eq!(t.boundary_components, 0);
        assert_eq!(t.genus, 2);
    }

    #[test]
    fn topology_rect_and_cylinder() {
        let r = generate(Model::Rect { rows: 8, cols: 8 }, &[])
            .unwrap()
            .topology();
        assert_eq!((r.euler, r.orientable, r.boundary_components, r.genus), (1, true, 1, 0));
        let c = generate(Model::Cylinder { rows: 4, cols: 5 }, &[])
            .unwrap()
            .topology();
        assert_eq!((c.euler, c.orientable, c.boundary_components, c.genus), (0, true, 2, 0));
    }

    #[test]
    fn removal_does_not_change_full_complex() {
        let plain = generate(Model::Rect { rows: 8, cols: 8 }, &[]).unwrap();
        let cut = generate(Model::Rect { rows: 8, cols: 8 }, &[(1, 1), (8, 8)]).unwrap();
        assert_eq!(plain.topology(), cut.topology());
        assert_eq!(cut.removed_count(), 2);
        // Masked view loses the two corner cells.
        let m = cut.topology_masked();
        assert_eq!(m.faces, 62);
    }

    #[test]
    fn one_by_one_torus_is_a_torus() {
        let g = generate(Model::Torus { rows: 1, cols: 1 }, &[]).unwrap();
        let t = g.topology();
        assert_eq!((t.vertices, t.edges, t.faces), (1, 2, 1));
        assert_eq!(t.euler, 0);
        assert!(t.orientable);
        assert_eq!(t.genus, 1);
        assert!(!g.warnings().is_empty());
    }
}
