//! Polyomino prototiles, symmetry orbits, and the named catalog.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::grid::Symmetry;

/// An edge-connected set of unit cells, stored as sorted (row, col) offsets
/// normalized so that the minimum row and minimum column are both 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Polyomino {
    cells: Vec<(i32, i32)>,
    name: Option<String>,
}

/// Which square symmetries may be applied when placing a tile.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum SymmetryPolicy {
    /// All 8 symmetries (rotations and reflections).
    #[default]
    Free,
    /// The 4 rotations only.
    OneSided,
    /// Identity only.
    Fixed,
}

impl SymmetryPolicy {
    pub fn frames(self) -> Vec<Symmetry> {
        match self {
            SymmetryPolicy::Free => Symmetry::all().to_vec(),
            SymmetryPolicy::OneSided => Symmetry::rotations().to_vec(),
            SymmetryPolicy::Fixed => vec![Symmetry::IDENTITY],
        }
    }

    pub fn keyword(self) -> &'static str {
        match self {
            SymmetryPolicy::Free => "free",
            SymmetryPolicy::OneSided => "one-sided",
            SymmetryPolicy::Fixed => "fixed",
        }
    }
}

impl fmt::Display for SymmetryPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Error, Debug)]
pub enum PolyominoError {
    #[error("polyomino has no cells")]
    Empty,
    #[error("polyomino cells are not edge-connected")]
    Disconnected,
    #[error("duplicate cell offset ({0},{1})")]
    DuplicateCell(i32, i32),
    #[error("unknown catalog tile `{0}`")]
    UnknownName(String),
}

impl Polyomino {
    /// Normalizes an offset set into a polyomino; the input must be nonempty
    /// and edge-connected.
    pub fn new(cells: &[(i32, i32)]) -> Result<Polyomino, PolyominoError> {
        Polyomino::build(cells, None)
    }

    pub fn named(cells: &[(i32, i32)], name: &str) -> Result<Polyomino, PolyominoError> {
        Polyomino::build(cells, Some(name.to_string()))
    }

    fn build(cells: &[(i32, i32)], name: Option<String>) -> Result<Polyomino, PolyominoError> {
        if cells.is_empty() {
            return Err(PolyominoError::Empty);
        }
        let mut set = BTreeSet::new();
        for &c in cells {
            if !set.insert(c) {
                return Err(PolyominoError::DuplicateCell(c.0, c.1));
            }
        }
        // Connectivity over 4-adjacency.
        let start = *set.iter().next().unwrap();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some((r, c)) = stack.pop() {
            for (dr, dc) in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
                let n = (r + dr, c + dc);
                if set.contains(&n) && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        if seen.len() != set.len() {
            return Err(PolyominoError::Disconnected);
        }
        let min_r = set.iter().map(|&(r, _)| r).min().unwrap();
        let min_c = set.iter().map(|&(_, c)| c).min().unwrap();
        let cells = set.into_iter().map(|(r, c)| (r - min_r, c - min_c)).collect();
        Ok(Polyomino { cells, name })
    }

    pub fn cells(&self) -> &[(i32, i32)] {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// The image under a square symmetry, renormalized.
    pub fn transformed(&self, s: Symmetry) -> Polyomino {
        let cells: Vec<(i32, i32)> = self.cells.iter().map(|&rc| s.apply_offset(rc)).collect();
        Polyomino::build(&cells, self.name.clone()).expect("symmetry preserves connectivity")
    }
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = &self.name {
            write!(f, "{n} ")?;
        }
        write!(f, "{:?}", self.cells)
    }
}

/// Distinct images of `p` under the policy's symmetry group, sorted for
/// deterministic iteration.
pub fn orientations(p: &Polyomino, policy: SymmetryPolicy) -> Vec<Polyomino> {
    let mut seen = BTreeSet::new();
    for s in policy.frames() {
        seen.insert(p.transformed(s));
    }
    seen.into_iter().collect()
}

/// Named prototiles: `monomino`, `domino`, bars `I<n>`, the trominoes and
/// tetrominoes, the twelve pentominoes (`F5`..`Z5`), and the cross-shaped
/// hexomino `X6` (a bar of four with bumps above and below the second cell).
pub fn catalog(name: &str) -> Result<Polyomino, PolyominoError> {
    let cells: Vec<(i32, i32)> = match name {
        "monomino" => vec![(0, 0)],
        "domino" => vec![(0, 0), (0, 1)],
        "L3" => vec![(0, 0), (1, 0), (1, 1)],
        "O4" => vec![(0, 0), (0, 1), (1, 0), (1, 1)],
        "T4" => vec![(0, 0), (0, 1), (0, 2), (1, 1)],
        "S4" => vec![(0, 1), (0, 2), (1, 0), (1, 1)],
        "Z4" => vec![(0, 0), (1, 0), (1, 1), (2, 1)],
        "L4" => vec![(0, 0), (1, 0), (2, 0), (2, 1)],
        "J4" => vec![(0, 1), (1, 1), (2, 0), (2, 1)],
        "F5" => vec![(0, 1), (0, 2), (1, 0), (1, 1), (2, 1)],
        "I5" => return bar(5, name),
        "L5" => vec![(0, 0), (1, 0), (2, 0), (3, 0), (3, 1)],
        "N5" => vec![(0, 1), (1, 1), (2, 0), (2, 1), (3, 0)],
        "P5" => vec![(0, 0), (0, 1), (1, 0), (1, 1), (2, 0)],
        "T5" => vec![(0, 0), (0, 1), (0, 2), (1, 1), (2, 1)],
        "U5" => vec![(0, 0), (0, 2), (1, 0), (1, 1), (1, 2)],
        "V5" => vec![(0, 0), (1, 0), (2, 0), (2, 1), (2, 2)],
        "W5" => vec![(0, 0), (1, 0), (1, 1), (2, 1), (2, 2)],
        "X5" => vec![(0, 1), (1, 0), (1, 1), (1, 2), (2, 1)],
        "Y5" => vec![(0, 1), (1, 0), (1, 1), (2, 1), (3, 1)],
        "Z5" => vec![(0, 0), (0, 1), (1, 1), (2, 1), (2, 2)],
        "X6" => vec![(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (-1, 1)],
        _ => {
            if let Some(n) = name.strip_prefix('I').and_then(|s| s.parse::<u32>().ok()) {
                if n >= 1 {
                    return bar(n, name);
                }
            }
            return Err(PolyominoError::UnknownName(name.to_string()));
        }
    };
    Polyomino::named(&cells, name)
}

fn bar(n: u32, name: &str) -> Result<Polyomino, PolyominoError> {
    let cells: Vec<(i32, i32)> = (0..n as i32).map(|c| (0, c)).collect();
    Polyomino::named(&cells, name)
}

/// Parses a `.tiles` file: statements `tile <name>`, `cells (r,c) ...`, and
/// optional `symmetry free|one-sided|fixed`; `#` comments allowed.
pub fn parse_tiles(text: &str) -> Result<Vec<(Polyomino, SymmetryPolicy)>, TilesParseError> {
    let mut out: Vec<(Polyomino, SymmetryPolicy)> = Vec::new();
    let mut current: Option<(String, Vec<(i32, i32)>, SymmetryPolicy)> = None;

    let mut flush = |cur: &mut Option<(String, Vec<(i32, i32)>, SymmetryPolicy)>,
                     line: usize|
     -> Result<(), TilesParseError> {
        if let Some((name, cells, policy)) = cur.take() {
            let p = Polyomino::named(&cells, &name)
                .map_err(|e| TilesParseError::new(line, format!("tile `{name}`: {e}")))?;
            out.push((p, policy));
        }
        Ok(())
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stripped = raw.trim_end_matches('\r');
        let stripped = stripped.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        let mut toks = stripped.split_whitespace();
        match toks.next().unwrap() {
            "tile" => {
                flush(&mut current, line)?;
                let name = toks
                    .next()
                    .ok_or_else(|| TilesParseError::new(line, "usage: tile <name>"))?;
                if toks.next().is_some() {
                    return Err(TilesParseError::new(line, "trailing tokens after tile name"));
                }
                current = Some((name.to_string(), Vec::new(), SymmetryPolicy::Free));
            }
            "cells" => {
                let cur = current
                    .as_mut()
                    .ok_or_else(|| TilesParseError::new(line, "`cells` before any `tile`"))?;
                for tok in toks {
                    let bad = || TilesParseError::new(line, format!("expected `(r,c)`, got `{tok}`"));
                    let inner = tok
                        .strip_prefix('(')
                        .and_then(|t| t.strip_suffix(')'))
                        .ok_or_else(bad)?;
                    let (r, c) = inner.split_once(',').ok_or_else(bad)?;
                    let r: i32 = r.trim().parse().map_err(|_| bad())?;
                    let c: i32 = c.trim().parse().map_err(|_| bad())?;
                    cur.1.push((r, c));
                }
            }
            "symmetry" => {
                let cur = current
                    .as_mut()
                    .ok_or_else(|| TilesParseError::new(line, "`symmetry` before any `tile`"))?;
                let kw = toks
                    .next()
                    .ok_or_else(|| TilesParseError::new(line, "usage: symmetry free|one-sided|fixed"))?;
                cur.2 = match kw {
                    "free" => SymmetryPolicy::Free,
                    "one-sided" => SymmetryPolicy::OneSided,
                    "fixed" => SymmetryPolicy::Fixed,
                    other => {
                        return Err(TilesParseError::new(
                            line,
                            format!("unknown symmetry policy `{other}`"),
                        ))
                    }
                };
            }
            other => {
                return Err(TilesParseError::new(
                    line,
                    format!("unknown statement `{other}`"),
                ));
            }
        }
    }
    let last = text.lines().count();
    flush(&mut current, last)?;
    Ok(out)
}

#[derive(Error, Debug)]
#[error("line {line}: {message}")]
pub struct TilesParseError {
    pub line: usize,
    pub message: String,
}

impl TilesParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        TilesParseError {
            line,
            message: message.into(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_translates_to_origin_frame() {
        let p = Polyomino::new(&[(5, 5), (5, 6)]).unwrap();
        assert_eq!(p.cells(), &[(0, 0), (0, 1)]);
    }

    #[test]
    fn disconnected_rejected() {
        assert!(matches!(
            Polyomino::new(&[(0, 0), (0, 2)]),
            Err(PolyominoError::Disconnected)
        ));
    }

    #[test]
    fn x_hexomino_normalizes_with_min_row_zero() {
        let p = Polyomino::new(&[(0, 0), (0, 1), (0, 2), (0, 3), (1, 1), (-1, 1)]).unwrap();
        assert_eq!(
            p.cells(),
            &[(0, 1), (1, 0), (1, 1), (1, 2), (1, 3), (2, 1)]
        );
        assert_eq!(p.cells(), catalog("X6").unwrap().cells());
    }

    #[test]
    fn normalize_is_idempotent() {
        for name in ["I4", "T4", "Z4", "X6", "W5"] {
            let p = catalog(name).unwrap();
            assert_eq!(Polyomino::new(p.cells()).unwrap().cells(), p.cells());
        }
    }

    #[test]
    fn orientation_counts() {
        let count = |name: &str, pol| orientations(&catalog(name).unwrap(), pol).len();
        assert_eq!(count("I4", SymmetryPolicy::Free), 2);
        assert_eq!(count("T4", SymmetryPolicy::Free), 4);
        assert_eq!(count("X6", SymmetryPolicy::Free), 4);
        assert_eq!(count("monomino", SymmetryPolicy::Free), 1);
        assert_eq!(count("Z4", SymmetryPolicy::Free), 4);
        assert_eq!(count("Z4", SymmetryPolicy::OneSided), 2);
        assert_eq!(count("Z4", SymmetryPolicy::Fixed), 1);
        assert_eq!(count("L4", SymmetryPolicy::Free), 8);
    }

    #[test]
    fn orbit_sizes_divide_eight() {
        for name in [
            "monomino", "domino", "L3", "O4", "T4", "S4", "Z4", "L4", "J4", "F5", "I5", "L5",
            "N5", "P5", "T5", "U5", "V5", "W5", "X5", "Y5", "Z5", "X6",
        ] {
            let p = catalog(name).unwrap();
            let free = orientations(&p, SymmetryPolicy::Free).len();
            let one = orientations(&p, SymmetryPolicy::OneSided).len();
            assert!(matches!(free, 1 | 2 | 4 | 8), "{name}: {free}");
            assert!(matches!(one, 1 | 2 | 4), "{name}: {one}");
            assert!(free >= one);
        }
    }

    #[test]
    fn catalog_fixed_shapes() {
        assert_eq!(catalog("I4").unwrap().cells(), &[(0, 0), (0, 1), (0, 2), (0, 3)]);
        assert_eq!(catalog("T4").unwrap().cells(), &[(0, 0), (0, 1), (0, 2), (1, 1)]);
        assert_eq!(catalog("Z4").unwrap().cells(), &[(0, 0), (1, 0), (1, 1), (2, 1)]);
        assert_eq!(catalog("I7").unwrap().size(), 7);
        assert!(catalog("Q9").is_err());
    }

    #[test]
    fn tiles_file_roundtrip() {
        let text = "# two tiles\ntile bump\ncells (0,0) (0,1) (1,1)\nsymmetry one-sided\n\ntile bar2\ncells (0,0) (0,1)\n";
        let tiles = parse_tiles(text).unwrap();
        assert_eq!(tiles.len(), 2);
        assert_eq!(tiles[0].0.name(), Some("bump"));
        assert_eq!(tiles[0].1, SymmetryPolicy::OneSided);
        assert_eq!(tiles[1].0.cells(), catalog("domino").unwrap().cells());
        assert_eq!(tiles[1].1, SymmetryPolicy::Free);
    }

    #[test]
    fn tiles_file_errors() {
        assert!(parse_tiles("cells (0,0)\n").is_err());
        assert!(parse_tiles("tile a\ncells (0,0) (0,2)\n").is_err());
        assert!(parse_tiles("tile a\ncells x\n").is_err());
    }
}
