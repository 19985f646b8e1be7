//! Line-oriented surface description language.
//!
//! ```text
//! # comment
//! grid torus_6x6
//! patch P 6 6
//! glue P.top[1..6] P.bottom[1..6]
//! glue P.left[1..6] P.right[1..6]
//! remove P (1,1)
//! ```
//!
//! Sides are `top|bottom|left|right`; segment indices are 1-based inclusive,
//! running left-to-right on top/bottom and top-to-bottom on left/right. A
//! trailing `reversed` flips the second segment's order.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::grid::{CellId, Chirality, Direction, GridError, SurfaceGrid, Symmetry, Transition};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

impl Side {
    fn keyword(self) -> &'static str {
        match self {
            Side::Top => "top",
            Side::Bottom => "bottom",
            Side::Left => "left",
            Side::Right => "right",
        }
    }

    /// Outward normal of the side.
    fn normal(self) -> Direction {
        match self {
            Side::Top => Direction::North,
            Side::Bottom => Direction::South,
            Side::Left => Direction::West,
            Side::Right => Direction::East,
        }
    }

    /// Direction of increasing segment index along the side.
    fn traversal(self) -> Direction {
        match self {
            Side::Top | Side::Bottom => Direction::East,
            Side::Left | Side::Right => Direction::South,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// One boundary segment: unit edges `lo..=hi` of a patch side.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SegmentRef {
    pub patch: String,
    pub side: Side,
    pub lo: u32,
    pub hi: u32,
}

impl SegmentRef {
    /// Number of unit edges in the segment (ranges are nonempty by parse).
    pub fn unit_count(&self) -> u32 {
        self.hi - self.lo + 1
    }
}

impl fmt::Display for SegmentRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}[{}..{}]", self.patch, self.side, self.lo, self.hi)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GlueDecl {
    pub a: SegmentRef,
    pub b: SegmentRef,
    pub reversed: bool,
}

/// Parsed surface description, faithful to the text.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SurfaceSpecAst {
    pub name: String,
    pub patches: Vec<(String, u32, u32)>,
    pub glues: Vec<GlueDecl>,
    pub removes: Vec<(String, u32, u32)>,
}

#[derive(Error, Debug)]
#[error("line {line}, col {col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Error, Debug)]
pub enum ElaborateError {
    #[error("unknown patch `{0}`")]
    UnknownPatch(String),
    #[error("segment {0} exceeds the side (length {1})")]
    SegmentOutOfRange(SegmentRef, u32),
    #[error("glue segments {0} and {1} have different lengths")]
    LengthMismatch(SegmentRef, SegmentRef),
    #[error("unit edge {patch}.{side}[{index}] is glued more than once")]
    DoubleGlued { patch: String, side: Side, index: u32 },
    #[error("removed cell {0}({1},{2}) does not exist")]
    RemoveOutOfRange(String, u32, u32),
    #[error("duplicate patch id `{0}`")]
    DuplicatePatch(String),
    #[error(transparent)]
    Grid(#[from] GridError),
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch == '#' {
            break;
        }
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    col: line[..s].chars().count() + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        let end = line.find('#').unwrap_or(line.len());
        out.push(Token {
            text: line[s..end].trim_end(),
            col: line[..s].chars().count() + 1,
        });
    }
    out
}

fn err(line: usize, col: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        col,
        message: message.into(),
    }
}

fn parse_ident(tok: &Token, line: usize) -> Result<String, ParseError> {
    let ok = !tok.text.is_empty()
        && tok
            .text
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !tok.text.chars().next().unwrap().is_ascii_digit();
    if ok {
        Ok(tok.text.to_string())
    } else {
        Err(err(line, tok.col, format!("expected identifier, got `{}`", tok.text)))
    }
}

fn parse_u32(tok: &Token, line: usize, what: &str) -> Result<u32, ParseError> {
    tok.text
        .parse::<u32>()
        .map_err(|_| err(line, tok.col, format!("expected {what}, got `{}`", tok.text)))
}

/// Parses `P.side[a..b]`.
fn parse_segment(tok: &Token, line: usize) -> Result<SegmentRef, ParseError> {
    let bad = |msg: &str| err(line, tok.col, format!("{msg} in segment `{}`", tok.text));
    let (patch, rest) = tok
        .text
        .split_once('.')
        .ok_or_else(|| bad("missing `.` separator"))?;
    let (side_txt, rest) = rest
        .split_once('[')
        .ok_or_else(|| bad("missing `[` range opener"))?;
    let side = match side_txt {
        "top" => Side::Top,
        "bottom" => Side::Bottom,
        "left" => Side::Left,
        "right" => Side::Right,
        other => {
            return Err(err(
                line,
                tok.col,
                format!("unknown side keyword `{other}` (expected top|bottom|left|right)"),
            ))
        }
    };
    let range = rest
        .strip_suffix(']')
        .ok_or_else(|| bad("missing `]` range closer"))?;
    let (lo_txt, hi_txt) = range
        .split_once("..")
        .ok_or_else(|| bad("malformed range (expected a..b)"))?;
    let lo: u32 = lo_txt.parse().map_err(|_| bad("malformed range bound"))?;
    let hi: u32 = hi_txt.parse().map_err(|_| bad("malformed range bound"))?;
    if lo == 0 || hi < lo {
        return Err(bad("malformed range (need 1 <= a <= b)"));
    }
    if patch.is_empty() {
        return Err(bad("missing patch id"));
    }
    Ok(SegmentRef {
        patch: patch.to_string(),
        side,
        lo,
        hi,
    })
}

/// Parses `(r,c)`.
fn parse_coord(tok: &Token, line: usize) -> Result<(u32, u32), ParseError> {
    let bad = || err(line, tok.col, format!("expected `(r,c)`, got `{}`", tok.text));
    let inner = tok
        .text
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(bad)?;
    let (r, c) = inner.split_once(',').ok_or_else(bad)?;
    let r: u32 = r.trim().parse().map_err(|_| bad())?;
    let c: u32 = c.trim().parse().map_err(|_| bad())?;
    Ok((r, c))
}

/// Parses the surface DSL. Comments (`#`) and blank lines are ignored; CRLF
/// is accepted. Syntactic checks include glue segment length equality and
/// unit-edge overlap between glues.
pub fn parse_surface(text: &str) -> Result<SurfaceSpecAst, ParseError> {
    let mut ast = SurfaceSpecAst::default();
    let mut saw_grid = false;
    let mut used_edges: HashMap<(String, Side, u32), usize> = HashMap::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let toks = tokenize(raw.trim_end_matches('\r'));
        if toks.is_empty() {
            continue;
        }
        let rest = &toks[1..];
        match toks[0].text {
            "grid" => {
                if saw_grid {
                    return Err(err(line, toks[0].col, "duplicate grid statement"));
                }
                let [name] = rest else {
                    return Err(err(line, toks[0].col, "usage: grid <id>"));
                };
                ast.name = parse_ident(name, line)?;
                saw_grid = true;
            }
            "patch" => {
                let [name, rows, cols] = rest else {
                    return Err(err(line, toks[0].col, "usage: patch <id> <nrows> <ncols>"));
                };
                let name = parse_ident(name, line)?;
                let rows = parse_u32(rows, line, "row count")?;
                let cols = parse_u32(cols, line, "column count")?;
                if rows == 0 || cols == 0 {
                    return Err(err(line, toks[1].col, "patch dimensions must be positive"));
                }
                ast.patches.push((name, rows, cols));
            }
            "remove" => {
                let [patch, coord] = rest else {
                    return Err(err(line, toks[0].col, "usage: remove <patch> (<r>,<c>)"));
                };
                let patch = parse_ident(patch, line)?;
                let (r, c) = parse_coord(coord, line)?;
                ast.removes.push((patch, r, c));
            }
            "glue" => {
                let (segs, reversed) = match rest {
                    [a, b] => ((a, b), false),
                    [a, b, r] if r.text == "reversed" => ((a, b), true),
                    [_, _, r] => {
                        return Err(err(line, r.col, format!("expected `reversed`, got `{}`", r.text)))
                    }
                    _ => {
                        return Err(err(
                            line,
                            toks[0].col,
                            "usage: glue <patch>.<side>[a..b] <patch>.<side>[a..b] [reversed]",
                        ))
                    }
                };
                let a = parse_segment(segs.0, line)?;
                let b = parse_segment(segs.1, line)?;
                if a.unit_count() != b.unit_count() {
                    return Err(err(
                        line,
                        segs.1.col,
                        format!("segment lengths differ: {} vs {}", a.unit_count(), b.unit_count()),
                    ));
                }
                for (seg, tok) in [(&a, segs.0), (&b, segs.1)] {
                    for i in seg.lo..=seg.hi {
                        let key = (seg.patch.clone(), seg.side, i);
                        if used_edges.insert(key, line).is_some() {
                            return Err(err(
                                line,
                                tok.col,
                                format!("unit edge {}.{}[{}] already glued", seg.patch, seg.side, i),
                            ));
                        }
                    }
                }
                ast.glues.push(GlueDecl { a, b, reversed });
            }
            other => {
                return Err(err(
                    line,
                    toks[0].col,
                    format!("unknown statement `{other}`"),
                ));
            }
        }
    }
    if !saw_grid {
        return Err(err(1, 1, "missing `grid <id>` statement"));
    }
    Ok(ast)
}

/// Canonical text for an AST; `parse_surface(print_surface(ast)) == ast`.
pub fn print_surface(ast: &SurfaceSpecAst) -> String {
    let mut out = String::new();
    out.push_str(&format!("grid {}\n", ast.name));
    for (name, rows, cols) in &ast.patches {
        out.push_str(&format!("patch {name} {rows} {cols}\n"));
    }
    for g in &ast.glues {
        out.push_str(&format!("glue {} {}", g.a, g.b));
        if g.reversed {
            out.push_str(" reversed");
        }
        out.push('\n');
    }
    for (patch, r, c) in &ast.removes {
        out.push_str(&format!("remove {patch} ({r},{c})\n"));
    }
    out
}

struct PatchTable {
    dims: Vec<(String, u32, u32)>,
    base: Vec<usize>,
}

impl PatchTable {
    fn new(patches: &[(String, u32, u32)]) -> Result<PatchTable, ElaborateError> {
        let mut base = Vec::with_capacity(patches.len());
        let mut acc = 0usize;
        for (i, (name, rows, cols)) in patches.iter().enumerate() {
            if patches[..i].iter().any(|(n, _, _)| n == name) {
                return Err(ElaborateError::DuplicatePatch(name.clone()));
            }
            base.push(acc);
            acc += *rows as usize * *cols as usize;
        }
        Ok(PatchTable {
            dims: patches.to_vec(),
            base,
        })
    }

    fn total(&self) -> usize {
        self.dims
            .iter()
            .map(|(_, r, c)| *r as usize * *c as usize)
            .sum()
    }

    fn lookup(&self, name: &str) -> Result<usize, ElaborateError> {
        self.dims
            .iter()
            .position(|(n, _, _)| n == name)
            .ok_or_else(|| ElaborateError::UnknownPatch(name.to_string()))
    }

    fn cell(&self, patch: usize, row: u32, col: u32) -> CellId {
        let (_, _, cols) = self.dims[patch];
        CellId(self.base[patch] + (row as usize - 1) * cols as usize + (col as usize - 1))
    }

    fn side_len(&self, patch: usize, side: Side) -> u32 {
        let (_, rows, cols) = self.dims[patch];
        match side {
            Side::Top | Side::Bottom => cols,
            Side::Left | Side::Right => rows,
        }
    }

    /// Cell and outward direction of unit edge `i` (1-based) on a side.
    fn side_edge(&self, patch: usize, side: Side, i: u32) -> (CellId, Direction) {
        let (_, rows, cols) = self.dims[patch];
        let cell = match side {
            Side::Top => self.cell(patch, 1, i),
            Side::Bottom => self.cell(patch, rows, i),
            Side::Left => self.cell(patch, i, 1),
            Side::Right => self.cell(patch, i, cols),
        };
        (cell, side.normal())
    }
}

/// The frame transport for crossing from side `a` into side `b`: maps `a`'s
/// outward normal to the inward normal of `b`, and `a`'s traversal direction
/// to `b`'s traversal direction (opposite if `reversed`).
fn glue_symmetry(a: Side, b: Side, reversed: bool) -> Symmetry {
    let want_normal = b.normal().opposite();
    let want_trav = if reversed {
        b.traversal().opposite()
    } else {
        b.traversal()
    };
    for s in Symmetry::all() {
        if s.apply(a.normal()) == want_normal && s.apply(a.traversal()) == want_trav {
            return s;
        }
    }
    unreachable!("two perpendicular direction constraints always pin a unique symmetry")
}

/// Builds the quotient grid from a checked AST.
pub fn elaborate(ast: &SurfaceSpecAst) -> Result<SurfaceGrid, ElaborateError> {
    let table = PatchTable::new(&ast.patches)?;
    let n = table.total();
    let mut transitions: Vec<[Option<Transition>; 4]> = vec![[None; 4]; n];

    // Interior adjacencies within each patch.
    for (p, (_, rows, cols)) in table.dims.iter().enumerate() {
        for r in 1..=*rows {
            for c in 1..=*cols {
                let here = table.cell(p, r, c);
                if c < *cols {
                    let right = table.cell(p, r, c + 1);
                    transitions[here.0][Direction::East.index()] = Some(Transition {
                        target: right,
                        entry: Direction::West,
                        chirality: Chirality::Preserving,
                    });
                    transitions[right.0][Direction::West.index()] = Some(Transition {
                        target: here,
                        entry: Direction::East,
                        chirality: Chirality::Preserving,
                    });
                }
                if r < *rows {
                    let below = table.cell(p, r + 1, c);
                    transitions[here.0][Direction::South.index()] = Some(Transition {
                        target: below,
                        entry: Direction::North,
                        chirality: Chirality::Preserving,
                    });
                    transitions[below.0][Direction::North.index()] = Some(Transition {
                        target: here,
                        entry: Direction::South,
                        chirality: Chirality::Preserving,
                    });
                }
            }
        }
    }

    for glue in &ast.glues {
        let pa = table.lookup(&glue.a.patch)?;
        let pb = table.lookup(&glue.b.patch)?;
        for (seg, p) in [(&glue.a, pa), (&glue.b, pb)] {
            let len = table.side_len(p, seg.side);
            if seg.hi > len {
                return Err(ElaborateError::SegmentOutOfRange(seg.clone(), len));
            }
        }
        if glue.a.unit_count() != glue.b.unit_count() {
            return Err(ElaborateError::LengthMismatch(glue.a.clone(), glue.b.clone()));
        }
        let g_ab = glue_symmetry(glue.a.side, glue.b.side, glue.reversed);
        let chirality = if g_ab.is_orientation_preserving() {
            Chirality::Preserving
        } else {
            Chirality::Reversing
        };
        for k in 0..glue.a.unit_count() {
            let ia = glue.a.lo + k;
            let ib = if glue.reversed {
                glue.b.hi - k
            } else {
                glue.b.lo + k
            };
            let (ca, da) = table.side_edge(pa, glue.a.side, ia);
            let (cb, db) = table.side_edge(pb, glue.b.side, ib);
            for (from, df, to, dt) in [(ca, da, cb, db), (cb, db, ca, da)] {
                let slot = &mut transitions[from.0][df.index()];
                if slot.is_some() {
                    return Err(ElaborateError::DoubleGlued {
                        patch: ast.patches[if from == ca { pa } else { pb }].0.clone(),
                        side: if from == ca { glue.a.side } else { glue.b.side },
                        index: if from == ca { ia } else { ib },
                    });
                }
                *slot = Some(Transition {
                    target: to,
                    entry: dt,
                    chirality,
                });
            }
        }
    }

    let mut removed = vec![false; n];
    for (patch, r, c) in &ast.removes {
        let p = table.lookup(patch)?;
        let (_, rows, cols) = table.dims[p];
        if *r == 0 || *c == 0 || *r > rows || *c > cols {
            return Err(ElaborateError::RemoveOutOfRange(patch.clone(), *r, *c));
        }
        removed[table.cell(p, *r, *c).0] = true;
    }

    Ok(SurfaceGrid::from_parts(
        ast.name.clone(),
        ast.patches.clone(),
        transitions,
        removed,
    )?)
}

/// Standard one-patch models.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Model {
    Torus { rows: u32, cols: u32 },
    Klein { rows: u32, cols: u32 },
    Rect { rows: u32, cols: u32 },
    Cylinder { rows: u32, cols: u32 },
}

impl Model {
    pub fn dims(self) -> (u32, u32) {
        match self {
            Model::Torus { rows, cols }
            | Model::Klein { rows, cols }
            | Model::Rect { rows, cols }
            | Model::Cylinder { rows, cols } => (rows, cols),
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Model::Torus { .. } => "torus",
            Model::Klein { .. } => "klein",
            Model::Rect { .. } => "rect",
            Model::Cylinder { .. } => "cylinder",
        }
    }
}

/// Canonical DSL text for a model; `generate` is defined as parsing this.
pub fn model_text(model: Model, removes: &[(u32, u32)]) -> String {
    let (rows, cols) = model.dims();
    let mut out = format!("grid {}_{}x{}\n", model.tag(), rows, cols);
    out.push_str(&format!("patch P {rows} {cols}\n"));
    match model {
        Model::Torus { .. } => {
            out.push_str(&format!("glue P.top[1..{cols}] P.bottom[1..{cols}]\n"));
            out.push_str(&format!("glue P.left[1..{rows}] P.right[1..{rows}]\n"));
        }
        Model::Klein { .. } => {
            out.push_str(&format!("glue P.top[1..{cols}] P.bottom[1..{cols}]\n"));
            out.push_str(&format!("glue P.left[1..{rows}] P.right[1..{rows}] reversed\n"));
        }
        Model::Rect { .. } => {}
        Model::Cylinder { .. } => {
            out.push_str(&format!("glue P.left[1..{rows}] P.right[1..{rows}]\n"));
        }
    }
    for (r, c) in removes {
        out.push_str(&format!("remove P ({r},{c})\n"));
    }
    out
}

/// Generates a standard model grid, equivalent to parsing its canonical text.
pub fn generate(model: Model, removes: &[(u32, u32)]) -> Result<SurfaceGrid, ElaborateError> {
    let ast = parse_surface(&model_text(model, removes)).expect("canonical text parses");
    let mut grid = elaborate(&ast)?;
    let (rows, cols) = model.dims();
    if matches!(model, Model::Torus { .. } | Model::Klein { .. }) && (rows < 3 || cols < 3) {
        grid.push_warning(format!(
            "{} {}x{} is smaller than 3x3; the quotient grid is degenerate but usable",
            model.tag(),
            rows,
            cols
        ));
    }
    Ok(grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TORUS: &str = "grid t\npatch P 6 6\nglue P.top[1..6] P.bottom[1..6]\nglue P.left[1..6] P.right[1..6]";

    #[test]
    fn parses_torus_text() {
        let ast = parse_surface(TORUS).unwrap();
        assert_eq!(ast.name, "t");
        assert_eq!(ast.glues.len(), 2);
        assert!(ast.removes.is_empty());
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let text = "grid t\npatch P 6 6\nglue P.top[1..6] P.bottom[1..5]";
        let e = parse_surface(text).unwrap_err();
        assert!(e.message.contains("lengths differ"), "{e}");
        assert_eq!(e.line, 3);
    }

    #[test]
    fn self_overlap_is_rejected() {
        let text = "grid t\npatch P 6 6\nglue P.top[1..6] P.top[1..6]";
        let e = parse_surface(text).unwrap_err();
        assert!(e.message.contains("already glued"), "{e}");
    }

    #[test]
    fn unknown_side_keyword() {
        let text = "grid t\npatch P 6 6\nglue P.north[1..6] P.bottom[1..6]";
        let e = parse_surface(text).unwrap_err();
        assert!(e.message.contains("unknown side keyword"), "{e}");
    }

    #[test]
    fn comments_and_crlf() {
        let text = "# header\r\ngrid t # name\r\n\r\npatch P 2 2\r\n";
        let ast = parse_surface(text).unwrap();
        assert_eq!(ast.patches, vec![("P".to_string(), 2, 2)]);
    }

    #[test]
    fn roundtrip_canonical() {
        for model in [
            Model::Torus { rows: 6, cols: 6 },
            Model::Klein { rows: 4, cols: 4 },
            Model::Cylinder { rows: 4, cols: 5 },
        ] {
            let text = model_text(model, &[(1, 1)]);
            let ast = parse_surface(&text).unwrap();
            assert_eq!(print_surface(&ast), text);
            let ast2 = parse_surface(&print_surface(&ast)).unwrap();
            assert_eq!(ast, ast2);
        }
    }

    #[test]
    fn torus_generate_equals_parsed_text() {
        let by_gen = generate(Model::Torus { rows: 6, cols: 6 }, &[]).unwrap();
        let by_text =
            elaborate(&parse_surface(&model_text(Model::Torus { rows: 6, cols: 6 }, &[])).unwrap())
                .unwrap();
        for c in by_gen.cells() {
            for d in Direction::ALL {
                assert_eq!(by_gen.neighbor(c, d), by_text.neighbor(c, d));
            }
        }
    }

    #[test]
    fn klein_reversed_pairing() {
        let g = generate(Model::Klein { rows: 6, cols: 6 }, &[]).unwrap();
        let c16 = g.cell_at("P", 1, 6).unwrap();
        let c61 = g.cell_at("P", 6, 1).unwrap();
        assert_eq!(
            g.neighbor(c16, Direction::East),
            Some(Transition {
                target: c61,
                entry: Direction::West,
                chirality: Chirality::Reversing
            })
        );
    }

    #[test]
    fn removed_cell_recorded() {
        let text = "grid t\npatch P 6 6\nremove P (1,1)\n";
        let g = elaborate(&parse_surface(text).unwrap()).unwrap();
        let c = g.cell_at("P", 1, 1).unwrap();
        assert!(g.is_removed(c));
        assert_eq!(g.removed_count(), 1);
    }

    #[test]
    fn remove_out_of_range() {
        let text = "grid t\npatch P 2 2\nremove P (3,1)\n";
        let e = elaborate(&parse_surface(text).unwrap()).unwrap_err();
        assert!(matches!(e, ElaborateError::RemoveOutOfRange(..)));
    }

    #[test]
    fn boundary_edges_are_exactly_the_unglued_sides() {
        let text = "grid t\npatch P 3 4\nglue P.top[1..4] P.bottom[1..4]\n";
        let g = elaborate(&parse_surface(text).unwrap()).unwrap();
        let mut boundary = 0;
        for c in g.cells() {
            for d in Direction::ALL {
                if g.neighbor(c, d).is_none() {
                    boundary += 1;
                }
            }
        }
        // Only the two vertical sides remain unglued: 3 unit edges each.
        assert_eq!(boundary, 6);
    }

    #[test]
    fn chirality_rule_same_and_opposite_type() {
        // Same-type pair without reversed is orientation-reversing.
        let text = "grid t\npatch P 2 2\nglue P.top[1..1] P.top[2..2]\n";
        let g = elaborate(&parse_surface(text).unwrap()).unwrap();
        let c11 = g.cell_at("P", 1, 1).unwrap();
        let t = g.neighbor(c11, Direction::North).unwrap();
        assert_eq!(t.chirality, Chirality::Reversing);
        // ... and with reversed it is orientation-preserving.
        let text = "grid t\npatch P 2 2\nglue P.top[1..1] P.top[2..2] reversed\n";
        let g = elaborate(&parse_surface(text).unwrap()).unwrap();
        let c11 = g.cell_at("P", 1, 1).unwrap();
        let t = g.neighbor(c11, Direction::North).unwrap();
        assert_eq!(t.chirality, Chirality::Preserving);
    }
}
