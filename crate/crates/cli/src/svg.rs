//! Presentation-only SVG rendering of the planar model: patches laid out
//! side by side, cells colored per weight (certificates) or per placement
//! (tilings). Removed cells are crossed out.

use std::collections::BTreeMap;

use num_rational::BigRational;

use tilehom::grid::{CellId, SurfaceGrid};
use tilehom::search::Tiling;

const CELL: f64 = 36.0;
const GAP: f64 = 24.0;
const PALETTE: [&str; 10] = [
    "#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5",
    "#d9d9d9", "#bc80bd",
];

struct Layout {
    origins: Vec<(f64, f64)>,
    width: f64,
    height: f64,
}

fn layout(grid: &SurfaceGrid) -> Layout {
    let mut origins = Vec::new();
    let mut x = GAP;
    let mut max_h: f64 = 0.0;
    for (_, rows, cols) in grid.patch_dims() {
        origins.push((x, GAP + 14.0));
        x += cols as f64 * CELL + GAP;
        max_h = max_h.max(rows as f64 * CELL);
    }
    Layout {
        origins,
        width: x,
        height: max_h + 2.0 * GAP + 14.0,
    }
}

fn cell_origin(grid: &SurfaceGrid, lay: &Layout, cell: CellId) -> (f64, f64) {
    let label = grid.label(cell);
    let patch_index = grid
        .patch_dims()
        .iter()
        .position(|(n, _, _)| *n == label.patch)
        .expect("patch exists");
    let (ox, oy) = lay.origins[patch_index];
    (
        ox + (label.col - 1) as f64 * CELL,
        oy + (label.row - 1) as f64 * CELL,
    )
}

fn header(lay: &Layout, title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0}\" height=\"{:.0}\" \
         viewBox=\"0 0 {:.0} {:.0}\" font-family=\"monospace\">\n\
         <text x=\"{GAP}\" y=\"16\" font-size=\"12\">{}</text>\n",
        lay.width, lay.height, lay.width, lay.height, title
    )
}

fn patch_labels(grid: &SurfaceGrid, lay: &Layout) -> String {
    let mut out = String::new();
    for ((name, _, _), (ox, oy)) in grid.patch_dims().iter().zip(&lay.origins) {
        out.push_str(&format!(
            "<text x=\"{ox}\" y=\"{:.1}\" font-size=\"11\">{name}</text>\n",
            oy - 4.0
        ));
    }
    out
}

fn draw_cell(x: f64, y: f64, fill: &str, text: Option<&str>) -> String {
    let mut s = format!(
        "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{CELL}\" height=\"{CELL}\" \
         fill=\"{fill}\" stroke=\"#333\" stroke-width=\"1\"/>\n"
    );
    if let Some(t) = text {
        s.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\" text-anchor=\"middle\">{t}</text>\n",
            x + CELL / 2.0,
            y + CELL / 2.0 + 3.0
        ));
    }
    s
}

fn draw_removed(x: f64, y: f64) -> String {
    format!(
        "<rect x=\"{x:.1}\" y=\"{y:.1}\" width=\"{CELL}\" height=\"{CELL}\" \
         fill=\"#555\" stroke=\"#333\"/>\n\
         <line x1=\"{x:.1}\" y1=\"{y:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"#222\"/>\n\
         <line x1=\"{:.1}\" y1=\"{y:.1}\" x2=\"{x:.1}\" y2=\"{:.1}\" stroke=\"#222\"/>\n",
        x + CELL,
        y + CELL,
        x + CELL,
        y + CELL
    )
}

/// Renders a rational cell numbering; cells with equal weights share colors.
pub fn render_certificate(grid: &SurfaceGrid, weights: &BTreeMap<CellId, BigRational>) -> String {
    let lay = layout(grid);
    let mut classes: Vec<&BigRational> = weights.values().collect();
    classes.sort();
    classes.dedup();
    let mut svg = header(&lay, &format!("certificate: {}", grid.name()));
    svg.push_str(&patch_labels(grid, &lay));
    for cell in grid.cells() {
        let (x, y) = cell_origin(grid, &lay, cell);
        if grid.is_removed(cell) {
            svg.push_str(&draw_removed(x, y));
            continue;
        }
        let w = &weights[&cell];
        let class = classes.iter().position(|c| *c == w).unwrap();
        let text = w.to_string();
        svg.push_str(&draw_cell(x, y, PALETTE[class % PALETTE.len()], Some(&text)));
    }
    svg.push_str("</svg>\n");
    svg
}

/// Renders a found tiling, one color per placement.
pub fn render_tiling(grid: &SurfaceGrid, tiling: &Tiling) -> String {
    let lay = layout(grid);
    let mut owner: BTreeMap<CellId, usize> = BTreeMap::new();
    for (i, p) in tiling.placements.iter().enumerate() {
        for &c in &p.cells {
            owner.insert(c, i);
        }
    }
    let mut svg = header(&lay, &format!("tiling: {}", grid.name()));
    svg.push_str(&patch_labels(grid, &lay));
    for cell in grid.cells() {
        let (x, y) = cell_origin(grid, &lay, cell);
        if grid.is_removed(cell) {
            svg.push_str(&draw_removed(x, y));
            continue;
        }
        match owner.get(&cell) {
            Some(&i) => {
                let label = tiling.placements[i].tile.clone();
                svg.push_str(&draw_cell(
                    x,
                    y,
                    PALETTE[i % PALETTE.len()],
                    Some(&label),
                ));
            }
            None => svg.push_str(&draw_cell(x, y, "#fff", None)),
        }
    }
    svg.push_str("</svg>\n");
    svg
}
