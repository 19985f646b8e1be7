//! JSON report shapes. Field names and nesting are fixed by the schema
//! document in `docs/report-schema.md` (schema_version 1); keep the two in
//! sync when changing anything here.

use serde::Serialize;

use tilehom::grid::{SurfaceGrid, TopologyReport};
use tilehom::homology::{HomologyGroup, ThetaOrder, ThetaReport};
use tilehom::placement::Placement;
use tilehom::polyomino::{Polyomino, SymmetryPolicy};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct CellRef {
    pub patch: String,
    pub row: u32,
    pub col: u32,
}

impl CellRef {
    pub fn of(grid: &SurfaceGrid, cell: tilehom::CellId) -> CellRef {
        let l = grid.label(cell);
        CellRef {
            patch: l.patch,
            row: l.row,
            col: l.col,
        }
    }
}

#[derive(Serialize)]
pub struct ConePointJson {
    pub vertex: usize,
    pub incident_squares: usize,
}

#[derive(Serialize)]
pub struct TopologyJson {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub euler: i64,
    pub orientable: bool,
    pub boundary_components: usize,
    pub genus: usize,
    pub cone_points: Vec<ConePointJson>,
}

impl TopologyJson {
    pub fn of(t: &TopologyReport) -> TopologyJson {
        TopologyJson {
            vertices: t.vertices,
            edges: t.edges,
            faces: t.faces,
            euler: t.euler,
            orientable: t.orientable,
            boundary_components: t.boundary_components,
            genus: t.genus,
            cone_points: t
                .cone_points
                .iter()
                .map(|&(vertex, incident_squares)| ConePointJson {
                    vertex,
                    incident_squares,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct TopologyCommandJson {
    pub schema_version: u32,
    pub surface: String,
    pub masked: bool,
    #[serde(flatten)]
    pub topology: TopologyJson,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
pub struct TileJson {
    pub name: String,
    pub size: usize,
    pub symmetry: String,
    pub orientations: usize,
}

impl TileJson {
    pub fn of(p: &Polyomino, policy: SymmetryPolicy) -> TileJson {
        TileJson {
            name: p.name().unwrap_or("tile").to_string(),
            size: p.size(),
            symmetry: policy.keyword().to_string(),
            orientations: tilehom::polyomino::orientations(p, policy).len(),
        }
    }
}

#[derive(Serialize)]
pub struct SurfaceJson {
    pub name: String,
    pub cells: usize,
    pub removed: usize,
    pub topology: TopologyJson,
}

impl SurfaceJson {
    pub fn of(grid: &SurfaceGrid) -> SurfaceJson {
        SurfaceJson {
            name: grid.name().to_string(),
            cells: grid.cell_count(),
            removed: grid.removed_count(),
            topology: TopologyJson::of(&grid.topology()),
        }
    }
}

#[derive(Serialize)]
pub struct HomologyJson {
    pub torsion: Vec<String>,
    pub free_rank: usize,
    pub trivial_factors_suppressed: usize,
    pub group: String,
}

impl HomologyJson {
    pub fn of(g: &HomologyGroup) -> HomologyJson {
        HomologyJson {
            torsion: g.torsion.iter().map(|d| d.to_string()).collect(),
            free_rank: g.free_rank,
            trivial_factors_suppressed: g.trivial_factors_suppressed,
            group: g.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct ThetaJson {
    pub trivial: bool,
    /// Decimal order, or "infinite".
    pub order: String,
    /// Coordinates of theta in Smith normal form coordinates.
    pub coords: Vec<String>,
}

impl ThetaJson {
    pub fn of(t: &ThetaReport) -> ThetaJson {
        ThetaJson {
            trivial: t.trivial,
            order: match &t.order {
                ThetaOrder::Finite(n) => n.to_string(),
                ThetaOrder::Infinite => "infinite".to_string(),
            },
            coords: t.coords.iter().map(|c| c.to_string()).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct WeightJson {
    #[serde(flatten)]
    pub cell: CellRef,
    /// Reduced fraction, e.g. "-1/4" or "0".
    pub weight: String,
}

#[derive(Serialize)]
pub struct CertificateJson {
    pub weights: Vec<WeightJson>,
    pub total: String,
}

#[derive(Serialize)]
pub struct PlacementJson {
    pub tile: String,
    pub cells: Vec<CellRef>,
}

impl PlacementJson {
    pub fn of(grid: &SurfaceGrid, p: &Placement) -> PlacementJson {
        PlacementJson {
            tile: p.tile.clone(),
            cells: p.cells.iter().map(|&c| CellRef::of(grid, c)).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct WitnessTermJson {
    #[serde(flatten)]
    pub placement: PlacementJson,
    pub coefficient: String,
}

#[derive(Serialize)]
pub struct SearchJson {
    pub outcome: String,
    pub budget: u64,
    pub tiling: Option<Vec<PlacementJson>>,
}

#[derive(Serialize)]
pub struct TimingsJson {
    pub placements_ms: u128,
    pub homology_ms: u128,
    pub search_ms: Option<u128>,
    pub total_ms: u128,
}

#[derive(Serialize)]
pub struct AnalysisJson {
    pub schema_version: u32,
    pub surface: SurfaceJson,
    pub tiles: Vec<TileJson>,
    pub placements: usize,
    pub homology: HomologyJson,
    pub theta: ThetaJson,
    pub verdict: String,
    pub certificate: Option<CertificateJson>,
    pub witness: Option<Vec<WitnessTermJson>>,
    pub search: Option<SearchJson>,
    pub warnings: Vec<String>,
    pub timings: Option<TimingsJson>,
}

#[derive(Serialize)]
pub struct PlacementsCommandJson {
    pub schema_version: u32,
    pub surface: String,
    pub tiles: Vec<TileJson>,
    pub count: usize,
    pub placements: Option<Vec<PlacementJson>>,
}

#[derive(Serialize)]
pub struct CertificateCommandJson {
    pub schema_version: u32,
    pub surface: String,
    pub tiles: Vec<TileJson>,
    pub certificate: CertificateJson,
}

#[derive(Serialize)]
pub struct SearchCommandJson {
    pub schema_version: u32,
    pub surface: String,
    pub tiles: Vec<TileJson>,
    #[serde(flatten)]
    pub search: SearchJson,
    pub count: Option<u64>,
    pub cap: Option<u64>,
}
