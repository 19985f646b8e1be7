//! `tilehom` — decide polyomino-tiling obstructions on square grids over
//! surfaces, emit certificates or signed tilings, and search for genuine
//! tilings.
//!
//! Exit codes: 0 success (any verdict), 2 input error, 3 internal self-check
//! failure, 4 requested artifact does not exist.

mod report;
mod svg;

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use num_rational::BigRational;

use tilehom::dsl::{self, Model};
use tilehom::grid::{CellId, SurfaceGrid};
use tilehom::homology::{self, TilingHomology};
use tilehom::placement::enumerate_placements;
use tilehom::polyomino::{self, Polyomino, SymmetryPolicy};
use tilehom::search::{self, SearchOutcome, DEFAULT_NODE_BUDGET};

use report::*;

#[derive(Parser)]
#[command(name = "tilehom", version, about = "Tiling obstructions on square-tiled surfaces")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Topological invariants of a surface file.
    Topology {
        /// `.srf` surface description.
        surface: PathBuf,
        /// Report the subcomplex with removed cells masked out.
        #[arg(long)]
        masked: bool,
    },
    /// Full analysis: placements, homology group, obstruction, certificate
    /// or signed-tiling witness.
    Analyze {
        surface: PathBuf,
        #[command(flatten)]
        tiles: TileArgs,
        /// Additionally run the exact-cover search for a genuine tiling.
        #[arg(long)]
        search: bool,
        /// Node budget for `--search`.
        #[arg(long)]
        budget: Option<u64>,
        /// Include wall-clock timings in the report (breaks byte-for-byte
        /// output stability across runs).
        #[arg(long)]
        timings: bool,
    },
    /// Rational coloring certificate for an obstructed instance.
    Certificate {
        surface: PathBuf,
        #[command(flatten)]
        tiles: TileArgs,
        /// Also write an SVG rendering of the weighted planar model.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Enumerate placements.
    Placements {
        surface: PathBuf,
        #[command(flatten)]
        tiles: TileArgs,
        /// Include the full placement listing, not just the count.
        #[arg(long)]
        full: bool,
    },
    /// Exact-cover search for a genuine tiling.
    Search {
        surface: PathBuf,
        #[command(flatten)]
        tiles: TileArgs,
        #[arg(long)]
        budget: Option<u64>,
        /// Count tilings (up to --cap) instead of returning the first.
        #[arg(long)]
        count: bool,
        /// Cap for --count.
        #[arg(long, default_value_t = 1_000_000)]
        cap: u64,
        /// Write an SVG rendering of the found tiling.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print canonical surface text for a standard model.
    Gen {
        /// One of: torus, klein, rect, cylinder.
        model: String,
        rows: u32,
        cols: u32,
        /// Cells to remove, as `r,c` (repeatable).
        #[arg(long = "remove", value_name = "r,c")]
        removes: Vec<String>,
    },
}

#[derive(Args)]
struct TileArgs {
    /// Catalog tile name (repeatable): monomino, domino, I<n>, T4, Z4, X6, ...
    #[arg(long = "tile", value_name = "NAME")]
    tile: Vec<String>,
    /// `.tiles` file with custom prototiles (repeatable).
    #[arg(long = "tiles", value_name = "FILE")]
    tiles: Vec<PathBuf>,
    /// Symmetry policy applied to catalog tiles.
    #[arg(long, value_enum, default_value_t = PolicyArg::Free)]
    policy: PolicyArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Free,
    #[value(name = "one-sided")]
    OneSided,
    Fixed,
}

impl From<PolicyArg> for SymmetryPolicy {
    fn from(p: PolicyArg) -> SymmetryPolicy {
        match p {
            PolicyArg::Free => SymmetryPolicy::Free,
            PolicyArg::OneSided => SymmetryPolicy::OneSided,
            PolicyArg::Fixed => SymmetryPolicy::Fixed,
        }
    }
}

enum CliError {
    /// Bad input: exit 2.
    Input(String),
    /// Internal invariant violation: exit 3.
    SelfCheck(String),
    /// Requested artifact does not exist: exit 4.
    NoArtifact(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "error: {m}"),
            CliError::SelfCheck(m) => write!(f, "internal self-check failed: {m}"),
            CliError::NoArtifact(m) => write!(f, "{m}"),
        }
    }
}

fn input_err(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(match e {
                CliError::Input(_) => 2,
                CliError::SelfCheck(_) => 3,
                CliError::NoArtifact(_) => 4,
            })
        }
    }
}

fn load_surface(path: &Path) -> Result<SurfaceGrid, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let ast = dsl::parse_surface(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    dsl::elaborate(&ast).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_tiles(args: &TileArgs) -> Result<Vec<(Polyomino, SymmetryPolicy)>, CliError> {
    let mut tiles = Vec::new();
    for name in &args.tile {
        let p = polyomino::catalog(name).map_err(input_err)?;
        tiles.push((p, args.policy.into()));
    }
    for path in &args.tiles {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let parsed = polyomino::parse_tiles(&text)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        tiles.extend(parsed);
    }
    if tiles.is_empty() {
        return Err(CliError::Input(
            "no tiles given; use --tile NAME or --tiles FILE".to_string(),
        ));
    }
    Ok(tiles)
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn certificate_json(
    grid: &SurfaceGrid,
    cells: &[CellId],
    weights: &[BigRational],
) -> CertificateJson {
    let total: BigRational = weights.iter().cloned().sum();
    CertificateJson {
        weights: cells
            .iter()
            .zip(weights)
            .map(|(&c, w)| WeightJson {
                cell: CellRef::of(grid, c),
                weight: w.to_string(),
            })
            .collect(),
        total: total.to_string(),
    }
}

fn weights_map(cells: &[CellId], weights: &[BigRational]) -> BTreeMap<CellId, BigRational> {
    cells.iter().copied().zip(weights.iter().cloned()).collect()
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.cmd {
        Cmd::Topology { surface, masked } => {
            let grid = load_surface(&surface)?;
            let t = if masked {
                grid.topology_masked()
            } else {
                grid.topology()
            };
            print_json(&TopologyCommandJson {
                schema_version: SCHEMA_VERSION,
                surface: grid.name().to_string(),
                masked,
                topology: TopologyJson::of(&t),
                warnings: grid.warnings().to_vec(),
            });
            Ok(())
        }
        Cmd::Analyze {
            surface,
            tiles,
            search: do_search,
            budget,
            timings,
        } => {
            let t0 = Instant::now();
            let grid = load_surface(&surface)?;
            let tiles = load_tiles(&tiles)?;
            let report = analyze(&grid, &tiles, do_search, budget, timings, t0)?;
            print_json(&report);
            Ok(())
        }
        Cmd::Certificate {
            surface,
            tiles,
            svg: svg_path,
        } => {
            let grid = load_surface(&surface)?;
            let tiles = load_tiles(&tiles)?;
            let th = TilingHomology::new(homology::relation_matrix(&grid, &tiles))
                .map_err(|e| CliError::SelfCheck(e.to_string()))?;
            let cert = th
                .certificate()
                .map_err(|e| CliError::SelfCheck(e.to_string()))?
                .ok_or_else(|| {
                    CliError::NoArtifact(
                        "the obstruction is trivial; no coloring certificate exists".to_string(),
                    )
                })?;
            let map = weights_map(&th.relation().cells, &cert.weights);
            if !homology::verify_certificate(&grid, &tiles, &map)
                .map_err(|e| CliError::SelfCheck(e.to_string()))?
            {
                return Err(CliError::SelfCheck(
                    "emitted certificate failed independent verification".to_string(),
                ));
            }
            if let Some(path) = svg_path {
                std::fs::write(&path, svg::render_certificate(&grid, &map))
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            }
            print_json(&CertificateCommandJson {
                schema_version: SCHEMA_VERSION,
                surface: grid.name().to_string(),
                tiles: tiles.iter().map(|(p, pol)| TileJson::of(p, *pol)).collect(),
                certificate: certificate_json(&grid, &th.relation().cells, &cert.weights),
            });
            Ok(())
        }
        Cmd::Placements {
            surface,
            tiles,
            full,
        } => {
            let grid = load_surface(&surface)?;
            let tiles = load_tiles(&tiles)?;
            let placements = enumerate_placements(&grid, &tiles);
            print_json(&PlacementsCommandJson {
                schema_version: SCHEMA_VERSION,
                surface: grid.name().to_string(),
                tiles: tiles.iter().map(|(p, pol)| TileJson::of(p, *pol)).collect(),
                count: placements.len(),
                placements: full.then(|| {
                    placements
                        .iter()
                        .map(|p| PlacementJson::of(&grid, p))
                        .collect()
                }),
            });
            Ok(())
        }
        Cmd::Search {
            surface,
            tiles,
            budget,
            count,
            cap,
            svg: svg_path,
        } => {
            let grid = load_surface(&surface)?;
            let tiles = load_tiles(&tiles)?;
            let tile_json: Vec<TileJson> =
                tiles.iter().map(|(p, pol)| TileJson::of(p, *pol)).collect();
            if count {
                let n = search::count_tilings(&grid, &tiles, cap);
                print_json(&SearchCommandJson {
                    schema_version: SCHEMA_VERSION,
                    surface: grid.name().to_string(),
                    tiles: tile_json,
                    search: SearchJson {
                        outcome: "counted".to_string(),
                        budget: 0,
                        tiling: None,
                    },
                    count: Some(n),
                    cap: Some(cap),
                });
                return Ok(());
            }
            let outcome = search::find_tiling(&grid, &tiles, budget);
            let (name, tiling) = match &outcome {
                SearchOutcome::Tiling(t) => {
                    if !t.verify(&grid) {
                        return Err(CliError::SelfCheck(
                            "search returned a non-partition".to_string(),
                        ));
                    }
                    if let Some(path) = &svg_path {
                        std::fs::write(path, svg::render_tiling(&grid, t))
                            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                    }
                    (
                        "tiled",
                        Some(t.placements.iter().map(|p| PlacementJson::of(&grid, p)).collect()),
                    )
                }
                SearchOutcome::Exhausted => ("exhausted", None),
                SearchOutcome::BudgetExceeded => ("budget_exceeded", None),
            };
            print_json(&SearchCommandJson {
                schema_version: SCHEMA_VERSION,
                surface: grid.name().to_string(),
                tiles: tile_json,
                search: SearchJson {
                    outcome: name.to_string(),
                    budget: budget.unwrap_or(DEFAULT_NODE_BUDGET),
                    tiling,
                },
                count: None,
                cap: None,
            });
            Ok(())
        }
        Cmd::Gen {
            model,
            rows,
            cols,
            removes,
        } => {
            if rows == 0 || cols == 0 {
                return Err(CliError::Input("dimensions must be positive".to_string()));
            }
            let model = match model.as_str() {
                "torus" => Model::Torus { rows, cols },
                "klein" => Model::Klein { rows, cols },
                "rect" => Model::Rect { rows, cols },
                "cylinder" => Model::Cylinder { rows, cols },
                other => {
                    return Err(CliError::Input(format!(
                        "unknown model `{other}` (expected torus|klein|rect|cylinder)"
                    )))
                }
            };
            let mut parsed = Vec::new();
            for r in &removes {
                let (a, b) = r
                    .split_once(',')
                    .ok_or_else(|| CliError::Input(format!("--remove wants `r,c`, got `{r}`")))?;
                let a: u32 = a.trim().parse().map_err(input_err)?;
                let b: u32 = b.trim().parse().map_err(input_err)?;
                parsed.push((a, b));
            }
            // Validate before printing.
            dsl::generate(model, &parsed).map_err(input_err)?;
            print!("{}", dsl::model_text(model, &parsed));
            Ok(())
        }
    }
}

/// Runs the full pipeline. Thin composition of library calls; the verdict is
/// a restatement of the obstruction result, and every emitted artifact is
/// re-verified here (exit 3 on any mismatch).
fn analyze(
    grid: &SurfaceGrid,
    tiles: &[(Polyomino, SymmetryPolicy)],
    do_search: bool,
    budget: Option<u64>,
    timings: bool,
    t0: Instant,
) -> Result<AnalysisJson, CliError> {
    let selfcheck = |m: String| CliError::SelfCheck(m);

    let t_pl = Instant::now();
    let placements = enumerate_placements(grid, tiles);
    let placements_ms = t_pl.elapsed().as_millis();

    let t_h = Instant::now();
    let rm = homology::from_placements(grid, placements);
    let th = TilingHomology::new(rm).map_err(|e| selfcheck(e.to_string()))?;
    let group = th.group();
    let theta = th.theta();
    let witness = th.witness().map_err(|e| selfcheck(e.to_string()))?;
    let certificate = th.certificate().map_err(|e| selfcheck(e.to_string()))?;
    let homology_ms = t_h.elapsed().as_millis();

    // Three-way agreement is an engine invariant, not an assumption.
    if theta.trivial != witness.is_some() || theta.trivial != certificate.is_none() {
        return Err(selfcheck(format!(
            "obstruction disagreement: trivial={} witness={} certificate={}",
            theta.trivial,
            witness.is_some(),
            certificate.is_some()
        )));
    }
    if let Some(cert) = &certificate {
        let map = weights_map(&th.relation().cells, &cert.weights);
        if !homology::verify_certificate(grid, tiles, &map).map_err(|e| selfcheck(e.to_string()))? {
            return Err(selfcheck(
                "emitted certificate failed independent verification".to_string(),
            ));
        }
    }

    let mut search_ms = None;
    let search_json = if do_search {
        let t_s = Instant::now();
        let outcome = search::find_tiling_in(grid, &th.relation().placements, budget);
        search_ms = Some(t_s.elapsed().as_millis());
        let (name, tiling) = match &outcome {
            SearchOutcome::Tiling(t) => {
                if !t.verify(grid) {
                    return Err(selfcheck("search returned a non-partition".to_string()));
                }
                if !theta.trivial {
                    return Err(selfcheck(
                        "found a tiling although the obstruction is nontrivial".to_string(),
                    ));
                }
                (
                    "tiled",
                    Some(t.placements.iter().map(|p| PlacementJson::of(grid, p)).collect()),
                )
            }
            SearchOutcome::Exhausted => ("exhausted", None),
            SearchOutcome::BudgetExceeded => ("budget_exceeded", None),
        };
        Some(SearchJson {
            outcome: name.to_string(),
            budget: budget.unwrap_or(DEFAULT_NODE_BUDGET),
            tiling,
        })
    } else {
        None
    };

    let verdict = if !theta.trivial {
        "OBSTRUCTED"
    } else if matches!(&search_json, Some(s) if s.outcome == "tiled") {
        "TILED"
    } else {
        "SIGNED-TILABLE"
    };

    let witness_json = witness.map(|w| {
        w.coefficients
            .iter()
            .map(|(j, coeff)| WitnessTermJson {
                placement: PlacementJson::of(grid, &th.relation().placements[*j]),
                coefficient: coeff.to_string(),
            })
            .collect()
    });

    Ok(AnalysisJson {
        schema_version: SCHEMA_VERSION,
        surface: SurfaceJson::of(grid),
        tiles: tiles.iter().map(|(p, pol)| TileJson::of(p, *pol)).collect(),
        placements: th.relation().placements.len(),
        homology: HomologyJson::of(&group),
        theta: ThetaJson::of(&theta),
        verdict: verdict.to_string(),
        certificate: certificate
            .as_ref()
            .map(|c| certificate_json(grid, &th.relation().cells, &c.weights)),
        witness: witness_json,
        search: search_json,
        warnings: grid.warnings().to_vec(),
        timings: timings.then(|| TimingsJson {
            placements_ms,
            homology_ms,
            search_ms,
            total_ms: t0.elapsed().as_millis(),
        }),
    })
}
