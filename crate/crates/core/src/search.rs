//! Exhaustive exact-cover search for genuine (unsigned) tilings.
//!
//! Backtracking over placement columns with a fewest-candidates cell
//! heuristic. `Exhausted` is a proof of nonexistence; `BudgetExceeded` is
//! not. Intended for desk-scale instances — the homology obstruction is the
//! scalable tool.

use std::collections::BTreeMap;

use crate::grid::{CellId, SurfaceGrid};
use crate::placement::{enumerate_placements, Placement};
use crate::polyomino::{Polyomino, SymmetryPolicy};

/// Default node budget for [`find_tiling`].
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// A partition of the non-removed cells into placements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Tiling {
    pub placements: Vec<Placement>,
}

impl Tiling {
    /// Independent re-verification: pairwise disjoint and covering exactly
    /// the non-removed cells.
    pub fn verify(&self, grid: &SurfaceGrid) -> bool {
        let mut covered: Vec<CellId> = self
            .placements
            .iter()
            .flat_map(|p| p.cells.iter().copied())
            .collect();
        let total = covered.len();
        covered.sort_unstable();
        covered.dedup();
        covered.len() == total && covered == grid.active_cells()
    }
}

/// Three-valued search outcome.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchOutcome {
    Tiling(Tiling),
    /// The space was exhausted without finding a tiling: none exists.
    Exhausted,
    /// The node budget ran out before the space was exhausted.
    BudgetExceeded,
}

struct Solver<'a> {
    placement_cells: Vec<Vec<usize>>,
    cell_placements: Vec<Vec<usize>>,
    covered: Vec<bool>,
    /// For each placement, how many of its cells are covered (0 = available).
    blocked: Vec<u32>,
    /// For each uncovered cell, number of available placements covering it.
    candidates: Vec<u32>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
    budget_hit: bool,
    solutions: u64,
    cap: u64,
    grid: &'a SurfaceGrid,
    placements: &'a [Placement],
    found: Option<Vec<usize>>,
}

impl<'a> Solver<'a> {
    fn new(grid: &'a SurfaceGrid, placements: &'a [Placement], budget: u64, cap: u64) -> Self {
        let cells = grid.active_cells();
        let row: BTreeMap<CellId, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let placement_cells: Vec<Vec<usize>> = placements
            .iter()
            .map(|p| p.cells.iter().map(|c| row[c]).collect())
            .collect();
        let mut cell_placements = vec![Vec::new(); cells.len()];
        for (j, pc) in placement_cells.iter().enumerate() {
            for &r in pc {
                cell_placements[r].push(j);
            }
        }
        let candidates = cell_placements.iter().map(|v| v.len() as u32).collect();
        Solver {
            covered: vec![false; cells.len()],
            blocked: vec![0; placements.len()],
            candidates,
            chosen: Vec::new(),
            nodes: 0,
            budget,
            budget_hit: false,
            solutions: 0,
            cap,
            placement_cells,
            cell_placements,
            grid,
            placements,
            found: None,
        }
    }

    fn place(&mut self, j: usize) -> Vec<usize> {
        // Returns the list of placements newly blocked by this move.
        let mut newly_blocked = Vec::new();
        for ci in 0..self.placement_cells[j].len() {
            let cell = self.placement_cells[j][ci];
            self.covered[cell] = true;
            for qi in 0..self.cell_placements[cell].len() {
                let q = self.cell_placements[cell][qi];
                self.blocked[q] += 1;
                if self.blocked[q] == 1 {
                    newly_blocked.push(q);
                    for &c2 in &self.placement_cells[q] {
                        self.candidates[c2] -= 1;
                    }
                }
            }
        }
        self.chosen.push(j);
        newly_blocked
    }

    fn unplace(&mut self, j: usize, newly_blocked: Vec<usize>) {
        self.chosen.pop();
        for &q in &newly_blocked {
            for &c2 in &self.placement_cells[q] {
                self.candidates[c2] += 1;
            }
        }
        for ci in 0..self.placement_cells[j].len() {
            let cell = self.placement_cells[j][ci];
            self.covered[cell] = false;
            for qi in 0..self.cell_placements[cell].len() {
                let q = self.cell_placements[cell][qi];
                self.blocked[q] -= 1;
            }
        }
    }

    /// Returns true when the search should stop early.
    fn run(&mut self) -> bool {
        // Fewest remaining candidate placements, ties to the lowest cell.
        let mut pick: Option<(u32, usize)> = None;
        for (c, &cov) in self.covered.iter().enumerate() {
            if cov {
                continue;
            }
            if pick.map_or(true, |(best, _)| self.candidates[c] < best) {
                pick = Some((self.candidates[c], c));
            }
        }
        let Some((_, cell)) = pick else {
            // Everything covered: a solution.
            self.solutions += 1;
            if self.found.is_none() {
                self.found = Some(self.chosen.clone());
            }
            return self.solutions >= self.cap;
        };
        for qi in 0..self.cell_placements[cell].len() {
            let j = self.cell_placements[cell][qi];
            if self.blocked[j] != 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.budget_hit = true;
                return true;
            }
            let undo = self.place(j);
            let stop = self.run();
            self.unplace(j, undo);
            if stop {
                return true;
            }
        }
        false
    }

    fn outcome(mut self) -> SearchOutcome {
        self.run();
        if let Some(idx) = self.found {
            let tiling = Tiling {
                placements: idx.iter().map(|&j| self.placements[j].clone()).collect(),
            };
            assert!(tiling.verify(self.grid), "search returned a non-partition");
            SearchOutcome::Tiling(tiling)
        } else if self.budget_hit {
            SearchOutcome::BudgetExceeded
        } else {
            SearchOutcome::Exhausted
        }
    }
}

/// Searches for a genuine tiling. `budget` defaults to
/// [`DEFAULT_NODE_BUDGET`] nodes (placement attempts).
pub fn find_tiling(
    grid: &SurfaceGrid,
    tiles: &[(Polyomino, SymmetryPolicy)],
    budget: Option<u64>,
) -> SearchOutcome {
    let placements = enumerate_placements(grid, tiles);
    find_tiling_in(grid, &placements, budget)
}

/// Same search over a caller-supplied placement list (the verdict must not
/// depend on its order).
pub fn find_tiling_in(
    grid: &SurfaceGrid,
    placements: &[Placement],
    budget: Option<u64>,
) -> SearchOutcome {
    Solver::new(grid, placements, budget.unwrap_or(DEFAULT_NODE_BUDGET), 1).outcome()
}

/// Counts tilings, exactly up to `cap` (early exit once reached).
pub fn count_tilings(grid: &SurfaceGrid, tiles: &[(Polyomino, SymmetryPolicy)], cap: u64) -> u64 {
    let placements = enumerate_placements(grid, tiles);
    let mut solver = Solver::new(grid, &placements, u64::MAX, cap.max(1));
    if cap == 0 {
        return 0;
    }
    solver.run();
    solver.solutions
}
