//! The tiling homology group, its obstruction element, and certificates.
//!
//! The free abelian group on the non-removed cells, modulo the subgroup
//! generated by placement indicator vectors, is the tiling homology group of
//! the pair (grid, tile set). The class of the all-ones vector is an
//! obstruction: a signed tiling exists iff it is trivial, and any genuine
//! tiling gives a signed one. When the class is nontrivial the engine emits
//! a rational cell numbering where every placement sums to an integer but
//! the whole grid does not — a machine-checkable coloring argument.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::grid::{CellId, SurfaceGrid};
use crate::placement::{enumerate_placements, Placement};
use crate::polyomino::{Polyomino, SymmetryPolicy};
use crate::zlinalg::{smith_normal_form, solve_with, IntMatrix, SmithDecomposition};

/// 0/1 matrix with one row per non-removed cell and one column per placement.
#[derive(Clone, Debug)]
pub struct RelationMatrix {
    pub matrix: IntMatrix,
    /// Row index -> cell.
    pub cells: Vec<CellId>,
    /// Column index -> placement.
    pub placements: Vec<Placement>,
}

impl RelationMatrix {
    pub fn row_of(&self, cell: CellId) -> Option<usize> {
        self.cells.binary_search(&cell).ok()
    }
}

/// Builds the relation matrix for a grid and tile set. Rows are ordered by
/// cell id, columns by placement cell set; entries are 0/1.
pub fn relation_matrix(grid: &SurfaceGrid, tiles: &[(Polyomino, SymmetryPolicy)]) -> RelationMatrix {
    from_placements(grid, enumerate_placements(grid, tiles))
}

/// Same, from an already enumerated placement list (assumed deduplicated and
/// sorted, as produced by `enumerate_placements`).
pub fn from_placements(grid: &SurfaceGrid, placements: Vec<Placement>) -> RelationMatrix {
    let cells = grid.active_cells();
    let row: BTreeMap<CellId, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut matrix = IntMatrix::zeros(cells.len(), placements.len());
    for (j, pl) in placements.iter().enumerate() {
        for c in &pl.cells {
            matrix[(row[c], j)] = BigInt::one();
        }
    }
    RelationMatrix {
        matrix,
        cells,
        placements,
    }
}

/// Isomorphism type of a finitely generated abelian group: the cokernel of
/// the relation matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomologyGroup {
    /// Invariant factors > 1, in divisibility order.
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
    /// Number of invariant factors equal to 1 (suppressed from `torsion`).
    pub trivial_factors_suppressed: usize,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Order of the obstruction class.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ThetaOrder {
    Finite(BigInt),
    Infinite,
}

impl fmt::Display for ThetaOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ThetaOrder::Finite(n) => write!(f, "{n}"),
            ThetaOrder::Infinite => f.write_str("infinite"),
        }
    }
}

/// The obstruction element: image of the all-ones vector in the quotient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThetaReport {
    /// Coordinates `y = U * theta` in Smith normal form coordinates.
    pub coords: Vec<BigInt>,
    pub order: ThetaOrder,
    pub trivial: bool,
}

/// Rational cell numbering witnessing a nontrivial obstruction: every
/// placement sums to an integer, the grand total does not.
#[derive(Clone, PartialEq, Debug)]
pub struct Certificate {
    /// Weight per relation-matrix row (same order as `RelationMatrix.cells`).
    pub weights: Vec<BigRational>,
}

/// Integer combination of placements covering every cell exactly once.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedTilingWitness {
    /// Nonzero coefficients as (placement index, multiplicity).
    pub coefficients: Vec<(usize, BigInt)>,
}

#[derive(Error, Debug)]
pub enum HomologyError {
    #[error("certificate is missing a weight for cell {0:?}")]
    MissingWeight(CellId),
    #[error("internal self-check failed: {0}")]
    SelfCheck(String),
}

/// One-stop analysis of a relation matrix: computes the Smith decomposition
/// once and derives the group, the obstruction report, and (depending on
/// triviality) a certificate or a signed-tiling witness.
pub struct TilingHomology {
    rm: RelationMatrix,
    snf: SmithDecomposition,
    theta: Vec<BigInt>,
}

impl TilingHomology {
    pub fn new(rm: RelationMatrix) -> Result<TilingHomology, HomologyError> {
        let snf = smith_normal_form(&rm.matrix);
        if !snf.verify(&rm.matrix) {
            return Err(HomologyError::SelfCheck(
                "Smith decomposition does not re-multiply to D".to_string(),
            ));
        }
        let theta = vec![BigInt::one(); rm.cells.len()];
        Ok(TilingHomology { rm, snf, theta })
    }

    pub fn relation(&self) -> &RelationMatrix {
        &self.rm
    }

    pub fn smith(&self) -> &SmithDecomposition {
        &self.snf
    }

    pub fn group(&self) -> HomologyGroup {
        let factors = self.snf.invariant_factors();
        let torsion: Vec<BigInt> = factors.iter().filter(|d| !d.is_one()).cloned().collect();
        HomologyGroup {
            trivial_factors_suppressed: factors.len() - torsion.len(),
            free_rank: self.rm.cells.len() - self.snf.rank,
            torsion,
        }
    }

    pub fn theta(&self) -> ThetaReport {
        let coords = self.snf.u.mul_vec(&self.theta);
        let infinite = coords.iter().skip(self.snf.rank).any(|y| !y.is_zero());
        let order = if infinite {
            ThetaOrder::Infinite
        } else {
            let mut ord = BigInt::one();
            for i in 0..self.snf.rank {
                let d = &self.snf.d[(i, i)];
                let part = d / coords[i].gcd(d);
                ord = ord.lcm(&part);
            }
            ThetaOrder::Finite(ord)
        };
        let trivial = order == ThetaOrder::Finite(BigInt::one());
        debug_assert_eq!(
            trivial,
            solve_with(&self.snf, &self.theta).is_some(),
            "order-1 test disagrees with integer solvability"
        );
        ThetaReport {
            coords,
            order,
            trivial,
        }
    }

    /// A signed tiling (exact integer solution of `M x = theta`), or `None`
    /// when the obstruction is nontrivial. The witness is re-verified by
    /// exact multiplication before being returned.
    pub fn witness(&self) -> Result<Option<SignedTilingWitness>, HomologyError> {
        let Some(x) = solve_with(&self.snf, &self.theta) else {
            return Ok(None);
        };
        if self.rm.matrix.mul_vec(&x) != self.theta {
            return Err(HomologyError::SelfCheck(
                "signed tiling witness does not multiply back to theta".to_string(),
            ));
        }
        let coefficients = x
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(Some(SignedTilingWitness { coefficients }))
    }

    /// A verified coloring certificate, or `None` when the obstruction is
    /// trivial.
    ///
    /// Construction: with `y = U*theta`, if some `y_i != 0` beyond the rank,
    /// row `i` of `U` scaled by `1/(2 y_i)` kills every placement (that row
    /// of `U*M` is zero) and gives the grid total 1/2; otherwise the lowest
    /// `i` with `d_i` not dividing `y_i` gives row `i` of `U` over `d_i`,
    /// whose pairing with every placement is integral but with theta is
    /// `y_i / d_i`.
    pub fn certificate(&self) -> Result<Option<Certificate>, HomologyError> {
        let y = self.snf.u.mul_vec(&self.theta);
        let n = self.rm.cells.len();
        let row_scaled = |i: usize, den: BigInt| -> Vec<BigRational> {
            (0..n)
                .map(|j| BigRational::new(self.snf.u[(i, j)].clone(), den.clone()))
                .collect()
        };
        let weights = if let Some(i) = (self.snf.rank..n).find(|&i| !y[i].is_zero()) {
            row_scaled(i, &y[i] * 2)
        } else if let Some(i) =
            (0..self.snf.rank).find(|&i| !(&y[i] % &self.snf.d[(i, i)]).is_zero())
        {
            row_scaled(i, self.snf.d[(i, i)].clone())
        } else {
            return Ok(None);
        };
        let cert = Certificate { weights };
        if !self.verify_certificate_internal(&cert) {
            return Err(HomologyError::SelfCheck(
                "constructed certificate failed verification".to_string(),
            ));
        }
        Ok(Some(cert))
    }

    fn verify_certificate_internal(&self, cert: &Certificate) -> bool {
        certificate_checks(&self.rm, &cert.weights)
    }
}

fn certificate_checks(rm: &RelationMatrix, weights: &[BigRational]) -> bool {
    if weights.len() != rm.cells.len() {
        return false;
    }
    let row: BTreeMap<CellId, usize> = rm.cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    for pl in &rm.placements {
        let sum: BigRational = pl.cells.iter().map(|c| weights[row[c]].clone()).sum();
        if !sum.is_integer() {
            return false;
        }
    }
    let total: BigRational = weights.iter().cloned().sum();
    !total.is_integer()
}

/// Invariant factors and free rank of the cokernel of the relation matrix.
pub fn homology_group(rm: &RelationMatrix) -> HomologyGroup {
    TilingHomology::new(rm.clone()).expect("self-check").group()
}

/// Obstruction analysis of the all-ones class.
pub fn theta_report(rm: &RelationMatrix) -> ThetaReport {
    TilingHomology::new(rm.clone()).expect("self-check").theta()
}

/// Signed-tiling witness, present exactly when the obstruction is trivial.
pub fn signed_tiling_witness(rm: &RelationMatrix) -> Option<SignedTilingWitness> {
    TilingHomology::new(rm.clone())
        .expect("self-check")
        .witness()
        .expect("self-check")
}

/// Coloring certificate, present exactly when the obstruction is nontrivial.
pub fn certificate(rm: &RelationMatrix) -> Option<Certificate> {
    TilingHomology::new(rm.clone())
        .expect("self-check")
        .certificate()
        .expect("self-check")
}

/// Checks a rational cell numbering against a freshly enumerated placement
/// list: true iff every placement sums to an integer and the total over all
/// non-removed cells does not. Weights are keyed by cell; a missing cell is
/// an error.
pub fn verify_certificate(
    grid: &SurfaceGrid,
    tiles: &[(Polyomino, SymmetryPolicy)],
    weights: &BTreeMap<CellId, BigRational>,
) -> Result<bool, HomologyError> {
    let rm = relation_matrix(grid, tiles);
    let mut vec = Vec::with_capacity(rm.cells.len());
    for c in &rm.cells {
        let w = weights.get(c).ok_or(HomologyError::MissingWeight(*c))?;
        vec.push(w.clone());
    }
    Ok(certificate_checks(&rm, &vec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{generate, Model};
    use crate::polyomino::catalog;

    fn tiles(name: &str) -> Vec<(Polyomino, SymmetryPolicy)> {
        vec![(catalog(name).unwrap(), SymmetryPolicy::Free)]
    }

    fn factors(g: &HomologyGroup) -> Vec<i64> {
        g.torsion.iter().map(|b| i64::try_from(b).unwrap()).collect()
    }

    #[test]
    fn torus_6x6_i4_group() {
        let grid = generate(Model::Torus { rows: 6, cols: 6 }, &[]).unwrap();
        let rm = relation_matrix(&grid, &tiles("I4"));
        assert_eq!(rm.matrix.rows(), 36);
        assert_eq!(rm.matrix.cols(), 72);
        for j in 0..rm.matrix.cols() {
            let sum: BigInt = (0..rm.matrix.rows()).map(|i| rm.matrix[(i, j)].clone()).sum();
            assert_eq!(sum, BigInt::from(4));
        }
        let th = TilingHomology::new(rm).unwrap();
        let g = th.group();
        assert_eq!(factors(&g), vec![2, 2, 2]);
        assert_eq!(g.free_rank, 1);
        let theta = th.theta();
        assert!(!theta.trivial);
        assert_eq!(theta.order, ThetaOrder::Finite(BigInt::from(2)));
        assert!(th.witness().unwrap().is_none());
        assert!(th.certificate().unwrap().is_some());
    }

    #[test]
    fn torus_6x6_t4_group_is_z8() {
        let grid = generate(Model::Torus { rows: 6, cols: 6 }, &[]).unwrap();
        let th = TilingHomology::new(relation_matrix(&grid, &tiles("T4"))).unwrap();
        let g = th.group();
        assert_eq!(factors(&g), vec![8]);
        assert_eq!(g.free_rank, 0);
        // Theta maps to 4 times the Z/8 generator, so its order is 2.
        assert_eq!(th.theta().order, ThetaOrder::Finite(BigInt::from(2)));
    }

    #[test]
    fn torus_6x6_x6_group() {
        let grid = generate(Model::Torus { rows: 6, cols: 6 }, &[]).unwrap();
        let th = TilingHomology::new(relation_matrix(&grid, &tiles("X6"))).unwrap();
        let g = th.group();
        assert_eq!(factors(&g), vec![2, 2, 2, 6]);
        assert_eq!(g.free_rank, 0);
        assert!(!th.theta().trivial);
    }

    #[test]
    fn torus_4x4_i4_trivial_theta_with_witness() {
        let grid = generate(Model::Torus { rows: 4, cols: 4 }, &[]).unwrap();
        let th = TilingHomology::new(relation_matrix(&grid, &tiles("I4"))).unwrap();
        assert!(th.theta().trivial);
        let w = th.witness().unwrap().expect("witness exists");
        assert!(!w.coefficients.is_empty());
        assert!(th.certificate().unwrap().is_none());
    }

    #[test]
    fn chessboard_domino_infinite_order() {
        let grid = generate(Model::Rect { rows: 8, cols: 8 }, &[(1, 1), (8, 8)]).unwrap();
        let th = TilingHomology::new(relation_matrix(&grid, &tiles("domino"))).unwrap();
        let g = th.group();
        assert_eq!(g.torsion, Vec::<BigInt>::new());
        assert_eq!(g.free_rank, 1);
        let theta = th.theta();
        assert!(!theta.trivial);
        assert_eq!(theta.order, ThetaOrder::Infinite);
        let cert = th.certificate().unwrap().expect("certificate exists");
        // Invariant, not a value match: independently re-verify.
        let weights: BTreeMap<CellId, BigRational> = th
            .relation()
            .cells
            .iter()
            .zip(cert.weights.iter())
            .map(|(&c, w)| (c, w.clone()))
            .collect();
        assert!(verify_certificate(&grid, &tiles("domino"), &weights).unwrap());
    }

    #[test]
    fn chessboard_coloring_certificate_verifies() {
        // The classic hand certificate: -1/4 on one color, +1/4 on the other.
        let grid = generate(Model::Rect { rows: 8, cols: 8 }, &[(1, 1), (8, 8)]).unwrap();
        let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
        let mut weights = BTreeMap::new();
        for c in grid.active_cells() {
            let l = grid.label(c);
            let w = if (l.row + l.col) % 2 == 0 {
                -quarter.clone()
            } else {
                quarter.clone()
            };
            weights.insert(c, w);
        }
        assert!(verify_certificate(&grid, &tiles("domino"), &weights).unwrap());
        // All-zero weights fail (the total is an integer).
        let zeros: BTreeMap<CellId, BigRational> = grid
            .active_cells()
            .into_iter()
            .map(|c| (c, BigRational::zero()))
            .collect();
        assert!(!verify_certificate(&grid, &tiles("domino"), &zeros).unwrap());
    }

    #[test]
    fn monomino_gives_trivial_group() {
        let grid = generate(Model::Klein { rows: 3, cols: 4 }, &[]).unwrap();
        let th = TilingHomology::new(relation_matrix(&grid, &tiles("monomino"))).unwrap();
        let g = th.group();
        assert!(g.torsion.is_empty());
        assert_eq!(g.free_rank, 0);
        assert!(th.theta().trivial);
    }

    #[test]
    fn empty_placement_list_group_is_free() {
        let grid = generate(Model::Rect { rows: 2, cols: 2 }, &[]).unwrap();
        let th = TilingHomology::new(relation_matrix(&grid, &tiles("I5"))).unwrap();
        let g = th.group();
        assert_eq!(g.free_rank, 4);
        let theta = th.theta();
        assert_eq!(theta.order, ThetaOrder::Infinite);
        let cert = th.certificate().unwrap().expect("certificate exists");
        assert_eq!(cert.weights.len(), 4);
    }

    #[test]
    fn two_by_two_rect_domino_matrix_shape() {
        let grid = generate(Model::Rect { rows: 2, cols: 2 }, &[]).unwrap();
        let rm = relation_matrix(&grid, &tiles("domino"));
        assert_eq!((rm.matrix.rows(), rm.matrix.cols()), (4, 4));
    }

    #[test]
    fn missing_weight_is_an_error() {
        let grid = generate(Model::Rect { rows: 2, cols: 2 }, &[]).unwrap();
        let weights = BTreeMap::new();
        assert!(matches!(
            verify_certificate(&grid, &tiles("domino"), &weights),
            Err(HomologyError::MissingWeight(_))
        ));
    }
}
