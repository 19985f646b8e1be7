//! Exact integer linear algebra over arbitrary-precision integers: dense
//! matrices, Smith and Hermite normal forms with transform tracking, and
//! integer linear solving.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense rectangular matrix of exact integers, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let cell = &mut out[(i, j)];
                        *cell += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| &self[(i, j)] * &v[j])
                    .fold(BigInt::zero(), |acc, x| acc + x)
            })
            .collect()
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[a] += q * row[b]
    fn add_row_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(b, j)] * q;
            let cell = &mut self[(a, j)];
            *cell += t;
        }
    }

    /// col[a] += q * col[b]
    fn add_col_multiple(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = &self[(i, b)] * q;
            let cell = &mut self[(i, a)];
            *cell += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let cell = &mut self[(a, j)];
            *cell = -std::mem::take(cell);
        }
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// Smith decomposition `U * M * V = D` with unimodular `U`, `V` and diagonal
/// `D` whose nonzero entries are positive and form a divisibility chain.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub d: IntMatrix,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries d_1 | d_2 | ... | d_rank.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Exact re-multiplication check `U * M * V == D`.
    pub fn verify(&self, m: &IntMatrix) -> bool {
        self.u.mul(m).mul(&self.v) == self.d
    }
}

/// Quotient with remainder of minimal magnitude (|r| <= |p|/2), which bounds
/// entry growth during elimination.
fn rounded_div(a: &BigInt, p: &BigInt) -> BigInt {
    let (mut q, r) = a.div_rem(p);
    if r.abs() * 2 > p.abs() {
        q += if r.sign() == p.sign() { 1 } else { -1 };
    }
    q
}

/// Smith normal form by repeated pivoting on the smallest nonzero magnitude
/// (ties broken by lowest row, then lowest column, so the decomposition is
/// deterministic).
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let bound = m.rows().min(m.cols());
    let mut t = 0usize;

    while t < bound {
        // Pick the smallest-magnitude nonzero entry of the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..d.rows() {
            for j in t..d.cols() {
                if d[(i, j)].is_zero() {
                    continue;
                }
                let better = match pivot {
                    None => true,
                    Some(p) => d[(i, j)].abs() < d[p].abs(),
                };
                if better {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // Clear row and column t; restart if a remainder survives (the next
        // sweep will pick the now-smaller pivot).
        let mut dirty = false;
        for i in t + 1..d.rows() {
            if !d[(i, t)].is_zero() {
                let q = -rounded_div(&d[(i, t)], &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
        }
        for j in t + 1..d.cols() {
            if !d[(t, j)].is_zero() {
                let q = -rounded_div(&d[(t, j)], &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
        }
        if dirty {
            continue;
        }

        // Enforce the divisibility chain: if the pivot does not divide some
        // trailing entry, fold that row in and re-reduce.
        let mut offender = None;
        'scan: for i in t + 1..d.rows() {
            for j in t + 1..d.cols() {
                if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                    offender = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = offender {
            d.add_row_multiple(t, i, &BigInt::one());
            u.add_row_multiple(t, i, &BigInt::one());
            continue;
        }

        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let rank = t;
    debug_assert!(u.mul(m).mul(&v) == d, "U*M*V != D");
    SmithDecomposition { u, v, d, rank }
}

/// Solves `M x = b` over the integers via the Smith decomposition, reusing a
/// precomputed one. `None` means no integer solution exists.
pub fn solve_with(snf: &SmithDecomposition, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let y = snf.u.mul_vec(b);
    let mut z = vec![BigInt::zero(); snf.v.rows()];
    for (i, yi) in y.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = yi.div_rem(&snf.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            z[i] = q;
        } else if !yi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&z))
}

/// Solves `M x = b` over the integers; `None` signals unsolvable.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(m.rows(), b.len(), "dimension mismatch");
    let snf = smith_normal_form(m);
    let x = solve_with(&snf, b);
    if let Some(x) = &x {
        debug_assert_eq!(m.mul_vec(x), b, "solver produced a non-solution");
    }
    x
}

/// Row-style Hermite normal form: returns `(H, W)` with `H = W * M`, `W`
/// unimodular, `H` in row echelon form with positive pivots and entries
/// above each pivot reduced into `[0, pivot)`. Used as an independent
/// cross-check for the Smith-based solver.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut w = IntMatrix::identity(m.rows());
    let mut r = 0usize;
    for c in 0..h.cols() {
        if r == h.rows() {
            break;
        }
        // Reduce column c below row r by Euclidean steps.
        loop {
            let mut best: Option<usize> = None;
            for i in r..h.rows() {
                if h[(i, c)].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(b) if h[(i, c)].abs() < h[(b, c)].abs() => Some(i),
                    keep => keep,
                };
            }
            let Some(b) = best else { break };
            h.swap_rows(r, b);
            w.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..h.rows() {
                if !h[(i, c)].is_zero() {
                    let q = -rounded_div(&h[(i, c)], &h[(r, c)]);
                    h.add_row_multiple(i, r, &q);
                    w.add_row_multiple(i, r, &q);
                    done &= h[(i, c)].is_zero();
                }
            }
            if done {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            w.negate_row(r);
        }
        // Reduce the entries above the pivot into [0, pivot).
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            h.add_row_multiple(i, r, &q);
            w.add_row_multiple(i, r, &q);
        }
        r += 1;
    }
    debug_assert!(w.mul(m) == h, "W*M != H");
    (h, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(sd: &SmithDecomposition) -> Vec<i64> {
        sd.invariant_factors()
            .iter()
            .map(|b| i64::try_from(b).unwrap())
            .collect()
    }

    #[test]
    fn snf_coprime_diag() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let sd = smith_normal_form(&m);
        assert_eq!(diag(&sd), vec![1, 6]);
        assert!(sd.verify(&m));
    }

    #[test]
    fn snf_determinant_divisor_example() {
        // d1 = gcd of entries = 2; d1*d2 = |det| = 8.
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let sd = smith_normal_form(&m);
        assert_eq!(diag(&sd), vec![2, 4]);
        assert!(sd.verify(&m));
    }

    #[test]
    fn snf_zero_matrix() {
        let m = IntMatrix::zeros(3, 2);
        let sd = smith_normal_form(&m);
        assert_eq!(sd.rank, 0);
        assert_eq!(sd.u, IntMatrix::identity(3));
        assert_eq!(sd.v, IntMatrix::identity(2));
        assert!(sd.verify(&m));
    }

    #[test]
    fn snf_empty_dims() {
        for (r, c) in [(0, 0), (0, 3), (3, 0)] {
            let m = IntMatrix::zeros(r, c);
            let sd = smith_normal_form(&m);
            assert_eq!(sd.rank, 0);
            assert!(sd.verify(&m));
        }
    }

    #[test]
    fn solve_scalar_cases() {
        let m = IntMatrix::from_rows(&[vec![2]]);
        assert_eq!(solve_integer(&m, &[BigInt::from(3)]), None);
        assert_eq!(
            solve_integer(&m, &[BigInt::from(4)]),
            Some(vec![BigInt::from(2)])
        );
    }

    #[test]
    fn solve_underdetermined() {
        // 2x + y = 1 has integer solutions even though 2 does not divide 1.
        let m = IntMatrix::from_rows(&[vec![2, 1]]);
        let x = solve_integer(&m, &[BigInt::one()]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![BigInt::one()]);
    }

    #[test]
    fn hermite_small_cases() {
        let id = IntMatrix::identity(4);
        let (h, _) = hermite_normal_form(&id);
        assert_eq!(h, id);

        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let (h, w) = hermite_normal_form(&m);
        assert_eq!(w.mul(&m), h);
        // |det| preserved: product of pivots is 8.
        assert_eq!(&h[(0, 0)] * &h[(1, 1)], BigInt::from(8));
        assert!(h[(1, 0)].is_zero());

        let z = IntMatrix::from_rows(&[vec![0, 0]]);
        let (h, _) = hermite_normal_form(&z);
        assert_eq!(h, z);
    }

    #[test]
    fn rounded_div_small_remainders() {
        for a in -20i64..=20 {
            for p in [-7i64, -3, -2, 2, 3, 7] {
                let q = rounded_div(&BigInt::from(a), &BigInt::from(p));
                let r = BigInt::from(a) - &q * BigInt::from(p);
                assert!(r.abs() * 2 <= BigInt::from(p).abs(), "{a}/{p}: q={q} r={r}");
            }
        }
    }
}
