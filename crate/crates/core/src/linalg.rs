//! Exact linear algebra over the rationals.
//!
//! Two independent elimination routes are provided: fraction-free
//! Bareiss elimination over integers (after clearing denominators) for
//! ranks, and Gauss-Jordan reduced row echelon form over rationals for
//! nullspaces and canonical bases. Ranks from the two routes are
//! cross-checked in tests; all arithmetic is exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rat::Rat;

/// Dense row-major matrix with rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Rat>,
}

impl RatMat {
    /// The rows x cols zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    /// The n x n identity.
    pub fn identity(n: usize) -> Self {
        let mut m = RatMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds from explicit rows; every row must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        assert!(
            rows.iter().all(|r| r.len() == ncols),
            "ragged rows in RatMat::from_rows"
        );
        RatMat {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    /// Matrix product self * other.
    pub fn mul(&self, other: &RatMat) -> RatMat {
        assert_eq!(
            self.cols, other.rows,
            "dimension mismatch in matrix product"
        );
        let mut out = RatMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(i, j) + a * b;
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> RatMat {
        let mut out = RatMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }

    /// Rank by fraction-free Bareiss elimination over the integers.
    ///
    /// Denominators are cleared row by row (row scaling preserves rank);
    /// every interior division is asserted exact.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| clear_denominators(self.row(i)))
            .collect();
        let rows = self.rows;
        let cols = self.cols;
        let mut rank = 0usize;
        let mut prev = BigInt::one();
        for col in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..rows {
                for c in col + 1..cols {
                    let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                    let (q, rem) = num.div_rem(&prev);
                    assert!(rem.is_zero(), "Bareiss division not exact");
                    m[r][c] = q;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }

    /// Rank read off the reduced row echelon form (independent route).
    pub fn rank_via_rref(&self) -> usize {
        self.rref().1.len()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (RatMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for col in 0..m.cols {
            let Some(p) = (r..m.rows).find(|&i| !m.at(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let pivot = m.at(r, col).clone();
            for c in col..m.cols {
                let v = m.at(r, c) / &pivot;
                m.set(r, c, v);
            }
            for i in 0..m.rows {
                if i == r || m.at(i, col).is_zero() {
                    continue;
                }
                let f = m.at(i, col).clone();
                for c in col..m.cols {
                    let v = m.at(i, c) - &f * m.at(r, c);
                    m.set(i, c, v);
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    /// Canonical basis of the right kernel, one vector per free column,
    /// ordered by free column index.
    pub fn nullspace(&self) -> Vec<Vec<Rat>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (row_idx, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.at(row_idx, free).clone();
            }
            basis.push(v);
        }
        basis
    }
}

/// Scales a rational row to integers by the common denominator.
fn clear_denominators(row: &[Rat]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for v in row {
        if !v.is_zero() {
            lcm = lcm.lcm(v.denom());
        }
    }
    row.iter()
        .map(|v| {
            if v.is_zero() {
                BigInt::zero()
            } else {
                let (q, rem) = (&lcm * v.numer()).div_rem(v.denom());
                debug_assert!(rem.is_zero());
                q
            }
        })
        .collect()
}

/// Canonical basis of the row space: the nonzero rows of the RREF.
pub fn rref_rows(rows: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let m = RatMat::from_rows(rows);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Reduces `v` against rows already in RREF; the result has zeros in
/// every pivot position, and is zero iff `v` lies in their row space.
pub fn reduce_against(v: &[Rat], rref: &[Vec<Rat>]) -> Vec<Rat> {
    let mut out = v.to_vec();
    for row in rref {
        let Some(lead) = row.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        if out[lead].is_zero() {
            continue;
        }
        let f = out[lead].clone();
        debug_assert!(row[lead].is_one(), "reduce_against expects RREF rows");
        for (o, r) in out.iter_mut().zip(row.iter()) {
            *o = &*o - &f * r;
        }
    }
    out
}
