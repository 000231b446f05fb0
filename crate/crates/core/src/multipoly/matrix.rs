//! Dense matrices over `Z[x1..xN]`: fraction-free determinant and rank.

use std::fmt;

use super::{MultiPoly, PolyError};

/// Largest dimension for which [`PolyMatrix::det`] uses cofactor expansion.
const COFACTOR_MAX_DIM: usize = 4;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    data: Vec<MultiPoly>,
}

/// Result of [`PolyMatrix::rank`].
#[derive(Debug, Clone)]
pub struct RankInfo {
    pub rank: usize,
    /// The successive elimination pivots; each is a nonzero minor of the input.
    pub pivots: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_rows(nvars: usize, rows: Vec<Vec<MultiPoly>>) -> Result<Self, PolyError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(PolyError::ShapeMismatch(format!(
                    "row {} has {} entries, expected {cols}",
                    i + 1,
                    row.len()
                )));
            }
            for p in row {
                if p.nvars() != nvars {
                    return Err(PolyError::VarCountMismatch(nvars, p.nvars()));
                }
                data.push(p);
            }
        }
        Ok(PolyMatrix {
            rows: nrows,
            cols,
            nvars,
            data,
        })
    }

    pub fn identity(nvars: usize, dim: usize) -> Self {
        let mut data = vec![MultiPoly::zero(nvars); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = MultiPoly::one(nvars);
        }
        PolyMatrix {
            rows: dim,
            cols: dim,
            nvars,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &MultiPoly {
        &self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[MultiPoly] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix, PolyError> {
        if self.cols != other.rows {
            return Err(PolyError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.nvars != other.nvars {
            return Err(PolyError::VarCountMismatch(self.nvars, other.nvars));
        }
        let mut data = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = MultiPoly::zero(self.nvars);
                for t in 0..self.cols {
                    acc = &acc + &(self.get(i, t) * other.get(t, j));
                }
                data.push(acc);
            }
        }
        Ok(PolyMatrix {
            rows: self.rows,
            cols: other.cols,
            nvars: self.nvars,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[MultiPoly]) -> Result<Vec<MultiPoly>, PolyError> {
        if v.len() != self.cols {
            return Err(PolyError::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .try_fold(MultiPoly::zero(self.nvars), |acc, (a, b)| {
                        acc.try_add(&a.try_mul(b)?)
                    })
            })
            .collect()
    }

    fn require_square(&self) -> Result<(), PolyError> {
        if self.rows == self.cols {
            Ok(())
        } else {
            Err(PolyError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Exact determinant: cofactor expansion up to 4x4, Bareiss beyond.
    pub fn det(&self) -> Result<MultiPoly, PolyError> {
        self.require_square()?;
        if self.rows <= COFACTOR_MAX_DIM {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along the first row.
    pub fn det_cofactor(&self) -> Result<MultiPoly, PolyError> {
        self.require_square()?;
        let cols: Vec<usize> = (0..self.cols).collect();
        Ok(self.cofactor(0, &cols))
    }

    fn cofactor(&self, row: usize, cols: &[usize]) -> MultiPoly {
        match cols.len() {
            0 => MultiPoly::one(self.nvars),
            1 => self.get(row, cols[0]).clone(),
            _ => {
                let mut acc = MultiPoly::zero(self.nvars);
                for (pos, &c) in cols.iter().enumerate() {
                    let entry = self.get(row, c);
                    if entry.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&d| d != c).collect();
                    let term = entry * &self.cofactor(row + 1, &rest);
                    acc = if pos % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Fraction-free Gaussian elimination with exact division.
    pub fn det_bareiss(&self) -> Result<MultiPoly, PolyError> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(MultiPoly::one(self.nvars));
        }
        let mut a = self.clone();
        let mut negate = false;
        let mut prev = MultiPoly::one(self.nvars);
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&i| !a.get(i, k).is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        negate = !negate;
                    }
                    None => return Ok(MultiPoly::zero(self.nvars)),
                }
            }
            a.eliminate(k, k, k + 1, &prev);
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if negate { -d } else { d })
    }

    /// One Bareiss step with pivot `(r, c)` applied to rows below `r`.
    fn eliminate(&mut self, r: usize, c: usize, first_row: usize, prev: &MultiPoly) {
        let pivot = self.get(r, c).clone();
        for i in first_row..self.rows {
            let factor = self.get(i, c).clone();
            for j in c + 1..self.cols {
                let mut num = &pivot * self.get(i, j);
                if !factor.is_zero() {
                    let pr = self.get(r, j);
                    if !pr.is_zero() {
                        num = &num - &(&factor * pr);
                    }
                }
                let val = num
                    .exact_div(prev)
                    .expect("Bareiss elimination produced an inexact division");
                self.data[i * self.cols + j] = val;
            }
            self.data[i * self.cols + c] = MultiPoly::zero(self.nvars);
        }
    }

    /// Rank over the fraction field of `Z[x1..xN]`, pivoting on the first
    /// nonzero entry of each column.
    pub fn rank(&self) -> RankInfo {
        let mut a = self.clone();
        let mut rank = 0;
        let mut prev = MultiPoly::one(self.nvars);
        let mut pivots = Vec::new();
        for c in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(i) = (rank..self.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(rank, i);
            a.eliminate(rank, c, rank + 1, &prev);
            prev = a.get(rank, c).clone();
            pivots.push(prev.clone());
            rank += 1;
        }
        RankInfo { rank, pivots }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(4, i)
    }

    fn c(v: i64) -> MultiPoly {
        MultiPoly::constant(4, v)
    }

    #[test]
    fn two_by_two_det() {
        let m = PolyMatrix::from_rows(4, vec![vec![x(1), x(2)], vec![x(3), x(4)]]).unwrap();
        let expect = &(&x(1) * &x(4)) - &(&x(2) * &x(3));
        assert_eq!(m.det().unwrap(), expect);
        assert_eq!(m.det_bareiss().unwrap(), expect);
    }

    #[test]
    fn non_square_det_is_an_error() {
        let m = PolyMatrix::from_rows(4, vec![vec![x(1), x(2)]]).unwrap();
        assert_eq!(m.det(), Err(PolyError::NotSquare { rows: 1, cols: 2 }));
    }

    #[test]
    fn ragged_rows_are_rejected() {
        assert!(PolyMatrix::from_rows(4, vec![vec![x(1), x(2)], vec![x(3)]]).is_err());
    }

    #[test]
    fn bareiss_handles_zero_pivots() {
        // Permutation-like matrix forcing row swaps.
        let m = PolyMatrix::from_rows(
            4,
            vec![
                vec![c(0), x(1), c(0)],
                vec![c(0), c(0), x(2)],
                vec![x(3), c(0), c(0)],
            ],
        )
        .unwrap();
        let expect = &(&x(1) * &x(2)) * &x(3);
        assert_eq!(m.det_bareiss().unwrap(), expect);
        assert_eq!(m.det_cofactor().unwrap(), expect);
    }

    #[test]
    fn ranks() {
        assert_eq!(PolyMatrix::identity(4, 3).rank().rank, 3);
        let dup = PolyMatrix::from_rows(
            4,
            vec![
                vec![x(1), x(2), c(1)],
                vec![x(1), x(2), c(1)],
                vec![c(0), x(3), x(4)],
            ],
        )
        .unwrap();
        assert_eq!(dup.rank().rank, 2);
        let zero = PolyMatrix::from_rows(4, vec![vec![c(0), c(0)]; 3]).unwrap();
        assert_eq!(zero.rank().rank, 0);
        let wide = PolyMatrix::from_rows(
            4,
            vec![vec![c(0), x(1), x(2), c(0)], vec![c(0), x(3), x(4), c(1)]],
        )
        .unwrap();
        assert_eq!(wide.rank().rank, 2);
    }

    #[test]
    fn product_and_vector_product() {
        let a = PolyMatrix::from_rows(4, vec![vec![x(1), c(1)], vec![c(0), x(2)]]).unwrap();
        let id = PolyMatrix::identity(4, 2);
        assert_eq!(a.mul(&id).unwrap(), a);
        let v = a.mul_vec(&[c(1), x(3)]).unwrap();
        assert_eq!(v, vec![&x(1) + &x(3), &x(2) * &x(3)]);
        assert!(a.mul_vec(&[c(1)]).is_err());
    }
}
